//! Finite presheaves on finite categories.

mod coloring;
mod colimit;
mod elements;
pub mod generate;
mod morphism;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCat, FinCatError, Functor, Mor, Obj};

pub use coloring::{decompose_suspension, ColoredDecomposition, ColoringGraph};
pub use colimit::{chain_colimit, coproduct, pushout, Pushout};
pub use elements::{category_of_elements, component_partition, connected_components, ElementsCategory};
pub use morphism::{classifying_morphism, natural_transformations, PresheafMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("element `{element}` appears twice in the carrier of `{object}`")]
    DuplicateElement { object: String, element: String },
    #[error("action of `{morphism}` refers to `{element}`, which is not in the carrier of `{object}`")]
    DanglingElement { morphism: String, object: String, element: String },
    #[error("action of `{morphism}` is undefined on `{element}`")]
    MissingAction { morphism: String, element: String },
    #[error("identity axiom fails: [{morphism}]({element}) ≠ {element}")]
    IdentityAxiomViolation { morphism: String, element: String },
    #[error("composition axiom fails: [{f}]([{g}]({element})) ≠ [{g}∘{f}]({element})")]
    CompositionAxiomViolation { g: String, f: String, element: String },
    #[error("presheaves live over different base categories")]
    BaseMismatch,
    #[error("naturality fails at `{morphism}` on `{element}`")]
    NotNatural { morphism: String, element: String },
    #[error("subset is not closed under the action of `{0}`")]
    NotClosed(String),
    #[error("{0}")]
    Category(#[from] FinCatError),
    #[error("coloring is not constant on a connected component")]
    InconsistentColoring,
    #[error("search space exceeds the configured bound of {0}")]
    TooLarge(usize),
    #[error("chain of embeddings is broken at step {0}")]
    BrokenChain(usize),
}

/// Serializable carriers and action tables, keyed by name.
///
/// Identity actions may be omitted, as may actions whose domain carrier is
/// empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafData {
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
    pub carriers: BTreeMap<String, Vec<String>>,
}

/// A presheaf `X` on a finite category: a carrier per object and, for
/// `f: c → d`, an action `X_f : X(d) → X(c)`. Carriers are kept sorted by
/// name and actions are stored as index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCat>,
    carriers: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl Presheaf {
    /// Builds and validates a presheaf from index tables. Carriers need not
    /// be sorted; `action[f][y]` indexes into `carriers[dom f]`.
    pub fn from_parts(
        base: Arc<FinCat>,
        carriers: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Presheaf, PresheafError> {
        assert_eq!(carriers.len(), base.num_objects(), "one carrier per object");
        assert_eq!(action.len(), base.num_morphisms(), "one action per morphism");
        let mut sorted_carriers = Vec::with_capacity(carriers.len());
        let mut perms = Vec::with_capacity(carriers.len());
        for (o, carrier) in carriers.into_iter().enumerate() {
            let mut order: Vec<usize> = (0..carrier.len()).collect();
            order.sort_by(|&a, &b| carrier[a].cmp(&carrier[b]));
            if let Some(w) = order.windows(2).find(|w| carrier[w[0]] == carrier[w[1]]) {
                return Err(PresheafError::DuplicateElement {
                    object: base.obj_name(Obj(o)).to_string(),
                    element: carrier[w[0]].clone(),
                });
            }
            let mut new_index = vec![0; carrier.len()];
            for (new, &old) in order.iter().enumerate() {
                new_index[old] = new;
            }
            sorted_carriers.push(order.iter().map(|&i| carrier[i].clone()).collect::<Vec<_>>());
            perms.push((order, new_index));
        }
        let mut sorted_action = Vec::with_capacity(action.len());
        for (f, table) in action.into_iter().enumerate() {
            let (d, c) = (base.cod(Mor(f)).index(), base.dom(Mor(f)).index());
            if table.len() != sorted_carriers[d].len() {
                return Err(PresheafError::MissingAction {
                    morphism: base.mor_name(Mor(f)).to_string(),
                    element: format!("<{} entries expected>", sorted_carriers[d].len()),
                });
            }
            if let Some(&bad) = table.iter().find(|&&x| x >= sorted_carriers[c].len()) {
                return Err(PresheafError::DanglingElement {
                    morphism: base.mor_name(Mor(f)).to_string(),
                    object: base.obj_name(Obj(c)).to_string(),
                    element: format!("#{bad}"),
                });
            }
            let row = perms[d].0.iter().map(|&old_y| perms[c].1[table[old_y]]).collect();
            sorted_action.push(row);
        }
        let x = Presheaf {
            base,
            carriers: sorted_carriers,
            action: sorted_action,
        };
        x.check_axioms()?;
        Ok(x)
    }

    fn check_axioms(&self) -> Result<(), PresheafError> {
        let c = &self.base;
        for o in c.object_ids() {
            let id = c.identity(o);
            for (y, &img) in self.action[id.0].iter().enumerate() {
                if img != y {
                    return Err(PresheafError::IdentityAxiomViolation {
                        morphism: c.mor_name(id).to_string(),
                        element: self.carriers[o.0][y].clone(),
                    });
                }
            }
        }
        for f in c.morphism_ids() {
            for g in c.out_of(c.cod(f)) {
                let gf = c.comp(g, f);
                for z in 0..self.carriers[c.cod(g).0].len() {
                    if self.action[f.0][self.action[g.0][z]] != self.action[gf.0][z] {
                        return Err(PresheafError::CompositionAxiomViolation {
                            g: c.mor_name(g).to_string(),
                            f: c.mor_name(f).to_string(),
                            element: self.carriers[c.cod(g).0][z].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses named carriers and actions. Objects without a carrier entry
    /// have an empty carrier.
    pub fn from_data(base: Arc<FinCat>, data: &PresheafData) -> Result<Presheaf, PresheafError> {
        let mut carriers = vec![Vec::new(); base.num_objects()];
        for (name, elems) in &data.carriers {
            let o = base.object(name).ok_or_else(|| PresheafError::UnknownObject(name.clone()))?;
            carriers[o.0] = elems.clone();
        }
        let index: Vec<HashMap<&str, usize>> = carriers
            .iter()
            .map(|c| c.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect())
            .collect();
        for name in data.actions.keys() {
            if base.morphism(name).is_none() {
                return Err(PresheafError::UnknownMorphism(name.clone()));
            }
        }
        let mut action = Vec::with_capacity(base.num_morphisms());
        for f in base.morphism_ids() {
            let (c, d) = (base.dom(f).0, base.cod(f).0);
            let table = data.actions.get(base.mor_name(f));
            let mut row = Vec::with_capacity(carriers[d].len());
            for y in &carriers[d] {
                let img = match table.and_then(|t| t.get(y)) {
                    Some(x) => x.as_str(),
                    None if base.is_identity(f) => y.as_str(),
                    None => {
                        return Err(PresheafError::MissingAction {
                            morphism: base.mor_name(f).to_string(),
                            element: y.clone(),
                        })
                    }
                };
                let i = index[c].get(img).ok_or_else(|| PresheafError::DanglingElement {
                    morphism: base.mor_name(f).to_string(),
                    object: base.obj_name(Obj(c)).to_string(),
                    element: img.to_string(),
                })?;
                row.push(*i);
            }
            if let Some(t) = table {
                if let Some(extra) = t.keys().find(|k| !index[d].contains_key(k.as_str())) {
                    return Err(PresheafError::DanglingElement {
                        morphism: base.mor_name(f).to_string(),
                        object: base.obj_name(Obj(d)).to_string(),
                        element: extra.clone(),
                    });
                }
            }
            action.push(row);
        }
        Presheaf::from_parts(base, carriers, action)
    }

    /// Canonical named form: every object listed, identity actions omitted.
    pub fn to_data(&self) -> PresheafData {
        let c = &self.base;
        let carriers = c
            .object_ids()
            .map(|o| (c.obj_name(o).to_string(), self.carriers[o.0].clone()))
            .collect();
        let actions = c
            .nonidentity_morphisms()
            .map(|f| {
                let (dom, cod) = (c.dom(f).0, c.cod(f).0);
                let table = self.action[f.0]
                    .iter()
                    .enumerate()
                    .map(|(y, &x)| (self.carriers[cod][y].clone(), self.carriers[dom][x].clone()))
                    .collect();
                (c.mor_name(f).to_string(), table)
            })
            .collect();
        PresheafData { actions, carriers }
    }

    pub fn empty(base: Arc<FinCat>) -> Presheaf {
        Presheaf {
            carriers: vec![Vec::new(); base.num_objects()],
            action: vec![Vec::new(); base.num_morphisms()],
            base,
        }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn carrier(&self, o: Obj) -> &[String] {
        &self.carriers[o.0]
    }

    pub fn carrier_of(&self, object: &str) -> Option<&[String]> {
        self.base.object(object).map(|o| self.carrier(o))
    }

    pub fn element_index(&self, o: Obj, name: &str) -> Option<usize> {
        self.carriers[o.0].binary_search_by(|e| e.as_str().cmp(name)).ok()
    }

    /// `X_f` as an index table from `X(cod f)` to `X(dom f)`.
    pub fn action(&self, f: Mor) -> &[usize] {
        &self.action[f.0]
    }

    /// `X_f(y)`.
    pub fn act(&self, f: Mor, y: usize) -> usize {
        self.action[f.0][y]
    }

    /// `X_f(y)` by names.
    pub fn act_named(&self, morphism: &str, element: &str) -> Option<&str> {
        let f = self.base.morphism(morphism)?;
        let y = self.element_index(self.base.cod(f), element)?;
        Some(&self.carriers[self.base.dom(f).0][self.act(f, y)])
    }

    pub fn num_elements(&self) -> usize {
        self.carriers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.num_elements() == 0
    }

    /// All elements as `(object, index)` pairs in object order.
    pub fn elements(&self) -> impl Iterator<Item = (Obj, usize)> + '_ {
        self.base
            .object_ids()
            .flat_map(move |o| (0..self.carriers[o.0].len()).map(move |i| (o, i)))
    }

    /// Applies a renaming of elements, given per object.
    pub fn renamed(&self, rename: impl Fn(Obj, usize, &str) -> String) -> Result<Presheaf, PresheafError> {
        let carriers = self
            .base
            .object_ids()
            .map(|o| {
                self.carriers[o.0]
                    .iter()
                    .enumerate()
                    .map(|(i, e)| rename(o, i, e))
                    .collect()
            })
            .collect();
        Presheaf::from_parts(self.base.clone(), carriers, self.action.clone())
    }

    /// Renames elements of object `c` to `c0, c1, …` (lowercased object
    /// name) in their current order.
    pub fn canonical_rename(&self) -> Presheaf {
        let base = self.base.clone();
        self.renamed(|o, i, _| format!("{}{}", base.obj_name(o).to_lowercase(), i))
            .expect("fresh names are distinct")
    }

    /// `X ∘ F` for a functor `F` into the base of `X`.
    pub fn restrict_along(&self, f: &Functor) -> Result<Presheaf, PresheafError> {
        if **f.target() != *self.base {
            return Err(PresheafError::BaseMismatch);
        }
        let src = f.source();
        let carriers = src.object_ids().map(|o| self.carriers[f.obj(o).0].clone()).collect();
        let action = src.morphism_ids().map(|m| self.action[f.mor(m).0].clone()).collect();
        Presheaf::from_parts(src.clone(), carriers, action)
    }

    /// The subpresheaf on the given element indices, which must be closed
    /// under every action.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<Presheaf, PresheafError> {
        let c = &self.base;
        let mut pos: Vec<HashMap<usize, usize>> = Vec::with_capacity(keep.len());
        for k in keep {
            pos.push(k.iter().enumerate().map(|(new, &old)| (old, new)).collect());
        }
        let carriers = c
            .object_ids()
            .map(|o| keep[o.0].iter().map(|&i| self.carriers[o.0][i].clone()).collect())
            .collect();
        let mut action = Vec::with_capacity(c.num_morphisms());
        for f in c.morphism_ids() {
            let (dom, cod) = (c.dom(f).0, c.cod(f).0);
            let row = keep[cod]
                .iter()
                .map(|&y| {
                    pos[dom]
                        .get(&self.act(f, y))
                        .copied()
                        .ok_or_else(|| PresheafError::NotClosed(c.mor_name(f).to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            action.push(row);
        }
        Presheaf::from_parts(c.clone(), carriers, action)
    }
}

/// The representable presheaf `Hom(-, c)`, with elements named after
/// morphisms.
pub fn yoneda(base: &Arc<FinCat>, c: Obj) -> Presheaf {
    let carriers = base
        .object_ids()
        .map(|d| base.hom(d, c).iter().map(|&m| base.mor_name(m).to_string()).collect())
        .collect();
    let action = base
        .morphism_ids()
        .map(|f| {
            let here = base.hom(base.dom(f), c);
            base.hom(base.cod(f), c)
                .iter()
                .map(|&sigma| {
                    let composite = base.comp(sigma, f);
                    here.iter().position(|&m| m == composite).unwrap()
                })
                .collect()
        })
        .collect();
    Presheaf::from_parts(base.clone(), carriers, action).expect("representables are presheaves")
}
