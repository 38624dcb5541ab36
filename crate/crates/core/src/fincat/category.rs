use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FinCatError;

/// Index of an object inside a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism inside a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

impl Obj {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Mor {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Raw, name-based description of a finite category.
///
/// Composites with an identity on either side may be omitted; they are
/// filled in during validation. Every other composable pair must be listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    #[serde(default)]
    pub compose: Vec<CompositeSpec>,
    pub identities: BTreeMap<String, String>,
    pub morphisms: Vec<MorphismSpec>,
    pub objects: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub cod: String,
    pub dom: String,
    pub name: String,
}

/// `result = g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeSpec {
    pub f: String,
    pub g: String,
    pub result: String,
}

impl MorphismSpec {
    pub fn new(name: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        MorphismSpec {
            cod: cod.into(),
            dom: dom.into(),
            name: name.into(),
        }
    }
}

impl CompositeSpec {
    pub fn new(g: impl Into<String>, f: impl Into<String>, result: impl Into<String>) -> Self {
        CompositeSpec {
            f: f.into(),
            g: g.into(),
            result: result.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// A validated finite category with an explicit composition table.
///
/// Objects are stored sorted by name and morphisms sorted by name, so two
/// descriptions of the same category (up to list order) validate to equal
/// values.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<Mor>,
    // indexed by g * m + f
    compose: Vec<Option<Mor>>,
    // indexed by a * n + b
    homs: Vec<Vec<Mor>>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl FinCat {
    /// Validates a raw description, reporting the first violated axiom.
    pub fn from_spec(spec: &CategorySpec) -> Result<FinCat, FinCatError> {
        let mut objects = spec.objects.clone();
        objects.sort();
        if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
            return Err(FinCatError::DuplicateName(w[0].clone()));
        }
        let obj_index: HashMap<String, Obj> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), Obj(i)))
            .collect();
        let lookup_obj = |name: &str| {
            obj_index
                .get(name)
                .copied()
                .ok_or_else(|| FinCatError::DanglingReference(name.to_string()))
        };

        let mut raw_mors = spec.morphisms.clone();
        raw_mors.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = raw_mors.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(FinCatError::DuplicateName(w[0].name.clone()));
        }
        let mut morphisms = Vec::with_capacity(raw_mors.len());
        for m in &raw_mors {
            morphisms.push(MorphismData {
                name: m.name.clone(),
                dom: lookup_obj(&m.dom)?,
                cod: lookup_obj(&m.cod)?,
            });
        }
        let mor_index: HashMap<String, Mor> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.clone(), Mor(i)))
            .collect();
        let lookup_mor = |name: &str| {
            mor_index
                .get(name)
                .copied()
                .ok_or_else(|| FinCatError::DanglingReference(name.to_string()))
        };

        let n = objects.len();
        let m = morphisms.len();

        let mut identities = vec![None; n];
        for (o, id) in &spec.identities {
            let o = lookup_obj(o)?;
            let id = lookup_mor(id)?;
            let data = &morphisms[id.0];
            if data.dom != o || data.cod != o {
                return Err(FinCatError::IdentityViolation(format!(
                    "identity `{}` of `{}` is not an endomorphism of it",
                    data.name, objects[o.0]
                )));
            }
            identities[o.0] = Some(id);
        }
        let identities: Vec<Mor> = identities
            .into_iter()
            .enumerate()
            .map(|(i, id)| {
                id.ok_or_else(|| {
                    FinCatError::IdentityViolation(format!("object `{}` has no identity", objects[i]))
                })
            })
            .collect::<Result<_, _>>()?;
        let id_set: HashSet<Mor> = identities.iter().copied().collect();

        let mut compose: Vec<Option<Mor>> = vec![None; m * m];
        for entry in &spec.compose {
            let g = lookup_mor(&entry.g)?;
            let f = lookup_mor(&entry.f)?;
            let r = lookup_mor(&entry.result)?;
            let (gd, fd, rd) = (&morphisms[g.0], &morphisms[f.0], &morphisms[r.0]);
            if fd.cod != gd.dom {
                return Err(FinCatError::NotComposable {
                    g: gd.name.clone(),
                    f: fd.name.clone(),
                });
            }
            if rd.dom != fd.dom || rd.cod != gd.cod {
                return Err(FinCatError::CompositeTypeMismatch {
                    g: gd.name.clone(),
                    f: fd.name.clone(),
                    result: rd.name.clone(),
                });
            }
            if id_set.contains(&g) && r != f || id_set.contains(&f) && r != g {
                return Err(FinCatError::IdentityViolation(format!(
                    "{} ∘ {} is declared as {}",
                    gd.name, fd.name, rd.name
                )));
            }
            let slot = &mut compose[g.0 * m + f.0];
            match slot {
                Some(prev) if *prev != r => {
                    return Err(FinCatError::ConflictingComposite {
                        g: gd.name.clone(),
                        f: fd.name.clone(),
                    })
                }
                _ => *slot = Some(r),
            }
        }
        for (fi, fd) in morphisms.iter().enumerate() {
            compose[identities[fd.cod.0].0 * m + fi] = Some(Mor(fi));
            compose[fi * m + identities[fd.dom.0].0] = Some(Mor(fi));
        }
        for (gi, gd) in morphisms.iter().enumerate() {
            for (fi, fd) in morphisms.iter().enumerate() {
                if fd.cod == gd.dom && compose[gi * m + fi].is_none() {
                    return Err(FinCatError::MissingComposite {
                        g: gd.name.clone(),
                        f: fd.name.clone(),
                    });
                }
            }
        }

        let mut homs = vec![Vec::new(); n * n];
        for (i, d) in morphisms.iter().enumerate() {
            homs[d.dom.0 * n + d.cod.0].push(Mor(i));
        }

        let cat = FinCat {
            objects,
            morphisms,
            identities,
            compose,
            homs,
            obj_index,
            mor_index,
        };
        cat.check_associativity()?;
        Ok(cat)
    }

    fn check_associativity(&self) -> Result<(), FinCatError> {
        for f in self.morphism_ids() {
            let b = self.cod(f);
            for g in self.out_of(b) {
                let gf = self.comp(g, f);
                for h in self.out_of(self.cod(g)) {
                    let left = self.comp(self.comp(h, g), f);
                    let right = self.comp(h, gf);
                    if left != right {
                        return Err(FinCatError::AssociativityViolation {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical raw description: sorted lists, identity composites omitted.
    pub fn to_spec(&self) -> CategorySpec {
        let mut compose = Vec::new();
        for g in self.morphism_ids() {
            for f in self.morphism_ids() {
                if self.is_identity(g) || self.is_identity(f) {
                    continue;
                }
                if let Some(r) = self.compose(g, f) {
                    compose.push(CompositeSpec::new(
                        self.mor_name(g),
                        self.mor_name(f),
                        self.mor_name(r),
                    ));
                }
            }
        }
        compose.sort();
        CategorySpec {
            compose,
            identities: self
                .object_ids()
                .map(|o| (self.obj_name(o).to_string(), self.mor_name(self.identity(o)).to_string()))
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|d| MorphismSpec::new(&d.name, self.obj_name(d.dom), self.obj_name(d.cod)))
                .collect(),
            objects: self.objects.clone(),
        }
    }

    pub fn empty() -> FinCat {
        FinCat::from_spec(&CategorySpec::default()).expect("empty category is valid")
    }

    /// The category with one object `*` and only its identity.
    pub fn terminal() -> FinCat {
        let spec = CategorySpec {
            compose: vec![],
            identities: [("*".to_string(), "id_*".to_string())].into_iter().collect(),
            morphisms: vec![MorphismSpec::new("id_*", "*", "*")],
            objects: vec!["*".to_string()],
        };
        FinCat::from_spec(&spec).expect("terminal category is valid")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn nonidentity_morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        self.morphism_ids().filter(move |&f| !self.is_identity(f))
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn object(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn dom(&self, f: Mor) -> Obj {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: Mor) -> Obj {
        self.morphisms[f.0].cod
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.dom(f).0] == f
    }

    /// `g ∘ f`, or `None` when `cod f ≠ dom g`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose[g.0 * self.morphisms.len() + f.0]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f).unwrap_or_else(|| {
            panic!("{} ∘ {} is not composable", self.mor_name(g), self.mor_name(f))
        })
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn has_hom(&self, a: Obj, b: Obj) -> bool {
        !self.hom(a, b).is_empty()
    }

    /// Morphisms with domain `a`.
    pub fn out_of(&self, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.object_ids().flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Morphisms with codomain `b`.
    pub fn morphisms_into(&self, b: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.object_ids().flat_map(move |a| self.hom(a, b).iter().copied())
    }

    /// Left-cancellability of `f` inside this category.
    pub fn is_monomorphism(&self, f: Mor) -> bool {
        let d = self.dom(f);
        self.object_ids().all(|x| {
            let maps = self.hom(x, d);
            let mut seen = HashSet::with_capacity(maps.len());
            maps.iter().all(|&g| seen.insert(self.comp(f, g)))
        })
    }

    pub fn is_category_of_monos(&self) -> bool {
        self.morphism_ids().all(|f| self.is_monomorphism(f))
    }

    /// At most one morphism between any two objects.
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// An object receiving exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<Obj> {
        self.object_ids()
            .find(|&t| self.object_ids().all(|a| self.hom(a, t).len() == 1))
    }

    /// Full subcategory on `keep` (in any order) with its inclusion functor
    /// data: the object and morphism indices of `self` that survive.
    pub fn full_subcategory(&self, keep: &[Obj]) -> (FinCat, Vec<Obj>, Vec<Mor>) {
        let keep_set: HashSet<Obj> = keep.iter().copied().collect();
        let mut spec = self.to_spec();
        spec.objects.retain(|o| keep_set.contains(&self.object(o).unwrap()));
        spec.identities.retain(|o, _| keep_set.contains(&self.object(o).unwrap()));
        let kept_mor = |name: &str| {
            let f = self.morphism(name).unwrap();
            keep_set.contains(&self.dom(f)) && keep_set.contains(&self.cod(f))
        };
        spec.morphisms.retain(|m| kept_mor(&m.name));
        spec.compose.retain(|c| kept_mor(&c.f) && kept_mor(&c.g));
        let sub = FinCat::from_spec(&spec).expect("full subcategory of a valid category");
        let objs = sub.object_ids().map(|o| self.object(sub.obj_name(o)).unwrap()).collect();
        let mors = sub
            .morphism_ids()
            .map(|f| self.morphism(sub.mor_name(f)).unwrap())
            .collect();
        (sub, objs, mors)
    }

    /// Applies a renaming of objects and morphisms; the result is
    /// isomorphic to `self`.
    pub fn renamed(
        &self,
        obj: impl Fn(&str) -> String,
        mor: impl Fn(&str) -> String,
    ) -> Result<FinCat, FinCatError> {
        let spec = self.to_spec();
        let renamed = CategorySpec {
            compose: spec
                .compose
                .iter()
                .map(|c| CompositeSpec::new(mor(&c.g), mor(&c.f), mor(&c.result)))
                .collect(),
            identities: spec.identities.iter().map(|(o, i)| (obj(o), mor(i))).collect(),
            morphisms: spec
                .morphisms
                .iter()
                .map(|m| MorphismSpec::new(mor(&m.name), obj(&m.dom), obj(&m.cod)))
                .collect(),
            objects: spec.objects.iter().map(|o| obj(o)).collect(),
        };
        FinCat::from_spec(&renamed)
    }
}

/// Builds a [`CategorySpec`] for a category where every listed composite
/// is given explicitly; mostly a convenience for tests and generators.
pub fn spec_from_parts(
    objects: &[&str],
    morphisms: &[(&str, &str, &str)],
    identities: &[(&str, &str)],
    compose: &[(&str, &str, &str)],
) -> CategorySpec {
    CategorySpec {
        compose: compose
            .iter()
            .map(|(g, f, r)| CompositeSpec::new(*g, *f, *r))
            .collect(),
        identities: identities
            .iter()
            .map(|(o, i)| (o.to_string(), i.to_string()))
            .collect(),
        morphisms: morphisms
            .iter()
            .map(|(n, d, c)| MorphismSpec::new(*n, *d, *c))
            .collect(),
        objects: objects.iter().map(|o| o.to_string()).collect(),
    }
}

/// The walking parallel pair `V ⇉ E`, whose presheaves are directed
/// multigraphs.
pub fn parallel_pair() -> FinCat {
    FinCat::from_spec(&spec_from_parts(
        &["V", "E"],
        &[("id_V", "V", "V"), ("id_E", "E", "E"), ("s", "V", "E"), ("t", "V", "E")],
        &[("V", "id_V"), ("E", "id_E")],
        &[],
    ))
    .expect("V ⇉ E is valid")
}

/// Sets of cardinality one or two with injections: `V ⇉ E` together with
/// the swap `τ` on `E`. Presheaves are graphs with an edge involution.
pub fn involution_pair() -> FinCat {
    FinCat::from_spec(&spec_from_parts(
        &["V", "E"],
        &[
            ("id_V", "V", "V"),
            ("id_E", "E", "E"),
            ("s", "V", "E"),
            ("t", "V", "E"),
            ("tau", "E", "E"),
        ],
        &[("V", "id_V"), ("E", "id_E")],
        &[("tau", "s", "t"), ("tau", "t", "s"), ("tau", "tau", "id_E")],
    ))
    .expect("involution category is valid")
}
