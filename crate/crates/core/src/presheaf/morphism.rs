use std::sync::Arc;

use crate::fincat::Obj;

use super::{yoneda, Presheaf, PresheafError};

/// A natural transformation between presheaves over the same base, stored
/// as one index table per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMorphism {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    /// Validates shapes and every naturality square.
    pub fn new(source: Presheaf, target: Presheaf, components: Vec<Vec<usize>>) -> Result<Self, PresheafError> {
        if source.base() != target.base() {
            return Err(PresheafError::BaseMismatch);
        }
        let c = source.base().clone();
        for o in c.object_ids() {
            let comp = &components[o.0];
            if comp.len() != source.carrier(o).len() || comp.iter().any(|&y| y >= target.carrier(o).len()) {
                return Err(PresheafError::NotNatural {
                    morphism: c.mor_name(c.identity(o)).to_string(),
                    element: "<component out of range>".into(),
                });
            }
        }
        for f in c.nonidentity_morphisms() {
            let (a, b) = (c.dom(f).0, c.cod(f).0);
            for x in 0..source.carrier(Obj(b)).len() {
                if components[a][source.act(f, x)] != target.act(f, components[b][x]) {
                    return Err(PresheafError::NotNatural {
                        morphism: c.mor_name(f).to_string(),
                        element: source.carrier(Obj(b))[x].clone(),
                    });
                }
            }
        }
        Ok(PresheafMorphism {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: &Presheaf) -> PresheafMorphism {
        let components = x.base().object_ids().map(|o| (0..x.carrier(o).len()).collect()).collect();
        PresheafMorphism {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn component(&self, o: Obj) -> &[usize] {
        &self.components[o.0]
    }

    /// Levelwise injective; for presheaves this is what a strong embedding
    /// amounts to.
    pub fn is_strong_embedding(&self) -> bool {
        self.source.base().object_ids().all(|o| {
            let mut seen = vec![false; self.target.carrier(o).len()];
            self.components[o.0].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    /// Levelwise surjective.
    pub fn is_surjective(&self) -> bool {
        self.source.base().object_ids().all(|o| {
            let mut hit = vec![false; self.target.carrier(o).len()];
            for &y in &self.components[o.0] {
                hit[y] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PresheafMorphism) -> Result<PresheafMorphism, PresheafError> {
        if self.target != other.source {
            return Err(PresheafError::BaseMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
            .collect();
        Ok(PresheafMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        })
    }
}

/// The morphism `yoneda(c) → X` classifying `x ∈ X(c)`: `σ ↦ X_σ(x)`.
pub fn classifying_morphism(x: &Presheaf, c: Obj, elem: usize) -> PresheafMorphism {
    let base = x.base().clone();
    let rep = yoneda(&base, c);
    let components = base
        .object_ids()
        .map(|d| {
            rep.carrier(d)
                .iter()
                .map(|name| x.act(base.morphism(name).unwrap(), elem))
                .collect()
        })
        .collect();
    PresheafMorphism::new(rep, x.clone(), components).expect("classifying maps are natural")
}

/// Every natural transformation `a → b`, in lexicographic order of the
/// component tables. Refuses when the carriers together exceed `bound`
/// elements.
pub fn natural_transformations(
    a: &Presheaf,
    b: &Presheaf,
    bound: usize,
) -> Result<Vec<PresheafMorphism>, PresheafError> {
    if a.base() != b.base() {
        return Err(PresheafError::BaseMismatch);
    }
    if a.num_elements() + b.num_elements() > bound {
        return Err(PresheafError::TooLarge(bound));
    }
    let base: Arc<_> = a.base().clone();
    let elems: Vec<(Obj, usize)> = a.elements().collect();
    let mut assign: Vec<Vec<Option<usize>>> =
        base.object_ids().map(|o| vec![None; a.carrier(o).len()]).collect();
    let mut out = Vec::new();

    fn consistent(a: &Presheaf, b: &Presheaf, assign: &[Vec<Option<usize>>], o: Obj, x: usize) -> bool {
        let base = a.base();
        let img = assign[o.0][x].unwrap();
        // squares where (o, x) is the element acted on
        for f in base.morphisms_into(o) {
            let d = base.dom(f);
            if let Some(lhs) = assign[d.0][a.act(f, x)] {
                if lhs != b.act(f, img) {
                    return false;
                }
            }
        }
        // squares where (o, x) is the result of an action
        for f in base.out_of(o) {
            let e = base.cod(f);
            for z in 0..a.carrier(e).len() {
                if a.act(f, z) == x {
                    if let Some(zi) = assign[e.0][z] {
                        if b.act(f, zi) != img {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn go(
        i: usize,
        elems: &[(Obj, usize)],
        a: &Presheaf,
        b: &Presheaf,
        assign: &mut Vec<Vec<Option<usize>>>,
        out: &mut Vec<PresheafMorphism>,
    ) {
        let Some(&(o, x)) = elems.get(i) else {
            let components = assign.iter().map(|c| c.iter().map(|v| v.unwrap()).collect()).collect();
            out.push(PresheafMorphism {
                source: a.clone(),
                target: b.clone(),
                components,
            });
            return;
        };
        for y in 0..b.carrier(o).len() {
            assign[o.0][x] = Some(y);
            if consistent(a, b, assign, o, x) {
                go(i + 1, elems, a, b, assign, out);
            }
        }
        assign[o.0][x] = None;
    }

    go(0, &elems, a, b, &mut assign, &mut out);
    Ok(out)
}
