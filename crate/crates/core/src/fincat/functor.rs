use std::sync::Arc;

use super::{FinCat, FinCatError, Mor, Obj};

/// A functor between finite categories, validated exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    on_objects: Vec<Obj>,
    on_morphisms: Vec<Mor>,
}

impl Functor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        on_objects: Vec<Obj>,
        on_morphisms: Vec<Mor>,
    ) -> Result<Functor, FinCatError> {
        if on_objects.len() != source.num_objects() || on_morphisms.len() != source.num_morphisms() {
            return Err(FinCatError::FunctorViolation("assignment has the wrong length".into()));
        }
        if on_objects.iter().any(|o| o.0 >= target.num_objects())
            || on_morphisms.iter().any(|f| f.0 >= target.num_morphisms())
        {
            return Err(FinCatError::FunctorViolation("assignment leaves the target".into()));
        }
        for f in source.morphism_ids() {
            let img = on_morphisms[f.0];
            if target.dom(img) != on_objects[source.dom(f).0]
                || target.cod(img) != on_objects[source.cod(f).0]
            {
                return Err(FinCatError::FunctorViolation(format!(
                    "`{}` is sent to `{}` with mismatched endpoints",
                    source.mor_name(f),
                    target.mor_name(img)
                )));
            }
        }
        for o in source.object_ids() {
            if on_morphisms[source.identity(o).0] != target.identity(on_objects[o.0]) {
                return Err(FinCatError::FunctorViolation(format!(
                    "identity of `{}` is not preserved",
                    source.obj_name(o)
                )));
            }
        }
        for f in source.morphism_ids() {
            for g in source.out_of(source.cod(f)) {
                let gf = source.comp(g, f);
                if on_morphisms[gf.0] != target.comp(on_morphisms[g.0], on_morphisms[f.0]) {
                    return Err(FinCatError::FunctorViolation(format!(
                        "composite {} ∘ {} is not preserved",
                        source.mor_name(g),
                        source.mor_name(f)
                    )));
                }
            }
        }
        Ok(Functor {
            source,
            target,
            on_objects,
            on_morphisms,
        })
    }

    pub fn identity(c: Arc<FinCat>) -> Functor {
        Functor {
            on_objects: c.object_ids().collect(),
            on_morphisms: c.morphism_ids().collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.on_objects[o.0]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.on_morphisms[f.0]
    }

    pub fn on_objects(&self) -> &[Obj] {
        &self.on_objects
    }

    pub fn on_morphisms(&self) -> &[Mor] {
        &self.on_morphisms
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Result<Functor, FinCatError> {
        if self.target != other.source {
            return Err(FinCatError::FunctorViolation("functors are not composable".into()));
        }
        Ok(Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            on_objects: self.on_objects.iter().map(|&o| other.obj(o)).collect(),
            on_morphisms: self.on_morphisms.iter().map(|&f| other.mor(f)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{parallel_pair, involution_pair};

    #[test]
    fn identity_functor_validates() {
        let c = Arc::new(involution_pair());
        let id = Functor::identity(c.clone());
        let again = Functor::new(c.clone(), c, id.on_objects().to_vec(), id.on_morphisms().to_vec());
        assert_eq!(again.unwrap(), id);
    }

    #[test]
    fn inclusion_of_parallel_pair() {
        let src = Arc::new(parallel_pair());
        let tgt = Arc::new(involution_pair());
        let objs = src.object_ids().map(|o| tgt.object(src.obj_name(o)).unwrap()).collect();
        let mors = src.morphism_ids().map(|f| tgt.morphism(src.mor_name(f)).unwrap()).collect();
        assert!(Functor::new(src.clone(), tgt.clone(), objs, mors).is_ok());

        // s ↦ τ does not respect the domain of s
        let objs = src.object_ids().map(|o| tgt.object(src.obj_name(o)).unwrap()).collect();
        let mut mors: Vec<Mor> =
            src.morphism_ids().map(|f| tgt.morphism(src.mor_name(f)).unwrap()).collect();
        mors[src.morphism("s").unwrap().0] = tgt.morphism("tau").unwrap();
        assert!(Functor::new(src, tgt, objs, mors).is_err());
    }

    #[test]
    fn composite_must_be_preserved() {
        // τ ↦ id_E would force s = τ∘t ↦ t, contradicting s ↦ s.
        let c = Arc::new(involution_pair());
        let mut mors: Vec<Mor> = c.morphism_ids().collect();
        mors[c.morphism("tau").unwrap().0] = c.morphism("id_E").unwrap();
        let objs = c.object_ids().collect();
        assert!(Functor::new(c.clone(), c, objs, mors).is_err());
    }
}
