use std::collections::HashSet;
use std::sync::Arc;

use super::{CompositeSpec, FinCat, FinCatError, Functor, MorphismSpec, Obj};

fn fresh(base: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Adds fresh objects with exactly one morphism to every object of `c0`
/// and to themselves. Returns the category and the new object names.
fn adjoin_initials(c0: &FinCat, labels: &[&str]) -> (FinCat, Vec<String>) {
    let spec = c0.to_spec();
    let mut taken: HashSet<String> = spec.objects.iter().cloned().collect();
    taken.extend(spec.morphisms.iter().map(|m| m.name.clone()));
    let mut out = spec.clone();
    let mut bottoms = Vec::new();
    for label in labels {
        let bot = fresh(label, &taken);
        taken.insert(bot.clone());
        let id = fresh(&format!("id_{bot}"), &taken);
        taken.insert(id.clone());
        out.objects.push(bot.clone());
        out.identities.insert(bot.clone(), id.clone());
        out.morphisms.push(MorphismSpec::new(&id, &bot, &bot));
        let mut arrow_to = std::collections::HashMap::new();
        for c in &spec.objects {
            let name = fresh(&format!("{bot}->{c}"), &taken);
            taken.insert(name.clone());
            out.morphisms.push(MorphismSpec::new(&name, &bot, c));
            arrow_to.insert(c.clone(), name);
        }
        for m in &spec.morphisms {
            if spec.identities.get(&m.dom) == Some(&m.name) {
                continue;
            }
            out.compose.push(CompositeSpec::new(&m.name, &arrow_to[&m.dom], &arrow_to[&m.cod]));
        }
        bottoms.push(bot);
    }
    let cat = FinCat::from_spec(&out).expect("freely adjoined initial objects give a category");
    (cat, bottoms)
}

/// `c0` with an initial object `bot` freely adjoined.
pub fn adjoin_initial(c0: &FinCat) -> FinCat {
    adjoin_initials(c0, &["bot"]).0
}

/// A category of the form `Σ𝒞₀`: two freely adjoined initial objects glued
/// along `𝒞₀`, remembered together with `𝒞₀` and its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionBase {
    pub category: Arc<FinCat>,
    pub base0: Arc<FinCat>,
    /// First and second adjoined initial object.
    pub bottoms: [Obj; 2],
    pub inclusion: Functor,
}

/// The suspension `Σ c0`.
pub fn suspension(c0: &FinCat) -> SuspensionBase {
    let (cat, _) = adjoin_initials(c0, &["bot1", "bot2"]);
    SuspensionBase::recognize(&cat).expect("a suspension is recognised as one")
}

impl SuspensionBase {
    /// Recognises `sc` as a suspension: exactly two objects receive no
    /// non-identity morphisms, neither maps to the other, and each has a
    /// unique morphism to every remaining object. The first bottom is the
    /// one with the smaller name.
    pub fn recognize(sc: &FinCat) -> Result<SuspensionBase, FinCatError> {
        let no_incoming: Vec<Obj> = sc
            .object_ids()
            .filter(|&b| sc.morphisms_into(b).all(|f| sc.is_identity(f)))
            .collect();
        let [b1, b2] = no_incoming[..] else {
            return Err(FinCatError::NotASuspensionBase(format!(
                "expected two objects without incoming morphisms, found {}",
                no_incoming.len()
            )));
        };
        let rest: Vec<Obj> = sc.object_ids().filter(|&o| o != b1 && o != b2).collect();
        for b in [b1, b2] {
            if sc.hom(b, b).len() != 1 {
                return Err(FinCatError::NotASuspensionBase(format!(
                    "`{}` has non-identity endomorphisms",
                    sc.obj_name(b)
                )));
            }
            if let Some(&c) = rest.iter().find(|&&c| sc.hom(b, c).len() != 1) {
                return Err(FinCatError::NotASuspensionBase(format!(
                    "`{}` does not have a unique morphism to `{}`",
                    sc.obj_name(b),
                    sc.obj_name(c)
                )));
            }
        }
        let (base0, _, mors) = sc.full_subcategory(&rest);
        let base0 = Arc::new(base0);
        let category = Arc::new(sc.clone());
        let inclusion = Functor::new(base0.clone(), category.clone(), rest, mors)?;
        Ok(SuspensionBase {
            category,
            base0,
            bottoms: [b1, b2],
            inclusion,
        })
    }

    /// Checks that the reduct base agrees with a separately supplied `𝒞₀`.
    pub fn check_base0(&self, c0: &FinCat) -> Result<(), FinCatError> {
        if *self.base0 == *c0 {
            Ok(())
        } else {
            Err(FinCatError::NotASuspensionBase(
                "the category without its two bottoms differs from the given base".into(),
            ))
        }
    }

    /// The unique morphism from bottom `i` (0 or 1) to an object of `𝒞₀`.
    pub fn coloring_morphism(&self, i: usize, c0_obj: Obj) -> super::Mor {
        let c = self.inclusion.obj(c0_obj);
        self.category.hom(self.bottoms[i], c)[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::parallel_pair;

    #[test]
    fn adjoin_initial_to_empty_is_terminal() {
        let c = adjoin_initial(&FinCat::empty());
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_morphisms(), 1);
    }

    #[test]
    fn adjoin_initial_to_parallel_pair() {
        let c = adjoin_initial(&parallel_pair());
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.nonidentity_morphisms().count(), 4);
        let (s, t) = (c.morphism("s").unwrap(), c.morphism("t").unwrap());
        let u = c.morphism("bot->V").unwrap();
        let w = c.morphism("bot->E").unwrap();
        assert_eq!(c.comp(s, u), w);
        assert_eq!(c.comp(t, u), w);
        assert!(c.is_category_of_monos());
    }

    #[test]
    fn suspension_of_parallel_pair() {
        let sb = suspension(&parallel_pair());
        let c = &sb.category;
        assert_eq!(c.num_objects(), 4);
        assert_eq!(c.nonidentity_morphisms().count(), 6);
        let composable = c
            .nonidentity_morphisms()
            .flat_map(|f| c.nonidentity_morphisms().map(move |g| (g, f)))
            .filter(|&(g, f)| c.compose(g, f).is_some())
            .count();
        assert_eq!(composable, 4);
        assert!(c.is_category_of_monos());
        assert_eq!(*sb.base0, parallel_pair());
        assert_eq!(c.obj_name(sb.bottoms[0]), "bot1");
    }

    #[test]
    fn suspension_of_empty_and_terminal() {
        let e = suspension(&FinCat::empty());
        assert_eq!(e.category.num_objects(), 2);
        assert_eq!(e.category.num_morphisms(), 2);
        let t = suspension(&FinCat::terminal());
        assert_eq!(t.category.num_objects(), 3);
        assert_eq!(t.category.nonidentity_morphisms().count(), 2);
        assert!(crate::fincat::Poset::from_category(&t.category).is_ok());
    }

    #[test]
    fn non_suspensions_are_rejected() {
        assert!(SuspensionBase::recognize(&parallel_pair()).is_err());
        assert!(SuspensionBase::recognize(&adjoin_initial(&parallel_pair())).is_err());
    }
}
