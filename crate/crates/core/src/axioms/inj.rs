use serde::Serialize;

use crate::fincat::FinCat;
use crate::presheaf::Presheaf;

/// `X_σ(x) = X_σ'(x)` for distinct `σ, σ': d → c` and `x ∈ X(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjViolation {
    pub object: String,
    pub element: String,
    pub sigma: String,
    pub sigma_prime: String,
}

/// `X_σ(x) = X_σ(y)` for distinct `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralInjViolation {
    pub morphism: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InjReport {
    pub violations: Vec<InjViolation>,
}

impl InjReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether every classifying map `yoneda(c) → X` is levelwise injective.
/// Reports every violating triple.
pub fn check_inj(c: &FinCat, x: &Presheaf) -> InjReport {
    let mut violations = Vec::new();
    for target in c.object_ids() {
        for (e, name) in x.carrier(target).iter().enumerate() {
            for d in c.object_ids() {
                let hom = c.hom(d, target);
                for (i, &s) in hom.iter().enumerate() {
                    for &s2 in &hom[i + 1..] {
                        if x.act(s, e) == x.act(s2, e) {
                            violations.push(InjViolation {
                                object: c.obj_name(target).to_string(),
                                element: name.clone(),
                                sigma: c.mor_name(s).to_string(),
                                sigma_prime: c.mor_name(s2).to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    InjReport { violations }
}

/// Injectivity of every action map, read literally. Not part of the model
/// verdict; see [`check_inj`].
pub fn check_inj_literal(c: &FinCat, x: &Presheaf) -> Vec<LiteralInjViolation> {
    let mut out = Vec::new();
    for f in c.morphism_ids() {
        let cod = c.cod(f);
        let table = x.action(f);
        for a in 0..table.len() {
            for b in a + 1..table.len() {
                if table[a] == table[b] {
                    out.push(LiteralInjViolation {
                        morphism: c.mor_name(f).to_string(),
                        x: x.carrier(cod)[a].clone(),
                        y: x.carrier(cod)[b].clone(),
                    });
                }
            }
        }
    }
    out
}
