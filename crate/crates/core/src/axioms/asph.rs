use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::fincat::{
    collapse_power, sd_boundary_poset, Constraint, FinCat, FunctorSearch, MonotoneMap, Mor, Poset, PosetFunctor,
    SearchOutcome, Subdivision,
};
use crate::nervehom::nerve;
use crate::presheaf::{category_of_elements, ElementsCategory, Presheaf};

use super::{AxiomError, Bounds, Refutation};

type SubdivisionCache = Mutex<HashMap<(usize, usize), Arc<Subdivision>>>;
type CollapseCache = Mutex<HashMap<(usize, usize, usize), Arc<MonotoneMap>>>;

/// `sd^m ∂Δ[n] ⊂ sd^m Δ[n]`, built once per process.
fn subdivision(n: usize, m: usize) -> Arc<Subdivision> {
    static CACHE: OnceLock<SubdivisionCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(n, m)) {
        return s.clone();
    }
    let s = Arc::new(sd_boundary_poset(n, m).expect("m ≥ 1"));
    cache.lock().unwrap().entry((n, m)).or_insert(s).clone()
}

/// `p^l : sd^{k+l} ∂Δ[n] → sd^k ∂Δ[n]`, indexed like [`subdivision`].
fn collapse(n: usize, k: usize, l: usize) -> Arc<MonotoneMap> {
    static CACHE: OnceLock<CollapseCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(n, k, l)) {
        return p.clone();
    }
    let (sd, map) = collapse_power(&subdivision(n, k).boundary, l);
    assert_eq!(sd.names(), subdivision(n, k + l).boundary.names(), "iterated subdivisions agree");
    let map = Arc::new(map);
    cache.lock().unwrap().entry((n, k, l)).or_insert(map).clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AsphStatus {
    HoldsWithin { l: usize },
    Vacuous,
    RefutedExactly,
    ExhaustedBound,
}

/// A lift together with the least `l` at which it extends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftSolution {
    /// Objects of the category of elements hit by the lift.
    pub lift: Vec<String>,
    pub l: usize,
    /// The extension `sd^{k+l} Δ[n] → 𝒞 ↓ X`, when witnesses are kept.
    #[serde(skip)]
    pub extension: Option<PosetFunctor>,
}

/// A lift with no extension up to the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StuckLift {
    pub lift: Vec<String>,
    /// Present when no extension exists at any `l`.
    pub refutation: Option<Refutation>,
    /// Whether some search ran out of nodes rather than finishing.
    pub budget_hit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsphVerdict {
    pub status: AsphStatus,
    pub solved: Vec<LiftSolution>,
    pub stuck: Vec<StuckLift>,
}

impl AsphVerdict {
    fn from_outcomes(outcomes: Vec<Result<LiftSolution, StuckLift>>, complete: bool) -> AsphVerdict {
        if outcomes.is_empty() && complete {
            return AsphVerdict {
                status: AsphStatus::Vacuous,
                solved: Vec::new(),
                stuck: Vec::new(),
            };
        }
        let (mut solved, mut stuck) = (Vec::new(), Vec::new());
        for o in outcomes {
            match o {
                Ok(s) => solved.push(s),
                Err(s) => stuck.push(s),
            }
        }
        let status = if stuck.iter().any(|s| s.refutation.is_some()) {
            AsphStatus::RefutedExactly
        } else if !stuck.is_empty() || !complete {
            AsphStatus::ExhaustedBound
        } else {
            AsphStatus::HoldsWithin {
                l: solved.iter().map(|s| s.l).max().unwrap_or(0),
            }
        };
        AsphVerdict { status, solved, stuck }
    }
}

/// One instance `Asph_{n,k,F}`, identified by the objects `F` picks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsphInstance {
    pub n: usize,
    pub k: usize,
    pub functor_objects: Vec<String>,
    #[serde(skip)]
    pub functor: PosetFunctor,
    pub verdict: AsphVerdict,
}

/// All instances for one `(n, k)`. Instances whose `F` has no lift are
/// vacuous and only counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsphSweep {
    pub n: usize,
    pub k: usize,
    pub instances: Vec<AsphInstance>,
    /// Number of functors `sd^k ∂Δ[n] → 𝒞`, when counted within the budget.
    pub functor_count: Option<usize>,
    /// Lift enumeration stopped at the configured cap.
    pub lifts_truncated: bool,
}

impl AsphSweep {
    pub fn vacuous_instances(&self) -> Option<usize> {
        self.functor_count.map(|c| c - self.instances.len())
    }
}

/// Shared state for evaluating Asph instances on one presheaf.
pub struct AsphEngine {
    pub elements: ElementsCategory,
    one_dimensional: bool,
    component: Vec<usize>,
    node_budget: u64,
    keep_witnesses: bool,
}

impl AsphEngine {
    pub fn new(x: &Presheaf, node_budget: u64, keep_witnesses: bool) -> AsphEngine {
        let elements = category_of_elements(x);
        let el = &elements.category;
        let one_dimensional = nerve(el, 2).count(2) == 0;
        let mut component: Vec<usize> = (0..el.num_objects()).collect();
        fn root(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for f in el.nonidentity_morphisms() {
            let (a, b) = (root(&mut component, el.dom(f).0), root(&mut component, el.cod(f).0));
            component[a.max(b)] = a.min(b);
        }
        for i in 0..component.len() {
            component[i] = root(&mut component, i);
        }
        AsphEngine {
            elements,
            one_dimensional,
            component,
            node_budget,
            keep_witnesses,
        }
    }

    pub fn is_one_dimensional(&self) -> bool {
        self.one_dimensional
    }

    fn names(&self, lift: &PosetFunctor) -> Vec<String> {
        lift.objects.iter().map(|&o| self.elements.category.obj_name(o).to_string()).collect()
    }

    /// Sound refutations that hold for every `l`.
    fn exact_refutation(&self, n: usize, k: usize, lift: &PosetFunctor) -> Option<Refutation> {
        let el = &self.elements.category;
        match n {
            0 if el.num_objects() == 0 => Some(Refutation::EmptyElements),
            1 => {
                let (a, b) = (lift.objects[0], lift.objects[1]);
                (self.component[a.0] != self.component[b.0]).then(|| Refutation::Disconnected {
                    from: el.obj_name(a).to_string(),
                    to: el.obj_name(b).to_string(),
                })
            }
            2 if self.one_dimensional => {
                let word = reduced_loop(&subdivision(2, k).boundary, lift, el);
                (!word.is_empty()).then(|| Refutation::EssentialLoop {
                    word: word
                        .iter()
                        .map(|&(m, fwd)| {
                            let name = el.mor_name(m);
                            if fwd { name.to_string() } else { format!("{name}^-1") }
                        })
                        .collect(),
                })
            }
            _ => None,
        }
    }

    /// One bounded search for an extension of `lift` along
    /// `sd^{k+l} ∂Δ[n] ⊂ sd^{k+l} Δ[n]` restricting to `lift ∘ p^l`.
    pub fn extension_at(&self, n: usize, k: usize, lift: &PosetFunctor, l: usize) -> (Option<PosetFunctor>, SearchOutcome) {
        let el = &self.elements.category;
        let sub = subdivision(n, k + l);
        let fixed = lift.precompose(&collapse(n, k, l), &sub.boundary, &subdivision(n, k).boundary, el);
        let constraint = Constraint::new().fix_on(&sub.boundary, &sub.inclusion, &fixed, el);
        let found = FunctorSearch::new(&sub.simplex, el)
            .constraint(constraint)
            .budget(self.node_budget)
            .first();
        found
    }

    /// Searches `l = 0..=max_l` for an extension of `lift` along
    /// `sd^{k+l} ∂Δ[n] ⊂ sd^{k+l} Δ[n]` restricting to `lift ∘ p^l`.
    pub fn solve(&self, n: usize, k: usize, lift: &PosetFunctor, max_l: usize) -> Result<LiftSolution, StuckLift> {
        if let Some(r) = self.exact_refutation(n, k, lift) {
            return Err(StuckLift {
                lift: self.names(lift),
                refutation: Some(r),
                budget_hit: false,
            });
        }
        let mut budget_hit = false;
        for l in 0..=max_l {
            let (found, outcome) = self.extension_at(n, k, lift, l);
            if let Some(g) = found {
                return Ok(LiftSolution {
                    lift: self.names(lift),
                    l,
                    extension: self.keep_witnesses.then_some(g),
                });
            }
            budget_hit |= outcome == SearchOutcome::BudgetExhausted;
        }
        Err(StuckLift {
            lift: self.names(lift),
            refutation: None,
            budget_hit,
        })
    }

    /// Every instance for one `(n, k)`: lifts are enumerated as functors
    /// into the category of elements and grouped by their projection.
    pub fn sweep(&self, base: &FinCat, n: usize, k: usize, max_l: usize, max_lifts: usize) -> AsphSweep {
        let el = &self.elements.category;
        let shape = &subdivision(n, k).boundary;
        let mut lifts = Vec::new();
        let mut truncated = false;
        FunctorSearch::new(shape, el).for_each(|f| {
            if lifts.len() == max_lifts {
                truncated = true;
                return ControlFlow::Break(());
            }
            lifts.push(f.clone());
            ControlFlow::Continue(())
        });
        let outcomes: Vec<_> = lifts.par_iter().map(|lift| self.solve(n, k, lift, max_l)).collect();
        let mut groups: BTreeMap<PosetFunctor, Vec<Result<LiftSolution, StuckLift>>> = BTreeMap::new();
        for (lift, outcome) in lifts.iter().zip(outcomes) {
            groups.entry(lift.then(&self.elements.projection)).or_default().push(outcome);
        }
        let instances = groups
            .into_iter()
            .map(|(functor, outcomes)| AsphInstance {
                n,
                k,
                functor_objects: functor.objects.iter().map(|&o| base.obj_name(o).to_string()).collect(),
                functor,
                verdict: AsphVerdict::from_outcomes(outcomes, !truncated),
            })
            .collect();
        let mut count = 0usize;
        let outcome = FunctorSearch::new(shape, base).budget(self.node_budget).for_each(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        AsphSweep {
            n,
            k,
            instances,
            functor_count: (outcome == SearchOutcome::Completed).then_some(count),
            lifts_truncated: truncated,
        }
    }
}

/// The closed walk traced by `lift` on the cycle `sd^k ∂Δ[2]`, freely and
/// cyclically reduced. Identity steps are dropped.
fn reduced_loop(shape: &Poset, lift: &PosetFunctor, el: &FinCat) -> Vec<(Mor, bool)> {
    let mut word: Vec<(Mor, bool)> = Vec::new();
    let (mut prev, mut cur) = (usize::MAX, 0usize);
    for _ in 0..shape.len() {
        let next = shape
            .covers_above(cur)
            .iter()
            .chain(shape.covers_below(cur))
            .copied()
            .find(|&v| v != prev)
            .expect("the boundary of a triangle is a cycle");
        let step = if shape.lt(cur, next) {
            (lift.arrow(shape, el, cur, next), true)
        } else {
            (lift.arrow(shape, el, next, cur), false)
        };
        if !el.is_identity(step.0) {
            if word.last() == Some(&(step.0, !step.1)) {
                word.pop();
            } else {
                word.push(step);
            }
        }
        prev = cur;
        cur = next;
    }
    while word.len() >= 2 && word[0].0 == word[word.len() - 1].0 && word[0].1 != word[word.len() - 1].1 {
        word.pop();
        word.remove(0);
    }
    word
}

/// `Asph_{n,k,F}` for a single functor `F: sd^k ∂Δ[n] → 𝒞`.
pub fn check_asph(
    c: &FinCat,
    x: &Presheaf,
    n: usize,
    k: usize,
    f: &PosetFunctor,
    max_l: usize,
    bounds: &Bounds,
) -> Result<AsphVerdict, AxiomError> {
    if **x.base() != *c {
        return Err(AxiomError::BaseMismatch);
    }
    if k == 0 {
        return Err(AxiomError::Bounds("k must be at least 1".into()));
    }
    bounds.check_shape(n, k + max_l)?;
    let shape = &subdivision(n, k).boundary;
    f.validate(shape, c)?;
    let engine = AsphEngine::new(x, bounds.node_budget, bounds.keep_witnesses);
    let el = &engine.elements;
    let mut constraint = Constraint::new();
    for (i, &o) in f.objects.iter().enumerate() {
        let fibre = (0..x.carrier(o).len()).map(|e| el.object(o, e)).collect();
        constraint = constraint.allow_objects(i, fibre);
    }
    let projection = &el.projection;
    let constraint = constraint.filter_arrows(move |lo, hi, m| projection.mor(m) == f.arrow(shape, c, lo, hi));
    let lifts = FunctorSearch::new(shape, &el.category).constraint(constraint).collect();
    let outcomes = lifts.par_iter().map(|lift| engine.solve(n, k, lift, max_l)).collect();
    Ok(AsphVerdict::from_outcomes(outcomes, true))
}
