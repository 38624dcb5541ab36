//! Backtracking enumeration of functors from a finite poset into a finite
//! category.
//!
//! Elements are assigned in the poset's fixed linear extension. When an
//! element is placed, a morphism is chosen for each covering relation below
//! it and the arrows to every other lower element are derived by
//! composition; disagreement between two derivations prunes the branch.
//! Upper neighbours have their candidate objects filtered as soon as a
//! lower element is fixed.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;

use super::{FinCat, FinCatError, Functor, MonotoneMap, Mor, Obj, Poset};

/// A functor from a poset: an object per element and, for every strict
/// relation `lo < hi`, a morphism `F(lo) → F(hi)`. `arrows[hi]` is aligned
/// with `poset.below(hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetFunctor {
    pub objects: Vec<Obj>,
    pub arrows: Vec<Vec<Mor>>,
}

impl PosetFunctor {
    pub fn arrow(&self, poset: &Poset, cat: &FinCat, lo: usize, hi: usize) -> Mor {
        if lo == hi {
            return cat.identity(self.objects[lo]);
        }
        let idx = poset
            .below(hi)
            .binary_search(&lo)
            .unwrap_or_else(|_| panic!("{} is not below {}", poset.name(lo), poset.name(hi)));
        self.arrows[hi][idx]
    }

    pub fn validate(&self, poset: &Poset, cat: &FinCat) -> Result<(), FinCatError> {
        if self.objects.len() != poset.len() || self.arrows.len() != poset.len() {
            return Err(FinCatError::FunctorViolation("assignment has the wrong length".into()));
        }
        for hi in 0..poset.len() {
            if self.arrows[hi].len() != poset.below(hi).len() {
                return Err(FinCatError::FunctorViolation("arrow table has the wrong shape".into()));
            }
            for (&lo, &m) in poset.below(hi).iter().zip(&self.arrows[hi]) {
                if cat.dom(m) != self.objects[lo] || cat.cod(m) != self.objects[hi] {
                    return Err(FinCatError::FunctorViolation(format!(
                        "arrow for {} ≤ {} has mismatched endpoints",
                        poset.name(lo),
                        poset.name(hi)
                    )));
                }
            }
        }
        for hi in 0..poset.len() {
            for &mid in poset.below(hi) {
                for &lo in poset.below(mid) {
                    let via = cat.comp(self.arrow(poset, cat, mid, hi), self.arrow(poset, cat, lo, mid));
                    if via != self.arrow(poset, cat, lo, hi) {
                        return Err(FinCatError::FunctorViolation(format!(
                            "{} ≤ {} ≤ {} does not compose",
                            poset.name(lo),
                            poset.name(mid),
                            poset.name(hi)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ∘ φ` for a monotone `φ: source → poset`.
    pub fn precompose(&self, phi: &MonotoneMap, source: &Poset, poset: &Poset, cat: &FinCat) -> PosetFunctor {
        let objects = phi.image.iter().map(|&x| self.objects[x]).collect();
        let arrows = (0..source.len())
            .map(|hi| {
                source
                    .below(hi)
                    .iter()
                    .map(|&lo| self.arrow(poset, cat, phi.apply(lo), phi.apply(hi)))
                    .collect()
            })
            .collect();
        PosetFunctor { objects, arrows }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Functor) -> PosetFunctor {
        PosetFunctor {
            objects: self.objects.iter().map(|&o| g.obj(o)).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|row| row.iter().map(|&m| g.mor(m)).collect())
                .collect(),
        }
    }

    /// The same data as a functor out of [`Poset::to_category`].
    pub fn to_functor(&self, poset: &Poset, cat: Arc<FinCat>) -> Result<Functor, FinCatError> {
        let source = Arc::new(poset.to_category());
        let on_objects = source
            .object_ids()
            .map(|o| self.objects[poset.index_of(source.obj_name(o)).unwrap()])
            .collect();
        let on_morphisms = source
            .morphism_ids()
            .map(|f| {
                let lo = poset.index_of(source.obj_name(source.dom(f))).unwrap();
                let hi = poset.index_of(source.obj_name(source.cod(f))).unwrap();
                self.arrow(poset, &cat, lo, hi)
            })
            .collect();
        Functor::new(source, cat, on_objects, on_morphisms)
    }
}

type ArrowFilter<'a> = dyn Fn(usize, usize, Mor) -> bool + Send + Sync + 'a;

/// Restrictions on the functors produced by a [`FunctorSearch`].
#[derive(Default)]
pub struct Constraint<'a> {
    objects: HashMap<usize, Vec<Obj>>,
    arrows: HashMap<(usize, usize), Mor>,
    filter: Option<Box<ArrowFilter<'a>>>,
}

impl<'a> Constraint<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fix_object(mut self, element: usize, obj: Obj) -> Self {
        self.objects.insert(element, vec![obj]);
        self
    }

    /// Restricts an element to the listed objects (in the listed order).
    pub fn allow_objects(mut self, element: usize, objs: Vec<Obj>) -> Self {
        self.objects.insert(element, objs);
        self
    }

    pub fn fix_arrow(mut self, lo: usize, hi: usize, m: Mor) -> Self {
        self.arrows.insert((lo, hi), m);
        self
    }

    /// Only arrows accepted by `filter(lo, hi, m)` are used.
    pub fn filter_arrows(mut self, filter: impl Fn(usize, usize, Mor) -> bool + Send + Sync + 'a) -> Self {
        self.filter = Some(Box::new(filter));
        self
    }

    /// Requires the functor to restrict to `fixed` along `inclusion`.
    pub fn fix_on(
        mut self,
        sub: &Poset,
        inclusion: &MonotoneMap,
        fixed: &PosetFunctor,
        cat: &FinCat,
    ) -> Self {
        for i in 0..sub.len() {
            self.objects.insert(inclusion.apply(i), vec![fixed.objects[i]]);
            for &lo in sub.below(i) {
                self.arrows
                    .insert((inclusion.apply(lo), inclusion.apply(i)), fixed.arrow(sub, cat, lo, i));
            }
        }
        self
    }

    fn arrow_ok(&self, lo: usize, hi: usize, m: Mor) -> bool {
        if let Some(&fixed) = self.arrows.get(&(lo, hi)) {
            if fixed != m {
                return false;
            }
        }
        self.filter.as_ref().is_none_or(|f| f(lo, hi, m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Every functor was visited.
    Completed,
    /// The visitor asked to stop.
    Stopped,
    /// The node budget ran out before the search space was exhausted.
    BudgetExhausted,
}

enum Halt {
    Stopped,
    Budget,
}

/// Enumerates functors `poset → cat` satisfying a [`Constraint`], in
/// lexicographic order over the poset's linear extension.
pub struct FunctorSearch<'a> {
    poset: &'a Poset,
    cat: &'a FinCat,
    constraint: Constraint<'a>,
    budget: Option<u64>,
    order: Vec<usize>,
}

struct State {
    objects: Vec<Option<Obj>>,
    arrows: Vec<Vec<Option<Mor>>>,
    domains: Vec<Vec<Obj>>,
    nodes: u64,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(poset: &'a Poset, cat: &'a FinCat) -> Self {
        FunctorSearch {
            poset,
            cat,
            constraint: Constraint::new(),
            budget: None,
            order: poset.linear_extension(),
        }
    }

    pub fn constraint(mut self, constraint: Constraint<'a>) -> Self {
        self.constraint = constraint;
        self
    }

    /// Caps the number of object placements tried.
    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }

    pub fn for_each(&self, mut visit: impl FnMut(&PosetFunctor) -> ControlFlow<()>) -> SearchOutcome {
        self.run(None, &mut visit)
    }

    pub fn collect(&self) -> Vec<PosetFunctor> {
        let mut out = Vec::new();
        self.for_each(|f| {
            out.push(f.clone());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    /// The first functor in enumeration order, if one is found within the
    /// budget.
    pub fn first(&self) -> (Option<PosetFunctor>, SearchOutcome) {
        let mut found = None;
        let outcome = self.for_each(|f| {
            found = Some(f.clone());
            ControlFlow::Break(())
        });
        (found, outcome)
    }

    /// Same stream as [`FunctorSearch::collect`], computed by splitting on
    /// the first element's object and merging the parts in order.
    pub fn par_collect(&self) -> Vec<PosetFunctor> {
        let Some(&root) = self.order.first() else {
            return self.collect();
        };
        let roots = self.initial_domain(root);
        roots
            .par_iter()
            .map(|&o| {
                let mut out = Vec::new();
                self.run(Some(o), &mut |f: &PosetFunctor| {
                    out.push(f.clone());
                    ControlFlow::Continue(())
                });
                out
            })
            .collect::<Vec<_>>()
            .concat()
    }

    fn initial_domain(&self, element: usize) -> Vec<Obj> {
        match self.constraint.objects.get(&element) {
            Some(objs) => objs.clone(),
            None => self.cat.object_ids().collect(),
        }
    }

    fn run(&self, root: Option<Obj>, visit: &mut dyn FnMut(&PosetFunctor) -> ControlFlow<()>) -> SearchOutcome {
        let n = self.poset.len();
        let mut domains: Vec<Vec<Obj>> = (0..n).map(|i| self.initial_domain(i)).collect();
        if let (Some(o), Some(&first)) = (root, self.order.first()) {
            domains[first].retain(|&d| d == o);
        }
        let mut state = State {
            objects: vec![None; n],
            arrows: (0..n).map(|i| vec![None; self.poset.below(i).len()]).collect(),
            domains,
            nodes: 0,
        };
        match self.place(0, &mut state, visit) {
            ControlFlow::Continue(()) => SearchOutcome::Completed,
            ControlFlow::Break(Halt::Stopped) => SearchOutcome::Stopped,
            ControlFlow::Break(Halt::Budget) => SearchOutcome::BudgetExhausted,
        }
    }

    fn place(
        &self,
        pos: usize,
        st: &mut State,
        visit: &mut dyn FnMut(&PosetFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<Halt> {
        if pos == self.order.len() {
            let f = PosetFunctor {
                objects: st.objects.iter().map(|o| o.unwrap()).collect(),
                arrows: st
                    .arrows
                    .iter()
                    .map(|row| row.iter().map(|m| m.unwrap()).collect())
                    .collect(),
            };
            return match visit(&f) {
                ControlFlow::Continue(()) => ControlFlow::Continue(()),
                ControlFlow::Break(()) => ControlFlow::Break(Halt::Stopped),
            };
        }
        let p = self.order[pos];
        let candidates = st.domains[p].clone();
        for o in candidates {
            st.nodes += 1;
            if self.budget.is_some_and(|b| st.nodes > b) {
                return ControlFlow::Break(Halt::Budget);
            }
            if !self.poset.below(p).iter().all(|&q| self.cat.has_hom(st.objects[q].unwrap(), o)) {
                continue;
            }
            st.objects[p] = Some(o);
            self.choose_arrows(pos, p, o, 0, st, visit)?;
            st.objects[p] = None;
        }
        ControlFlow::Continue(())
    }

    fn choose_arrows(
        &self,
        pos: usize,
        p: usize,
        o: Obj,
        cover_idx: usize,
        st: &mut State,
        visit: &mut dyn FnMut(&PosetFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<Halt> {
        let covers = self.poset.covers_below(p);
        if cover_idx == covers.len() {
            return self.descend(pos, p, o, st, visit);
        }
        let below_p = self.poset.below(p);
        let q = covers[cover_idx];
        let q_slot = below_p.binary_search(&q).unwrap();
        let oq = st.objects[q].unwrap();
        for &m in self.cat.hom(oq, o) {
            if !self.constraint.arrow_ok(q, p, m) {
                continue;
            }
            let mut trail = vec![q_slot];
            st.arrows[p][q_slot] = Some(m);
            let mut consistent = true;
            for (r_slot_q, &r) in self.poset.below(q).iter().enumerate() {
                let implied = self.cat.comp(m, st.arrows[q][r_slot_q].unwrap());
                let r_slot = below_p.binary_search(&r).unwrap();
                match st.arrows[p][r_slot] {
                    Some(existing) if existing != implied => {
                        consistent = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        if !self.constraint.arrow_ok(r, p, implied) {
                            consistent = false;
                            break;
                        }
                        st.arrows[p][r_slot] = Some(implied);
                        trail.push(r_slot);
                    }
                }
            }
            let flow = if consistent {
                self.choose_arrows(pos, p, o, cover_idx + 1, st, visit)
            } else {
                ControlFlow::Continue(())
            };
            for slot in trail {
                st.arrows[p][slot] = None;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Arc consistency between unplaced elements: a candidate survives
    /// only if every comparable unplaced element keeps a candidate it has a
    /// morphism to or from. Returns false when some domain empties.
    fn propagate(&self, mut queue: Vec<usize>, st: &mut State, saved: &mut Vec<(usize, Vec<Obj>)>) -> bool {
        while let Some(u) = queue.pop() {
            for &w in self.poset.below(u).iter().chain(self.poset.above(u)) {
                if st.objects[w].is_some() {
                    continue;
                }
                let w_below = self.poset.lt(w, u);
                let support = &st.domains[u];
                let pruned: Vec<Obj> = st.domains[w]
                    .iter()
                    .copied()
                    .filter(|&d| {
                        support
                            .iter()
                            .any(|&e| if w_below { self.cat.has_hom(d, e) } else { self.cat.has_hom(e, d) })
                    })
                    .collect();
                if pruned.len() != st.domains[w].len() {
                    let empty = pruned.is_empty();
                    saved.push((w, std::mem::replace(&mut st.domains[w], pruned)));
                    if empty {
                        return false;
                    }
                    queue.push(w);
                }
            }
        }
        true
    }

    fn descend(
        &self,
        pos: usize,
        p: usize,
        o: Obj,
        st: &mut State,
        visit: &mut dyn FnMut(&PosetFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<Halt> {
        let mut saved: Vec<(usize, Vec<Obj>)> = Vec::new();
        let mut dead = false;
        for &u in self.poset.above(p) {
            let pruned: Vec<Obj> =
                st.domains[u].iter().copied().filter(|&d| self.cat.has_hom(o, d)).collect();
            if pruned.len() != st.domains[u].len() {
                let empty = pruned.is_empty();
                saved.push((u, std::mem::replace(&mut st.domains[u], pruned)));
                if empty {
                    dead = true;
                    break;
                }
            }
        }
        if !dead {
            let queue = saved.iter().map(|(u, _)| *u).collect();
            dead = !self.propagate(queue, st, &mut saved);
        }
        let flow = if dead {
            ControlFlow::Continue(())
        } else {
            // one frame group per poset element; deep subdivisions need more
            // than a worker thread's default stack
            stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || self.place(pos + 1, st, visit))
        };
        for (u, dom) in saved.into_iter().rev() {
            st.domains[u] = dom;
        }
        flow
    }
}

/// Every functor `poset → cat` satisfying `constraint`, in the search's
/// deterministic order.
pub fn enumerate_functors(poset: &Poset, cat: &FinCat, constraint: Constraint<'_>) -> Vec<PosetFunctor> {
    FunctorSearch::new(poset, cat).constraint(constraint).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{parallel_pair, sd_simplex_poset};

    #[test]
    fn point_into_parallel_pair() {
        let c = parallel_pair();
        assert_eq!(enumerate_functors(&Poset::ordinal(0), &c, Constraint::new()).len(), 2);
    }

    #[test]
    fn cospans_into_parallel_pair() {
        let c = parallel_pair();
        let p = sd_simplex_poset(1, 1);
        let all = enumerate_functors(&p, &c, Constraint::new());
        // constant at V or E (2), V → E ← V (4), V → E = E and E = E ← V (2 each);
        // frozen from the brute-force filter in tests/fincat_props.rs
        assert_eq!(all.len(), 10);
        for f in &all {
            f.validate(&p, &c).unwrap();
        }
    }

    #[test]
    fn fixing_both_endpoints() {
        let c = parallel_pair();
        let p = sd_simplex_poset(1, 1);
        let v = c.object("V").unwrap();
        let cons = Constraint::new()
            .fix_object(p.index_of("{0}").unwrap(), v)
            .fix_object(p.index_of("{1}").unwrap(), v);
        // the middle either stays at V (identities) or goes to E with s/t on each leg
        assert_eq!(enumerate_functors(&p, &c, cons).len(), 5);
        let e = c.object("E").unwrap();
        let cons = Constraint::new()
            .fix_object(p.index_of("{0}").unwrap(), v)
            .fix_object(p.index_of("{1}").unwrap(), v)
            .fix_object(p.index_of("{0,1}").unwrap(), e);
        assert_eq!(enumerate_functors(&p, &c, cons).len(), 4);
    }

    #[test]
    fn parallel_split_matches_sequential() {
        let c = crate::fincat::involution_pair();
        let p = sd_simplex_poset(2, 1);
        let search = FunctorSearch::new(&p, &c);
        assert_eq!(search.collect(), search.par_collect());
    }

    #[test]
    fn budget_is_reported() {
        let c = parallel_pair();
        let p = sd_simplex_poset(2, 2);
        let search = FunctorSearch::new(&p, &c).budget(10);
        assert_eq!(search.for_each(|_| ControlFlow::Continue(())), SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn to_functor_agrees() {
        let c = Arc::new(crate::fincat::involution_pair());
        let p = sd_simplex_poset(1, 1);
        for f in enumerate_functors(&p, &c, Constraint::new()) {
            f.to_functor(&p, c.clone()).unwrap();
        }
    }
}
