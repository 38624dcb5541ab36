use std::collections::HashSet;

use contraaec::fincat::{
    chain_lift, collapse_functor, collapse_power, enumerate_functors, involution_pair, parallel_pair,
    sd_simplex_poset, suspension, CategorySpec, Constraint, FinCat, FunctorSearch, Mor, Obj, Poset,
};
use proptest::prelude::*;

/// Random poset on `n` elements: transitive closure of random edges `i → j`, `i < j`.
fn poset_from_bits(n: usize, bits: &[bool]) -> Poset {
    let mut leq = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        leq[i][i] = true;
        for j in i + 1..n {
            leq[i][j] = bits[k];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][m] && leq[m][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let names = (0..n).map(|i| format!("p{i}")).collect();
    Poset::new(names, |i, j| leq[i][j]).unwrap()
}

fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2 + 1)
            .prop_map(move |bits| poset_from_bits(n, &bits))
    })
}

/// Counts functors by trying every object assignment and every choice of
/// morphism for every strict relation, keeping those that compose.
fn brute_force_functor_count(p: &Poset, c: &FinCat) -> usize {
    let n = p.len();
    let rels: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| p.below(j).iter().map(move |&i| (i, j)))
        .collect();
    let objs: Vec<Obj> = c.object_ids().collect();
    let mut total = 0;
    let mut assign = vec![Obj(0); n];
    let combos = objs.len().pow(n as u32);
    for code in 0..combos {
        let mut x = code;
        for slot in assign.iter_mut() {
            *slot = objs[x % objs.len()];
            x /= objs.len();
        }
        let options: Vec<&[Mor]> = rels.iter().map(|&(i, j)| c.hom(assign[i], assign[j])).collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        let mut pick = vec![0usize; rels.len()];
        loop {
            let arrow = |i: usize, j: usize| -> Mor {
                if i == j {
                    c.identity(assign[i])
                } else {
                    let r = rels.iter().position(|&e| e == (i, j)).unwrap();
                    options[r][pick[r]]
                }
            };
            let ok = rels.iter().all(|&(i, k)| {
                (0..n)
                    .filter(|&m| p.lt(i, m) && p.lt(m, k))
                    .all(|m| c.comp(arrow(m, k), arrow(i, m)) == arrow(i, k))
            });
            if ok {
                total += 1;
            }
            let mut r = 0;
            while r < rels.len() {
                pick[r] += 1;
                if pick[r] < options[r].len() {
                    break;
                }
                pick[r] = 0;
                r += 1;
            }
            if r == rels.len() {
                break;
            }
        }
    }
    total
}

fn targets() -> Vec<FinCat> {
    vec![
        FinCat::terminal(),
        parallel_pair(),
        involution_pair(),
        (*suspension(&parallel_pair()).category).clone(),
    ]
}

#[test]
fn subdivided_interval_into_parallel_pair() {
    let p = sd_simplex_poset(1, 1);
    let c = parallel_pair();
    assert_eq!(brute_force_functor_count(&p, &c), 10);
    assert_eq!(enumerate_functors(&p, &c, Constraint::new()).len(), 10);
}

#[test]
fn twelve_gon_into_parallel_pair_matches_oracle() {
    let b = contraaec::fincat::sd_boundary_poset(2, 1).unwrap().boundary;
    let c = parallel_pair();
    assert_eq!(FunctorSearch::new(&b, &c).count(), brute_force_functor_count(&b, &c));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functor_search_matches_brute_force(p in arb_poset(4), which in 0usize..4) {
        let c = &targets()[which];
        let found = FunctorSearch::new(&p, c).collect();
        prop_assert_eq!(found.len(), brute_force_functor_count(&p, c));
        let distinct: HashSet<_> = found.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), found.len());
        for f in &found {
            prop_assert!(f.validate(&p, c).is_ok());
        }
    }

    #[test]
    fn parallel_search_is_deterministic(p in arb_poset(5), which in 0usize..4) {
        let c = &targets()[which];
        let s = FunctorSearch::new(&p, c);
        prop_assert_eq!(s.par_collect(), s.collect());
    }

    #[test]
    fn chains_match_brute_force(p in arb_poset(8)) {
        let n = p.len();
        let expected = (1u32..(1 << n))
            .filter(|&mask| {
                let items: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                items.iter().all(|&a| items.iter().all(|&b| p.leq(a, b) || p.leq(b, a)))
            })
            .count();
        prop_assert_eq!(p.chains().len(), expected);
    }

    #[test]
    fn iterated_collapse_is_natural(p in arb_poset(4), l in 1usize..=3) {
        // p^l = p ∘ sd(p^{l-1}) as maps sd^l P → P
        let (sd_prev, prev) = collapse_power(&p, l - 1);
        let (sd_l, total) = collapse_power(&p, l);
        let (lifted_src, _, lifted) = chain_lift(&prev, &sd_prev, &p);
        let (_, max) = collapse_functor(&p);
        prop_assert_eq!(lifted_src.names(), sd_l.names());
        prop_assert_eq!(lifted.then(&max), total.clone());
        prop_assert!(total.validate(&sd_l, &p).is_ok());
    }

    #[test]
    fn suspension_preserves_mono_categories(p in arb_poset(5)) {
        let c = p.to_category();
        prop_assert!(c.is_category_of_monos());
        let s = suspension(&c);
        prop_assert!(s.category.is_category_of_monos());
        prop_assert_eq!(s.category.num_objects(), c.num_objects() + 2);
        prop_assert_eq!(&*s.base0, &c);
    }

    #[test]
    fn spec_round_trips(p in arb_poset(5), suspend in any::<bool>()) {
        let c = if suspend { (*suspension(&p.to_category()).category).clone() } else { p.to_category() };
        let json = serde_json::to_string(&c.to_spec()).unwrap();
        let back: CategorySpec = serde_json::from_str(&json).unwrap();
        let again = FinCat::from_spec(&back).unwrap();
        prop_assert_eq!(&again, &c);
        prop_assert_eq!(serde_json::to_string(&again.to_spec()).unwrap(), json);
    }
}

#[test]
fn named_categories_round_trip_and_stay_mono() {
    for c in [parallel_pair(), involution_pair()] {
        assert!(c.is_category_of_monos());
        assert!(suspension(&c).category.is_category_of_monos());
        assert_eq!(FinCat::from_spec(&c.to_spec()).unwrap(), c);
    }
}
