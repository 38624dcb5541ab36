use std::sync::Arc;

use contraaec::fincat::{parallel_pair, suspension, FinCat, Obj};
use contraaec::presheaf::generate::{directed_graph, directed_tree, extend_along, suspension_presheaf};
use contraaec::presheaf::{
    category_of_elements, classifying_morphism, connected_components, coproduct, decompose_suspension,
    natural_transformations, pushout, yoneda, Presheaf, PresheafMorphism,
};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Presheaf> {
    (1..=max_v).prop_flat_map(move |nv| {
        proptest::collection::vec((0..nv, 0..nv), 0..=max_e).prop_map(move |edges| directed_graph(nv, &edges))
    })
}

fn v(x: &Presheaf) -> Obj {
    x.base().object("V").unwrap()
}

fn e(x: &Presheaf) -> Obj {
    x.base().object("E").unwrap()
}

/// Graph morphism from vertex and edge tables.
fn graph_map(src: &Presheaf, tgt: &Presheaf, on_v: Vec<usize>, on_e: Vec<usize>) -> PresheafMorphism {
    let mut comps = vec![Vec::new(); 2];
    comps[v(src).0] = on_v;
    comps[e(src).0] = on_e;
    PresheafMorphism::new(src.clone(), tgt.clone(), comps).unwrap()
}

#[test]
fn elements_of_representable_edge() {
    let base = Arc::new(parallel_pair());
    let y = yoneda(&base, base.object("E").unwrap());
    let el = category_of_elements(&y);
    assert_eq!(el.category.num_objects(), 3);
    assert_eq!(el.category.nonidentity_morphisms().count(), 2);
    let top = el.category.terminal_object().unwrap();
    assert_eq!(el.category.obj_name(top), "(E,id_E)");

    let edge = directed_graph(2, &[(0, 1)]);
    let el2 = category_of_elements(&edge);
    assert_eq!(el2.category.num_objects(), 3);
    assert_eq!(el2.category.nonidentity_morphisms().count(), 2);
    assert_eq!(category_of_elements(&Presheaf::empty(base)).category.num_objects(), 0);
}

#[test]
fn components_examples() {
    assert_eq!(connected_components(&directed_graph(2, &[(0, 1)])).len(), 1);
    assert_eq!(connected_components(&directed_graph(4, &[(0, 1), (2, 3)])).len(), 2);
    assert_eq!(connected_components(&directed_graph(3, &[(0, 1), (1, 2), (2, 0)])).len(), 1);
    // isolated vertices are components of their own
    assert_eq!(connected_components(&directed_graph(3, &[])).len(), 3);
}

#[test]
fn pushout_glues_edges_into_path() {
    let point = directed_graph(1, &[]);
    let edge = directed_graph(2, &[(0, 1)]);
    // the point goes to the head of the first edge and the tail of the second
    let f = graph_map(&point, &edge, vec![1], vec![]);
    let g = graph_map(&point, &edge, vec![0], vec![]);
    let po = pushout(&f, &g).unwrap();
    assert_eq!(po.object.carrier(v(&po.object)).len(), 3);
    assert_eq!(po.object.carrier(e(&po.object)).len(), 2);
    assert!(po.left.is_strong_embedding() && po.right.is_strong_embedding());
    assert!(po.object.carrier(v(&po.object)).contains(&"1:v1=2:v0".to_string()));
}

#[test]
fn pushout_along_identity() {
    let x = directed_graph(3, &[(0, 1), (2, 1)]);
    let id = PresheafMorphism::identity(&x);
    let po = pushout(&id, &id).unwrap();
    assert_eq!(po.object.canonical_rename(), x.canonical_rename());
}

#[test]
fn strong_embedding_examples() {
    let path = directed_graph(3, &[(0, 1), (2, 1)]);
    let edge = directed_graph(2, &[(0, 1)]);
    assert!(PresheafMorphism::identity(&path).is_strong_embedding());
    let fold = graph_map(&path, &edge, vec![0, 1, 0], vec![0, 0]);
    assert!(!fold.is_strong_embedding());
    assert_eq!(natural_transformations(&path, &edge, 16).unwrap(), vec![fold]);
    let incl = graph_map(&edge, &path, vec![0, 1], vec![0]);
    assert!(incl.is_strong_embedding());
}

#[test]
fn suspension_decomposition_examples() {
    let sb = suspension(&parallel_pair());
    let rep = yoneda(&sb.category, sb.bottoms[0]);
    let d = decompose_suspension(&sb, &rep).unwrap();
    assert!(d.reduct.is_empty());
    assert_eq!(d.palettes[0].len(), 1);
    assert!(d.palettes[1].is_empty());

    let t = directed_graph(2, &[(0, 1)]);
    let x = suspension_presheaf(&sb, &[t.clone(), t], [1, 2], &[(0, 0), (0, 1)]);
    let d = decompose_suspension(&sb, &x).unwrap();
    assert_eq!(d.palettes, [vec!["p0".to_string()], vec!["q0".to_string(), "q1".to_string()]]);
    assert_eq!(d.colorings, [vec![0, 0], vec![0, 1]]);
    assert_eq!(d.reassemble().unwrap(), x);
    let g = d.coloring_graph();
    assert_eq!(g.undirected_edges(), vec![(0, 1), (0, 2)]);

    let same = suspension_presheaf(&sb, &[directed_graph(1, &[]), directed_graph(1, &[])], [1, 1], &[(0, 0), (0, 0)]);
    assert_eq!(decompose_suspension(&sb, &same).unwrap().coloring_graph().edges, vec![(0, 0), (0, 0)]);
    let none = suspension_presheaf(&sb, &[], [1, 1], &[]);
    let g = decompose_suspension(&sb, &none).unwrap().coloring_graph();
    assert_eq!((g.num_vertices(), g.edges.len()), (2, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn yoneda_bijection(x in arb_graph(3, 3), at_edge in any::<bool>()) {
        let c = if at_edge { e(&x) } else { v(&x) };
        let rep = yoneda(x.base(), c);
        let maps = natural_transformations(&rep, &x, 32).unwrap();
        prop_assert_eq!(maps.len(), x.carrier(c).len());
        for (i, m) in maps.iter().enumerate() {
            prop_assert_eq!(m, &classifying_morphism(&x, c, i));
        }
    }

    #[test]
    fn pushout_universal_property(a in arb_graph(2, 1), b in arb_graph(2, 2), c in arb_graph(2, 2), z in arb_graph(2, 2), pick in any::<(usize, usize)>()) {
        let fs = natural_transformations(&a, &b, 32).unwrap();
        let gs = natural_transformations(&a, &c, 32).unwrap();
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let (f, g) = (&fs[pick.0 % fs.len()], &gs[pick.1 % gs.len()]);
        let po = pushout(f, g).unwrap();
        let mediating = natural_transformations(&po.object, &z, 64).unwrap();
        for u in natural_transformations(&b, &z, 32).unwrap() {
            for w in natural_transformations(&c, &z, 32).unwrap() {
                if f.then(&u).unwrap() != g.then(&w).unwrap() {
                    continue;
                }
                let count = mediating
                    .iter()
                    .filter(|m| po.left.then(m).unwrap() == u && po.right.then(m).unwrap() == w)
                    .count();
                prop_assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn elements_of_coproduct_is_disjoint_union(x in arb_graph(3, 3), y in arb_graph(3, 3)) {
        let base = x.base().clone();
        let sum = coproduct(&base, &[x.clone(), y.clone()]).unwrap();
        let (ex, ey, es) = (category_of_elements(&x), category_of_elements(&y), category_of_elements(&sum));
        prop_assert_eq!(es.category.num_objects(), ex.category.num_objects() + ey.category.num_objects());
        prop_assert_eq!(es.category.num_morphisms(), ex.category.num_morphisms() + ey.category.num_morphisms());
        prop_assert_eq!(
            connected_components(&sum).len(),
            connected_components(&x).len() + connected_components(&y).len()
        );
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>(), k in 0usize..=3, sizes in (1usize..=3, 1usize..=3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sb = suspension(&parallel_pair());
        let parts: Vec<Presheaf> = (0..k).map(|i| directed_tree((seed as usize + i) % 4, &mut rng)).collect();
        let colors: Vec<(usize, usize)> = (0..k).map(|i| ((seed as usize >> i) % sizes.0, (seed as usize >> (i + 3)) % sizes.1)).collect();
        let x = suspension_presheaf(&sb, &parts, [sizes.0, sizes.1], &colors);
        let d = decompose_suspension(&sb, &x).unwrap();
        prop_assert_eq!(d.reassemble().unwrap(), x);
        prop_assert_eq!(d.coloring_graph().edges.len(), d.components.len());
        prop_assert_eq!(d.components.len(), k);
    }

    #[test]
    fn tree_span_legs_are_strong(seed in any::<u64>(), n in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = directed_tree(n, &mut rng);
        let sites = contraaec::presheaf::generate::extension_sites(&a);
        let (s1, s2) = (sites[seed as usize % sites.len()], sites[(seed >> 8) as usize % sites.len()]);
        let left = extend_along(&a, s1.0, s1.1, s1.2);
        let right = extend_along(&a, s2.0, s2.1, s2.2);
        prop_assert!(left.left.is_strong_embedding() && right.left.is_strong_embedding());
        let po = pushout(&left.left, &right.left).unwrap();
        prop_assert!(po.left.is_strong_embedding() && po.right.is_strong_embedding());
        let (vv, ee) = (v(&a), e(&a));
        prop_assert_eq!(po.object.carrier(vv).len(), a.carrier(vv).len() + 2);
        prop_assert_eq!(po.object.carrier(ee).len(), a.carrier(ee).len() + 2);
    }
}

#[test]
fn category_of_elements_projection_is_faithful_on_fibres() {
    let x = directed_graph(3, &[(0, 1), (1, 2)]);
    let el = category_of_elements(&x);
    let base: &FinCat = x.base();
    for m in el.category.morphism_ids() {
        let f = el.projection.mor(m);
        assert_eq!(base.dom(f), el.projection.obj(el.category.dom(m)));
    }
}
