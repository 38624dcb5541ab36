//! Seeded generators for example presheaves.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fincat::{involution_pair, parallel_pair, suspension, FinCat, Mor, Obj, SuspensionBase};

use super::{classifying_morphism, coproduct, pushout, yoneda, ColoredDecomposition, Presheaf, PresheafMorphism, Pushout};

fn named(base: &FinCat, o: &str) -> Obj {
    base.object(o).unwrap_or_else(|| panic!("base has no object `{o}`"))
}

fn mor(base: &FinCat, f: &str) -> Mor {
    base.morphism(f).unwrap_or_else(|| panic!("base has no morphism `{f}`"))
}

/// Directed multigraph on `V ⇉ E` with vertices `v0…` and edges `e0…`;
/// edge `j` runs from `edges[j].0` to `edges[j].1`.
pub fn directed_graph(vertices: usize, edges: &[(usize, usize)]) -> Presheaf {
    let base = Arc::new(parallel_pair());
    let (v, e) = (named(&base, "V"), named(&base, "E"));
    let mut carriers = vec![Vec::new(); 2];
    carriers[v.0] = (0..vertices).map(|i| format!("v{i}")).collect();
    carriers[e.0] = (0..edges.len()).map(|j| format!("e{j}")).collect();
    let mut action = vec![Vec::new(); base.num_morphisms()];
    action[base.identity(v).0] = (0..vertices).collect();
    action[base.identity(e).0] = (0..edges.len()).collect();
    action[mor(&base, "s").0] = edges.iter().map(|&(a, _)| a).collect();
    action[mor(&base, "t").0] = edges.iter().map(|&(_, b)| b).collect();
    Presheaf::from_parts(base, carriers, action).expect("edge endpoints are vertices")
}

/// Symmetric graph on the involution category: each undirected edge `j`
/// gives the two directed edges `e{j}+` and `e{j}-` exchanged by `tau`.
pub fn undirected_graph(vertices: usize, edges: &[(usize, usize)]) -> Presheaf {
    let base = Arc::new(involution_pair());
    let (v, e) = (named(&base, "V"), named(&base, "E"));
    let mut carriers = vec![Vec::new(); 2];
    carriers[v.0] = (0..vertices).map(|i| format!("v{i}")).collect();
    carriers[e.0] = (0..edges.len()).flat_map(|j| [format!("e{j}+"), format!("e{j}-")]).collect();
    let mut action = vec![Vec::new(); base.num_morphisms()];
    action[base.identity(v).0] = (0..vertices).collect();
    action[base.identity(e).0] = (0..2 * edges.len()).collect();
    action[mor(&base, "s").0] = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    action[mor(&base, "t").0] = edges.iter().flat_map(|&(a, b)| [b, a]).collect();
    action[mor(&base, "tau").0] = (0..2 * edges.len()).map(|i| i ^ 1).collect();
    Presheaf::from_parts(base, carriers, action).expect("edge endpoints are vertices")
}

/// Random tree on `vertices` vertices as a parent list: vertex `i > 0` is
/// joined to a uniformly chosen earlier vertex, after a random relabelling.
fn random_tree_edges(vertices: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut label: Vec<usize> = (0..vertices).collect();
    label.shuffle(rng);
    (1..vertices).map(|i| (label[rng.gen_range(0..i)], label[i])).collect()
}

/// Random directed tree with `edges` edges and random orientations.
pub fn directed_tree(edges: usize, rng: &mut impl Rng) -> Presheaf {
    let tree: Vec<(usize, usize)> = random_tree_edges(edges + 1, rng)
        .into_iter()
        .map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    directed_graph(edges + 1, &tree)
}

/// Random undirected tree with `edges` edges.
pub fn undirected_tree(edges: usize, rng: &mut impl Rng) -> Presheaf {
    undirected_graph(edges + 1, &random_tree_edges(edges + 1, rng))
}

/// Assembles a presheaf on `Σ(V ⇉ E)` from reduct components and their
/// colors: component `k` gets colors `colors[k]` in palettes of the given
/// sizes, named `p0…` and `q0…`.
pub fn suspension_presheaf(
    sb: &SuspensionBase,
    components: &[Presheaf],
    palette_sizes: [usize; 2],
    colors: &[(usize, usize)],
) -> Presheaf {
    assert_eq!(components.len(), colors.len(), "one color pair per component");
    let reduct = coproduct(&sb.base0, components).expect("components live over the reduct base");
    let parts = (0..components.len())
        .map(|k| {
            let prefix = format!("{k}:");
            sb.base0
                .object_ids()
                .map(|o| {
                    (0..reduct.carrier(o).len())
                        .filter(|&i| reduct.carrier(o)[i].starts_with(&prefix))
                        .collect()
                })
                .collect()
        })
        .collect();
    let d = ColoredDecomposition {
        suspension: sb.clone(),
        reduct,
        palettes: [
            (0..palette_sizes[0]).map(|i| format!("p{i}")).collect(),
            (0..palette_sizes[1]).map(|i| format!("q{i}")).collect(),
        ],
        components: parts,
        colorings: [colors.iter().map(|c| c.0).collect(), colors.iter().map(|c| c.1).collect()],
    };
    d.reassemble().expect("colorings are constant on components")
}

/// Random presheaf on `Σ(V ⇉ E)` whose reduct has `components` directed
/// tree components of at most `max_edges` edges, colored along a random
/// bipartite tree.
pub fn labeled_tree(components: usize, max_edges: usize, rng: &mut impl Rng) -> Presheaf {
    let sb = suspension(&parallel_pair());
    let tree = random_tree_edges(components + 1, rng);
    // 2-colour the tree by depth from vertex 0
    let mut side = vec![None; components + 1];
    side[0] = Some(0usize);
    while side.iter().any(Option::is_none) {
        for &(a, b) in &tree {
            match (side[a], side[b]) {
                (Some(s), None) => side[b] = Some(1 - s),
                (None, Some(s)) => side[a] = Some(1 - s),
                _ => {}
            }
        }
    }
    let mut index = vec![0; components + 1];
    let mut sizes = [0usize; 2];
    for v in 0..=components {
        let s = side[v].unwrap();
        index[v] = sizes[s];
        sizes[s] += 1;
    }
    let colors: Vec<(usize, usize)> = tree
        .iter()
        .map(|&(a, b)| if side[a] == Some(0) { (index[a], index[b]) } else { (index[b], index[a]) })
        .collect();
    let parts: Vec<Presheaf> = (0..components).map(|_| directed_tree(rng.gen_range(0..=max_edges), rng)).collect();
    suspension_presheaf(&sb, &parts, sizes, &colors)
}

/// Pushout of `X ← yoneda(a) → yoneda(c')`, where the left map classifies
/// `elem ∈ X(a)` and the right map is postcomposition with `h: a → c'`.
pub fn extend_along(x: &Presheaf, a: Obj, elem: usize, h: Mor) -> Pushout {
    let base = x.base().clone();
    assert_eq!(base.dom(h), a, "h must start at a");
    let into_x = classifying_morphism(x, a, elem);
    let target = yoneda(&base, base.cod(h));
    let rep = into_x.source().clone();
    let components = base
        .object_ids()
        .map(|d| {
            rep.carrier(d)
                .iter()
                .map(|sigma| {
                    let hs = base.comp(h, base.morphism(sigma).unwrap());
                    target.element_index(d, base.mor_name(hs)).unwrap()
                })
                .collect()
        })
        .collect();
    let post = PresheafMorphism::new(rep, target, components).expect("postcomposition is natural");
    pushout(&into_x, &post).expect("both legs share the representable")
}

/// All `(a, x, h)` with `x ∈ X(a)` and `h` a nonidentity morphism out of `a`.
pub fn extension_sites(x: &Presheaf) -> Vec<(Obj, usize, Mor)> {
    let base = x.base();
    x.elements()
        .flat_map(|(a, e)| base.out_of(a).filter(|&h| !base.is_identity(h)).map(move |h| (a, e, h)))
        .collect()
}

/// Starts from a random representable and glues on `steps` random
/// representables, each along a classifying map and a postcomposition.
/// Elements are canonically renamed after every step.
pub fn generate_amalgam(base: &Arc<FinCat>, steps: usize, seed: u64) -> Presheaf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if base.num_objects() == 0 {
        return Presheaf::empty(base.clone());
    }
    let start = Obj(rng.gen_range(0..base.num_objects()));
    let mut x = yoneda(base, start).canonical_rename();
    for _ in 0..steps {
        let sites = extension_sites(&x);
        let Some(&(a, e, h)) = sites.choose(&mut rng) else { break };
        x = extend_along(&x, a, e, h).object.canonical_rename();
    }
    x
}
