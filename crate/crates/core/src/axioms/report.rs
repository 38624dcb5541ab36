use rayon::prelude::*;
use serde::Serialize;

use crate::fincat::{FinCat, Obj, SuspensionBase};
use crate::nervehom::{category_homology, one_dim_contractibility, HomologyGroup};
use crate::presheaf::{connected_components, decompose_suspension, ColoringGraph, Presheaf};

use super::asph::{AsphEngine, AsphStatus, AsphSweep};
use super::inj::{check_inj, InjReport};
use super::{AxiomError, Bounds, Refutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Model,
    NotModel,
    Undetermined,
}

/// The exact argument behind a `Model` verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactCriterion {
    /// The element category is one-dimensional and its graph is a tree.
    OneDimensionalTree,
    TerminalObject,
    /// The element category is a preorder whose skeleton dismantles to a
    /// point by removing beat points.
    Dismantlable,
    /// Relative check: every reduct component is a model and the coloring
    /// graph is a tree.
    ColoringTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub inj: InjReport,
    /// `H_0 … H_D` of the element category.
    pub homology: Vec<HomologyGroup>,
    pub asph: Vec<AsphSweep>,
    /// The sweep is skipped when Inj already fails: the category of
    /// elements is then not thin and the verdict is settled.
    pub asph_skipped: bool,
    pub exact: Option<ExactCriterion>,
    pub refutations: Vec<Refutation>,
    pub overall: Overall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeReport {
    pub inj: InjReport,
    pub components: Vec<ModelReport>,
    pub coloring_graph: ColoringGraph,
    pub coloring_graph_is_tree: bool,
    pub exact: Option<ExactCriterion>,
    pub refutations: Vec<Refutation>,
    pub overall: Overall,
}

/// Connected with exactly `|V| - 1` edges. The empty graph is not a tree.
pub fn is_tree(num_vertices: usize, edges: &[(usize, usize)]) -> bool {
    if num_vertices == 0 || edges.len() + 1 != num_vertices {
        return false;
    }
    let mut parent: Vec<usize> = (0..num_vertices).collect();
    fn root(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Whether the preorder `c` dismantles to a single point. Works on a
/// skeleton; a point is removable when it has a unique upper cover or a
/// unique lower cover among the remaining points.
fn dismantles(c: &FinCat) -> bool {
    let reps: Vec<Obj> = c
        .object_ids()
        .filter(|&a| !c.object_ids().any(|b| b.0 < a.0 && c.has_hom(a, b) && c.has_hom(b, a)))
        .collect();
    let lt = |a: Obj, b: Obj| a != b && c.has_hom(a, b);
    let mut alive = reps;
    loop {
        if alive.len() <= 1 {
            return alive.len() == 1;
        }
        let covers = |a: Obj, up: bool| -> usize {
            let strictly = |x: Obj, y: Obj| if up { lt(x, y) } else { lt(y, x) };
            alive
                .iter()
                .filter(|&&b| strictly(a, b) && !alive.iter().any(|&z| strictly(a, z) && strictly(z, b)))
                .count()
        };
        match alive.iter().position(|&a| covers(a, true) == 1 || covers(a, false) == 1) {
            Some(i) => {
                alive.remove(i);
            }
            None => return false,
        }
    }
}

/// Every instance of Inj, acyclicity up to `D`, and the bounded Asph sweep.
pub fn check_tcontr(c: &FinCat, x: &Presheaf, bounds: &Bounds) -> Result<ModelReport, AxiomError> {
    if !c.is_category_of_monos() {
        return Err(AxiomError::NotMonoCategory);
    }
    if **x.base() != *c {
        return Err(AxiomError::BaseMismatch);
    }
    bounds.validate()?;
    let inj = check_inj(c, x);
    let engine = AsphEngine::new(x, bounds.node_budget, bounds.keep_witnesses);
    let el = &engine.elements.category;
    let homology = category_homology(el, bounds.acyclic_dim);
    let mut refutations: Vec<Refutation> = inj.violations.iter().cloned().map(Refutation::Inj).collect();
    for (degree, group) in homology.iter().enumerate() {
        let reduced_zero = if degree == 0 { group.is_integers() } else { group.is_zero() };
        if !reduced_zero {
            refutations.push(Refutation::Homology {
                degree,
                group: group.clone(),
            });
        }
    }
    let shapes: Vec<(usize, usize)> = (0..=bounds.n_max)
        .flat_map(|n| (1..=bounds.k_max).map(move |k| (n, k)))
        .collect();
    let asph_skipped = !inj.passes();
    let asph: Vec<AsphSweep> = if asph_skipped {
        Vec::new()
    } else {
        shapes.par_iter().map(|&(n, k)| engine.sweep(c, n, k, bounds.l_max, bounds.max_lifts)).collect()
    };
    for sweep in &asph {
        for inst in &sweep.instances {
            if inst.verdict.status == AsphStatus::RefutedExactly {
                let first = inst.verdict.stuck.iter().find_map(|s| s.refutation.clone());
                refutations.extend(first);
            }
        }
    }
    let mut exact = None;
    if engine.is_one_dimensional() {
        if one_dim_contractibility(el).expect("checked one-dimensional") {
            exact = Some(ExactCriterion::OneDimensionalTree);
        } else {
            refutations.push(Refutation::NotATree);
        }
    } else if el.terminal_object().is_some() {
        exact = Some(ExactCriterion::TerminalObject);
    } else if el.is_thin() && dismantles(el) {
        exact = Some(ExactCriterion::Dismantlable);
    }
    dedup(&mut refutations);
    let overall = if !refutations.is_empty() {
        Overall::NotModel
    } else if exact.is_some() {
        Overall::Model
    } else {
        Overall::Undetermined
    };
    Ok(ModelReport {
        inj,
        homology,
        asph,
        asph_skipped,
        exact: if overall == Overall::Model { exact } else { None },
        refutations,
        overall,
    })
}

fn dedup(v: &mut Vec<Refutation>) {
    let mut seen = Vec::new();
    v.retain(|r| {
        if seen.contains(r) {
            false
        } else {
            seen.push(r.clone());
            true
        }
    });
}

/// The relative theory over `Σ𝒞₀`: Inj on `X`, each reduct component a
/// model over `𝒞₀`, and a tree-shaped coloring graph.
pub fn check_tcontr_rel(
    sc: &FinCat,
    c0: Option<&FinCat>,
    x: &Presheaf,
    bounds: &Bounds,
) -> Result<RelativeReport, AxiomError> {
    let sb = SuspensionBase::recognize(sc)?;
    if let Some(c0) = c0 {
        sb.check_base0(c0)?;
    }
    if !sc.is_category_of_monos() {
        return Err(AxiomError::NotMonoCategory);
    }
    if **x.base() != *sc {
        return Err(AxiomError::BaseMismatch);
    }
    bounds.validate()?;
    let inj = check_inj(sc, x);
    let decomposition = decompose_suspension(&sb, x)?;
    let components = connected_components(&decomposition.reduct)
        .iter()
        .map(|part| check_tcontr(&sb.base0, part, bounds))
        .collect::<Result<Vec<_>, _>>()?;
    let coloring_graph = decomposition.coloring_graph();
    let coloring_graph_is_tree = is_tree(coloring_graph.num_vertices(), &coloring_graph.undirected_edges());

    let mut refutations: Vec<Refutation> = inj.violations.iter().cloned().map(Refutation::Inj).collect();
    for (index, r) in components.iter().enumerate() {
        if r.overall == Overall::NotModel {
            refutations.push(Refutation::ComponentNotModel { index });
        }
    }
    if !coloring_graph_is_tree {
        refutations.push(Refutation::ColoringGraphNotTree);
    }
    let overall = if !refutations.is_empty() {
        Overall::NotModel
    } else if components.iter().all(|r| r.overall == Overall::Model) {
        Overall::Model
    } else {
        Overall::Undetermined
    };
    Ok(RelativeReport {
        inj,
        components,
        coloring_graph,
        coloring_graph_is_tree,
        exact: (overall == Overall::Model).then_some(ExactCriterion::ColoringTree),
        refutations,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{parallel_pair, suspension};
    use crate::presheaf::generate::{directed_graph, suspension_presheaf};

    fn small() -> Bounds {
        Bounds {
            n_max: 2,
            k_max: 1,
            l_max: 1,
            ..Bounds::default()
        }
    }

    #[test]
    fn tree_examples() {
        assert!(is_tree(2, &[(0, 1)]));
        assert!(!is_tree(2, &[(0, 1), (0, 1)]));
        assert!(is_tree(4, &[(0, 1), (1, 2), (2, 3)]));
        assert!(!is_tree(0, &[]));
        assert!(is_tree(1, &[]));
    }

    #[test]
    fn directed_examples() {
        let c = parallel_pair();
        let edge = check_tcontr(&c, &directed_graph(2, &[(0, 1)]), &small()).unwrap();
        assert_eq!(edge.overall, Overall::Model);
        assert_eq!(edge.exact, Some(ExactCriterion::OneDimensionalTree));

        let cycle = check_tcontr(&c, &directed_graph(3, &[(0, 1), (1, 2), (2, 0)]), &small()).unwrap();
        assert_eq!(cycle.overall, Overall::NotModel);
        assert!(cycle.refutations.contains(&Refutation::Homology {
            degree: 1,
            group: HomologyGroup::free(1)
        }));

        let lp = check_tcontr(&c, &directed_graph(1, &[(0, 0)]), &small()).unwrap();
        assert_eq!(lp.overall, Overall::NotModel);
        assert!(matches!(lp.refutations[0], Refutation::Inj(_)));

        let empty = check_tcontr(&c, &directed_graph(0, &[]), &small()).unwrap();
        assert_eq!(empty.overall, Overall::NotModel);
        assert!(empty.refutations.contains(&Refutation::EmptyElements));
    }

    #[test]
    fn relative_examples() {
        let sb = suspension(&parallel_pair());
        let t = directed_graph(2, &[(0, 1)]);
        let one = suspension_presheaf(&sb, &[t.clone()], [1, 1], &[(0, 0)]);
        let r = check_tcontr_rel(&sb.category, Some(&parallel_pair()), &one, &small()).unwrap();
        assert_eq!(r.overall, Overall::Model);

        let double = suspension_presheaf(&sb, &[t.clone(), t.clone()], [1, 1], &[(0, 0), (0, 0)]);
        let r = check_tcontr_rel(&sb.category, None, &double, &small()).unwrap();
        assert_eq!(r.overall, Overall::NotModel);
        assert!(r.refutations.contains(&Refutation::ColoringGraphNotTree));

        let cyc = directed_graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let r = check_tcontr_rel(&sb.category, None, &suspension_presheaf(&sb, &[cyc], [1, 1], &[(0, 0)]), &small())
            .unwrap();
        assert_eq!(r.overall, Overall::NotModel);
        assert!(r.refutations.contains(&Refutation::ComponentNotModel { index: 0 }));
    }

    #[test]
    fn relative_rejects_non_suspension() {
        let c = parallel_pair();
        let err = check_tcontr_rel(&c, None, &directed_graph(1, &[]), &small()).unwrap_err();
        assert!(matches!(err, AxiomError::Category(_)));
    }

    #[test]
    fn dismantling() {
        use crate::fincat::Poset;
        assert!(dismantles(&Poset::ordinal(3).to_category()));
        assert!(!dismantles(&Poset::discrete(2).to_category()));
        // the four-point circle has no beat points
        let circle = Poset::new(["a", "b", "c", "d"].map(String::from).to_vec(), |i, j| {
            i == j || (i < 2 && j >= 2)
        })
        .unwrap();
        assert!(!dismantles(&circle.to_category()));
    }
}
