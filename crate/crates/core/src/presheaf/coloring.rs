use crate::fincat::{Obj, SuspensionBase};

use super::elements::component_partition;
use super::{Presheaf, PresheafError};

/// A presheaf on `Σ𝒞₀` split into its reduct `X₀` on `𝒞₀`, the palettes
/// `X(⊥₁)`, `X(⊥₂)`, and the two colorings of the components of `X₀`.
#[derive(Clone, Debug)]
pub struct ColoredDecomposition {
    pub suspension: SuspensionBase,
    pub reduct: Presheaf,
    pub palettes: [Vec<String>; 2],
    /// Element indices of each component of the reduct, per `𝒞₀` object.
    pub components: Vec<Vec<Vec<usize>>>,
    /// `colorings[i][k]` indexes into `palettes[i]`.
    pub colorings: [Vec<usize>; 2],
}

pub fn decompose_suspension(sb: &SuspensionBase, x: &Presheaf) -> Result<ColoredDecomposition, PresheafError> {
    if **x.base() != *sb.category {
        return Err(PresheafError::BaseMismatch);
    }
    let reduct = x.restrict_along(&sb.inclusion)?;
    let components = component_partition(&reduct);
    let mut colorings = [Vec::new(), Vec::new()];
    for part in &components {
        for (i, coloring) in colorings.iter_mut().enumerate() {
            let mut color = None;
            for c0 in sb.base0.object_ids() {
                let u = sb.coloring_morphism(i, c0);
                for &e in &part[c0.0] {
                    let here = x.act(u, e);
                    if *color.get_or_insert(here) != here {
                        return Err(PresheafError::InconsistentColoring);
                    }
                }
            }
            coloring.push(color.expect("components are nonempty"));
        }
    }
    let palettes = [
        x.carrier(sb.bottoms[0]).to_vec(),
        x.carrier(sb.bottoms[1]).to_vec(),
    ];
    Ok(ColoredDecomposition {
        suspension: sb.clone(),
        reduct,
        palettes,
        components,
        colorings,
    })
}

impl ColoredDecomposition {
    /// Rebuilds the presheaf on `Σ𝒞₀`.
    pub fn reassemble(&self) -> Result<Presheaf, PresheafError> {
        let sb = &self.suspension;
        let sc = &sb.category;
        let mut c0_of: Vec<Option<Obj>> = vec![None; sc.num_objects()];
        for c0 in sb.base0.object_ids() {
            c0_of[sb.inclusion.obj(c0).0] = Some(c0);
        }
        let mut base0_mor = vec![None; sc.num_morphisms()];
        for f in sb.base0.morphism_ids() {
            base0_mor[sb.inclusion.mor(f).0] = Some(f);
        }
        let mut component_of: Vec<Vec<usize>> =
            sb.base0.object_ids().map(|o| vec![0; self.reduct.carrier(o).len()]).collect();
        for (k, part) in self.components.iter().enumerate() {
            for (o, elems) in part.iter().enumerate() {
                for &e in elems {
                    component_of[o][e] = k;
                }
            }
        }
        let bottom = |o: Obj| sb.bottoms.iter().position(|&b| b == o);
        let carriers = sc
            .object_ids()
            .map(|o| match bottom(o) {
                Some(i) => self.palettes[i].clone(),
                None => self.reduct.carrier(c0_of[o.0].unwrap()).to_vec(),
            })
            .collect();
        let action = sc
            .morphism_ids()
            .map(|m| {
                if let Some(f) = base0_mor[m.0] {
                    return self.reduct.action(f).to_vec();
                }
                let i = bottom(sc.dom(m)).expect("remaining morphisms leave a bottom");
                match c0_of[sc.cod(m).0] {
                    Some(c0) => component_of[c0.0].iter().map(|&k| self.colorings[i][k]).collect(),
                    None => (0..self.palettes[i].len()).collect(),
                }
            })
            .collect();
        Presheaf::from_parts(sc.clone(), carriers, action)
    }

    pub fn coloring_graph(&self) -> ColoringGraph {
        ColoringGraph {
            palettes: self.palettes.clone(),
            edges: self.colorings[0].iter().copied().zip(self.colorings[1].iter().copied()).collect(),
        }
    }
}

/// Bipartite multigraph on `palette₁ ⊔ palette₂` with one edge per
/// component of the reduct, from its first color to its second.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ColoringGraph {
    pub palettes: [Vec<String>; 2],
    /// `(first color, second color)` per component.
    pub edges: Vec<(usize, usize)>,
}

impl ColoringGraph {
    pub fn num_vertices(&self) -> usize {
        self.palettes[0].len() + self.palettes[1].len()
    }

    /// Edges as pairs of vertex indices, second palette shifted past the first.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let shift = self.palettes[0].len();
        self.edges.iter().map(|&(a, b)| (a, shift + b)).collect()
    }

    pub fn vertex_name(&self, v: usize) -> String {
        let n1 = self.palettes[0].len();
        if v < n1 {
            format!("1:{}", self.palettes[0][v])
        } else {
            format!("2:{}", self.palettes[1][v - n1])
        }
    }
}
