//! Nerves of finite categories and their integral homology.

mod nerve;
mod snf;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::fincat::FinCat;

pub use nerve::{nerve, Face, TruncatedSSet};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("H_{requested} needs simplices up to dimension {}, but the truncation stops at {available}", requested + 1)]
    TruncationTooShallow { requested: usize, available: usize },
    #[error("the nerve has nondegenerate 2-simplices")]
    NotOneDimensional,
    #[error("face identity fails: {0}")]
    FaceIdentity(String),
    #[error("malformed simplicial set: {0}")]
    Malformed(String),
    #[error("∂_{d} ∘ ∂_{} is nonzero", d + 1)]
    BoundarySquareNonzero { d: usize },
    #[error("an invariant factor does not fit in 64 bits")]
    TorsionOverflow,
}

/// Normalized integral chains: `boundaries[d - 1]` is `∂_d : C_d → C_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Rejects complexes with `∂∂ ≠ 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<ChainComplex, HomologyError> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(HomologyError::Malformed("need one boundary map per positive degree".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[i] || b.cols() != ranks[i + 1] {
                return Err(HomologyError::Malformed(format!("∂_{} has the wrong shape", i + 1)));
            }
        }
        for d in 1..boundaries.len() {
            let sq = boundaries[d - 1].checked_mul(&boundaries[d]);
            if !sq.is_some_and(|m| m.is_zero()) {
                return Err(HomologyError::BoundarySquareNonzero { d });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// The normalized chain complex: degenerate faces contribute zero.
    pub fn of(x: &TruncatedSSet) -> ChainComplex {
        let boundaries = (1..=x.max_dim())
            .map(|d| {
                let mut m = IntMatrix::zeros(x.count(d - 1), x.count(d));
                for i in 0..x.count(d) {
                    for (j, face) in x.faces(d, i).iter().enumerate() {
                        if let Face::Simplex(k) = face {
                            m.add_to(*k, i, if j % 2 == 0 { 1 } else { -1 });
                        }
                    }
                }
                m
            })
            .collect();
        ChainComplex::new(x.counts(), boundaries).expect("nerve chains have ∂∂ = 0")
    }

    pub fn max_dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks[d]
    }

    pub fn boundary(&self, d: usize) -> &IntMatrix {
        &self.boundaries[d - 1]
    }

    /// `H_0 … H_{d_max}`.
    pub fn homology(&self, d_max: usize) -> Result<Vec<HomologyGroup>, HomologyError> {
        if d_max + 1 > self.max_dim() {
            return Err(HomologyError::TruncationTooShallow {
                requested: d_max,
                available: self.max_dim(),
            });
        }
        let forms: Vec<SmithForm> = self.boundaries[..=d_max].par_iter().map(smith_normal_form).collect();
        (0..=d_max)
            .map(|d| {
                let incoming = if d == 0 { 0 } else { forms[d - 1].rank };
                let outgoing = &forms[d];
                Ok(HomologyGroup {
                    betti: self.ranks[d] - incoming - outgoing.rank,
                    torsion: outgoing.torsion().ok_or(HomologyError::TorsionOverflow)?,
                })
            })
            .collect()
    }
}

/// A finitely generated abelian group `ℤ^betti ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors, each dividing the next.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn zero() -> HomologyGroup {
        HomologyGroup::default()
    }

    pub fn free(betti: usize) -> HomologyGroup {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(format!("Z^{}", self.betti));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `H_0 … H_{d_max}` of a truncated simplicial set.
pub fn homology(x: &TruncatedSSet, d_max: usize) -> Result<Vec<HomologyGroup>, HomologyError> {
    ChainComplex::of(x).homology(d_max)
}

/// Homology of the nerve of `c` in degrees `0..=d_max`.
pub fn category_homology(c: &FinCat, d_max: usize) -> Vec<HomologyGroup> {
    homology(&nerve(c, d_max + 1), d_max).expect("the nerve is truncated deep enough")
}

/// Whether `ℤ` sits in degree 0 and nothing else up to degree `d`.
pub fn reduced_homology_vanishes(groups: &[HomologyGroup]) -> bool {
    groups.first().is_some_and(HomologyGroup::is_integers) && groups[1..].iter().all(HomologyGroup::is_zero)
}

/// Reduced homology of `c` vanishes in degrees `0..=d`.
///
/// This is only a necessary condition for weak contractibility: it cannot
/// see the fundamental group or anything above degree `d`.
pub fn is_acyclic_up_to(c: &FinCat, d: usize) -> bool {
    reduced_homology_vanishes(&category_homology(c, d))
}

/// Exact contractibility test for categories whose nerve is a graph: the
/// graph of objects and nonidentity morphisms must be a tree.
pub fn one_dim_contractibility(c: &FinCat) -> Result<bool, HomologyError> {
    let x = nerve(c, 2);
    if x.count(2) > 0 {
        return Err(HomologyError::NotOneDimensional);
    }
    let v = c.num_objects();
    let edges: Vec<(usize, usize)> = c
        .nonidentity_morphisms()
        .map(|f| (c.dom(f).index(), c.cod(f).index()))
        .collect();
    if v == 0 || edges.len() != v - 1 {
        return Ok(false);
    }
    let mut parent: Vec<usize> = (0..v).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return Ok(false);
        }
        parent[ra] = rb;
    }
    Ok(true)
}
