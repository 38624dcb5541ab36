//! The contractibility axioms evaluated on finite presheaves, with bounded
//! and exact verdicts.

mod asph;
mod inj;
mod lift;
mod oracle;
mod report;

use serde::Serialize;
use thiserror::Error;

use crate::fincat::FinCatError;
use crate::nervehom::HomologyGroup;
use crate::presheaf::PresheafError;

pub use asph::{check_asph, AsphEngine, AsphInstance, AsphStatus, AsphSweep, AsphVerdict, LiftSolution, StuckLift};
pub use inj::{check_inj, check_inj_literal, InjReport, InjViolation, LiteralInjViolation};
pub use lift::{enumerate_lifts, satisfies_lift, LiftAssignment};
pub use oracle::{directed_tree_oracle, labeled_tree_oracle, undirected_tree_oracle};
pub use report::{check_tcontr, check_tcontr_rel, is_tree, ExactCriterion, ModelReport, Overall, RelativeReport};

#[derive(Debug, Error)]
pub enum AxiomError {
    #[error("the base category is not a category of monomorphisms")]
    NotMonoCategory,
    #[error("the presheaf lives over a different category")]
    BaseMismatch,
    #[error("bounds: {0}")]
    Bounds(String),
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
}

/// Search limits for the bounded part of a model check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n_max: usize,
    pub k_max: usize,
    pub l_max: usize,
    /// Highest homology degree checked for acyclicity.
    pub acyclic_dim: usize,
    /// Node budget for each extension search.
    pub node_budget: u64,
    /// Cap on the lifts enumerated for one `(n, k)`.
    pub max_lifts: usize,
    #[serde(skip)]
    pub keep_witnesses: bool,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            n_max: 2,
            k_max: 2,
            l_max: 2,
            acyclic_dim: 2,
            node_budget: 100_000,
            max_lifts: 50_000,
            keep_witnesses: false,
        }
    }
}

/// Largest subdivision depth per simplex dimension; `sd^m Δ[n]` grows like
/// `((n+1)!)^m`, so these stay in the low thousands of elements.
const MAX_DEPTH: [usize; 4] = [usize::MAX, 8, 5, 3];

impl Bounds {
    pub fn validate(&self) -> Result<(), AxiomError> {
        if self.k_max == 0 {
            return Err(AxiomError::Bounds("k_max must be at least 1".into()));
        }
        self.check_shape(self.n_max, self.k_max + self.l_max)
    }

    pub(crate) fn check_shape(&self, n: usize, depth: usize) -> Result<(), AxiomError> {
        match MAX_DEPTH.get(n) {
            Some(&cap) if depth <= cap => Ok(()),
            Some(&cap) => Err(AxiomError::Bounds(format!(
                "k + l = {depth} exceeds the supported depth {cap} for n = {n}"
            ))),
            None => Err(AxiomError::Bounds(format!("n = {n} exceeds the supported maximum 3"))),
        }
    }
}

/// An exact reason a presheaf is not a model. Each variant can be checked
/// again independently of the search that found it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    Inj(InjViolation),
    /// Reduced homology of the element category is nonzero in this degree.
    Homology { degree: usize, group: HomologyGroup },
    EmptyElements,
    /// A lift of `∂Δ[1]` hits two components of the element category.
    Disconnected { from: String, to: String },
    /// A lift of `∂Δ[2]` traces a loop that does not reduce in the free
    /// groupoid of a one-dimensional element category.
    EssentialLoop { word: Vec<String> },
    /// A one-dimensional element category whose graph is not a tree.
    NotATree,
    ColoringGraphNotTree,
    ComponentNotModel { index: usize },
}
