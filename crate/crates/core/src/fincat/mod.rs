//! Finite categories, functors, posets and the subdivision machinery.
//!
//! Everything here is small and explicit: categories carry a full
//! composition table that is validated eagerly, posets carry their strict
//! lower and upper sets, and the barycentric subdivision of a poset is its
//! poset of nonempty chains with canonical nested names.

mod category;
mod enumerate;
mod functor;
mod poset;
mod subdivision;
mod suspension;

use thiserror::Error;

pub use category::{
    involution_pair, parallel_pair, spec_from_parts, CategorySpec, CompositeSpec, FinCat, Mor,
    MorphismData, MorphismSpec, Obj,
};
pub use enumerate::{enumerate_functors, Constraint, FunctorSearch, PosetFunctor, SearchOutcome};
pub use functor::Functor;
pub use poset::{MonotoneMap, Poset};
pub use subdivision::{
    chain_lift, chain_poset, collapse_functor, collapse_power, sd_boundary_poset,
    sd_simplex_poset, Subdivision,
};
pub use suspension::{adjoin_initial, suspension, SuspensionBase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("dangling reference to `{0}`")]
    DanglingReference(String),
    #[error("composite {g} ∘ {f} declared but cod({f}) ≠ dom({g})")]
    NotComposable { g: String, f: String },
    #[error("composite {g} ∘ {f} = {result} has the wrong domain or codomain")]
    CompositeTypeMismatch { g: String, f: String, result: String },
    #[error("composite {g} ∘ {f} declared twice with different results")]
    ConflictingComposite { g: String, f: String },
    #[error("missing composite {g} ∘ {f}")]
    MissingComposite { g: String, f: String },
    #[error("identity violation: {0}")]
    IdentityViolation(String),
    #[error("associativity violation: ({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})")]
    AssociativityViolation { h: String, g: String, f: String },
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("not a suspension base: {0}")]
    NotASuspensionBase(String),
    #[error("not a functor: {0}")]
    FunctorViolation(String),
}
