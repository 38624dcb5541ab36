//! Finite categories of monomorphisms, presheaves over them, and exact or
//! bounded checks of the contractibility theory whose strong models form an
//! abstract elementary class with the homotopy type of the base category.
//!
//! The crate is organised bottom-up:
//!
//! - [`fincat`]: finite categories, posets, functor enumeration,
//!   barycentric subdivision and suspensions;
//! - [`nervehom`]: truncated nerves, Smith normal form and integral
//!   homology;
//! - [`presheaf`]: finite presheaves, categories of elements, colimits and
//!   the palette/coloring view of presheaves on a suspension;
//! - [`axioms`]: the `Inj` and `Asph` checks, model reports and exact
//!   oracles for the graph examples;
//! - [`format`]: canonical JSON file formats.

pub mod axioms;
pub mod fincat;
pub mod format;
pub mod nervehom;
pub mod presheaf;
