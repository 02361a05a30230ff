//! Lusternik–Schnirelmann category of sphere bundles over spheres.
//!
//! An `S^r`-bundle `E` over `S^(t+1)` is the three-cell complex
//! `S^r ∪_α e^(t+1) ∪_ψ e^(r+t+1)`, where `α : S^t -> S^r` restricts the
//! characteristic map. [`engine::Engine`] decides `cat(Q)`, `cat(E)` and the
//! categories of their products with spheres from homotopy invariants of `α`,
//! answering only what the fact [`Catalog`] certifies.
//!
//! [`bar`] checks the bar-resolution differential on tensor powers of the
//! Pontryagin ring of `ΩS^r` that the classification rests on.

pub mod algebra;
pub mod bar;
pub mod catalog;
pub mod class;
pub mod engine;
pub mod error;
pub mod tri;

pub use algebra::HopfConfig;
pub use catalog::{load_facts, Catalog, Evidence};
pub use class::{CompositionClass, Factor, MaybeClass};
pub use error::{Error, Result};
pub use tri::{TriState, Truth};
