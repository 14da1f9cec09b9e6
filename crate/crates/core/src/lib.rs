//! Finite cosymmetric sets and the 2-dimensional open TQFTs they define.
//!
//! The crate builds truncated simplicial sets with paracyclic, Γ and
//! cosymmetric structure from finite partial monoids, checks the relations
//! and pullback conditions that make them 2-Segal, computes the associated
//! Hall algebras, and evaluates cobordism words through spans of finite sets.

// Levels are indexed by `n` across several parallel tables at once.
#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod export;
pub mod finset;
pub mod hall;
pub mod linalg;
pub mod monoid_spec;
pub mod pmonoid;
pub mod report;
pub mod simplicial;
pub mod suite;
pub mod tqft;

pub use finset::{FinMap, FinSet, FinSetError, Span};
pub use pmonoid::{MonoidError, PartialMonoid};
pub use report::{CheckReport, Violation};
pub use simplicial::{Flavor, SimplicialError, StructuredSet};
