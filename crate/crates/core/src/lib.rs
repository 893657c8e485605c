//! Exact-arithmetic toolkit for the classification of smooth double covers
//! of K3 surfaces: branch-locus admissibility and cover invariants, the
//! Neron-Severi candidate lattices with their discriminant forms, even-set
//! codes of disjoint rational curves, and brute-force rederivations of the
//! classification data.
//!
//! All lattice computation happens over arbitrary-precision integers and
//! rationals; there is no floating point in this crate.

pub mod covers;
pub mod error;
pub mod evensets;
pub mod exactlin;
pub mod k3lattices;
pub mod lattice;
pub mod verify;

pub use error::{Error, Result};
