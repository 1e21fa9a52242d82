//! Exact-arithmetic hom-polytopes.
//!
//! `Hom(P, Q)` is the polytope of affine maps sending a polytope `P` into a
//! polytope `Q`. This crate builds it as an inequality system over the
//! coordinates of the map, enumerates its vertices with a double description
//! kernel over the integers, and checks the structure of the resulting vertex
//! maps for simplices, cubes and crosspolytopes.
//!
//! Modules, bottom-up:
//!
//! * [`linalg`]: rationals, vectors, matrices, fraction-free elimination.
//! * [`polytope`]: V/H representations, double description, duality,
//!   standard polytopes, combinatorial comparison.
//! * [`group`]: signed permutations and orbit counting.
//! * [`hom`]: hom-polytope construction and vertex map classification.
//! * [`counts`]: closed-form counts and the brute-force `V(n)`, `β(n)`.
//! * [`experiments`]: simplex intersection table with a seeded generator.
//! * [`verify`]: the claim registry and suites.

pub mod counts;
pub mod error;
pub mod experiments;
pub mod group;
pub mod hom;
pub mod linalg;
pub mod par;
pub mod polytope;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{QMatrix, QVector, Rational};
