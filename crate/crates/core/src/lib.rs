//! Computational toolkit for bound quiver algebras and their module varieties.
//!
//! The crate works with finite quivers `Q`, admissible relation ideals `I` in
//! the path algebra `KQ`, and the finite-dimensional quotients `A = KQ/I`.
//! For a dimension vector `d` the affine variety `rep(A, d)` of `d`-dimensional
//! representations is studied through exact linear algebra over the rationals
//! or a prime field: orbit dimensions, stratifications by Jordan data of loop
//! actions, and machine-checkable certificates that `rep(A, d)` is reducible
//! for a suitable `d`.
//!
//! All arithmetic is exact.  There is no floating point anywhere in the crate.

pub mod algebra;
pub mod builders;
pub mod certificates;
pub mod field;
pub mod linalg;
pub mod modules;
pub mod quiver;
pub mod varieties;

pub use field::{Field, PrimeField, Rationals};
pub use quiver::{Path, Quiver};
