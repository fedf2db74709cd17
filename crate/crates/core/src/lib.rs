//! Exact arithmetic for eigenvectors of 3x3 octonionic Hermitian matrices.
//!
//! The central result is a closed-form six-parameter family of matrices
//! `A` with `A v = v [v]` for a generic imaginary vector `v`, where
//! `[v] = [x, y, z]` is the associator. [`solver`] builds that family,
//! [`oracle`] checks it against a formula-free linear solve, and
//! [`canonical`] moves arbitrary vectors into generic position.

pub mod canonical;
pub mod examples;
pub mod jordan;
pub mod linalg;
pub mod octonion;
pub mod oracle;
pub mod scalar;
pub mod solver;

pub use jordan::{EigenPair, JordanMatrix, OctVector};
pub use octonion::{associator, BasisUnit, FloatOctonion, Octonion};
pub use scalar::{Field, QuadExt, Rational, Scalar};
pub use solver::{construct, contains, Containment, GenericImaginaryVector, SolverParams};
