//! Dense complex linear algebra and closed-form solvers for two matrix
//! equations from discrete-time stability analysis:
//!
//! - the discrete Lyapunov equation `X = A X A^H + Q`, and
//! - the Stein equation `X - A X F = Q`.
//!
//! The primary solver diagonalizes the coefficient matrices and applies a
//! Hadamard product with a Cauchy-type kernel, which costs `O(n^3)`. Every
//! solve can be cross-checked against a Kronecker-vectorization solver
//! (`O(n^6)`, exact but expensive) and, for stable `A`, a truncated
//! power-series solver.
//!
//! Module map:
//! - [`matrix`]: column-major `ComplexMatrix` and the arithmetic primitives.
//! - [`eig`]: eigendecompositions in the `A = S^-1 Σ S` convention, with
//!   defectiveness and conditioning diagnostics.
//! - [`kernel`]: the Cauchy-type Hadamard kernels with resonance detection.
//! - [`solve`]: the equation solvers and residual diagnostics.

pub mod eig;
pub mod error;
pub mod kernel;
pub mod matrix;
pub mod solve;

pub use error::Error;
pub use matrix::{solve_linear, ComplexMatrix, Lu};

pub use num_complex::Complex64;
