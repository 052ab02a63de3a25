//! Error type shared by all operations in this crate.

use std::fmt;

/// Errors reported by matrix operations, eigensolvers and equation solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes are incompatible for the requested operation.
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// A matrix with zero rows or columns was requested.
    EmptyMatrix,
    /// Raw data length does not match `rows * cols`.
    InvalidData { expected: usize, got: usize },
    /// A NaN or infinite component was passed to a constructor.
    NonFinite,
    /// The operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Gaussian elimination hit a pivot that is zero to working precision.
    SingularPivot { pivot: f64 },
    /// A Kronecker product would exceed the configured memory cap.
    MemoryCap { required_bytes: u128, cap_bytes: u128 },
    /// The input is not Hermitian within tolerance.
    NotHermitian { asymmetry: f64 },
    /// The matrix is defective (or near-defective): no well-conditioned
    /// eigenbasis exists. Carries the condition estimate of S.
    Defective { s_condition: f64 },
    /// The QR iteration did not converge within the sweep budget.
    NonConvergence { sweeps: usize },
    /// An eigenvalue product sits on (or within tolerance of) 1, so the
    /// matrix equation is singular and the kernel entry is undefined.
    Resonance { min_denominator: f64 },
    /// The series solution diverges: spectral radius is not below 1.
    Divergence { spectral_radius: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, lhs, rhs } => write!(
                f,
                "{op}: dimension mismatch, {}x{} vs {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Error::EmptyMatrix => write!(f, "matrix dimensions must be positive"),
            Error::InvalidData { expected, got } => {
                write!(f, "data length mismatch: expected {expected}, got {got}")
            }
            Error::NonFinite => write!(f, "non-finite (NaN or infinite) entry rejected"),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::SingularPivot { pivot } => write!(
                f,
                "matrix is singular to working precision (pivot magnitude {pivot:.3e})"
            ),
            Error::MemoryCap {
                required_bytes,
                cap_bytes,
            } => write!(
                f,
                "Kronecker product needs {required_bytes} bytes, above the {cap_bytes} byte cap"
            ),
            Error::NotHermitian { asymmetry } => write!(
                f,
                "matrix is not Hermitian within tolerance (relative asymmetry {asymmetry:.3e})"
            ),
            Error::Defective { s_condition } => write!(
                f,
                "matrix is defective or near-defective (eigenbasis condition {s_condition:.3e})"
            ),
            Error::NonConvergence { sweeps } => {
                write!(f, "QR iteration failed to converge within {sweeps} sweeps")
            }
            Error::Resonance { min_denominator } => write!(
                f,
                "eigenvalue resonance: smallest kernel denominator {min_denominator:.3e}"
            ),
            Error::Divergence { spectral_radius } => write!(
                f,
                "series diverges: spectral radius {spectral_radius} is not below 1"
            ),
        }
    }
}

impl std::error::Error for Error {}
