//! Cauchy-type Hadamard kernels with resonance detection.
//!
//! The closed-form solvers multiply a transformed right-hand side
//! elementwise by a kernel matrix whose entries are reciprocals of
//! `1 - (eigenvalue product)`. Whenever such a product sits on 1 the
//! underlying equation is singular; that is flagged as resonance rather
//! than silently producing a huge entry.

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::ComplexMatrix;

/// A kernel denominator within this distance of zero is resonance. The
/// closed form needs nonsingularity, not stability: eigenvalue products
/// larger than 1 in magnitude are fine as long as they avoid 1 itself.
pub const RESONANCE_TOL: f64 = 1e-12;

/// Which equation a kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Dle,
    Stein,
}

/// A built kernel plus singularity metadata.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub values: ComplexMatrix,
    /// `min |1 - product|` over all entries; always above [`RESONANCE_TOL`].
    pub min_denominator: f64,
    pub kind: KernelKind,
}

/// Kernel for the discrete Lyapunov equation: `M[i][j] = 1 / (1 - σᵢ σⱼ*)`.
/// Hermitian by construction (the lower triangle mirrors the conjugated
/// upper triangle).
pub fn build_dle_kernel(sigma: &[Complex64]) -> Result<KernelMatrix, Error> {
    if sigma.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let n = sigma.len();
    let mut values = ComplexMatrix::zeros(n, n);
    let mut min_denominator = f64::INFINITY;
    for i in 0..n {
        for j in i..n {
            let denom = Complex64::new(1.0, 0.0) - sigma[i] * sigma[j].conj();
            let mag = denom.norm();
            min_denominator = min_denominator.min(mag);
            if mag <= RESONANCE_TOL {
                return Err(Error::Resonance {
                    min_denominator: mag,
                });
            }
            let entry = denom.inv();
            values[(i, j)] = entry;
            if i != j {
                values[(j, i)] = entry.conj();
            }
        }
    }
    Ok(KernelMatrix {
        values,
        min_denominator,
        kind: KernelKind::Dle,
    })
}

/// Kernel for the Stein equation: `N[i][j] = 1 / (1 - θᵢ λⱼ)`, shape n x p.
/// Note the second factor is not conjugated.
pub fn build_stein_kernel(
    theta: &[Complex64],
    lambda: &[Complex64],
) -> Result<KernelMatrix, Error> {
    if theta.is_empty() || lambda.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let (n, p) = (theta.len(), lambda.len());
    let mut values = ComplexMatrix::zeros(n, p);
    let mut min_denominator = f64::INFINITY;
    for i in 0..n {
        for j in 0..p {
            let denom = Complex64::new(1.0, 0.0) - theta[i] * lambda[j];
            let mag = denom.norm();
            min_denominator = min_denominator.min(mag);
            if mag <= RESONANCE_TOL {
                return Err(Error::Resonance {
                    min_denominator: mag,
                });
            }
            values[(i, j)] = denom.inv();
        }
    }
    Ok(KernelMatrix {
        values,
        min_denominator,
        kind: KernelKind::Stein,
    })
}
