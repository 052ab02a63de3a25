//! Seeded deterministic instance generation for tests and benchmarks.

use mateq::matrix::ComplexMatrix;
use mateq::solve::spectral_radius;
use mateq::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::CliError;

/// Matrix of independent complex Gaussians (each component standard normal),
/// identical for identical `(rows, cols, seed)`.
pub fn complex_gaussian(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))
    })
}

/// Random complex matrix rescaled to spectral radius `rho`. Degenerate draws
/// (radius zero) are redrawn a bounded number of times.
pub fn generate_stable_matrix(n: usize, rho: f64, seed: u64) -> Result<ComplexMatrix, CliError> {
    assert!(rho > 0.0, "target spectral radius must be positive");
    const ATTEMPTS: usize = 8;
    for attempt in 0..ATTEMPTS {
        let draw = complex_gaussian(n, n, seed.wrapping_add(attempt as u64 * 0x9e3779b97f4a7c15));
        let radius = spectral_radius(&draw)?;
        if radius > 1e-100 {
            return Ok(draw.scale(Complex64::new(rho / radius, 0.0)));
        }
    }
    Err(CliError::DegenerateDraw { attempts: ATTEMPTS })
}
