//! Solvers for the discrete Lyapunov equation `X = A X A^H + Q` and the
//! Stein equation `X - A X F = Q`, plus residual diagnostics.
//!
//! Three routes solve the DLE:
//! - [`solve_dle_closed`]: eigendecompose `A`, multiply the transformed
//!   right-hand side elementwise by the Cauchy kernel, transform back.
//!   `O(n^3)`; needs `A` non-defective and no resonance. Works for
//!   unstable `A` too — only resonance is fatal.
//! - [`solve_dle_kron`]: solve `(I - conj(A) ⊗ A) vec(X) = vec(Q)` directly.
//!   `O(n^6)`; the correctness oracle. Independent of the eigensolver.
//! - [`solve_dle_series`]: accumulate `X_k = Q + A X_{k-1} A^H`. Requires
//!   spectral radius below 1.
//!
//! The Stein equation gets the closed form ([`solve_stein_closed`]) and the
//! Kronecker oracle ([`solve_stein_kron`]).

use crate::eig::{self, eig_general, eig_hermitian, TOL_HERM};
use crate::error::Error;
use crate::kernel::{build_dle_kernel, build_stein_kernel};
use crate::matrix::{solve_linear, ComplexMatrix, Lu};

/// Residuals above this set the report's warning instead of erroring:
/// near-defective eigenbases degrade accuracy gracefully.
pub const TOL_ACCEPT: f64 = 1e-8;

/// Positive floor in the residual denominator so `Q = 0` divides cleanly.
pub const EPS_FLOOR: f64 = 1e-300;

/// Solution method tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Series,
    Kron,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Series => "series",
            Method::Kron => "kron",
        }
    }
}

/// A solved instance: the solution plus the diagnostics needed to judge it.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: ComplexMatrix,
    /// `||X - op(X) - Q||_F / max(||Q||_F, EPS_FLOOR)`, recomputable from
    /// `solution` via [`residual_dle`] / [`residual_stein`].
    pub residual_rel: f64,
    pub method: Method,
    /// Condition estimate of the eigenbasis; present for closed-form solves.
    pub s_condition: Option<f64>,
    /// Series terms accumulated; present iff `method == Series`.
    pub terms_used: Option<usize>,
    /// For the DLE: max |eigenvalue of A|. For Stein: the product of the
    /// spectral radii of A and F (the contraction factor of the fixed point).
    pub spectral_radius: f64,
    pub warning: Option<String>,
}

/// The discrete Lyapunov problem `X = A X A^H + Q`.
#[derive(Debug, Clone)]
pub struct DleProblem {
    pub a: ComplexMatrix,
    pub q: ComplexMatrix,
}

impl DleProblem {
    pub fn new(a: ComplexMatrix, q: ComplexMatrix) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if q.rows() != a.rows() || q.cols() != a.cols() {
            return Err(Error::DimensionMismatch {
                op: "dle",
                lhs: (a.rows(), a.cols()),
                rhs: (q.rows(), q.cols()),
            });
        }
        Ok(Self { a, q })
    }
}

/// The Stein problem `X - A X F = Q` with `A` n x n, `F` p x p, `Q` n x p.
#[derive(Debug, Clone)]
pub struct SteinProblem {
    pub a: ComplexMatrix,
    pub f: ComplexMatrix,
    pub q: ComplexMatrix,
}

impl SteinProblem {
    pub fn new(a: ComplexMatrix, f: ComplexMatrix, q: ComplexMatrix) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !f.is_square() {
            return Err(Error::NotSquare {
                rows: f.rows(),
                cols: f.cols(),
            });
        }
        if q.rows() != a.rows() || q.cols() != f.rows() {
            return Err(Error::DimensionMismatch {
                op: "stein",
                lhs: (a.rows(), f.rows()),
                rhs: (q.rows(), q.cols()),
            });
        }
        Ok(Self { a, f, q })
    }
}

/// Relative back-substitution residual of a DLE candidate solution.
pub fn residual_dle(p: &DleProblem, x: &ComplexMatrix) -> f64 {
    let axa = p
        .a
        .matmul(x)
        .and_then(|ax| ax.matmul(&p.a.conj_transpose()))
        .expect("shapes fixed by DleProblem");
    let res = x.sub(&axa).and_then(|d| d.sub(&p.q)).expect("same shapes");
    res.frobenius_norm() / p.q.frobenius_norm().max(EPS_FLOOR)
}

/// Relative back-substitution residual of a Stein candidate solution.
pub fn residual_stein(p: &SteinProblem, x: &ComplexMatrix) -> f64 {
    let axf = p
        .a
        .matmul(x)
        .and_then(|ax| ax.matmul(&p.f))
        .expect("shapes fixed by SteinProblem");
    let res = x.sub(&axf).and_then(|d| d.sub(&p.q)).expect("same shapes");
    res.frobenius_norm() / p.q.frobenius_norm().max(EPS_FLOOR)
}

/// Largest eigenvalue magnitude, via the eigenvalues-only QR path (works for
/// defective matrices as well).
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64, Error> {
    Ok(eig::eigenvalues(a)?
        .iter()
        .map(|s| s.norm())
        .fold(0.0, f64::max))
}

fn is_hermitian(m: &ComplexMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let asym = m
        .sub(&m.conj_transpose())
        .expect("same shape")
        .frobenius_norm();
    asym <= TOL_HERM * m.frobenius_norm()
}

fn residual_warning(residual_rel: f64) -> Option<String> {
    (residual_rel > TOL_ACCEPT).then(|| {
        format!("relative residual {residual_rel:.3e} above acceptance threshold {TOL_ACCEPT:.0e}")
    })
}

/// Closed-form DLE solve: `X = S^-1 (S Q S^H ∘ M) S^-H` where `A = S^-1 Σ S`
/// and `M[i][j] = 1 / (1 - σᵢ σⱼ*)`.
pub fn solve_dle_closed(p: &DleProblem) -> Result<SolveReport, Error> {
    // Hermitian fast path: a Hermitian A with Hermitian Q stays inside the
    // unitary-diagonalization regime, which is cheaper and better behaved.
    let decomp = if is_hermitian(&p.a) && is_hermitian(&p.q) {
        eig_hermitian(&p.a)?
    } else {
        eig_general(&p.a)?
    };
    let rho = decomp.sigma.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let kernel = build_dle_kernel(&decomp.sigma)?;

    let s = &decomp.s_matrix;
    let q_hat = s.matmul(&p.q)?.matmul(&s.conj_transpose())?;
    let y = q_hat.hadamard(&kernel.values)?;
    // One LU of S serves both solves: T = S^-1 Y, then X = (S^-1 T^H)^H.
    let lu = Lu::new(s)?;
    let t = lu.solve(&y)?;
    let x = lu.solve(&t.conj_transpose())?.conj_transpose();

    let residual_rel = residual_dle(p, &x);
    Ok(SolveReport {
        warning: residual_warning(residual_rel),
        solution: x,
        residual_rel,
        method: Method::ClosedForm,
        s_condition: Some(decomp.s_condition),
        terms_used: None,
        spectral_radius: rho,
    })
}

/// Kronecker-vectorization DLE solve: `(I - conj(A) ⊗ A) vec(X) = vec(Q)`.
pub fn solve_dle_kron(p: &DleProblem) -> Result<SolveReport, Error> {
    let rho = spectral_radius(&p.a)?;
    let n = p.a.rows();
    let kron = p.a.conj().kron(&p.a)?;
    let sys = ComplexMatrix::identity(n * n).sub(&kron)?;
    let x_vec = match solve_linear(&sys, &p.q.vec()) {
        Ok(v) => v,
        // A singular vectorized system means some eigenvalue product sits
        // on 1: the resonance condition, seen from the oracle's side.
        Err(Error::SingularPivot { pivot }) => {
            return Err(Error::Resonance {
                min_denominator: pivot,
            })
        }
        Err(e) => return Err(e),
    };
    let x = ComplexMatrix::unvec(&x_vec, n, n)?;
    let residual_rel = residual_dle(p, &x);
    Ok(SolveReport {
        warning: residual_warning(residual_rel),
        solution: x,
        residual_rel,
        method: Method::Kron,
        s_condition: None,
        terms_used: None,
        spectral_radius: rho,
    })
}

/// Truncated power-series DLE solve via the fixed-point recurrence
/// `X_k = Q + A X_{k-1} A^H`. Rejects spectral radius ≥ 1 up front; if
/// `max_terms` is reached first, the partial sum is returned with a warning.
pub fn solve_dle_series(
    p: &DleProblem,
    tol: f64,
    max_terms: usize,
) -> Result<SolveReport, Error> {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_terms > 0, "max_terms must be positive");
    let rho = spectral_radius(&p.a)?;
    if rho >= 1.0 {
        return Err(Error::Divergence {
            spectral_radius: rho,
        });
    }

    let ah = p.a.conj_transpose();
    let mut x = p.q.clone();
    let mut terms = 1usize;
    let mut truncated = false;
    loop {
        if terms >= max_terms {
            truncated = true;
            break;
        }
        let next = p.q.add(&p.a.matmul(&x)?.matmul(&ah)?)?;
        let step = next.sub(&x)?.frobenius_norm();
        x = next;
        terms += 1;
        if step <= tol * x.frobenius_norm() {
            break;
        }
    }

    let residual_rel = residual_dle(p, &x);
    let mut warning = residual_warning(residual_rel);
    if truncated {
        let msg = format!("series stopped at max_terms = {max_terms} before reaching tolerance");
        warning = Some(match warning {
            Some(w) => format!("{msg}; {w}"),
            None => msg,
        });
    }
    Ok(SolveReport {
        solution: x,
        residual_rel,
        method: Method::Series,
        s_condition: None,
        terms_used: Some(terms),
        spectral_radius: rho,
        warning,
    })
}

/// Closed-form Stein solve: `X = U^-1 (U Q V^-1 ∘ N) V` where `A = U^-1 Θ U`,
/// `F = V^-1 Λ V` and `N[i][j] = 1 / (1 - θᵢ λⱼ)`.
pub fn solve_stein_closed(p: &SteinProblem) -> Result<SolveReport, Error> {
    let decomp_a = eig_general(&p.a)?;
    let decomp_f = eig_general(&p.f)?;
    let rho_a = decomp_a.sigma.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let rho_f = decomp_f.sigma.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let kernel = build_stein_kernel(&decomp_a.sigma, &decomp_f.sigma)?;

    let u = &decomp_a.s_matrix;
    let v = &decomp_f.s_matrix;
    let v_inv = Lu::new(v)?.inverse();
    let q_hat = u.matmul(&p.q)?.matmul(&v_inv)?;
    let y = q_hat.hadamard(&kernel.values)?;
    let x = Lu::new(u)?.solve(&y.matmul(v)?)?;

    let residual_rel = residual_stein(p, &x);
    Ok(SolveReport {
        warning: residual_warning(residual_rel),
        solution: x,
        residual_rel,
        method: Method::ClosedForm,
        s_condition: Some(decomp_a.s_condition.max(decomp_f.s_condition)),
        terms_used: None,
        spectral_radius: rho_a * rho_f,
    })
}

/// Kronecker-vectorization Stein solve: `(I - Fᵀ ⊗ A) vec(X) = vec(Q)`.
pub fn solve_stein_kron(p: &SteinProblem) -> Result<SolveReport, Error> {
    let rho = spectral_radius(&p.a)? * spectral_radius(&p.f)?;
    let (n, pc) = (p.a.rows(), p.f.rows());
    let kron = p.f.transpose().kron(&p.a)?;
    let sys = ComplexMatrix::identity(n * pc).sub(&kron)?;
    let x_vec = match solve_linear(&sys, &p.q.vec()) {
        Ok(v) => v,
        Err(Error::SingularPivot { pivot }) => {
            return Err(Error::Resonance {
                min_denominator: pivot,
            })
        }
        Err(e) => return Err(e),
    };
    let x = ComplexMatrix::unvec(&x_vec, n, pc)?;
    let residual_rel = residual_stein(p, &x);
    Ok(SolveReport {
        warning: residual_warning(residual_rel),
        solution: x,
        residual_rel,
        method: Method::Kron,
        s_condition: None,
        terms_used: None,
        spectral_radius: rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pseudo_random(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0x9e3779b97f4a7c15);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(next(), next()))
    }

    fn random_with_radius(n: usize, rho: f64, seed: u64) -> ComplexMatrix {
        let draw = pseudo_random(n, n, seed);
        let radius = spectral_radius(&draw).unwrap();
        draw.scale(c(rho / radius, 0.0))
    }

    #[test]
    fn dle_zero_coefficient_returns_q() {
        let q = pseudo_random(3, 3, 1);
        let p = DleProblem::new(ComplexMatrix::zeros(3, 3), q.clone()).unwrap();
        let report = solve_dle_closed(&p).unwrap();
        assert!(report.solution.sub(&q).unwrap().frobenius_norm() < 1e-14);
        assert!(report.residual_rel < 1e-14);
        let report = solve_dle_kron(&p).unwrap();
        assert!(report.solution.sub(&q).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn dle_zero_rhs_returns_zero() {
        let a = random_with_radius(4, 0.8, 2);
        let p = DleProblem::new(a, ComplexMatrix::zeros(4, 4)).unwrap();
        let report = solve_dle_closed(&p).unwrap();
        assert!(report.solution.frobenius_norm() < 1e-12);
        assert_eq!(report.residual_rel, 0.0);
    }

    #[test]
    fn dle_kron_scalar() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.5]]).unwrap();
        let q = ComplexMatrix::from_real_rows(&[vec![1.0]]).unwrap();
        let p = DleProblem::new(a, q).unwrap();
        let report = solve_dle_kron(&p).unwrap();
        assert!((report.solution[(0, 0)] - c(4.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn dle_series_geometric() {
        let a = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        let q = ComplexMatrix::identity(2);
        let p = DleProblem::new(a, q).unwrap();
        let report = solve_dle_series(&p, 1e-14, 1000).unwrap();
        for i in 0..2 {
            assert!((report.solution[(i, i)] - c(4.0 / 3.0, 0.0)).norm() < 1e-12);
        }
        assert!(report.terms_used.is_some());
        assert!(report.warning.is_none());
    }

    #[test]
    fn dle_series_rejects_unstable() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.01, 0.0], vec![0.0, 0.5]]).unwrap();
        let q = ComplexMatrix::identity(2);
        let p = DleProblem::new(a, q).unwrap();
        match solve_dle_series(&p, 1e-10, 100) {
            Err(Error::Divergence { spectral_radius }) => {
                assert!((spectral_radius - 1.01).abs() < 1e-9)
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn dle_series_truncation_warns() {
        let a = random_with_radius(3, 0.9, 77);
        let q = pseudo_random(3, 3, 78);
        let p = DleProblem::new(a, q).unwrap();
        let report = solve_dle_series(&p, 1e-14, 3).unwrap();
        assert_eq!(report.terms_used, Some(3));
        assert!(report.warning.is_some());
    }

    #[test]
    fn dle_closed_matches_kron_stable_and_unstable() {
        for (seed, rho) in [(10u64, 0.9), (11, 0.9), (12, 1.5), (13, 1.5)] {
            let a = random_with_radius(5, rho, seed);
            let q = pseudo_random(5, 5, seed + 1000);
            let p = DleProblem::new(a, q).unwrap();
            let closed = solve_dle_closed(&p).unwrap();
            let kron = solve_dle_kron(&p).unwrap();
            let dist = closed
                .solution
                .sub(&kron.solution)
                .unwrap()
                .frobenius_norm()
                / kron.solution.frobenius_norm();
            assert!(dist <= 1e-9, "seed {seed} rho {rho}: distance {dist}");
            assert!(closed.residual_rel <= 1e-9);
        }
    }

    #[test]
    fn dle_series_matches_closed() {
        let a = random_with_radius(4, 0.8, 20);
        let q_raw = pseudo_random(4, 4, 21);
        let q = q_raw.add(&q_raw.conj_transpose()).unwrap();
        let p = DleProblem::new(a, q).unwrap();
        let closed = solve_dle_closed(&p).unwrap();
        let series = solve_dle_series(&p, 1e-12, 10_000).unwrap();
        let dist = closed
            .solution
            .sub(&series.solution)
            .unwrap()
            .frobenius_norm()
            / closed.solution.frobenius_norm();
        assert!(dist <= 1e-8, "distance {dist}");
    }

    #[test]
    fn dle_hermitian_fast_path() {
        let g = pseudo_random(4, 4, 30);
        let herm = g.add(&g.conj_transpose()).unwrap();
        let radius = spectral_radius(&herm).unwrap();
        let a = herm.scale(c(0.7 / radius, 0.0));
        let qg = pseudo_random(4, 4, 31);
        let q = qg.matmul(&qg.conj_transpose()).unwrap();
        let p = DleProblem::new(a, q).unwrap();
        let closed = solve_dle_closed(&p).unwrap();
        let kron = solve_dle_kron(&p).unwrap();
        let dist = closed
            .solution
            .sub(&kron.solution)
            .unwrap()
            .frobenius_norm()
            / kron.solution.frobenius_norm();
        assert!(dist <= 1e-10, "distance {dist}");
        // Unitary eigenbasis: condition estimate is n.
        assert!((closed.s_condition.unwrap() - 4.0).abs() < 1e-8);
    }

    #[test]
    fn dle_resonance_detected() {
        let a = ComplexMatrix::from_real_rows(&[vec![2.0, 0.0], vec![0.0, 0.5]]).unwrap();
        let q = ComplexMatrix::identity(2);
        let p = DleProblem::new(a, q).unwrap();
        assert!(matches!(
            solve_dle_closed(&p),
            Err(Error::Resonance { .. })
        ));
        assert!(matches!(solve_dle_kron(&p), Err(Error::Resonance { .. })));
    }

    #[test]
    fn dle_defective_detected() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.5, 1.0], vec![0.0, 0.5]]).unwrap();
        let q = ComplexMatrix::identity(2);
        let p = DleProblem::new(a, q).unwrap();
        assert!(matches!(
            solve_dle_closed(&p),
            Err(Error::Defective { .. })
        ));
        // The oracle does not need the eigenbasis and still works.
        let report = solve_dle_kron(&p).unwrap();
        assert!(report.residual_rel < 1e-12);
    }

    #[test]
    fn stein_zero_f_returns_q() {
        let a = pseudo_random(3, 3, 40);
        let q = pseudo_random(3, 2, 41);
        let p = SteinProblem::new(a, ComplexMatrix::zeros(2, 2), q.clone()).unwrap();
        let report = solve_stein_closed(&p).unwrap();
        assert!(report.solution.sub(&q).unwrap().frobenius_norm() < 1e-12);
        let report = solve_stein_kron(&p).unwrap();
        assert!(report.solution.sub(&q).unwrap().frobenius_norm() < 1e-13);
    }

    #[test]
    fn stein_diagonal_analytic() {
        let a_diag = [c(0.5, 0.2), c(-0.3, 0.1), c(0.1, -0.6)];
        let f_diag = [c(0.4, -0.1), c(-0.2, 0.3)];
        let mut a = ComplexMatrix::zeros(3, 3);
        let mut f = ComplexMatrix::zeros(2, 2);
        for (i, &z) in a_diag.iter().enumerate() {
            a[(i, i)] = z;
        }
        for (i, &z) in f_diag.iter().enumerate() {
            f[(i, i)] = z;
        }
        let q = pseudo_random(3, 2, 50);
        let p = SteinProblem::new(a, f, q.clone()).unwrap();
        let report = solve_stein_closed(&p).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                let expect = q[(i, j)] / (c(1.0, 0.0) - a_diag[i] * f_diag[j]);
                assert!((report.solution[(i, j)] - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn stein_kron_scalar() {
        let p = SteinProblem::new(
            ComplexMatrix::from_real_rows(&[vec![0.5]]).unwrap(),
            ComplexMatrix::from_real_rows(&[vec![0.4]]).unwrap(),
            ComplexMatrix::from_real_rows(&[vec![1.0]]).unwrap(),
        )
        .unwrap();
        let report = solve_stein_kron(&p).unwrap();
        assert!((report.solution[(0, 0)] - c(1.25, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn stein_closed_matches_kron() {
        for seed in 60u64..64 {
            let a = random_with_radius(4, 0.9, seed);
            let f = random_with_radius(3, 0.9, seed + 500);
            let q = pseudo_random(4, 3, seed + 900);
            let p = SteinProblem::new(a, f, q).unwrap();
            let closed = solve_stein_closed(&p).unwrap();
            let kron = solve_stein_kron(&p).unwrap();
            let dist = closed
                .solution
                .sub(&kron.solution)
                .unwrap()
                .frobenius_norm()
                / kron.solution.frobenius_norm();
            assert!(dist <= 1e-9, "seed {seed}: distance {dist}");
        }
    }

    #[test]
    fn residuals_normalize_as_documented() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.5]]).unwrap();
        let q = ComplexMatrix::from_real_rows(&[vec![1.0]]).unwrap();
        let p = DleProblem::new(a, q.clone()).unwrap();
        let exact = ComplexMatrix::from_real_rows(&[vec![4.0 / 3.0]]).unwrap();
        assert!(residual_dle(&p, &exact) < 1e-15);
        assert!((residual_dle(&p, &ComplexMatrix::zeros(1, 1)) - 1.0).abs() < 1e-15);

        let sp = SteinProblem::new(
            ComplexMatrix::from_real_rows(&[vec![0.5]]).unwrap(),
            ComplexMatrix::from_real_rows(&[vec![0.4]]).unwrap(),
            q,
        )
        .unwrap();
        let exact = ComplexMatrix::from_real_rows(&[vec![1.25]]).unwrap();
        assert!(residual_stein(&sp, &exact) < 1e-15);
        assert!((residual_stein(&sp, &ComplexMatrix::zeros(1, 1)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spectral_radius_examples() {
        let d = ComplexMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, -0.9]]).unwrap();
        assert!((spectral_radius(&d).unwrap() - 0.9).abs() < 1e-12);
        let rot = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert!((spectral_radius(&rot).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_residual_recomputes_exactly() {
        let a = random_with_radius(4, 0.9, 70);
        let q = pseudo_random(4, 4, 71);
        let p = DleProblem::new(a, q).unwrap();
        for report in [
            solve_dle_closed(&p).unwrap(),
            solve_dle_kron(&p).unwrap(),
            solve_dle_series(&p, 1e-12, 10_000).unwrap(),
        ] {
            let recomputed = residual_dle(&p, &report.solution);
            assert!((recomputed - report.residual_rel).abs() <= 1e-14);
            assert_eq!(report.terms_used.is_some(), report.method == Method::Series);
        }
    }
}
