//! Eigendecompositions in the convention `A = S^-1 Σ S`, where the rows of
//! `S` are left eigenvectors (`S A = Σ S`). Most references use the
//! `A = S Σ S^-1` right-eigenvector convention; mixing the two silently is
//! the dominant bug risk here, so the convention is tested explicitly.
//!
//! Four entry points:
//! - [`eig_2x2`]: quadratic formula on the characteristic polynomial.
//! - [`eig_3x3`]: Cardano's cubic (trigonometric branch for three real
//!   roots), eigenvectors by null-space extraction.
//! - [`eig_hermitian`]: cyclic complex Jacobi rotations; unitary `S`.
//! - [`eig_general`]: balance, Householder Hessenberg reduction, Wilkinson
//!   shifted QR for the eigenvalues, then one inverse-iteration pass per
//!   eigenvalue for the left eigenvectors.
//!
//! Defectiveness is detected, not repaired: a condition estimate of `S`
//! above [`COND_CAP`] is a hard error.

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::{ComplexMatrix, Lu};

/// Relative bound enforced on `||S A - diag(σ) S||_F / ||A||_F`.
pub const TOL_EIG: f64 = 1e-9;

/// Condition estimates of `S` above this are treated as defective input.
pub const COND_CAP: f64 = 1e12;

/// Relative asymmetry tolerance for the Hermitian solver's input check.
pub const TOL_HERM: f64 = 1e-10;

/// QR sweep budget per matrix is `MAX_QR_SWEEPS_PER_N * n`.
pub const MAX_QR_SWEEPS_PER_N: usize = 30;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvalues plus the similarity matrix of `A = S^-1 Σ S`.
///
/// `sigma` is sorted by descending magnitude, ties broken by descending
/// real part then descending imaginary part. Row `i` of `s_matrix` is a
/// unit-norm left eigenvector for `sigma[i]`, with its first nonzero entry
/// rotated to be real and nonnegative.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub sigma: Vec<Complex64>,
    pub s_matrix: ComplexMatrix,
    /// Frobenius-norm condition estimate `||S||_F * ||S^-1||_F`.
    pub s_condition: f64,
}

/// Frobenius-norm condition estimate via the explicit inverse.
pub fn condition_estimate(s: &ComplexMatrix) -> Result<f64, Error> {
    let inv = Lu::new(s)?.inverse();
    Ok(s.frobenius_norm() * inv.frobenius_norm())
}

fn eig_sort_key(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    b.norm()
        .total_cmp(&a.norm())
        .then(b.re.total_cmp(&a.re))
        .then(b.im.total_cmp(&a.im))
}

fn sort_eigenvalues(vals: &mut [Complex64]) {
    vals.sort_by(eig_sort_key);
}

/// Re-sorts eigenvalues together with their rows of `S` (needed after
/// Rayleigh refinement nudges values across the ordering).
fn resort_rows(sigma: &mut Vec<Complex64>, s: &mut ComplexMatrix) {
    let n = sigma.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig_sort_key(&sigma[i], &sigma[j]));
    let old_sigma = sigma.clone();
    let old_s = s.clone();
    for (i, &k) in order.iter().enumerate() {
        sigma[i] = old_sigma[k];
        for j in 0..s.cols() {
            s[(i, j)] = old_s[(k, j)];
        }
    }
}

/// Scales a row to unit Euclidean norm and rotates its first nonzero entry
/// to a nonnegative real value.
fn normalize_row(row: &mut [Complex64]) {
    let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    for z in row.iter_mut() {
        *z /= norm;
    }
    if let Some(lead) = row.iter().find(|z| z.norm() > 1e-12) {
        let phase = lead / lead.norm();
        let rot = phase.conj();
        for z in row.iter_mut() {
            *z *= rot;
        }
    }
}

/// Rayleigh-quotient refinement: for a unit-norm left eigenvector row `w`,
/// the minimizer of `||w A - σ w||` over σ is `(w A) · conj(w)`. Repairs the
/// square-root-of-epsilon accuracy loss of the closed root formulas at
/// (near-)repeated roots.
fn rayleigh_sigma(a: &ComplexMatrix, row: &[Complex64]) -> Complex64 {
    let n = row.len();
    let mut acc = ZERO;
    for j in 0..n {
        let mut waj = ZERO;
        for (i, w) in row.iter().enumerate() {
            waj += w * a[(i, j)];
        }
        acc += waj * row[j].conj();
    }
    acc
}

fn decomposition_residual(a: &ComplexMatrix, sigma: &[Complex64], s: &ComplexMatrix) -> f64 {
    let sa = s.matmul(a).expect("square shapes checked by callers");
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (sa[(i, j)] - sigma[i] * s[(i, j)]).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Shared exit path: builds the decomposition and enforces its invariants.
fn finalize(
    a: &ComplexMatrix,
    sigma: Vec<Complex64>,
    s: ComplexMatrix,
) -> Result<EigenDecomposition, Error> {
    let s_condition = match condition_estimate(&s) {
        Ok(c) => c,
        Err(Error::SingularPivot { .. }) => {
            return Err(Error::Defective {
                s_condition: f64::INFINITY,
            })
        }
        Err(e) => return Err(e),
    };
    if !s_condition.is_finite() || s_condition > COND_CAP {
        return Err(Error::Defective { s_condition });
    }
    let residual = decomposition_residual(a, &sigma, &s);
    if residual > TOL_EIG * a.frobenius_norm() {
        return Err(Error::Defective { s_condition });
    }
    Ok(EigenDecomposition {
        sigma,
        s_matrix: s,
        s_condition,
    })
}

/// Indices of earlier eigenvalues numerically equal to `sigma[idx]`. Their
/// eigenvectors span part of the repeated eigenvalue's eigenspace, and new
/// rows must stay independent of them.
fn cluster_indices(sigma: &[Complex64], idx: usize, scale: f64) -> Vec<usize> {
    let tol = 1e-8 * scale.max(f64::MIN_POSITIVE);
    (0..idx)
        .filter(|&j| (sigma[j] - sigma[idx]).norm() <= tol)
        .collect()
}

/// Picks the first candidate row that survives Gram-Schmidt against the
/// already-assigned rows of the same eigenvalue cluster. Candidates are
/// normalized first, so "survives" means keeping at least 30% of its norm.
fn pick_independent_row(
    candidates: &[Vec<Complex64>],
    s: &ComplexMatrix,
    cluster: &[usize],
    n: usize,
) -> Vec<Complex64> {
    let mut last_resort = None;
    for cand in candidates {
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let mut row: Vec<Complex64> = cand.iter().map(|z| z / norm).collect();
        for &j in cluster {
            let coef: Complex64 = (0..n).map(|k| s[(j, k)].conj() * row[k]).sum();
            for (k, z) in row.iter_mut().enumerate() {
                *z -= coef * s[(j, k)];
            }
        }
        let remaining = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if remaining >= 0.3 {
            return row;
        }
        if last_resort.is_none() && remaining > 0.0 {
            last_resort = Some(row);
        }
    }
    // Nothing independent exists (defective input); hand back whatever is
    // left and let the finalize() invariants reject the decomposition.
    last_resort.unwrap_or_else(|| vec![ONE; n])
}

// ---------------------------------------------------------------------------
// 2x2 analytic solver
// ---------------------------------------------------------------------------

/// Both roots of `λ² - tr λ + det`, computed with the product trick to avoid
/// cancellation in the smaller root.
fn quadratic_eigenvalues(tr: Complex64, det: Complex64) -> (Complex64, Complex64) {
    let half = tr * 0.5;
    let disc = (half * half - det).sqrt();
    let big = if (half + disc).norm() >= (half - disc).norm() {
        half + disc
    } else {
        half - disc
    };
    if big == ZERO {
        (ZERO, ZERO)
    } else {
        (big, det / big)
    }
}

/// Eigendecomposition of a 2x2 matrix via the quadratic formula.
pub fn eig_2x2(a: &ComplexMatrix) -> Result<EigenDecomposition, Error> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let tr = a[(0, 0)] + a[(1, 1)];
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let (l1, l2) = quadratic_eigenvalues(tr, det);
    let mut sigma = vec![l1, l2];
    sort_eigenvalues(&mut sigma);

    let scale = a.frobenius_norm();
    let mut s = ComplexMatrix::zeros(2, 2);
    for i in 0..2 {
        let sig = sigma[i];
        let b00 = a[(0, 0)] - sig;
        let b01 = a[(0, 1)];
        let b10 = a[(1, 0)];
        let b11 = a[(1, 1)] - sig;
        // Left null vectors of B = A - σI: both candidates satisfy w B = 0
        // because det(B) = 0. Basis vectors back them up when B vanishes
        // (A = σI) or a repeated eigenvalue already claimed the direction.
        let cand1 = vec![-b10, b00];
        let cand2 = vec![-b11, b01];
        let tiny = 1e-14 * scale.max(f64::MIN_POSITIVE);
        let mut candidates: Vec<Vec<Complex64>> = Vec::new();
        for cand in [cand1, cand2] {
            if cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() > tiny {
                candidates.push(cand);
            }
        }
        candidates.push(vec![ONE, ZERO]);
        candidates.push(vec![ZERO, ONE]);
        let cluster = cluster_indices(&sigma, i, scale);
        let mut row = pick_independent_row(&candidates, &s, &cluster, 2);
        normalize_row(&mut row);
        sigma[i] = rayleigh_sigma(a, &row);
        s[(i, 0)] = row[0];
        s[(i, 1)] = row[1];
    }
    resort_rows(&mut sigma, &mut s);
    finalize(a, sigma, s)
}

// ---------------------------------------------------------------------------
// 3x3 analytic solver
// ---------------------------------------------------------------------------

/// Roots of the monic cubic `x³ + a x² + b x + c`.
fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let third = a / 3.0;
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;

    let coeff_scale = 1.0f64.max(a.norm()).max(b.norm()).max(c.norm());
    let real_coeffs =
        a.im.abs() <= 1e-12 * coeff_scale && b.im.abs() <= 1e-12 * coeff_scale
            && c.im.abs() <= 1e-12 * coeff_scale;

    if real_coeffs {
        let (pr, qr) = (p.re, q.re);
        let disc = -4.0 * pr * pr * pr - 27.0 * qr * qr;
        if disc > 0.0 {
            // Three distinct real roots: trigonometric branch avoids complex
            // intermediates entirely.
            let m = 2.0 * (-pr / 3.0).sqrt();
            let arg = (3.0 * qr / (pr * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let mut out = [ZERO; 3];
            for (k, slot) in out.iter_mut().enumerate() {
                let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                *slot = Complex64::new(t, 0.0) - third;
            }
            return out;
        }
    }

    // General Cardano.
    let inner = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3a = -q / 2.0 + inner;
    let u3b = -q / 2.0 - inner;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    if u3 == ZERO {
        // p = q = 0: triple root.
        return [-third; 3];
    }
    let u = u3.cbrt();
    let omega = Complex64::new(-0.5, 0.75f64.sqrt());
    let mut out = [ZERO; 3];
    let mut uk = u;
    for slot in out.iter_mut() {
        *slot = uk - p / (uk * 3.0) - third;
        uk *= omega;
    }
    out
}

/// Formal (unconjugated) cross product of complex 3-vectors.
fn cross3(u: [Complex64; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn norm3(v: &[Complex64; 3]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigendecomposition of a 3x3 matrix: Cardano eigenvalues (polished by two
/// Newton steps) and null-space eigenvectors.
pub fn eig_3x3(a: &ComplexMatrix) -> Result<EigenDecomposition, Error> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let tr = a[(0, 0)] + a[(1, 1)] + a[(2, 2)];
    let minors = (a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)])
        + (a[(0, 0)] * a[(2, 2)] - a[(0, 2)] * a[(2, 0)])
        + (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)]);
    let det = a.det()?;

    // Characteristic polynomial λ³ - tr λ² + m λ - det, as monic x³+ax²+bx+c.
    let eval = |r: Complex64| ((r - tr) * r + minors) * r - det;
    let mut roots = cubic_roots(-tr, minors, -det);
    for root in roots.iter_mut() {
        // Newton polish, kept only while it shrinks the residual (the
        // derivative vanishes at repeated roots, where a raw step explodes).
        for _ in 0..2 {
            let r = *root;
            let val = eval(r);
            let deriv = (r * 3.0 - tr * 2.0) * r + minors;
            if deriv.norm() <= 1e-300 {
                break;
            }
            let cand = r - val / deriv;
            if eval(cand).norm() < val.norm() {
                *root = cand;
            } else {
                break;
            }
        }
    }
    let mut sigma = roots.to_vec();
    sort_eigenvalues(&mut sigma);

    let scale = a.frobenius_norm();
    let mut s = ComplexMatrix::zeros(3, 3);
    for i in 0..3 {
        let sig = sigma[i];
        let col = |j: usize| [a[(0, j)], a[(1, j)], a[(2, j)]];
        let mut b_cols = [col(0), col(1), col(2)];
        for (j, bc) in b_cols.iter_mut().enumerate() {
            bc[j] -= sig;
        }
        // A left null vector of B is (formally) orthogonal to every column;
        // the cross product of any two columns supplies one. Repeated
        // eigenvalues fall through to null-space basis vectors orthogonal to
        // the common column direction, then to the canonical basis.
        let mut candidates: Vec<Vec<Complex64>> = Vec::new();
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut best = [ZERO; 3];
        let mut best_norm = 0.0;
        for (p, q) in pairs {
            let cand = cross3(b_cols[p], b_cols[q]);
            let n = norm3(&cand);
            if n > best_norm {
                best_norm = n;
                best = cand;
            }
        }
        let bnorm = b_cols.iter().map(norm3).fold(0.0, f64::max);
        if best_norm > 1e-12 * bnorm * bnorm {
            candidates.push(best.to_vec());
        }
        if bnorm > 1e-14 * scale.max(f64::MIN_POSITIVE) {
            let c = b_cols
                .iter()
                .cloned()
                .max_by(|u, v| norm3(u).total_cmp(&norm3(v)))
                .unwrap();
            let k = (0..3)
                .max_by(|&p, &q| c[p].norm().total_cmp(&c[q].norm()))
                .unwrap();
            for idx in [(k + 1) % 3, (k + 2) % 3] {
                let mut v = [ZERO; 3];
                v[idx] = ONE;
                v[k] = -c[idx] / c[k];
                candidates.push(v.to_vec());
            }
        }
        for j in 0..3 {
            let mut v = [ZERO; 3];
            v[j] = ONE;
            candidates.push(v.to_vec());
        }
        let cluster = cluster_indices(&sigma, i, scale);
        let mut row = pick_independent_row(&candidates, &s, &cluster, 3);
        normalize_row(&mut row);
        sigma[i] = rayleigh_sigma(a, &row);
        for (j, z) in row.iter().enumerate() {
            s[(i, j)] = *z;
        }
    }
    resort_rows(&mut sigma, &mut s);
    finalize(a, sigma, s)
}

// ---------------------------------------------------------------------------
// Hermitian solver: cyclic complex Jacobi
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// `S` is unitary and the eigenvalues are real.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenDecomposition, Error> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let anorm = a.frobenius_norm();
    let asym = a.sub(&a.conj_transpose())?.frobenius_norm();
    if asym > TOL_HERM * anorm {
        return Err(Error::NotHermitian {
            asymmetry: asym / anorm,
        });
    }

    // Work on the Hermitian part; forces an exactly real diagonal.
    let mut b = a.add(&a.conj_transpose())?.scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let off = |m: &ComplexMatrix| -> f64 {
        let mut acc = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    acc += m[(p, q)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let stop = 1e-13 * anorm.max(f64::MIN_POSITIVE);
    for _sweep in 0..40 {
        if off(&b) <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = b[(p, q)];
                let r = apq.norm();
                if r <= stop / (n as f64) {
                    continue;
                }
                let phase = apq / r;
                let app = b[(p, p)].re;
                let aqq = b[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sr = t * c;
                let s_pq = phase * sr;

                // B := Jᴴ B J with J acting on the (p, q) plane.
                for i in 0..n {
                    let bip = b[(i, p)];
                    let biq = b[(i, q)];
                    b[(i, p)] = bip * c - biq * s_pq.conj();
                    b[(i, q)] = bip * s_pq + biq * c;
                }
                for j in 0..n {
                    let bpj = b[(p, j)];
                    let bqj = b[(q, j)];
                    b[(p, j)] = bpj * c - bqj * s_pq;
                    b[(q, j)] = bpj * s_pq.conj() + bqj * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s_pq.conj();
                    v[(i, q)] = vip * s_pq + viq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<Complex64> = (0..n).map(|i| Complex64::new(b[(i, i)].re, 0.0)).collect();
    order.sort_by(|&i, &j| eig_sort_key(&diag[i], &diag[j]));

    let sigma: Vec<Complex64> = order.iter().map(|&i| diag[i]).collect();
    // A = V Σ Vᴴ, so S = Vᴴ: row i of S is the conjugated column order[i] of V.
    let mut s = ComplexMatrix::zeros(n, n);
    for (i, &k) in order.iter().enumerate() {
        let mut row: Vec<Complex64> = (0..n).map(|j| v[(j, k)].conj()).collect();
        normalize_row(&mut row);
        for (j, z) in row.into_iter().enumerate() {
            s[(i, j)] = z;
        }
    }
    finalize(a, sigma, s)
}

// ---------------------------------------------------------------------------
// General solver: balance + Hessenberg + shifted QR + inverse iteration
// ---------------------------------------------------------------------------

/// Parlett-Reinsch balancing: a diagonal similarity with power-of-two
/// entries that roughly equalizes row and column norms.
fn balance(a: &ComplexMatrix) -> (ComplexMatrix, Vec<f64>) {
    let n = a.rows();
    let mut m = a.clone();
    let mut d = vec![1.0f64; n];
    for _pass in 0..100 {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0f64;
            let mut c_scaled = c;
            while c_scaled < r / 2.0 {
                f *= 2.0;
                c_scaled *= 4.0;
            }
            while c_scaled >= r * 2.0 {
                f /= 2.0;
                c_scaled /= 4.0;
            }
            if (c_scaled + r) / f < 0.95 * s {
                converged = false;
                d[i] *= f;
                for j in 0..n {
                    let x = m[(i, j)] / f;
                    m[(i, j)] = x;
                }
                for j in 0..n {
                    let x = m[(j, i)] * f;
                    m[(j, i)] = x;
                }
            }
        }
        if converged {
            break;
        }
    }
    (m, d)
}

/// Householder reduction to upper Hessenberg form, `A = Z H Zᴴ`.
fn hessenberg(a: &ComplexMatrix, want_z: bool) -> (ComplexMatrix, Option<ComplexMatrix>) {
    let n = a.rows();
    let mut h = a.clone();
    let mut z = if want_z {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };
    if n < 3 {
        return (h, z);
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let norm_x = {
            let mut acc = 0.0;
            for i in k + 1..n {
                acc += h[(i, k)].norm_sqr();
            }
            acc.sqrt()
        };
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0 == ZERO {
            Complex64::new(-norm_x, 0.0)
        } else {
            -(x0 / x0.norm()) * norm_x
        };
        let len = n - k - 1;
        for i in 0..len {
            v[i] = h[(k + 1 + i, k)];
        }
        v[0] -= alpha;
        let vnorm2: f64 = v[..len].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // Left: H[k+1.., k..] -= τ v (vᴴ H[k+1.., k..])
        for j in k..n {
            let mut w = ZERO;
            for i in 0..len {
                w += v[i].conj() * h[(k + 1 + i, j)];
            }
            w *= tau;
            for i in 0..len {
                let upd = w * v[i];
                h[(k + 1 + i, j)] -= upd;
            }
        }
        // Right: H[.., k+1..] -= τ (H[.., k+1..] v) vᴴ
        for i in 0..n {
            let mut w = ZERO;
            for j in 0..len {
                w += h[(i, k + 1 + j)] * v[j];
            }
            w *= tau;
            for j in 0..len {
                let upd = w * v[j].conj();
                h[(i, k + 1 + j)] -= upd;
            }
        }
        if let Some(zm) = z.as_mut() {
            for i in 0..n {
                let mut w = ZERO;
                for j in 0..len {
                    w += zm[(i, k + 1 + j)] * v[j];
                }
                w *= tau;
                for j in 0..len {
                    let upd = w * v[j].conj();
                    zm[(i, k + 1 + j)] -= upd;
                }
            }
        }
        // Annihilated entries are exactly zero by construction.
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, z)
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` (c real) sending
/// `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    let an = a.norm();
    let t = (an * an + bn * bn).sqrt();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let c = an / t;
    let s = (a / an) * b.conj() / t;
    (c, s)
}

/// Eigenvalues of the trailing 2x2 block, used for shifts and deflation.
fn block2_eigenvalues(h: &ComplexMatrix, k: usize) -> (Complex64, Complex64) {
    let tr = h[(k, k)] + h[(k + 1, k + 1)];
    let det = h[(k, k)] * h[(k + 1, k + 1)] - h[(k, k + 1)] * h[(k + 1, k)];
    quadratic_eigenvalues(tr, det)
}

/// One explicit shifted QR step on the active block `[lo, hi]` of `h`.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        let d = h[(k, k)] - shift;
        h[(k, k)] = d;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + y * s;
            h[(k + 1, j)] = -x * s.conj() + y * c;
        }
        rotations.push((c, s));
    }
    for (k, &(c, s)) in (lo..hi).zip(rotations.iter()) {
        let top = (k + 1).min(hi);
        for i in lo..=top {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for k in lo..=hi {
        let d = h[(k, k)] + shift;
        h[(k, k)] = d;
    }
}

/// All eigenvalues of an upper Hessenberg matrix by Wilkinson-shifted QR
/// with deflation. Destroys `h`. Unsorted output.
fn qr_eigenvalues(h: &mut ComplexMatrix, max_sweeps: usize) -> Result<Vec<Complex64>, Error> {
    let n = h.rows();
    let hnorm = h.frobenius_norm();
    let eps = f64::EPSILON;
    let mut vals = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut local_iter = 0usize;
    let mut total_sweeps = 0usize;
    loop {
        if hi == 0 {
            vals.push(h[(0, 0)]);
            break;
        }
        // Smallest lo with an unreduced block [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut tol = eps * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm());
            if tol == 0.0 {
                tol = eps * hnorm;
            }
            if sub <= tol {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            vals.push(h[(hi, hi)]);
            hi -= 1;
            local_iter = 0;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = block2_eigenvalues(h, lo);
            vals.push(l1);
            vals.push(l2);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            local_iter = 0;
            continue;
        }

        local_iter += 1;
        total_sweeps += 1;
        if total_sweeps > max_sweeps {
            return Err(Error::NonConvergence {
                sweeps: total_sweeps,
            });
        }
        let shift = if local_iter % 10 == 0 {
            // Exceptional shift to break symmetry-induced cycles.
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            let (l1, l2) = block2_eigenvalues(h, hi - 1);
            let d = h[(hi, hi)];
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };
        qr_step(h, lo, hi, shift);
    }
    Ok(vals)
}

/// Adjacent-row pivoted elimination of `H - shift I` for a Hessenberg `H`.
/// O(n²); errors with `None` on an exactly zero pivot.
struct HessenbergFactors {
    u: ComplexMatrix,
    mult: Vec<Complex64>,
    swapped: Vec<bool>,
}

fn hessenberg_factor(h: &ComplexMatrix, shift: Complex64) -> Option<HessenbergFactors> {
    let n = h.rows();
    let mut u = h.clone();
    for k in 0..n {
        let d = u[(k, k)] - shift;
        u[(k, k)] = d;
    }
    let mut mult = vec![ZERO; n.saturating_sub(1)];
    let mut swapped = vec![false; n.saturating_sub(1)];
    for k in 0..n - 1 {
        if u[(k + 1, k)].norm() > u[(k, k)].norm() {
            for j in k..n {
                let tmp = u[(k, j)];
                u[(k, j)] = u[(k + 1, j)];
                u[(k + 1, j)] = tmp;
            }
            swapped[k] = true;
        }
        let pivot = u[(k, k)];
        if pivot == ZERO {
            return None;
        }
        let m = u[(k + 1, k)] / pivot;
        mult[k] = m;
        u[(k + 1, k)] = ZERO;
        if m != ZERO {
            for j in k + 1..n {
                let upd = m * u[(k, j)];
                u[(k + 1, j)] -= upd;
            }
        }
    }
    if u[(n - 1, n - 1)] == ZERO {
        return None;
    }
    Some(HessenbergFactors {
        u,
        mult,
        swapped,
    })
}

impl HessenbergFactors {
    /// Solves `(H - shift I)ᴴ x = b` using the stored factorization.
    fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = b.len();
        // Forward substitution with Uᴴ (lower triangular).
        let mut z = vec![ZERO; n];
        for j in 0..n {
            let mut acc = b[j];
            for i in 0..j {
                acc -= self.u[(i, j)].conj() * z[i];
            }
            z[j] = acc / self.u[(j, j)].conj();
        }
        // Undo the Gauss transforms and the pivot swaps, adjointed.
        for k in (0..n - 1).rev() {
            let upd = self.mult[k].conj() * z[k + 1];
            z[k] -= upd;
            if self.swapped[k] {
                z.swap(k, k + 1);
            }
        }
        z
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Left eigenvector of the Hessenberg matrix `h` for eigenvalue `sigma`, by
/// inverse iteration on `(H - σ̂ I)ᴴ`. `cluster` holds the iteration vectors
/// of previously computed eigenvectors for (numerically) equal eigenvalues;
/// the new vector is kept orthogonal to them.
fn left_eigenvector(
    h: &ComplexMatrix,
    sigma: Complex64,
    perturb_scale: f64,
    cluster: &[Vec<Complex64>],
    hnorm: f64,
) -> Vec<Complex64> {
    let n = h.rows();
    let mut shift = sigma;
    let mut factors = None;
    for attempt in 0..4u32 {
        match hessenberg_factor(h, shift) {
            Some(f) => {
                factors = Some(f);
                break;
            }
            None => {
                // Exactly singular: perturb the shift and refactor.
                let delta = 1e-10 * perturb_scale.max(f64::MIN_POSITIVE) * f64::from(attempt + 1);
                shift = sigma + Complex64::new(delta, 0.0);
            }
        }
    }
    let factors = match factors {
        Some(f) => f,
        // Pathological; fall back to an unshifted-but-perturbed identity-ish
        // solve direction. finalize() will reject if this is ever reached.
        None => return vec![ONE; n],
    };

    let orthogonalize = |v: &mut Vec<Complex64>| {
        for prev in cluster {
            let coef = inner(prev, v);
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= coef * p;
            }
        }
    };

    // Start vector: all-ones projected off the cluster; fall back to basis
    // vectors if the projection degenerates.
    let mut start = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    orthogonalize(&mut start);
    if vec_norm(&start) < 0.1 {
        for j in 0..n {
            let mut cand = vec![ZERO; n];
            cand[j] = ONE;
            orthogonalize(&mut cand);
            if vec_norm(&cand) >= 0.1 {
                start = cand;
                break;
            }
        }
    }
    let norm = vec_norm(&start).max(f64::MIN_POSITIVE);
    for z in start.iter_mut() {
        *z /= norm;
    }

    let row_residual = |x: &[Complex64]| -> f64 {
        // || w H - σ w ||₂ with w = conj(x) as a row vector.
        let mut acc = 0.0;
        for j in 0..n {
            let mut entry = ZERO;
            let i_max = (j + 1).min(n - 1);
            for i in 0..=i_max {
                entry += x[i].conj() * h[(i, j)];
            }
            entry -= sigma * x[j].conj();
            acc += entry.norm_sqr();
        }
        acc.sqrt()
    };

    let target = 1e-11 * hnorm.max(f64::MIN_POSITIVE);
    let mut best = start.clone();
    let mut best_res = f64::INFINITY;
    let mut v = start;
    for _ in 0..5 {
        let mut x = factors.solve_adjoint(&v);
        orthogonalize(&mut x);
        let norm = vec_norm(&x);
        if norm == 0.0 || !norm.is_finite() {
            break;
        }
        for z in x.iter_mut() {
            *z /= norm;
        }
        let res = row_residual(&x);
        if res < best_res {
            best_res = res;
            best = x.clone();
        }
        if res <= target {
            break;
        }
        v = x;
    }
    best
}

/// Eigendecomposition of a general square complex matrix.
pub fn eig_general(a: &ComplexMatrix) -> Result<EigenDecomposition, Error> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 1 {
        return finalize(a, vec![a[(0, 0)]], ComplexMatrix::identity(1));
    }
    let anorm = a.frobenius_norm();
    if anorm == 0.0 {
        return finalize(a, vec![ZERO; n], ComplexMatrix::identity(n));
    }

    let (balanced, d) = balance(a);
    let (h, z) = hessenberg(&balanced, true);
    let z = z.expect("accumulation requested");

    let mut work = h.clone();
    let mut sigma = qr_eigenvalues(&mut work, MAX_QR_SWEEPS_PER_N * n)?;
    sort_eigenvalues(&mut sigma);

    let hnorm = h.frobenius_norm();
    let cluster_tol = 1e-8 * hnorm.max(f64::MIN_POSITIVE);
    let mut s = ComplexMatrix::zeros(n, n);
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (i, &sig) in sigma.iter().enumerate() {
        let cluster: Vec<Vec<Complex64>> = sigma[..i]
            .iter()
            .zip(vectors.iter())
            .filter(|(s_prev, _)| (**s_prev - sig).norm() <= cluster_tol)
            .map(|(_, v)| v.clone())
            .collect();
        let x = left_eigenvector(&h, sig, anorm, &cluster, hnorm);
        // Back-transform: w = conj(x) is a left eigenvector of H, so
        // w Zᴴ D⁻¹ is one of A.
        let mut row = vec![ZERO; n];
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = ZERO;
            for (k, xv) in x.iter().enumerate() {
                acc += xv.conj() * z[(j, k)].conj();
            }
            *slot = acc / d[j];
        }
        normalize_row(&mut row);
        for (j, zv) in row.iter().enumerate() {
            s[(i, j)] = *zv;
        }
        vectors.push(x);
    }
    finalize(a, sigma, s)
}

/// Eigenvalues only (sorted), skipping eigenvector computation and the
/// conditioning gate. Works for defective matrices too.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>, Error> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    if a.max_abs() == 0.0 {
        return Ok(vec![ZERO; n]);
    }
    let (balanced, _) = balance(a);
    let (mut h, _) = hessenberg(&balanced, false);
    let mut vals = qr_eigenvalues(&mut h, MAX_QR_SWEEPS_PER_N * n)?;
    sort_eigenvalues(&mut vals);
    Ok(vals)
}
