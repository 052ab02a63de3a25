//! Dense complex matrices in column-major storage, with the arithmetic
//! primitives the equation solvers are built on: products, conjugate
//! transpose, Kronecker product, vec/unvec, Hadamard product and Gaussian
//! elimination with partial pivoting.
//!
//! Storage is column-major (`data[i + j * rows]` holds entry `(i, j)`) so
//! that `vec` — column stacking — is just a reshape of the backing buffer.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::Error;

/// Relative pivot threshold: a pivot below `1e-13 * max |entry|` of the
/// initial matrix is treated as singular. Scale-invariant by construction.
pub const PIVOT_REL_TOL: f64 = 1e-13;

/// Default memory cap for Kronecker products: 2 GiB of `Complex64` storage.
pub const DEFAULT_KRON_CAP_BYTES: u128 = 2 * 1024 * 1024 * 1024;

/// Dense complex matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

#[inline]
fn check_finite(data: &[Complex64]) -> Result<(), Error> {
    if data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

impl ComplexMatrix {
    /// Builds a matrix from column-major data. Rejects empty shapes,
    /// length mismatches and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidData {
                expected: rows * cols,
                got: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, Error> {
        let r = rows.len();
        if r == 0 || rows[0].is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidData {
                expected: c,
                got: rows.iter().map(Vec::len).find(|&l| l != c).unwrap_or(0),
            });
        }
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        check_finite(&m.data)?;
        Ok(m)
    }

    /// Builds a matrix from rows of real entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    /// All-zero matrix. Panics on empty shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Column-major backing slice.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let (m, k, p) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(m, p);
        // Column-major axpy ordering: C[:, j] += B[l, j] * A[:, l].
        for j in 0..p {
            let cj = &mut out.data[j * m..(j + 1) * m];
            for l in 0..k {
                let b = other.data[l + j * other.rows];
                if b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let al = &self.data[l * m..(l + 1) * m];
                for i in 0..m {
                    cj[i] += b * al[i];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose: `out[j][i] = conj(self[i][j])`.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Kronecker product under the default 2 GiB memory cap.
    pub fn kron(&self, other: &Self) -> Result<Self, Error> {
        self.kron_with_cap(other, DEFAULT_KRON_CAP_BYTES)
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i][j] * other`.
    /// Fails loudly when the result would exceed `cap_bytes`.
    pub fn kron_with_cap(&self, other: &Self, cap_bytes: u128) -> Result<Self, Error> {
        let rows = self.rows as u128 * other.rows as u128;
        let cols = self.cols as u128 * other.cols as u128;
        let required = rows * cols * std::mem::size_of::<Complex64>() as u128;
        if required > cap_bytes {
            return Err(Error::MemoryCap {
                required_bytes: required,
                cap_bytes,
            });
        }
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Self::zeros(ra * rb, ca * cb);
        let or = out.rows;
        for ja in 0..ca {
            for jb in 0..cb {
                let jo = ja * cb + jb;
                for ia in 0..ra {
                    let a = self.data[ia + ja * ra];
                    let base = ia * rb + jo * or;
                    for ib in 0..rb {
                        out.data[base + ib] = a * other.data[ib + jb * rb];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Column stacking into an `(rows * cols) x 1` vector.
    pub fn vec(&self) -> Self {
        Self {
            rows: self.rows * self.cols,
            cols: 1,
            data: self.data.clone(),
        }
    }

    /// Inverse of [`vec`](Self::vec): reshapes a column vector back into a
    /// `rows x cols` matrix.
    pub fn unvec(v: &Self, rows: usize, cols: usize) -> Result<Self, Error> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(Error::InvalidData {
                expected: rows * cols,
                got: v.rows * v.cols,
            });
        }
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self {
            rows,
            cols,
            data: v.data.clone(),
        })
    }

    /// Elementwise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "hadamard",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "add",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "sub",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Frobenius norm: square root of the sum of squared magnitudes.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant via partial-pivoted elimination. Tolerates exactly
    /// singular input (returns 0 rather than an error).
    pub fn det(&self) -> Result<Complex64, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if piv != k {
                a.swap_rows(k, piv);
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let factor = a[(i, k)] / a[(k, k)];
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let s = a[(k, j)];
                    a[(i, j)] -= factor * s;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i + c * self.rows, j + c * self.rows);
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i + j * self.rows]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i + j * self.rows]
    }
}

/// LU factorization with partial pivoting, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    /// Row swapped with row `k` at elimination step `k` (LAPACK-style ipiv).
    ipiv: Vec<usize>,
}

impl Lu {
    /// Factors a square matrix. Pivots below `PIVOT_REL_TOL * max |entry|`
    /// are reported as singular together with their magnitude.
    pub fn new(a: &ComplexMatrix) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
        let n = a.rows;
        let threshold = PIVOT_REL_TOL * a.max_abs();
        let mut lu = a.clone();
        let mut ipiv = vec![0usize; n];
        for k in 0..n {
            // Pivot search in column k (contiguous in column-major storage).
            let col = &lu.data[k * n..(k + 1) * n];
            let mut piv = k;
            let mut best = col[k].norm();
            for (i, z) in col.iter().enumerate().skip(k + 1) {
                let v = z.norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best <= threshold || best == 0.0 {
                return Err(Error::SingularPivot { pivot: best });
            }
            ipiv[k] = piv;
            lu.swap_rows(k, piv);
            let pivot = lu[(k, k)];
            // Multipliers stored in place of the eliminated entries.
            for i in k + 1..n {
                let m = lu[(i, k)] / pivot;
                lu[(i, k)] = m;
            }
            for j in k + 1..n {
                let ukj = lu.data[k + j * n];
                if ukj == Complex64::new(0.0, 0.0) {
                    continue;
                }
                // Column k (multipliers) sits strictly left of column j.
                let (left, right) = lu.data.split_at_mut(j * n);
                let mcol = &left[k * n + k + 1..k * n + n];
                let jcol = &mut right[k + 1..n];
                for (x, &m) in jcol.iter_mut().zip(mcol) {
                    *x -= m * ukj;
                }
            }
        }
        Ok(Self { lu, ipiv })
    }

    /// Solves `A * X = B` for a multi-column right-hand side.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix, Error> {
        let n = self.lu.rows;
        if b.rows != n {
            return Err(Error::DimensionMismatch {
                op: "solve",
                lhs: (n, n),
                rhs: (b.rows, b.cols),
            });
        }
        let mut x = b.clone();
        for k in 0..n {
            x.swap_rows(k, self.ipiv[k]);
        }
        for j in 0..x.cols {
            let xj = &mut x.data[j * n..(j + 1) * n];
            // Forward substitution with unit lower triangle.
            for k in 0..n {
                let xk = xj[k];
                if xk == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let lcol = &self.lu.data[k * n..(k + 1) * n];
                for i in k + 1..n {
                    xj[i] -= lcol[i] * xk;
                }
            }
            // Back substitution with the upper triangle.
            for k in (0..n).rev() {
                let xk = xj[k] / self.lu.data[k + k * n];
                xj[k] = xk;
                let ucol = &self.lu.data[k * n..(k + 1) * n];
                for i in 0..k {
                    xj[i] -= ucol[i] * xk;
                }
            }
        }
        Ok(x)
    }

    /// Explicit inverse, by solving against the identity.
    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.lu.rows;
        self.solve(&ComplexMatrix::identity(n))
            .expect("identity right-hand side always matches")
    }
}

/// Solves `A * x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, Error> {
    Lu::new(a)?.solve(b)
}
