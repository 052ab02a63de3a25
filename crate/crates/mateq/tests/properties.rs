//! Property tests for the matrix primitives: the algebraic identities the
//! solvers silently rely on.

use mateq::matrix::{solve_linear, ComplexMatrix};
use mateq::Complex64;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(entry(), rows * cols)
        .prop_map(move |data| ComplexMatrix::new(rows, cols, data).unwrap())
}

fn shaped(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The vectorization identity behind the Kronecker solvers:
    /// vec(A X B) = (Bᵀ ⊗ A) vec(X).
    #[test]
    fn vec_of_product_is_kron_times_vec(
        (a, x, b) in (1..=5usize, 1..=5usize, 1..=5usize, 1..=5usize).prop_flat_map(
            |(m, n, p, q)| (matrix(m, n), matrix(n, p), matrix(p, q)),
        )
    ) {
        let lhs = a.matmul(&x).unwrap().matmul(&b).unwrap().vec();
        let rhs = b.transpose().kron(&a).unwrap().matmul(&x.vec()).unwrap();
        let denom = lhs.frobenius_norm().max(1e-30);
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * denom);
    }

    #[test]
    fn hadamard_commutes_elementwise((a, b) in (1..=6usize, 1..=6usize).prop_flat_map(
        |(r, c)| (matrix(r, c), matrix(r, c)),
    )) {
        let ab = a.hadamard(&b).unwrap();
        let ba = b.hadamard(&a).unwrap();
        for i in 0..ab.rows() {
            for j in 0..ab.cols() {
                prop_assert!((ab[(i, j)] - ba[(i, j)]).norm() <= 1e-15);
            }
        }
    }

    #[test]
    fn vec_unvec_round_trip(a in shaped(6)) {
        let back = ComplexMatrix::unvec(&a.vec(), a.rows(), a.cols()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn conj_transpose_involution_and_product_rule(
        (a, b) in (1..=5usize, 1..=5usize, 1..=5usize).prop_flat_map(
            |(m, n, p)| (matrix(m, n), matrix(n, p)),
        )
    ) {
        prop_assert_eq!(a.conj_transpose().conj_transpose(), a.clone());
        let lhs = a.matmul(&b).unwrap().conj_transpose();
        let rhs = b.conj_transpose().matmul(&a.conj_transpose()).unwrap();
        let denom = lhs.frobenius_norm().max(1e-30);
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-13 * denom);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Multiply-back residual of Gaussian elimination, over random systems
    /// up to n = 20. The bound is growth-factor-driven, not
    /// conditioning-driven, so plain random draws are the right stress.
    #[test]
    fn solve_linear_residual_bound(
        (a, b) in (1..=20usize).prop_flat_map(|n| (matrix(n, n), matrix(n, 1)))
    ) {
        match solve_linear(&a, &b) {
            Ok(x) => {
                let res = a.matmul(&x).unwrap().sub(&b).unwrap().frobenius_norm();
                let bound = 1e-12 * a.frobenius_norm() * x.frobenius_norm() + 1e-300;
                prop_assert!(res <= bound, "residual {} above {}", res, bound);
            }
            // A random draw can be singular to precision; that exit is legal.
            Err(mateq::Error::SingularPivot { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
    }
}
