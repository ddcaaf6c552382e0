mod common;

use cgtwist_core::linalg::{
    eigenvalues, flatten, kron, kron_all, permutation_operator, residual_norm, spectra_match,
    unflatten,
};
use cgtwist_core::ComplexMatrix;
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(24, 0x11))]

    #[test]
    fn kron_is_associative(a in common::matrix(2), b in common::matrix(3), c in common::matrix(2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(residual_norm(&left, &right).unwrap() <= 1e-14);
        prop_assert!(residual_norm(&left, &kron_all(&[&a, &b, &c])).unwrap() <= 1e-14);
    }

    #[test]
    fn kron_mixed_product(a in common::matrix(3), b in common::matrix(3), c in common::matrix(3), d in common::matrix(3)) {
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(residual_norm(&lhs, &rhs).unwrap() <= 1e-13);
    }

    #[test]
    fn permutation_swaps_factors(a in common::matrix(3), b in common::matrix(3)) {
        let swap = permutation_operator(3);
        let moved = &(&swap * &kron(&a, &b)) * &swap;
        prop_assert!(residual_norm(&moved, &kron(&b, &a)).unwrap() <= 1e-14);
    }

    #[test]
    fn trace_is_eigenvalue_sum(m in common::matrix(9)) {
        let s = eigenvalues(&m).unwrap();
        prop_assert!((s.sum() - m.trace()).norm() <= 1e-10 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn similarity_preserves_spectrum(m in common::matrix(6), g in common::matrix(6)) {
        // Shift keeps the conjugating matrix well conditioned.
        let g = &g + &ComplexMatrix::identity(6).scale_re(3.0);
        let conj = &(&g * &m) * &g.try_inverse().unwrap();
        let (ok, dev) = spectra_match(&eigenvalues(&m).unwrap(), &eigenvalues(&conj).unwrap(), 1e-8).unwrap();
        prop_assert!(ok, "deviation {}", dev);
    }

    #[test]
    fn flatten_roundtrip(i in 1usize..=3, k in 1usize..=3) {
        prop_assert_eq!(unflatten(3, flatten(3, i, k)), (i, k));
    }
}

#[test]
fn permutation_is_an_involution() {
    for n in 1..=4 {
        let p = permutation_operator(n);
        assert_eq!(&p * &p, ComplexMatrix::identity(n * n));
    }
}
