use charmass::linalg::{charpoly_berkowitz, charpoly_finite_order, det_bareiss, inverse, Matrix};
use charmass::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Leibniz expansion over all permutations.
fn leibniz(m: &Matrix<i64>) -> i64 {
    fn rec(m: &Matrix<i64>, row: usize, used: &mut Vec<bool>, sign: i64, acc: &mut i64, prod: i64) {
        let n = m.rows();
        if row == n {
            *acc += sign * prod;
            return;
        }
        let mut s = sign;
        // inversions: count unused columns to the left of the chosen one
        for c in 0..n {
            if used[c] {
                continue;
            }
            used[c] = true;
            rec(m, row + 1, used, s, acc, prod * m[(row, c)]);
            used[c] = false;
            s = -s;
        }
    }
    let mut acc = 0;
    rec(m, 0, &mut vec![false; m.rows()], 1, &mut acc, 1);
    acc
}

fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix<i64>> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j]))
    })
}

fn arb_signed_permutation(max: usize) -> impl Strategy<Value = Matrix<i64>> {
    (1..=max).prop_flat_map(|n| {
        (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
            .prop_map(move |(pi, s)| Matrix::from_fn(n, n, |i, j| if pi[j] == i { if s[j] { -1 } else { 1 } } else { 0 }))
    })
}

#[test]
fn empty_and_identity() {
    assert_eq!(det_bareiss(&Matrix::<i64>::zeros(0, 0)), 1);
    assert_eq!(det_bareiss(&Matrix::<i64>::identity(5)), 1);
    assert_eq!(charpoly_berkowitz(&Matrix::<i64>::identity(3)), vec![-1, 3, -3, 1]);
}

proptest! {
    #[test]
    fn bareiss_matches_leibniz(m in arb_matrix(6)) {
        prop_assert_eq!(det_bareiss(&m), leibniz(&m));
        let b = m.map(|&x| BigInt::from(x));
        prop_assert_eq!(det_bareiss(&b), BigInt::from(leibniz(&m)));
        let q = m.map(|&x| Rational::from_integer(x.into()));
        prop_assert_eq!(det_bareiss(&q), Rational::from_integer(leibniz(&m).into()));
    }

    #[test]
    fn inverse_is_two_sided(m in arb_matrix(5)) {
        let q = m.map(|&x| Rational::from_integer(x.into()));
        match inverse(&q) {
            None => prop_assert!(leibniz(&m) == 0),
            Some(inv) => {
                let id = Matrix::<Rational>::identity(m.rows());
                prop_assert!(q.mul(&inv) == id);
                prop_assert!(inv.mul(&q) == id);
            }
        }
    }

    #[test]
    fn berkowitz_constant_term_is_signed_determinant(m in arb_matrix(6)) {
        let c = charpoly_berkowitz(&m);
        let n = m.rows();
        prop_assert_eq!(c.len(), n + 1);
        prop_assert_eq!(c[n], 1);
        prop_assert_eq!(c[0], if n % 2 == 0 { 1 } else { -1 } * leibniz(&m));
        prop_assert_eq!(-c[n - 1], m.trace());
    }

    #[test]
    fn berkowitz_matches_newton(a in arb_signed_permutation(8), b in arb_signed_permutation(8)) {
        let g = if a.rows() == b.rows() { a.mul(&b) } else { a };
        let flat: Vec<i64> = (0..g.rows()).flat_map(|i| g.row(i).to_vec()).collect();
        prop_assert_eq!(charpoly_berkowitz(&g), charpoly_finite_order(&flat, g.rows()));
    }
}

#[test]
fn singular_has_no_inverse() {
    let m = Matrix::from_rows(vec![vec![Rational::one(), Rational::from_integer(2.into())], vec![Rational::from_integer(2.into()), Rational::from_integer(4.into())]]);
    assert!(inverse(&m).is_none());
    assert!(det_bareiss(&m).is_zero());
}
