use charmass::checks::CAR_COUNTS;
use charmass::cycpoly::{count_car, cyclotomic_poly, enumerate_car, factor_cyclo, totient, divisors};
use charmass::linalg::charpoly_berkowitz;
use charmass::linalg::Matrix;
use charmass::{CycloProduct, Error, IntPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cp(s: &str) -> CycloProduct {
    s.parse().unwrap()
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

/// Φ_m by the Möbius product `∏_{d|m} (t^{m/d} − 1)^{μ(d)}`, numerators and
/// denominators multiplied out separately.
fn mobius_cyclotomic(m: u32) -> IntPoly {
    fn mobius(mut n: u32) -> i32 {
        let mut r = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if n > 1 {
            r = -r;
        }
        r
    }
    let (mut num, mut den) = (IntPoly::one(), IntPoly::one());
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let f = IntPoly::t_pow_minus_one((m / d) as usize);
        match mobius(d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    let (q, r) = num.div_rem_monic(&den);
    assert!(r.is_zero());
    q
}

#[test]
fn cyclotomic_examples() {
    assert_eq!(cyclotomic_poly(1), poly(&[-1, 1]));
    assert_eq!(cyclotomic_poly(2), poly(&[1, 1]));
    assert_eq!(cyclotomic_poly(12), poly(&[1, 0, -1, 0, 1]));
    for m in 1..=120 {
        let p = cyclotomic_poly(m);
        assert_eq!(p, mobius_cyclotomic(m), "Φ_{m}");
        assert_eq!(p.degree(), Some(totient(m) as usize));
    }
}

#[test]
fn car_counts_both_routes() {
    for n in 1..=27 {
        assert_eq!(count_car(n), CAR_COUNTS[n - 1], "count_car({n})");
    }
    for n in 1..=24 {
        assert_eq!(enumerate_car(n).len() as u64, CAR_COUNTS[n - 1], "enumerate_car({n})");
    }
    assert_eq!(enumerate_car(1), vec![cp("1"), cp("2")]);
}

#[test]
fn expand_examples() {
    assert_eq!(cp("1 2").expand(), poly(&[-1, 0, 1]));
    assert_eq!(CycloProduct::one().expand(), IntPoly::one());
    assert_eq!(cp("9").expand(), poly(&[1, 0, 0, 1, 0, 0, 1]));
}

#[test]
fn factor_examples() {
    assert_eq!(factor_cyclo(&poly(&[-1, 0, 1])).unwrap(), cp("1 2"));
    assert_eq!(factor_cyclo(&poly(&[1, 0, -1, 0, 1])).unwrap(), cp("12"));
    assert_eq!(factor_cyclo(&poly(&[-2, 0, 1])), Err(Error::NotCyclotomicProduct));
    assert!(factor_cyclo(&poly(&[1, 1, 1, 1])).is_ok());
    assert!(factor_cyclo(&poly(&[1, 2])).is_err());
}

#[test]
fn factor_inverts_expand() {
    for n in 1..=12 {
        for p in enumerate_car(n) {
            assert_eq!(factor_cyclo(&p.expand()).unwrap(), p);
        }
    }
}

#[test]
fn substitution_and_negation_examples() {
    assert_eq!(cp("1").substitute_power(2), cp("1 2"));
    assert_eq!(cp("3").substitute_power(3), cp("9"));
    assert_eq!(cp("3").substitute_power(2), cp("3 6"));
    assert_eq!(cp("1^5").negate_variable(), cp("2^5"));
    assert_eq!(cp("4").negate_variable(), cp("4"));
    assert_eq!(cp("3").negate_variable(), cp("6"));
}

#[test]
fn substitution_is_coefficientwise() {
    for p in enumerate_car(6) {
        for l in 1..=4u32 {
            assert_eq!(p.substitute_power(l).expand(), p.expand().compose_power(l as usize), "{p} l={l}");
        }
    }
}

#[test]
fn notation() {
    assert_eq!(CycloProduct::from_pairs([(1, 2), (3, 1)]).to_string(), "1^2 3");
    assert_eq!(cp("1^24"), CycloProduct::cyclo(1, 24));
    assert_eq!(cp("2 14"), CycloProduct::from_pairs([(2, 1), (14, 1)]));
    assert!("0".parse::<CycloProduct>().is_err());
    assert!("1^0".parse::<CycloProduct>().is_err());
    assert!("x".parse::<CycloProduct>().is_err());
}

/// Block matrix `(x_1, …, x_l) ↦ (h x_l, x_1, …, x_{l−1})` for a companion
/// matrix `h` of P has characteristic polynomial `P(t^l)`.
#[test]
fn cyclic_block_matrix() {
    for p in enumerate_car(4).into_iter().step_by(3) {
        let c = p.expand();
        let d = p.degree();
        // companion matrix of P
        let h = Matrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -c.coeff(i)
            } else if i == j + 1 {
                BigInt::from(1)
            } else {
                BigInt::from(0)
            }
        });
        for l in 1..=3usize {
            let n = d * l;
            let g = Matrix::from_fn(n, n, |i, j| {
                let (bi, bj) = (i / d, j / d);
                let (ri, rj) = (i % d, j % d);
                if bi == 0 && bj == l - 1 {
                    h[(ri, rj)].clone()
                } else if bi == bj + 1 && ri == rj {
                    BigInt::from(1)
                } else {
                    BigInt::from(0)
                }
            });
            let got = IntPoly::new(charpoly_berkowitz(&g));
            assert_eq!(got, p.substitute_power(l as u32).expand(), "{p} l={l}");
        }
    }
}

fn arb_product() -> impl Strategy<Value = CycloProduct> {
    proptest::collection::vec((1u32..=30, 1u32..=3), 0..4).prop_map(CycloProduct::from_pairs)
}

proptest! {
    #[test]
    fn negation_is_an_involution(p in arb_product()) {
        prop_assert_eq!(p.negate_variable().negate_variable(), p.clone());
        let q = p.expand();
        let neg = p.negate_variable().expand();
        // (−1)^deg P(−t), which is monic again
        for k in 0..=p.degree() {
            let s = if (p.degree() + k) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(neg.coeff(k), q.coeff(k) * s);
        }
    }

    #[test]
    fn substitution_composes(p in arb_product(), a in 1u32..=4, b in 1u32..=4) {
        prop_assert_eq!(p.substitute_power(a * b), p.substitute_power(a).substitute_power(b));
        prop_assert_eq!(p.substitute_power(1), p.clone());
        prop_assert_eq!(p.substitute_power(a).degree(), p.degree() * a as usize);
    }

    #[test]
    fn products_round_trip(p in arb_product(), q in arb_product()) {
        let pq = p.mul(&q);
        prop_assert_eq!(pq.expand(), p.expand().mul(&q.expand()));
        prop_assert_eq!(factor_cyclo(&pq.expand()).unwrap(), pq.clone());
        prop_assert_eq!(pq.to_string().parse::<CycloProduct>().unwrap(), pq);
    }

    #[test]
    fn product_over_divisors(m in 1u32..=60) {
        let mut p = CycloProduct::one();
        for d in divisors(m) {
            p.push(d, 1);
        }
        prop_assert_eq!(p.expand(), IntPoly::t_pow_minus_one(m as usize));
    }
}
