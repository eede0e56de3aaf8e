use std::collections::BTreeMap;
use std::time::Instant;

use charmass::dims::{
    asymptotic_estimate, bernoulli, dim_genus, dim_invariants, dim_matrix_exact, dim_table_24, mu,
    render_dim_table,
};
use charmass::reptheory::enumerate_permissible;
use charmass::umbral::{find_record, niemeier_maps, niemeier_mass};
use charmass::weylmass::{convolve, embedded_table, mass_irreducible};
use charmass::{IrredKind, MassMap, Partition, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn we(n: u32) -> MassMap {
    MassMap::from_json_str(embedded_table(&format!("we{n}")).unwrap()).unwrap()
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn bernoulli_recurrence() {
    // Σ_{j<m+1} C(m+1, j) B_j = 0 with B_1 = -1/2
    let mut b = vec![Rational::one()];
    for m in 1..=20u64 {
        let s: Rational = (0..m).map(|j| Rational::from_integer(binom(m + 1, j)) * &b[j as usize]).sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    for k in (2..=20).step_by(2) {
        assert_eq!(bernoulli(k), b[k as usize]);
    }
}

#[test]
fn mass_constants_of_small_genera() {
    let w = |k: IrredKind| Rational::new(BigInt::one(), k.weyl_order());
    assert_eq!(mu(7).unwrap(), w(IrredKind::e(7)));
    assert_eq!(mu(8).unwrap(), we(8).identity_mass());
    assert_eq!(mu(9).unwrap(), w(IrredKind::e(8)) / Rational::from_integer(2.into()));
    // X_16 = {E8 ⊕ E8, D16+}; the swap of the two E8 halves sits in O(E8 ⊕ E8)
    let e8e8 = convolve(&we(8), &we(8)).identity_mass() / Rational::from_integer(2.into());
    let d16 = mass_irreducible(IrredKind::d(16), 1).unwrap().identity_mass();
    assert_eq!(mu(16).unwrap(), e8e8 + d16);
    let approx = mu(24).unwrap();
    let lo = Rational::new(79.into(), BigInt::from(10).pow(16));
    let hi = Rational::new(80.into(), BigInt::from(10).pow(16));
    assert!(lo < approx && approx < hi, "{approx}");
}

#[test]
fn leech_alternating_forms() {
    let leech = niemeier_mass(find_record("leech").unwrap()).unwrap();
    for k in (0..=24).step_by(2) {
        let want = if [0, 8, 12, 16, 24].contains(&k) { 1 } else { 0 };
        let l = Partition::rectangle(1, k);
        assert_eq!(dim_invariants(&leech, &l).unwrap(), BigInt::from(want), "1^{k}");
    }
}

#[test]
fn genus_spot_values() {
    let maps = niemeier_maps().unwrap();
    assert_eq!(dim_genus(maps, &Partition::empty()).unwrap(), BigInt::from(24));
    assert_eq!(dim_genus(maps, &p("2")).unwrap(), BigInt::from(9));
    assert_eq!(dim_genus(maps, &p("3 1")).unwrap(), BigInt::from(1));
}

fn transcribed_table() -> BTreeMap<Partition, String> {
    include_str!("../data/dim_table_24.txt")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (p(a), b.trim().to_string())
        })
        .collect()
}

#[test]
fn table_for_rank_24() {
    let t = Instant::now();
    let entries = dim_table_24(3).unwrap();
    eprintln!("table in {:?}", t.elapsed());
    let got: BTreeMap<Partition, String> = entries.iter().map(|e| (e.lambda.clone(), e.value(24))).collect();
    let want = transcribed_table();
    assert_eq!(want.len(), 157);
    for (l, v) in &want {
        assert_eq!(got.get(l), Some(v), "row {l}");
    }
    assert_eq!(got.len(), want.len());
    let text = render_dim_table(&entries, 24);
    for row in ["3^12  74", "2^5 1^4  1 : 1", "3^8 2^4  346", "∅  24 : 1"] {
        assert!(text.lines().any(|l| l == row), "{row}");
    }
}

#[test]
fn odd_weights_vanish_per_lattice() {
    let maps: Vec<&MassMap> = niemeier_maps().unwrap().iter().collect();
    let odd: Vec<Partition> =
        enumerate_permissible(24, 2, false, false).into_iter().filter(|l| l.weight() % 2 == 1).collect();
    for row in dim_matrix_exact(&maps, &odd).unwrap() {
        assert!(row.iter().all(|x| x.is_zero()));
    }
}

#[test]
fn estimate_approaches_exact_on_e8() {
    // X_8 = {E8}; λ = (4k, 3k, 2k, k) moves away from every wall. The error
    // shrinks monotonically along each parity class of k.
    let m = we(8);
    for ks in [[3u32, 5, 7], [4, 6, 8]] {
        let mut prev = f64::INFINITY;
        for k in ks {
            let l = Partition::new(vec![4 * k, 3 * k, 2 * k, k]);
            let exact = dim_invariants(&m, &l).unwrap();
            let ratio = asymptotic_estimate(&l, 8).unwrap() / Rational::from_integer(exact);
            let err = (num_traits::ToPrimitive::to_f64(&ratio).unwrap() - 1.0).abs();
            assert!(err < prev, "no monotone approach at k={k}");
            prev = err;
        }
        assert!(prev < 0.01);
    }
    let tiny = Rational::new(2.into(), BigInt::from(10).pow(14));
    assert!(asymptotic_estimate(&Partition::empty(), 24).unwrap() < tiny);
}
