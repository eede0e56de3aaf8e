//! Self-verification suites: the numbered acceptance criteria and further
//! structural properties, each an independent pass/fail check.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cycpoly::{count_car, enumerate_car, IntPoly};
use crate::dims::{dim_matrix_exact, dim_table_24, mu};
use crate::lattice::{algorithm_a, algorithm_b, GramMatrix};
use crate::reptheory::{enumerate_permissible, series_len, CharCoeffs, Partition};
use crate::umbral::{
    catalog, expected_2s5, expected_gl2z3, find_record, niemeier_mass, niemeier_maps, square_condition, verify_2s5, verify_gl2z3,
};
use crate::weylmass::{
    average, brute_force_coset_mass, coset_mass, embedded_table, mass_irreducible, CosetCycle, IrredKind, MassMap,
};
use crate::{CycloProduct, Rational};

/// `|Car_n|` for `n = 1..=27`.
pub const CAR_COUNTS: [u64; 27] = [
    2, 6, 10, 24, 38, 78, 118, 224, 330, 584, 838, 1420, 2002, 3258, 4514, 7134, 9754, 15010, 20266, 30532, 40798,
    60280, 79762, 115966, 152170, 217962, 283754,
];

/// Published dimension table for `n = 24`, `λ_1 ≤ 3`: `label<TAB>value`.
pub static DIM_TABLE_24: &str = include_str!("../data/dim_table_24.txt");

/// Number of distinct polynomials over the 24 Niemeier mass maps.
pub const NIEMEIER_KEY_UNION: usize = 53204;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Include the E7 enumeration.
    pub long: bool,
}

type CheckFn = fn(&Options) -> Result<String, String>;

pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    run: CheckFn,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    /// Deterministic report line.
    pub fn line(&self) -> String {
        format!("{} [{}] {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }

    pub fn line_timed(&self) -> String {
        format!("{} ({:.1}s)", self.line(), self.elapsed.as_secs_f64())
    }
}

impl Check {
    pub fn run(&self, opts: &Options) -> Outcome {
        let t = Instant::now();
        let r = (self.run)(opts);
        let elapsed = t.elapsed();
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Outcome { id: self.id, title: self.title, passed, detail, elapsed }
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(name: &str) -> Result<MassMap, String> {
    MassMap::from_json_str(embedded_table(name).ok_or_else(|| format!("no table {name}"))?).map_err(e)
}

/// The eleven acceptance criteria, in order.
pub fn criteria() -> Vec<Check> {
    vec![
        Check { id: "1", title: "Car_n cardinalities for n <= 26", run: c1_car },
        Check { id: "2", title: "closed-form Weyl masses equal brute force", run: c2_brute },
        Check { id: "3", title: "embedded WE6/WE7/WE8 tables", run: c3_tables },
        Check { id: "4", title: "Leech polynomial identity", run: c4_leech },
        Check { id: "5", title: "GL2(Z/3) and 2.S5 type censuses", run: c5_censuses },
        Check { id: "6", title: "mass constants mu(8), mu(16), mu(24)", run: c6_mu },
        Check { id: "7", title: "dimension table for n = 24, lambda_1 <= 3", run: c7_table },
        Check { id: "8", title: "Koike-Terada equals Weyl for n <= 8", run: c8_kt_weyl },
        Check { id: "9", title: "algorithm A equals algorithm B", run: c9_algorithms },
        Check { id: "10", title: "square condition on Niemeier masses", run: c10_squares },
        Check { id: "11", title: "parity and integrality of dimensions", run: c11_parity },
    ]
}

/// Structural properties beyond the numbered criteria.
pub fn property_suites() -> Vec<Check> {
    vec![
        Check { id: "car-dp", title: "Car_n by enumeration equals the counting recurrence", run: p_car_dp },
        Check { id: "catalog", title: "Niemeier catalog structure and class of -1", run: p_catalog },
        Check { id: "keys", title: "union of Niemeier mass keys", run: p_keys },
        Check { id: "cwd4", title: "embedded CWD4 equals the order-3 D4 coset", run: p_cwd4 },
    ]
}

/// Every check, criteria first.
pub fn all_checks() -> Vec<Check> {
    let mut v = criteria();
    v.extend(property_suites());
    v
}

fn c1_car(_: &Options) -> Result<String, String> {
    let mut total = 0usize;
    for n in 1..=26usize {
        let got = enumerate_car(n).len();
        ensure(got as u64 == CAR_COUNTS[n - 1], || format!("|Car_{n}| = {got}, table {}", CAR_COUNTS[n - 1]))?;
        total += got;
    }
    Ok(format!("{total} polynomials enumerated"))
}

fn c2_brute(opts: &Options) -> Result<String, String> {
    let mut cases: Vec<(IrredKind, u32)> = Vec::new();
    for r in 1..=6 {
        cases.push((IrredKind::a(r), 1));
        if r >= 2 {
            cases.push((IrredKind::a(r), 2));
        }
    }
    for r in 3..=6 {
        cases.push((IrredKind::d(r), 1));
        cases.push((IrredKind::d(r), 2));
    }
    cases.push((IrredKind::d(4), 3));
    cases.push((IrredKind::e(6), 1));
    cases.push((IrredKind::e(6), 2));
    if opts.long {
        cases.push((IrredKind::e(7), 1));
    }
    for &(kind, order) in &cases {
        let brute = brute_force_coset_mass(kind, order).map_err(e)?;
        let closed = mass_irreducible(kind, order).map_err(e)?;
        ensure(brute == closed, || format!("{kind} order {order} differs"))?;
    }
    Ok(format!("{} cosets{}", cases.len(), if opts.long { " including E7" } else { "" }))
}

fn c3_tables(_: &Options) -> Result<String, String> {
    for (name, len, id) in [("we6", 25, 51840u64), ("we7", 54, 2903040), ("we8", 106, 696729600)] {
        let m = table(name)?;
        ensure(m.len() == len, || format!("{name}: {} entries", m.len()))?;
        ensure(m.total().is_one(), || format!("{name}: total {}", m.total()))?;
        let want = Rational::new(BigInt::one(), id.into());
        ensure(m.identity_mass() == want, || format!("{name}: identity {}", m.identity_mass()))?;
    }
    Ok("25/54/106 entries".into())
}

fn c4_leech(_: &Options) -> Result<String, String> {
    let m = niemeier_mass(find_record("leech").map_err(e)?).map_err(e)?;
    let mut acc = vec![Rational::zero(); 25];
    for (p, q) in m.iter() {
        for (i, c) in p.expand().coeffs().iter().enumerate() {
            acc[i] += q * Rational::from_integer(c.clone());
        }
    }
    let want: Vec<Rational> =
        (0..=24).map(|i| Rational::from_integer(BigInt::from([0, 8, 12, 16, 24].contains(&i) as i32))).collect();
    ensure(acc == want, || "sum differs from t^24 + t^16 + t^12 + t^8 + 1".into())?;
    Ok(format!("{} polynomials sum to {}", m.len(), IntPoly::new(want.iter().map(|x| x.to_integer()).collect())))
}

fn c5_censuses(_: &Options) -> Result<String, String> {
    let a = verify_gl2z3();
    ensure(a == expected_gl2z3(), || "GL2(Z/3) census differs".into())?;
    let b = verify_2s5();
    ensure(b == expected_2s5(), || "2.S5 census differs".into())?;
    Ok(format!("{} and {} types", a.len(), b.len()))
}

fn c6_mu(_: &Options) -> Result<String, String> {
    let id = CycloProduct::cyclo(1, 24);
    let sum: Rational = niemeier_maps().map_err(e)?.iter().map(|m| m.get(&id)).sum();
    let mu24 = mu(24).map_err(e)?;
    ensure(sum == mu24, || format!("Niemeier sum {sum} != mu(24) {mu24}"))?;
    let we8 = table("we8")?;
    ensure(mu(8).map_err(e)? == we8.identity_mass(), || "mu(8) differs from the WE8 identity entry".into())?;
    // O(E8 ⊕ E8) is W(E8)² extended by the swap
    let e8 = IrredKind::e(8);
    let both = average(&[
        (coset_mass(&[CosetCycle::new(e8, 1, 1).map_err(e)?; 2], &CycloProduct::one()).map_err(e)?, half()),
        (coset_mass(&[CosetCycle::new(e8, 2, 1).map_err(e)?], &CycloProduct::one()).map_err(e)?, half()),
    ])
    .map_err(e)?;
    let d16 = mass_irreducible(IrredKind::d(16), 1).map_err(e)?.identity_mass();
    let mu16 = mu(16).map_err(e)?;
    let two = both.identity_mass() + &d16;
    ensure(mu16 == two, || format!("mu(16) {mu16} != {two}"))?;
    let literal = crate::weylmass::convolve(&we8, &we8).identity_mass() + d16;
    let note = if literal == mu16 { "" } else { "; without the swap the sum would be off" };
    Ok(format!("mu(24) = {mu24}{note}"))
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// The published table as `(λ, value)` rows.
pub fn published_dim_table_24() -> Vec<(Partition, String)> {
    DIM_TABLE_24
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(a, b)| (a.parse().expect("table label"), b.trim().to_string()))
        .collect()
}

fn c7_table(_: &Options) -> Result<String, String> {
    let want = published_dim_table_24();
    let got = dim_table_24(3).map_err(e)?;
    let got: std::collections::BTreeMap<Partition, String> =
        got.into_iter().map(|x| (x.lambda.clone(), x.value(24))).collect();
    for (l, v) in &want {
        match got.get(l) {
            Some(g) if g == v => {}
            other => return Err(format!("row {l}: published {v}, computed {other:?}")),
        }
    }
    ensure(got.len() == want.len(), || format!("{} computed rows, {} published", got.len(), want.len()))?;
    Ok(format!("{} rows", want.len()))
}

fn c8_kt_weyl(_: &Options) -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=8 {
        let lambdas = enumerate_permissible(n, 3, false, false);
        let big = lambdas.iter().map(|l| series_len(l, n)).max().unwrap_or(0);
        for p in enumerate_car(n) {
            let c = CharCoeffs::new(&p, big);
            for l in &lambdas {
                let a = c.trace_kt(l).map_err(e)?;
                let b = c.trace_weyl(l).map_err(e)?;
                ensure(a == b, || format!("P = {p}, λ = {l}: {a} vs {b}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn c9_algorithms(_: &Options) -> Result<String, String> {
    let bound = 10_000_000;
    for name in ["A2", "A3", "D4", "D5", "E6", "A2+A2"] {
        let g = GramMatrix::builtin(name).map_err(e)?;
        let a = algorithm_a(&g, bound).map_err(e)?;
        let b = algorithm_b(&g, bound).map_err(e)?;
        ensure(a == b, || format!("{name}: algorithms differ"))?;
    }
    let b = algorithm_b(&GramMatrix::builtin("E8").map_err(e)?, bound).map_err(e)?;
    ensure(b == table("we8")?, || "E8: algorithm B differs from WE8".into())?;
    Ok("6 lattices and E8".into())
}

fn c10_squares(_: &Options) -> Result<String, String> {
    let mut n = 0;
    for (r, m) in catalog().iter().zip(niemeier_maps().map_err(e)?) {
        for p in m.keys() {
            ensure(square_condition(p), || format!("{}: {p} fails", r.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} (record, polynomial) pairs"))
}

fn c11_parity(_: &Options) -> Result<String, String> {
    let maps: Vec<&MassMap> = niemeier_maps().map_err(e)?.iter().collect();
    let lambdas = enumerate_permissible(24, 3, false, false);
    let values = dim_matrix_exact(&maps, &lambdas).map_err(e)?;
    for (r, row) in catalog().iter().zip(&values) {
        for (l, v) in lambdas.iter().zip(row) {
            if l.weight() % 2 == 1 {
                ensure(v.is_zero(), || format!("{}: odd λ = {l} gives {v}", r.name))?;
            } else {
                ensure(v.is_integer() && *v >= Rational::zero(), || format!("{}: λ = {l} gives {v}", r.name))?;
            }
        }
    }
    Ok(format!("{} partitions over {} lattices", lambdas.len(), maps.len()))
}

fn p_car_dp(_: &Options) -> Result<String, String> {
    for n in 1..=27usize {
        ensure(count_car(n) == CAR_COUNTS[n - 1], || format!("count_car({n}) = {}", count_car(n)))?;
    }
    Ok("n <= 27".into())
}

fn p_catalog(_: &Options) -> Result<String, String> {
    for r in catalog() {
        r.validate().map_err(e)?;
        if !r.is_leech() {
            let eta = r.eta_type();
            ensure(r.classes.iter().any(|c| c.types == eta), || format!("{}: no class of -1", r.name))?;
        }
    }
    Ok(format!("{} records", catalog().len()))
}

fn p_keys(_: &Options) -> Result<String, String> {
    let mut keys = BTreeSet::new();
    for m in niemeier_maps().map_err(e)? {
        ensure(m.total().is_one(), || "a Niemeier map does not sum to 1".into())?;
        keys.extend(m.keys().cloned());
    }
    ensure(keys.len() == NIEMEIER_KEY_UNION, || format!("{} distinct polynomials", keys.len()))?;
    Ok(format!("{} distinct polynomials", keys.len()))
}

fn p_cwd4(_: &Options) -> Result<String, String> {
    let t = table("cwd4")?;
    ensure(t == brute_force_coset_mass(IrredKind::d(4), 3).map_err(e)?, || "CWD4 differs".into())?;
    Ok(format!("{} entries", t.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_table_parses() {
        let t = published_dim_table_24();
        assert_eq!(t.len(), 157);
        assert_eq!(t[0], (Partition::empty(), "24 : 1".to_string()));
    }
}
