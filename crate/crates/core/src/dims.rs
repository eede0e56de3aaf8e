//! Dimensions of invariants `dim W_λ^{O(L)}` from characteristic masses,
//! summed over a genus, and the mass constants `μ_n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cycpoly::CycloProduct;
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, Matrix};
use crate::reptheory::{dim_w, enumerate_permissible, trace_kt, Partition};
use crate::weylmass::MassMap;
use crate::Rational;

/// `Σ_P m(P) · Trace(c_P; W_λ)`, which must be a nonnegative integer.
pub fn dim_invariants(m: &MassMap, lambda: &Partition) -> Result<BigInt> {
    let mut acc = Rational::zero();
    for (p, mass) in m.iter() {
        acc += mass * Rational::from_integer(trace_kt(p, lambda)?);
    }
    to_dimension(acc)
}

fn to_dimension(x: Rational) -> Result<BigInt> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NonIntegralResult(x.to_string()));
    }
    Ok(x.to_integer())
}

pub fn dim_genus(maps: &[MassMap], lambda: &Partition) -> Result<BigInt> {
    if let Some(m) = maps.first() {
        if let Some(bad) = maps.iter().find(|x| x.degree() != m.degree()) {
            return Err(Error::DegreeMismatch(m.degree(), bad.degree()));
        }
    }
    maps.iter().map(|m| dim_invariants(m, lambda)).sum()
}

/// Koike–Terada determinant with machine integers. `e` are the signed
/// coefficients of `det(1 + t g)` and `mu` is the dual of λ.
fn kt_small(e: &[i128], mu: &[u32]) -> i128 {
    let at = |k: i64| if k < 0 || k as usize >= e.len() { 0 } else { e[k as usize] };
    let m = mu.len();
    let mat = Matrix::from_fn(m, m, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        let mi = mu[i as usize - 1] as i64;
        at(mi - i + j) + if j > 1 { at(mi - i - j + 2) } else { 0 }
    });
    det_bareiss(&mat)
}

fn signed_coeffs(p: &CycloProduct) -> Vec<i128> {
    let a = p.expand();
    let n = p.degree();
    (0..=n)
        .map(|i| {
            let c = a.coeff(n - i).to_i128().expect("coefficient fits in i128");
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Exact values of `Σ_P m(P) Trace(c_P; W_λ)` for every map and every λ.
///
/// Each trace is evaluated once per polynomial and shared by all maps
/// containing it; masses are scaled to integers over a common denominator
/// per map so the inner loop is integer-only.
pub fn dim_matrix_exact(maps: &[&MassMap], lambdas: &[Partition]) -> Result<Vec<Vec<Rational>>> {
    let Some(first) = maps.first() else {
        return Ok(Vec::new());
    };
    let n = first.degree();
    if let Some(bad) = maps.iter().find(|x| x.degree() != n) {
        return Err(Error::DegreeMismatch(n, bad.degree()));
    }
    for l in lambdas {
        if !l.is_permissible(n) {
            return Err(Error::NotPermissible { lambda: l.to_string(), n });
        }
    }
    let denoms: Vec<BigInt> = maps
        .iter()
        .map(|m| m.iter().fold(BigInt::one(), |d, (_, q)| d.lcm(q.denom())))
        .collect();
    let mut by_key: BTreeMap<&CycloProduct, Vec<(usize, BigInt)>> = BTreeMap::new();
    for (r, m) in maps.iter().enumerate() {
        for (p, q) in m.iter() {
            by_key.entry(p).or_default().push((r, q.numer() * (&denoms[r] / q.denom())));
        }
    }
    let duals: Vec<Vec<u32>> = lambdas.iter().map(|l| l.dual().parts().to_vec()).collect();
    let keys: Vec<_> = by_key.into_iter().collect();
    let zero = || vec![vec![BigInt::zero(); lambdas.len()]; maps.len()];
    let sums = keys
        .par_chunks(64)
        .fold(zero, |mut acc, chunk| {
            for (p, weights) in chunk {
                let e = signed_coeffs(p);
                for (j, mu) in duals.iter().enumerate() {
                    let t = kt_small(&e, mu);
                    if t == 0 {
                        continue;
                    }
                    let t = BigInt::from(t);
                    for (r, w) in weights {
                        acc[*r][j] += w * &t;
                    }
                }
            }
            acc
        })
        .reduce(zero, |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        });
    Ok(sums
        .into_iter()
        .zip(&denoms)
        .map(|(row, d)| row.into_iter().map(|s| Rational::new(s, d.clone())).collect())
        .collect())
}

/// As [`dim_matrix_exact`], checking that every value is a dimension.
pub fn dim_matrix(maps: &[&MassMap], lambdas: &[Partition]) -> Result<Vec<Vec<BigInt>>> {
    dim_matrix_exact(maps, lambdas)?
        .into_iter()
        .map(|row| row.into_iter().map(to_dimension).collect())
        .collect()
}

/// One table row: `d_λ` and `d_{ass(λ)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    #[serde(serialize_with = "as_string")]
    pub lambda: Partition,
    #[serde(serialize_with = "as_string")]
    pub d: BigInt,
    #[serde(serialize_with = "as_string")]
    pub d_ass: BigInt,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl DimEntry {
    pub fn self_associate(&self, n: usize) -> bool {
        2 * self.lambda.len() == n
    }

    /// `d` for a self-associate λ, else `d : d_ass`.
    pub fn value(&self, n: usize) -> String {
        if self.self_associate(n) {
            self.d.to_string()
        } else {
            format!("{} : {}", self.d, self.d_ass)
        }
    }
}

/// Nonzero entries for the even n-positive λ with `λ_1 ≤ lambda1_max`,
/// summed over the given genus.
pub fn dim_table(maps: &[&MassMap], n: usize, lambda1_max: u32) -> Result<Vec<DimEntry>> {
    let pos = enumerate_permissible(n, lambda1_max, true, true);
    let mut lambdas = pos.clone();
    for l in &pos {
        lambdas.push(l.associate(n)?);
    }
    let per_map = dim_matrix(maps, &lambdas)?;
    let total = |j: usize| per_map.iter().map(|row| &row[j]).sum::<BigInt>();
    let k = pos.len();
    let mut out: Vec<DimEntry> = pos
        .into_iter()
        .enumerate()
        .map(|(j, lambda)| DimEntry { lambda, d: total(j), d_ass: total(k + j) })
        .filter(|e| !e.d.is_zero() || !e.d_ass.is_zero())
        .collect();
    out.sort_by(|a, b| (a.lambda.weight(), &a.lambda).cmp(&(b.lambda.weight(), &b.lambda)));
    Ok(out)
}

/// The table for `n = 24` over the 24 Niemeier lattices.
pub fn dim_table_24(lambda1_max: u32) -> Result<Vec<DimEntry>> {
    let maps: Vec<&MassMap> = crate::umbral::niemeier_maps()?.iter().collect();
    dim_table(&maps, 24, lambda1_max)
}

/// Text rendering: one row per entry, label and value separated by two
/// spaces.
pub fn render_dim_table(entries: &[DimEntry], n: usize) -> String {
    let mut s = String::new();
    for e in entries {
        let _ = writeln!(s, "{}  {}", e.lambda, e.value(n));
    }
    s
}

pub fn render_dim_table_json(entries: &[DimEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("entries serialize")
}

/// `B_k` by the Akiyama–Tanigawa recurrence, with `B_1 = +1/2`.
pub fn bernoulli(k: u32) -> Rational {
    let k = k as usize;
    let mut a: Vec<Rational> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let v = (&a[j - 1] - &a[j]) * BigInt::from(j);
            a[j - 1] = v;
        }
    }
    a[0].clone()
}

/// `Σ 1/|O(L)|` over the even lattices of rank n and determinant 1 or 2,
/// for `n ≡ −1, 0, 1 mod 8`, `n ≥ 7`.
pub fn mu(n: u32) -> Result<Rational> {
    let r = n % 8;
    if !(r == 0 || r == 1 || r == 7) || n < 7 {
        return Err(Error::BadResidue(n as i64));
    }
    let factor = |j: u32| bernoulli(2 * j) / Rational::from_integer(BigInt::from(4 * j));
    let v = if r == 0 {
        let head = bernoulli(n / 2) / Rational::from_integer(BigInt::from(n));
        (1..n / 2).fold(head, |acc, j| acc * factor(j))
    } else {
        (1..=(n - 1) / 2).fold(Rational::one(), |acc, j| acc * factor(j))
    };
    Ok(v.abs())
}

/// `2 μ_n dim W_λ`, the large-λ approximation of the genus dimension.
pub fn asymptotic_estimate(lambda: &Partition, n: u32) -> Result<Rational> {
    if lambda.weight() % 2 == 1 {
        return Err(Error::OddWeight(lambda.to_string()));
    }
    let m = mu(n)?;
    Ok(m * Rational::from_integer(dim_w(lambda, n as usize)?) * BigInt::from(2))
}
