//! Partitions indexing irreducible O(n)-modules and their character values
//! at elements with a given characteristic polynomial.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cycpoly::CycloProduct;
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `k` rows of length `a`.
    pub fn rectangle(a: u32, k: usize) -> Self {
        Self::new(vec![a; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based index, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    pub fn dual(&self) -> Partition {
        let cols = self.first();
        Partition {
            parts: (1..=cols)
                .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
                .collect(),
        }
    }

    pub fn is_permissible(&self, n: usize) -> bool {
        let d = self.dual();
        (d.part(1) + d.part(2)) as usize <= n
    }

    fn require_permissible(&self, n: usize) -> Result<()> {
        if self.is_permissible(n) {
            Ok(())
        } else {
            Err(Error::NotPermissible { lambda: self.to_string(), n })
        }
    }

    /// The partner of λ under twisting by the determinant: the first column
    /// of length `λ*_1` becomes one of length `n − λ*_1`.
    pub fn associate(&self, n: usize) -> Result<Partition> {
        self.require_permissible(n)?;
        let mut d = self.dual().parts;
        let c1 = self.len();
        if d.is_empty() {
            d.push(0);
        }
        d[0] = (n - c1) as u32;
        Ok(Partition::new(d).dual())
    }

    /// True when λ is the representative with first column at most n/2.
    pub fn is_n_positive(&self, n: usize) -> bool {
        2 * self.len() <= n
    }

    /// Number of rows of each length, `m_1, …, m_{λ_1}`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() as usize];
        for &p in &self.parts {
            m[p as usize - 1] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let a = self.parts[i];
            let k = self.parts[i..].iter().take_while(|&&p| p == a).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad partition token {tok:?}"));
            let (a, k) = tok.split_once('^').unwrap_or((tok, "1"));
            let a: u32 = a.parse().map_err(|_| bad())?;
            let k: usize = k.parse().map_err(|_| bad())?;
            if a == 0 || k == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat(a).take(k));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition {s:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }
}

pub fn dual(lambda: &Partition) -> Partition {
    lambda.dual()
}

pub fn is_permissible(lambda: &Partition, n: usize) -> bool {
    lambda.is_permissible(n)
}

pub fn associate(lambda: &Partition, n: usize) -> Result<Partition> {
    lambda.associate(n)
}

/// All n-permissible partitions with `λ_1 ≤ lambda1_max`, in ascending order.
/// With `positive_only`, one representative per associate pair is kept,
/// namely the one with `λ*_1 ≤ n/2`.
pub fn enumerate_permissible(
    n: usize,
    lambda1_max: u32,
    even_only: bool,
    positive_only: bool,
) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cols = Vec::new();
    permissible_cols(n, lambda1_max as usize, &mut cols, &mut out);
    out.retain(|l: &Partition| {
        (!even_only || l.weight() % 2 == 0) && (!positive_only || l.is_n_positive(n))
    });
    out.sort();
    out.dedup();
    out
}

fn permissible_cols(n: usize, k: usize, cols: &mut Vec<u32>, out: &mut Vec<Partition>) {
    let c = cols.len();
    out.push(Partition::new(cols.clone()).dual());
    if c == k {
        return;
    }
    let hi = match c {
        0 => n as u32,
        1 => cols[0].min(n as u32 - cols[0]),
        _ => cols[c - 1],
    };
    for v in 1..=hi {
        cols.push(v);
        permissible_cols(n, k, cols, out);
        cols.pop();
    }
}

/// Coefficients of `det(1 + t g)` and of the series `det(1 − t g)^{-1}` for
/// any g with the given characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCoeffs {
    pub e: Vec<BigInt>,
    pub p: Vec<BigInt>,
}

impl CharCoeffs {
    pub fn new(poly: &CycloProduct, big_n: usize) -> Self {
        let a = poly.expand();
        let n = poly.degree();
        let e: Vec<BigInt> = (0..=n)
            .map(|i| {
                let c = a.coeff(n - i);
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        // det(1 − t g) = Σ a_{n−i} t^i has constant term 1
        let mut p = vec![BigInt::zero(); big_n + 1];
        p[0] = BigInt::one();
        for k in 1..=big_n {
            let mut s = BigInt::zero();
            for i in 1..=k.min(n) {
                s += a.coeff(n - i) * &p[k - i];
            }
            p[k] = -s;
        }
        CharCoeffs { e, p }
    }

    pub fn degree(&self) -> usize {
        self.e.len() - 1
    }

    fn e_at(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.e.get(k as usize).cloned().unwrap_or_default()
    }

    fn p_at(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.p
            .get(k as usize)
            .cloned()
            .expect("p-series truncated too early for this partition")
    }

    /// Koike–Terada determinant of size `λ_1`.
    pub fn trace_kt(&self, lambda: &Partition) -> Result<BigInt> {
        lambda.require_permissible(self.degree())?;
        let mu = lambda.dual();
        let m = mu.len();
        let mat = Matrix::from_fn(m, m, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            let mi = mu.part(i as usize) as i64;
            let mut v = self.e_at(mi - i + j);
            if j > 1 {
                v += self.e_at(mi - i - j + 2);
            }
            v
        });
        Ok(det_bareiss(&mat))
    }

    /// Weyl's determinant of size `λ*_1`.
    pub fn trace_weyl(&self, lambda: &Partition) -> Result<BigInt> {
        lambda.require_permissible(self.degree())?;
        let m = lambda.len();
        let mat = Matrix::from_fn(m, m, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            let li = lambda.part(i as usize) as i64;
            self.p_at(li - i + j) - self.p_at(li - i - j)
        });
        Ok(det_bareiss(&mat))
    }
}

/// Series length sufficient for Weyl's formula on λ.
pub fn series_len(lambda: &Partition, n: usize) -> usize {
    lambda.first() as usize + lambda.len() + n
}

pub fn char_coeffs(poly: &CycloProduct, big_n: usize) -> CharCoeffs {
    CharCoeffs::new(poly, big_n)
}

pub fn trace_kt(poly: &CycloProduct, lambda: &Partition) -> Result<BigInt> {
    CharCoeffs::new(poly, 0).trace_kt(lambda)
}

pub fn trace_weyl(poly: &CycloProduct, lambda: &Partition) -> Result<BigInt> {
    CharCoeffs::new(poly, series_len(lambda, poly.degree())).trace_weyl(lambda)
}

/// Dimension of `W_λ` for O(n).
pub fn dim_w(lambda: &Partition, n: usize) -> Result<BigInt> {
    trace_kt(&CycloProduct::cyclo(1, n as u32), lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(p("3^8 2^4").to_string(), "3^8 2^4");
        assert_eq!(p("3 1"), Partition::new(vec![1, 3]));
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p("∅"), Partition::empty());
        assert!("1 3".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(p("3 1").dual(), p("2 1^2"));
        assert_eq!(p("2^3").dual(), p("3^2"));
        assert_eq!(Partition::empty().dual(), Partition::empty());
    }

    #[test]
    fn associates() {
        assert_eq!(Partition::empty().associate(24).unwrap(), p("1^24"));
        assert_eq!(p("1^12").associate(24).unwrap(), p("1^12"));
        assert_eq!(p("3 1").associate(24).unwrap(), p("3 1^21"));
        assert!(!p("3 1^23").is_permissible(24));
        assert!(p("1^25").associate(24).is_err());
    }

    #[test]
    fn coefficient_conventions() {
        let c = CharCoeffs::new(&CycloProduct::cyclo(2, 2), 4);
        assert_eq!(c.e, vec![1.into(), BigInt::from(-2), 1.into()]);
        let c = CharCoeffs::new(&CycloProduct::cyclo(4, 1), 6);
        assert_eq!(c.e, vec![1.into(), 0.into(), 1.into()]);
        let want: Vec<BigInt> = [1, 0, -1, 0, 1, 0, -1].iter().map(|&x| x.into()).collect();
        assert_eq!(c.p, want);
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(dim_w(&p("1"), 24).unwrap(), 24.into());
        assert_eq!(dim_w(&p("2"), 24).unwrap(), 299.into());
        assert_eq!(dim_w(&p("1^2"), 10).unwrap(), 45.into());
        assert_eq!(dim_w(&Partition::empty(), 5).unwrap(), 1.into());
    }
}
