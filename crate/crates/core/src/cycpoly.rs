//! Integer polynomials and products of cyclotomic polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// `t^k - 1`
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = BigInt::from(-1);
        c[k] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division by a monic divisor. Returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = std::mem::take(&mut rem[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs[..dd].iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quo), IntPoly::new(rem))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(t^l)`
    pub fn compose_power(&self, l: usize) -> IntPoly {
        assert!(l >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * l + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * l] = c.clone();
        }
        IntPoly::new(out)
    }

    /// `(-1)^deg p(-t)`, which keeps monic polynomials monic.
    pub fn negate_variable(&self) -> IntPoly {
        let n = match self.degree() {
            Some(n) => n,
            None => return IntPoly::zero(),
        };
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if (n - k) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclotomic_shared(m: u32) -> Arc<IntPoly> {
    if let Some(p) = cyclo_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // t^m - 1 divided by every proper cyclotomic factor
    let mut q = IntPoly::t_pow_minus_one(m as usize);
    for d in divisors(m) {
        if d < m {
            let (quo, rem) = q.div_rem_monic(&cyclotomic_shared(d));
            debug_assert!(rem.is_zero());
            q = quo;
        }
    }
    let p = Arc::new(q);
    cyclo_cache().lock().unwrap().insert(m, p.clone());
    p
}

/// The m-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    (*cyclotomic_shared(m)).clone()
}

/// A monic product `∏ Φ_m^{a_m}`, stored as its exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycloProduct {
    exps: BTreeMap<u32, u32>,
    degree: usize,
}

impl CycloProduct {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut p = Self::one();
        for (m, a) in pairs {
            p.push(m, a);
        }
        p
    }

    /// `Φ_m^a`
    pub fn cyclo(m: u32, a: u32) -> Self {
        Self::from_pairs([(m, a)])
    }

    /// Multiply in `Φ_m^a`.
    pub fn push(&mut self, m: u32, a: u32) {
        assert!(m >= 1, "cyclotomic index must be positive");
        if a == 0 {
            return;
        }
        *self.exps.entry(m).or_insert(0) += a;
        self.degree += (totient(m) * a) as usize;
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exps
    }

    pub fn exponent(&self, m: u32) -> u32 {
        self.exps.get(&m).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (&m, &a) in &other.exps {
            out.push(m, a);
        }
        out
    }

    pub fn pow(&self, k: u32) -> CycloProduct {
        CycloProduct::from_pairs(self.exps.iter().map(|(&m, &a)| (m, a * k)))
    }

    pub fn expand(&self) -> IntPoly {
        self.exps.iter().fold(IntPoly::one(), |acc, (&m, &a)| {
            let phi = cyclotomic_shared(m);
            (0..a).fold(acc, |acc, _| acc.mul(&phi))
        })
    }

    /// The factorization of `P(t^l)`.
    pub fn substitute_power(&self, l: u32) -> CycloProduct {
        assert!(l >= 1);
        if l == 1 {
            return self.clone();
        }
        let mut out = CycloProduct::one();
        for (&m, &a) in &self.exps {
            // roots of Φ_m(t^l) are the ζ of order k with k / gcd(k, l) = m
            for k in divisors(m * l) {
                if k / k.gcd(&l) == m {
                    out.push(k, a);
                }
            }
        }
        out
    }

    /// The factorization of `(-1)^n P(-t)`.
    pub fn negate_variable(&self) -> CycloProduct {
        CycloProduct::from_pairs(self.exps.iter().map(|(&m, &a)| {
            let k = if m % 2 == 1 {
                2 * m
            } else if m % 4 == 2 {
                m / 2
            } else {
                m
            };
            (k, a)
        }))
    }

    /// Value of the expanded polynomial at an integer.
    pub fn eval(&self, x: i64) -> BigInt {
        self.expand().eval(&BigInt::from(x))
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&m, &a) in &self.exps {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{m}^{a}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CycloProduct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = CycloProduct::one();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad cyclotomic token {tok:?}"));
            let (m, a) = match tok.split_once('^') {
                Some((m, a)) => (m, a),
                None => (tok, "1"),
            };
            let m: u32 = m.parse().map_err(|_| bad())?;
            let a: u32 = a.parse().map_err(|_| bad())?;
            if m == 0 || a == 0 {
                return Err(bad());
            }
            p.push(m, a);
        }
        Ok(p)
    }
}

pub fn format_notation(p: &CycloProduct) -> String {
    p.to_string()
}

pub fn parse_notation(s: &str) -> Result<CycloProduct> {
    s.parse()
}

pub fn expand(p: &CycloProduct) -> IntPoly {
    p.expand()
}

pub fn substitute_power(p: &CycloProduct, l: u32) -> CycloProduct {
    p.substitute_power(l)
}

pub fn negate_variable(p: &CycloProduct) -> CycloProduct {
    p.negate_variable()
}

/// Factor a monic integer polynomial into cyclotomic polynomials by trial division.
pub fn factor_cyclo(q: &IntPoly) -> Result<CycloProduct> {
    if !q.is_monic() {
        return Err(Error::NotCyclotomicProduct);
    }
    let mut rest = q.clone();
    let mut out = CycloProduct::one();
    let mut m = 1u32;
    loop {
        let deg = rest.degree().unwrap_or(0);
        if deg == 0 {
            return Ok(out);
        }
        // φ(m) ≥ sqrt(m/2), so no index beyond 2·deg² can divide
        if (m as usize) > 2 * deg * deg {
            return Err(Error::NotCyclotomicProduct);
        }
        if totient(m) as usize <= deg {
            let phi = cyclotomic_shared(m);
            loop {
                let (quo, rem) = rest.div_rem_monic(&phi);
                if !rem.is_zero() {
                    break;
                }
                rest = quo;
                out.push(m, 1);
            }
        }
        m += 1;
    }
}

/// Indices m with φ(m) ≤ n, ascending.
pub fn indices_up_to_degree(n: usize) -> Vec<u32> {
    let limit = (2 * n * n).max(2) as u32;
    (1..=limit).filter(|&m| totient(m) as usize <= n).collect()
}

/// All elements of `Car_n`, in ascending order.
pub fn enumerate_car(n: usize) -> Vec<CycloProduct> {
    let idx: Vec<(u32, usize)> = indices_up_to_degree(n)
        .into_iter()
        .map(|m| (m, totient(m) as usize))
        .collect();
    let mut out = Vec::new();
    let mut cur = CycloProduct::one();
    fill_car(&idx, 0, n, &mut cur, &mut out);
    out.sort();
    out
}

fn fill_car(
    idx: &[(u32, usize)],
    start: usize,
    left: usize,
    cur: &mut CycloProduct,
    out: &mut Vec<CycloProduct>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..idx.len() {
        let (m, phi) = idx[i];
        if phi > left {
            continue;
        }
        let saved = cur.clone();
        let mut k = 1;
        while k * phi <= left {
            cur.push(m, 1);
            fill_car(idx, i + 1, left - k * phi, cur, out);
            k += 1;
        }
        *cur = saved;
    }
}

/// Number of elements of `Car_n`, by a partition-counting recursion.
pub fn count_car(n: usize) -> u64 {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for m in indices_up_to_degree(n) {
        let phi = totient(m) as usize;
        for d in phi..=n {
            ways[d] += ways[d - phi];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(12).to_string(), "t^4 - t^2 + 1");
    }

    #[test]
    fn notation_roundtrip() {
        let p = CycloProduct::from_pairs([(1, 2), (3, 1)]);
        assert_eq!(p.to_string(), "1^2 3");
        assert_eq!("1^2 3".parse::<CycloProduct>().unwrap(), p);
        assert_eq!("2 14".parse::<CycloProduct>().unwrap().degree(), 7);
        assert!("1^".parse::<CycloProduct>().is_err());
        assert!("x".parse::<CycloProduct>().is_err());
        assert!("0".parse::<CycloProduct>().is_err());
        assert_eq!("".parse::<CycloProduct>().unwrap(), CycloProduct::one());
    }

    #[test]
    fn factor_rejects_non_cyclotomic() {
        assert_eq!(
            factor_cyclo(&IntPoly::from_i64(&[-2, 0, 1])),
            Err(Error::NotCyclotomicProduct)
        );
        assert_eq!(
            factor_cyclo(&IntPoly::from_i64(&[1, 3, 1])),
            Err(Error::NotCyclotomicProduct)
        );
        assert_eq!(
            factor_cyclo(&IntPoly::from_i64(&[-1, 0, 1])).unwrap(),
            CycloProduct::from_pairs([(1, 1), (2, 1)])
        );
    }

    #[test]
    fn counts_agree() {
        for n in 1..=12 {
            assert_eq!(enumerate_car(n).len() as u64, count_car(n));
        }
    }
}
