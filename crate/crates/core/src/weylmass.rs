//! Mass maps of Weyl groups and their cosets, and the rules for combining
//! them over products and permuted components.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cycpoly::{factor_cyclo, CycloProduct, IntPoly};
use crate::error::{Error, Result};
use crate::linalg::{charpoly_finite_order, inverse, Matrix};
use crate::Rational;

/// Default cap on brute-force enumerations.
pub const DEFAULT_BOUND: u128 = 10_000_000;

/// A finitely supported probability measure on characteristic polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassMap {
    degree: usize,
    entries: BTreeMap<CycloProduct, Rational>,
}

impl MassMap {
    /// Point mass at `p`.
    pub fn point(p: CycloProduct) -> Self {
        let degree = p.degree();
        let mut entries = BTreeMap::new();
        entries.insert(p, Rational::one());
        MassMap { degree, entries }
    }

    /// The identity for [`convolve`]: point mass at the empty product.
    pub fn unit() -> Self {
        Self::point(CycloProduct::one())
    }

    /// Builds a map from (polynomial, mass) pairs, merging repeated keys and
    /// dropping zeros. The total is not checked; see [`MassMap::validate`].
    pub fn from_entries<I>(degree: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CycloProduct, Rational)>,
    {
        let mut entries: BTreeMap<CycloProduct, Rational> = BTreeMap::new();
        for (p, m) in items {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch(degree, p.degree()));
            }
            *entries.entry(p).or_insert_with(Rational::zero) += m;
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(MassMap { degree, entries })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: &CycloProduct) -> Rational {
        self.entries.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CycloProduct, &Rational)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CycloProduct> {
        self.entries.keys()
    }

    pub fn total(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// Mass of `(t − 1)^n`, i.e. of the identity element.
    pub fn identity_mass(&self) -> Rational {
        self.get(&CycloProduct::cyclo(1, self.degree as u32))
    }

    /// Checks every invariant: positive values, uniform key degree, total 1.
    pub fn validate(&self) -> Result<()> {
        for (p, m) in &self.entries {
            if p.degree() != self.degree {
                return Err(Error::DegreeMismatch(self.degree, p.degree()));
            }
            if !m.is_positive() {
                return Err(Error::Structure(format!("non-positive mass {m} at {p}")));
            }
        }
        let t = self.total();
        if !t.is_one() {
            return Err(Error::Structure(format!("masses sum to {t}, not 1")));
        }
        Ok(())
    }

    /// The map of `P(t^l)`.
    pub fn substitute_power(&self, l: u32) -> MassMap {
        if l == 1 {
            return self.clone();
        }
        MassMap {
            degree: self.degree * l as usize,
            entries: self
                .entries
                .iter()
                .map(|(p, m)| (p.substitute_power(l), m.clone()))
                .collect(),
        }
    }

    /// The map of `−S`.
    pub fn negate_variable(&self) -> MassMap {
        MassMap {
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|(p, m)| (p.negate_variable(), m.clone()))
                .collect(),
        }
    }

    /// Multiplies every key by the fixed polynomial `q`.
    pub fn mul_poly(&self, q: &CycloProduct) -> MassMap {
        if q.is_one() {
            return self.clone();
        }
        MassMap {
            degree: self.degree + q.degree(),
            entries: self.entries.iter().map(|(p, m)| (p.mul(q), m.clone())).collect(),
        }
    }

    /// Serializes as a flat JSON object with a `degree` field and
    /// `"notation": "num/den"` entries in canonical key order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("degree".into(), self.degree.into());
        for (p, m) in &self.entries {
            obj.insert(p.to_string(), format!("{}/{}", m.numer(), m.denom()).into());
        }
        serde_json::Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("mass map serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("mass map must be a JSON object".into()))?;
        let degree = obj
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Parse("mass map needs an integer \"degree\"".into()))?
            as usize;
        let mut items = Vec::with_capacity(obj.len());
        for (k, val) in obj {
            if k == "degree" {
                continue;
            }
            let s = val
                .as_str()
                .ok_or_else(|| Error::Parse(format!("mass of {k:?} must be a string")))?;
            items.push((k.parse::<CycloProduct>()?, parse_rational(s)?));
        }
        Self::from_entries(degree, items)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// The mass map of `S₁ × S₂` acting on `V₁ ⊕ V₂`.
pub fn convolve(a: &MassMap, b: &MassMap) -> MassMap {
    let bs: Vec<_> = b.entries.iter().collect();
    let partial: Vec<HashMap<CycloProduct, Rational>> = a
        .entries
        .par_iter()
        .map(|(p, x)| {
            let mut acc = HashMap::with_capacity(bs.len());
            for (q, y) in &bs {
                *acc.entry(p.mul(q)).or_insert_with(Rational::zero) += x * *y;
            }
            acc
        })
        .collect();
    let mut entries = BTreeMap::new();
    for part in partial {
        for (k, v) in part {
            *entries.entry(k).or_insert_with(Rational::zero) += v;
        }
    }
    MassMap { degree: a.degree + b.degree, entries }
}

/// Weighted average `(Σ w_i m_i) / (Σ w_i)`.
pub fn average(weighted: &[(MassMap, Rational)]) -> Result<MassMap> {
    let Some((first, _)) = weighted.first() else {
        return Err(Error::Structure("average of no mass maps".into()));
    };
    let degree = first.degree;
    let mut total = Rational::zero();
    let mut entries: BTreeMap<CycloProduct, Rational> = BTreeMap::new();
    for (m, w) in weighted {
        if m.degree != degree {
            return Err(Error::DegreeMismatch(degree, m.degree));
        }
        if !w.is_positive() {
            return Err(Error::Structure(format!("non-positive weight {w}")));
        }
        total += w;
        for (p, x) in &m.entries {
            *entries.entry(p.clone()).or_insert_with(Rational::zero) += x * w;
        }
    }
    for v in entries.values_mut() {
        *v /= &total;
    }
    Ok(MassMap { degree, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

/// An irreducible simply laced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrredKind {
    pub family: Family,
    pub rank: u32,
}

impl IrredKind {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(IrredKind { family, rank })
        } else {
            Err(Error::Structure(format!("no root system {family:?}{rank}")))
        }
    }

    pub fn a(rank: u32) -> Self {
        Self::new(Family::A, rank).unwrap()
    }

    pub fn d(rank: u32) -> Self {
        Self::new(Family::D, rank).unwrap()
    }

    pub fn e(rank: u32) -> Self {
        Self::new(Family::E, rank).unwrap()
    }

    /// Number of positive roots.
    pub fn positive_roots(&self) -> u32 {
        let r = self.rank;
        match (self.family, r) {
            (Family::A, _) => r * (r + 1) / 2,
            (Family::D, _) => r * (r - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            _ => 120,
        }
    }

    pub fn weyl_order(&self) -> BigInt {
        let fact = |k: u32| (1..=k).fold(BigInt::one(), |a, b| a * b);
        match (self.family, self.rank) {
            (Family::A, r) => fact(r + 1),
            (Family::D, r) => fact(r) << (r - 1),
            (Family::E, 6) => 51840.into(),
            (Family::E, 7) => 2903040.into(),
            _ => 696729600.into(),
        }
    }

    /// Order of the diagram automorphism group.
    pub fn outer_order(&self) -> u32 {
        match (self.family, self.rank) {
            (Family::A, 1) => 1,
            (Family::A, _) => 2,
            (Family::D, 4) => 6,
            (Family::D, _) => 2,
            (Family::E, 6) => 2,
            _ => 1,
        }
    }

    /// Whether the diagram automorphism group has an element of this order.
    pub fn has_coset_order(&self, order: u32) -> bool {
        match order {
            1 => true,
            2 => self.outer_order() % 2 == 0,
            3 => self.family == Family::D && self.rank == 4,
            _ => false,
        }
    }

    /// Whether `−1` lies in the Weyl group.
    pub fn minus_one_in_weyl(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::D => self.rank % 2 == 0,
            Family::E => self.rank != 6,
        }
    }

    /// Cartan matrix in Bourbaki numbering (0-based).
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank as usize;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }

    /// Edges of the Dynkin diagram.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank as usize;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// A diagram automorphism of order 2, as a permutation of the nodes.
    fn diagram_involution(&self) -> Option<Vec<usize>> {
        let n = self.rank as usize;
        match (self.family, n) {
            (Family::A, 1) => None,
            (Family::A, _) => Some((0..n).rev().collect()),
            (Family::D, _) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            (Family::E, 6) => Some(vec![5, 1, 4, 3, 2, 0]),
            _ => None,
        }
    }
}

impl fmt::Display for IrredKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for IrredKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad root system name {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: u32 = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank).map_err(|_| bad())
    }
}

/// A cycle of length `length` of permuted copies of `kind`, whose return map
/// has order `order` in the diagram automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetCycle {
    pub kind: IrredKind,
    pub length: u32,
    pub order: u32,
}

impl CosetCycle {
    pub fn new(kind: IrredKind, length: u32, order: u32) -> Result<Self> {
        if length == 0 {
            return Err(Error::Structure("cycle length must be positive".into()));
        }
        if !kind.has_coset_order(order) {
            return Err(Error::IllegalCoset { kind: kind.to_string(), order });
        }
        Ok(CosetCycle { kind, length, order })
    }
}

/// Signed cycle type `(m⁺, m⁻)` of a signed permutation; index `i − 1`
/// holds the number of `i`-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedCycleIndex {
    pub mplus: Vec<u32>,
    pub mminus: Vec<u32>,
}

impl SignedCycleIndex {
    pub fn rank(&self) -> u32 {
        let w = |m: &[u32]| m.iter().enumerate().map(|(i, &c)| (i as u32 + 1) * c).sum::<u32>();
        w(&self.mplus) + w(&self.mminus)
    }

    /// `(−1)^{|m⁻|}`, the image in `{±1}` of the class.
    pub fn sign(&self) -> i32 {
        if self.mminus.iter().sum::<u32>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.mplus.iter().zip(&self.mminus).all(|(a, b)| a * b == 0)
    }

    /// `∏ m_i⁺! m_i⁻! (2i)^{m_i⁺ + m_i⁻}`: the centralizer order in `H_n`.
    pub fn centralizer(&self) -> BigInt {
        let fact = |k: u32| (1..=k).fold(BigInt::one(), |a, b| a * b);
        let mut out = BigInt::one();
        for i in 0..self.mplus.len().max(self.mminus.len()) {
            let a = self.mplus.get(i).copied().unwrap_or(0);
            let b = self.mminus.get(i).copied().unwrap_or(0);
            out *= fact(a) * fact(b) * BigInt::from(2 * (i as u32 + 1)).pow(a + b);
        }
        out
    }

    /// One step of the rewriting `(t^j − 1)(t^j + 1) = t^{2j} − 1`.
    pub fn phi(&self) -> SignedCycleIndex {
        let mut out = self.clone();
        let Some(j) = (0..self.mplus.len().min(self.mminus.len()))
            .find(|&j| self.mplus[j] * self.mminus[j] != 0)
        else {
            return out;
        };
        out.mplus[j] -= 1;
        out.mminus[j] -= 1;
        let k = 2 * j + 1;
        if out.mplus.len() <= k {
            out.mplus.resize(k + 1, 0);
        }
        if out.mminus.len() <= k {
            out.mminus.resize(k + 1, 0);
        }
        out.mplus[k] += 1;
        out
    }

    /// Iterates [`SignedCycleIndex::phi`] to a fixed point. Terminates since
    /// `Σ_i min(m_i⁺, m_i⁻)` weighted by cycle length cannot grow forever.
    pub fn psi(&self) -> SignedCycleIndex {
        let mut cur = self.clone();
        while !cur.is_reduced() {
            cur = cur.phi();
        }
        cur.trim()
    }

    fn trim(mut self) -> Self {
        let len = self.mplus.len().max(self.mminus.len());
        self.mplus.resize(len, 0);
        self.mminus.resize(len, 0);
        while self.mplus.last() == Some(&0) && self.mminus.last() == Some(&0) {
            self.mplus.pop();
            self.mminus.pop();
        }
        self
    }

    /// `∏ (t^i − 1)^{m_i⁺} (t^i + 1)^{m_i⁻}`.
    pub fn charpoly(&self) -> CycloProduct {
        let mut out = CycloProduct::one();
        for (idx, &a) in self.mplus.iter().enumerate() {
            let i = idx as u32 + 1;
            for d in crate::cycpoly::divisors(i) {
                out.push(d, a);
            }
        }
        for (idx, &b) in self.mminus.iter().enumerate() {
            let i = idx as u32 + 1;
            for d in crate::cycpoly::divisors(2 * i) {
                if i % d != 0 {
                    out.push(d, b);
                }
            }
        }
        out
    }
}

/// Partitions of `n` as multiplicity vectors (`m[i−1]` parts equal to `i`).
pub fn partitions_mult(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut m = vec![0u32; n];
    fn go(rest: usize, max: usize, m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(m.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            m[part - 1] += 1;
            go(rest - part, part, m, out);
            m[part - 1] -= 1;
        }
    }
    go(n, n, &mut m, &mut out);
    out
}

/// All signed cycle types of rank n.
pub fn signed_cycle_types(n: usize) -> Vec<SignedCycleIndex> {
    let mut out = Vec::new();
    for m in partitions_mult(n) {
        let mut splits = vec![(vec![0u32; n], vec![0u32; n])];
        for (i, &c) in m.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(splits.len() * (c as usize + 1));
            for (p, q) in &splits {
                for a in 0..=c {
                    let (mut p, mut q) = (p.clone(), q.clone());
                    p[i] = a;
                    q[i] = c - a;
                    next.push((p, q));
                }
            }
            splits = next;
        }
        out.extend(
            splits
                .into_iter()
                .map(|(mplus, mminus)| SignedCycleIndex { mplus, mminus }.trim()),
        );
    }
    out
}

fn mass_a(n: u32) -> MassMap {
    let fact = |k: u32| (1..=k).fold(BigInt::one(), |a, b| a * b);
    let items = partitions_mult(n as usize + 1).into_iter().map(|m| {
        let mut p = CycloProduct::one();
        let mut denom = BigInt::one();
        for (idx, &c) in m.iter().enumerate() {
            let i = idx as u32 + 1;
            if c == 0 {
                continue;
            }
            denom *= fact(c) * BigInt::from(i).pow(c);
            for d in crate::cycpoly::divisors(i) {
                p.push(d, c);
            }
        }
        // quotient by the trivial summand
        let mut exps = p.exponents().clone();
        *exps.get_mut(&1).unwrap() -= 1;
        let p = CycloProduct::from_pairs(exps);
        (p, Rational::new(BigInt::one(), denom))
    });
    MassMap::from_entries(n as usize, items).expect("degrees agree")
}

fn mass_d(n: u32, sign: i32) -> MassMap {
    let two = BigInt::from(2);
    let items = signed_cycle_types(n as usize)
        .into_iter()
        .filter(|c| c.sign() == sign)
        .map(|c| {
            // the H_n class has 2^n n!/n_c elements, the coset 2^{n−1} n!
            let mass = Rational::new(two.clone(), c.centralizer());
            (c.psi().charpoly(), mass)
        });
    MassMap::from_entries(n as usize, items).expect("degrees agree")
}

static CWD4: &str = include_str!("../data/cwd4.json");
static WE6: &str = include_str!("../data/we6.json");
static WE7: &str = include_str!("../data/we7.json");
static WE8: &str = include_str!("../data/we8.json");

/// The embedded tables, by name: `cwd4`, `we6`, `we7`, `we8`.
pub fn embedded_table(name: &str) -> Option<&'static str> {
    match name {
        "cwd4" => Some(CWD4),
        "we6" => Some(WE6),
        "we7" => Some(WE7),
        "we8" => Some(WE8),
        _ => None,
    }
}

fn irreducible_cache() -> &'static Mutex<HashMap<(IrredKind, u32), Arc<MassMap>>> {
    static CACHE: OnceLock<Mutex<HashMap<(IrredKind, u32), Arc<MassMap>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `m_{τW(R)}` for τ of the given order in the diagram automorphism group.
pub fn mass_irreducible(kind: IrredKind, order: u32) -> Result<MassMap> {
    Ok((*mass_irreducible_shared(kind, order)?).clone())
}

pub fn mass_irreducible_shared(kind: IrredKind, order: u32) -> Result<Arc<MassMap>> {
    if !kind.has_coset_order(order) {
        return Err(Error::IllegalCoset { kind: kind.to_string(), order });
    }
    if let Some(m) = irreducible_cache().lock().unwrap().get(&(kind, order)) {
        return Ok(m.clone());
    }
    let table = |s: &str| MassMap::from_json_str(s).expect("embedded table parses");
    let m = match (kind.family, kind.rank, order) {
        (Family::A, r, 1) => mass_a(r),
        (Family::A, r, _) => mass_a(r).negate_variable(),
        (Family::D, 4, 3) => table(CWD4),
        (Family::D, r, o) => mass_d(r, if o == 1 { 1 } else { -1 }),
        (Family::E, 6, 1) => table(WE6),
        (Family::E, 6, _) => table(WE6).negate_variable(),
        (Family::E, 7, _) => table(WE7),
        _ => table(WE8),
    };
    let m = Arc::new(m);
    irreducible_cache().lock().unwrap().insert((kind, order), m.clone());
    Ok(m)
}

/// Coset representative of the requested order, in the basis of simple roots.
fn coset_representative(kind: IrredKind, order: u32) -> Result<Vec<i64>> {
    let n = kind.rank as usize;
    if !kind.has_coset_order(order) {
        return Err(Error::IllegalCoset { kind: kind.to_string(), order });
    }
    let mut g = vec![0i64; n * n];
    match order {
        1 => (0..n).for_each(|i| g[i * n + i] = 1),
        2 => {
            let p = kind.diagram_involution().expect("order 2 exists");
            for (i, &pi) in p.iter().enumerate() {
                g[pi * n + i] = 1;
            }
        }
        _ => {
            // triality element s_β s_α of O(D4), with α = √2 ε₁ and
            // β = (ε₁ + ε₂ + ε₃ + ε₄)/√2, in orthonormal coordinates
            let half = |x: i64| Rational::new(x.into(), 2.into());
            let s0 = Matrix::from_rows(vec![
                vec![half(-1), half(-1), half(-1), half(-1)],
                vec![half(1), half(1), half(-1), half(-1)],
                vec![half(1), half(-1), half(1), half(-1)],
                vec![half(1), half(-1), half(-1), half(1)],
            ]);
            // simple roots ε₁−ε₂, ε₂−ε₃, ε₃−ε₄, ε₃+ε₄ as columns
            let b = Matrix::from_rows(
                [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 1], [0, 0, -1, 1]]
                    .iter()
                    .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                    .collect(),
            );
            let m = inverse(&b).expect("basis").mul(&s0).mul(&b);
            for i in 0..n {
                for j in 0..n {
                    let v = &m[(i, j)];
                    assert!(v.is_integer(), "triality must preserve the root lattice");
                    g[i * n + j] = v.to_integer().try_into().expect("small entry");
                }
            }
        }
    }
    Ok(g)
}

/// Counts of characteristic polynomials (as coefficient vectors) over the
/// coset `σ W(kind)`, by walking the Weyl group as a tree of reduced words.
pub fn enumerate_coset(kind: IrredKind, order: u32) -> Result<HashMap<Vec<i64>, u64>> {
    let n = kind.rank as usize;
    let cartan = kind.cartan();
    let sigma = coset_representative(kind, order)?;
    let mut id = vec![0i64; n * n];
    (0..n).for_each(|i| id[i * n + i] = 1);
    let walker = Walker { n, cartan: &cartan, sigma: &sigma };
    Ok(walker.walk(id, 0))
}

struct Walker<'a> {
    n: usize,
    cartan: &'a [Vec<i64>],
    sigma: &'a [i64],
}

impl Walker<'_> {
    fn col_positive(&self, w: &[i64], j: usize) -> bool {
        (0..self.n).all(|i| w[i * self.n + j] >= 0)
    }

    fn walk(&self, w: Vec<i64>, depth: usize) -> HashMap<Vec<i64>, u64> {
        let n = self.n;
        let children: Vec<Vec<i64>> = (0..n)
            .filter(|&i| self.col_positive(&w, i))
            .filter_map(|i| {
                // u = w s_i: column j becomes col_j − C_ij col_i
                let mut u = w.clone();
                for j in 0..n {
                    let c = self.cartan[i][j];
                    if c != 0 {
                        for r in 0..n {
                            u[r * n + j] -= c * w[r * n + i];
                        }
                    }
                }
                // keep u only when i is its largest right descent
                ((i + 1)..n).all(|j| self.col_positive(&u, j)).then_some(u)
            })
            .collect();
        let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
        let mut g = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                g[r * n + c] = (0..n).map(|k| self.sigma[r * n + k] * w[k * n + c]).sum();
            }
        }
        *counts.entry(charpoly_finite_order(&g, n)).or_insert(0) += 1;
        let merge = |mut a: HashMap<Vec<i64>, u64>, b: HashMap<Vec<i64>, u64>| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        };
        let sub = if depth < 6 {
            children
                .into_par_iter()
                .map(|u| self.walk(u, depth + 1))
                .reduce(HashMap::new, merge)
        } else {
            children
                .into_iter()
                .map(|u| self.walk(u, depth + 1))
                .fold(HashMap::new(), merge)
        };
        merge(counts, sub)
    }
}

/// Census of characteristic polynomials over every element of the coset of
/// the given order, each weighted by `1/|W|`.
pub fn brute_force_coset_mass(kind: IrredKind, order: u32) -> Result<MassMap> {
    brute_force_coset_mass_bounded(kind, order, DEFAULT_BOUND)
}

pub fn brute_force_coset_mass_bounded(kind: IrredKind, order: u32, bound: u128) -> Result<MassMap> {
    let size: u128 = kind.weyl_order().try_into().unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::TooLarge { size, bound });
    }
    let counts = enumerate_coset(kind, order)?;
    let total: u64 = counts.values().sum();
    if total as u128 != size {
        return Err(Error::Structure(format!(
            "enumerated {total} elements of {kind}, expected {size}"
        )));
    }
    census_to_mass(kind.rank as usize, counts)
}

/// Turns coefficient-vector counts into a mass map.
pub fn census_to_mass(degree: usize, counts: HashMap<Vec<i64>, u64>) -> Result<MassMap> {
    let total: u64 = counts.values().sum();
    let mut items = Vec::with_capacity(counts.len());
    for (coeffs, c) in counts {
        let p = factor_cyclo(&IntPoly::from_i64(&coeffs))?;
        items.push((p, Rational::new(c.into(), total.into())));
    }
    MassMap::from_entries(degree, items)
}

/// Mass map of the coset of `O(L)` described by its permutation cycles on
/// the irreducible components and the characteristic polynomial on `R^⊥`.
pub fn coset_mass(cycles: &[CosetCycle], complement: &CycloProduct) -> Result<MassMap> {
    let mut acc = MassMap::unit();
    // equal cycles contribute equal factors; sort for a stable product order
    let mut sorted = cycles.to_vec();
    sorted.sort();
    for c in &sorted {
        if !c.kind.has_coset_order(c.order) {
            return Err(Error::IllegalCoset { kind: c.kind.to_string(), order: c.order });
        }
        let m = mass_irreducible_shared(c.kind, c.order)?.substitute_power(c.length);
        acc = convolve(&acc, &m);
    }
    Ok(acc.mul_poly(complement))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn cp(s: &str) -> CycloProduct {
        s.parse().unwrap()
    }

    #[test]
    fn a1_and_a2() {
        let m = mass_irreducible(IrredKind::a(1), 1).unwrap();
        assert_eq!(m.get(&cp("1")), r(1, 2));
        assert_eq!(m.get(&cp("2")), r(1, 2));
        let m = mass_irreducible(IrredKind::a(2), 1).unwrap();
        assert_eq!(m.get(&cp("1^2")), r(1, 6));
        assert_eq!(m.get(&cp("1 2")), r(1, 2));
        assert_eq!(m.get(&cp("3")), r(1, 3));
    }

    #[test]
    fn illegal_cosets() {
        assert!(mass_irreducible(IrredKind::a(1), 2).is_err());
        assert!(mass_irreducible(IrredKind::e(8), 2).is_err());
        assert!(mass_irreducible(IrredKind::d(5), 3).is_err());
        assert!(CosetCycle::new(IrredKind::e(7), 1, 2).is_err());
    }

    #[test]
    fn maps_sum_to_one() {
        for kind in [IrredKind::a(5), IrredKind::d(4), IrredKind::d(7), IrredKind::e(6)] {
            for o in 1..=3 {
                if kind.has_coset_order(o) {
                    mass_irreducible(kind, o).unwrap().validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn d_identity_entry() {
        for n in 3..=8 {
            let k = IrredKind::d(n);
            let m = mass_irreducible(k, 1).unwrap();
            assert_eq!(m.identity_mass(), Rational::new(1.into(), k.weyl_order()));
        }
    }

    #[test]
    fn psi_preserves_charpoly() {
        for c in signed_cycle_types(7) {
            let r = c.psi();
            assert!(r.is_reduced());
            assert_eq!(r.charpoly(), c.charpoly());
            assert_eq!(r.rank(), c.rank());
        }
    }

    #[test]
    fn json_roundtrip() {
        let m = mass_irreducible(IrredKind::a(3), 2).unwrap();
        let back = MassMap::from_json_str(&m.to_json_string()).unwrap();
        assert_eq!(m, back);
        let one = MassMap::from_json_str(r#"{"degree": 1, "1": "1"}"#).unwrap();
        assert_eq!(one, MassMap::point(cp("1")));
    }

    #[test]
    fn coxeter_walk_counts() {
        for kind in [IrredKind::a(3), IrredKind::d(4), IrredKind::d(5)] {
            let counts = enumerate_coset(kind, 1).unwrap();
            let total: u64 = counts.values().sum();
            assert_eq!(BigInt::from(total), kind.weyl_order());
        }
    }
}
