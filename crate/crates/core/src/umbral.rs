//! Signed and colored cycle types, the class data of the 24 Niemeier
//! lattices, and assembly of their characteristic masses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::cycpoly::{divisors, CycloProduct};
use crate::error::{Error, Result};
use crate::reptheory::Partition;
use crate::weylmass::{average, coset_mass, CosetCycle, Family, IrredKind, MassMap};
use crate::Rational;

/// Element of `H_n = {±1}^n ⋊ S_n`: `e_i ↦ signs[i] · e_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Structure("not a permutation".into()));
            }
        }
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Structure("signs must be ±1, one per point".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            signs[i] = other.signs[i] * self.signs[j];
        }
        SignedPermutation { perm, signs }
    }

    /// Cycles as (length, sign) pairs, the sign being the product of the
    /// signs over the support.
    pub fn cycles(&self) -> Vec<(u32, i8)> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut i, mut len, mut sign) = (start, 0, 1i8);
            while !seen[i] {
                seen[i] = true;
                sign *= self.signs[i];
                len += 1;
                i = self.perm[i];
            }
            out.push((len, sign));
        }
        out
    }

    /// The `H_n`-conjugacy class.
    pub fn type_of(&self) -> ColoredType {
        let mut black = Vec::new();
        let mut cyan = Vec::new();
        for (len, s) in self.cycles() {
            if s == 1 {
                black.push(len);
            } else {
                cyan.push(len);
            }
        }
        ColoredType { black: Partition::new(black), cyan: Partition::new(cyan), magenta: Partition::empty() }
    }
}

pub fn type_of(w: &SignedPermutation) -> ColoredType {
    w.type_of()
}

/// Cycle type whose cycles are colored by the order of their return map:
/// black 1, cyan 2, magenta 3. Written `i`, `i-`, `i~` with exponents, as in
/// `1 1-^2 4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColoredType {
    pub black: Partition,
    pub cyan: Partition,
    pub magenta: Partition,
}

impl ColoredType {
    pub fn weight(&self) -> u32 {
        self.black.weight() + self.cyan.weight() + self.magenta.weight()
    }

    /// All cycles as (length, order) pairs.
    pub fn cycles(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (p, order) in [(&self.black, 1), (&self.cyan, 2), (&self.magenta, 3)] {
            out.extend(p.parts().iter().map(|&l| (l, order)));
        }
        out.sort();
        out
    }

    /// `∏ (t^i − 1)^{a_i} (t^i + 1)^{b_i}` for a black/cyan type.
    pub fn charpoly(&self) -> Result<CycloProduct> {
        if !self.magenta.is_empty() {
            return Err(Error::Structure("no characteristic polynomial for magenta cycles".into()));
        }
        let mut out = CycloProduct::one();
        for &i in self.black.parts() {
            for d in divisors(i) {
                out.push(d, 1);
            }
        }
        for &i in self.cyan.parts() {
            for d in divisors(2 * i) {
                if i % d != 0 {
                    out.push(d, 1);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ColoredType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c).or_insert(0) += 1;
        }
        let mut first = true;
        for ((len, order), k) in counts {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let mark = ["", "-", "~"][order as usize - 1];
            if k == 1 {
                write!(f, "{len}{mark}")?;
            } else {
                write!(f, "{len}{mark}^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ColoredType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts: [Vec<u32>; 3] = Default::default();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad cycle token {tok:?}"));
            let (head, k) = tok.split_once('^').unwrap_or((tok, "1"));
            let (len, color) = match head.strip_suffix('-') {
                Some(l) => (l, 1),
                None => match head.strip_suffix('~') {
                    Some(l) => (l, 2),
                    None => (head, 0),
                },
            };
            let len: u32 = len.parse().map_err(|_| bad())?;
            let k: usize = k.parse().map_err(|_| bad())?;
            if len == 0 || k == 0 {
                return Err(bad());
            }
            parts[color].extend(std::iter::repeat(len).take(k));
        }
        let [b, c, m] = parts;
        Ok(ColoredType { black: Partition::new(b), cyan: Partition::new(c), magenta: Partition::new(m) })
    }
}

/// Charpoly of a black/cyan type, as in the D_n analysis.
pub fn charpoly_of_type(t: &ColoredType) -> Result<CycloProduct> {
    t.charpoly()
}

/// One conjugacy class of the umbral group: a type per isotypic factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmbralClass {
    pub types: Vec<ColoredType>,
    pub size: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiemeierRecord {
    pub name: String,
    /// Isotypic factors `N_i R_i` as (kind, N_i).
    pub factors: Vec<(IrredKind, u32)>,
    pub classes: Vec<UmbralClass>,
    /// Only for the lattice without roots.
    pub leech: Option<MassMap>,
}

impl NiemeierRecord {
    pub fn is_leech(&self) -> bool {
        self.leech.is_some()
    }

    pub fn rank(&self) -> u32 {
        self.factors.iter().map(|(k, n)| k.rank * n).sum()
    }

    /// Coxeter number of a component.
    fn coxeter(kind: &IrredKind) -> u32 {
        match (kind.family, kind.rank) {
            (Family::A, r) => r + 1,
            (Family::D, r) => 2 * r - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            _ => 30,
        }
    }

    /// Structural checks: rank 24, equal Coxeter numbers, types matching the
    /// factors, sizes summing to 1.
    pub fn validate(&self) -> Result<()> {
        if self.is_leech() {
            return self.leech.as_ref().unwrap().validate();
        }
        if self.rank() != 24 {
            return Err(Error::Structure(format!("{}: rank {} ≠ 24", self.name, self.rank())));
        }
        let h: Vec<u32> = self.factors.iter().map(|(k, _)| Self::coxeter(k)).collect();
        if h.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Structure(format!("{}: not equi-Coxeter", self.name)));
        }
        let mut total = Rational::zero();
        for c in &self.classes {
            class_to_cycles(self, c)?;
            total += &c.size;
        }
        if !total.is_one() {
            return Err(Error::Structure(format!("{}: class sizes sum to {total}", self.name)));
        }
        Ok(())
    }

    /// The type of `η`, the class of `−id`.
    pub fn eta_type(&self) -> Vec<ColoredType> {
        self.factors
            .iter()
            .map(|(kind, n)| {
                let trivial = match kind.family {
                    Family::A => kind.rank == 1,
                    Family::D => kind.rank % 2 == 0,
                    Family::E => kind.rank != 6,
                };
                let p = Partition::rectangle(1, *n as usize);
                if trivial {
                    ColoredType { black: p, ..Default::default() }
                } else {
                    ColoredType { cyan: p, ..Default::default() }
                }
            })
            .collect()
    }
}

/// Normalized lookup key: no spaces, upper case.
pub fn normalize_name(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_uppercase()
}

pub fn class_to_cycles(record: &NiemeierRecord, class: &UmbralClass) -> Result<Vec<CosetCycle>> {
    if class.types.len() != record.factors.len() {
        return Err(Error::Structure(format!(
            "{}: class has {} types for {} factors",
            record.name,
            class.types.len(),
            record.factors.len()
        )));
    }
    let mut out = Vec::new();
    for ((kind, n), t) in record.factors.iter().zip(&class.types) {
        if t.weight() != *n {
            return Err(Error::Structure(format!(
                "{}: type {t} does not permute {n} copies of {kind}",
                record.name
            )));
        }
        if !t.magenta.is_empty() && *kind != IrredKind::d(4) {
            return Err(Error::Structure(format!("{}: order-3 cycles over {kind}", record.name)));
        }
        for (len, order) in t.cycles() {
            out.push(CosetCycle::new(*kind, len, order)?);
        }
    }
    Ok(out)
}

/// `m_{O(L)}`, averaging the coset masses over the umbral classes.
pub fn niemeier_mass(record: &NiemeierRecord) -> Result<MassMap> {
    if let Some(m) = &record.leech {
        return Ok(m.clone());
    }
    let weighted = record
        .classes
        .iter()
        .map(|c| Ok((coset_mass(&class_to_cycles(record, c)?, &CycloProduct::one())?, c.size.clone())))
        .collect::<Result<Vec<_>>>()?;
    average(&weighted)
}

#[derive(Deserialize)]
struct RawFactor {
    family: String,
    rank: u32,
    mult: u32,
}

#[derive(Deserialize)]
struct RawClass {
    types: Vec<String>,
    size: String,
}

#[derive(Deserialize)]
struct RawRecord {
    name: String,
    factors: Vec<RawFactor>,
    classes: Vec<RawClass>,
}

static NIEMEIER: &str = include_str!("../data/niemeier.json");
static LEECH: &str = include_str!("../data/leech.json");

/// The embedded catalog sources: class data and the Leech mass table.
pub fn embedded_sources() -> [(&'static str, &'static str); 2] {
    [("niemeier", NIEMEIER), ("leech", LEECH)]
}

fn parse_catalog() -> Result<Vec<NiemeierRecord>> {
    let raw: Vec<RawRecord> =
        serde_json::from_str(NIEMEIER).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = Vec::with_capacity(raw.len() + 1);
    for r in raw {
        let factors = r
            .factors
            .iter()
            .map(|f| Ok((format!("{}{}", f.family, f.rank).parse::<IrredKind>()?, f.mult)))
            .collect::<Result<Vec<_>>>()?;
        let classes = r
            .classes
            .iter()
            .map(|c| {
                Ok(UmbralClass {
                    types: c.types.iter().map(|t| t.parse()).collect::<Result<_>>()?,
                    size: crate::weylmass::parse_rational(&c.size)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(NiemeierRecord { name: r.name, factors, classes, leech: None });
    }
    out.push(NiemeierRecord {
        name: "Leech".into(),
        factors: Vec::new(),
        classes: Vec::new(),
        leech: Some(MassMap::from_json_str(LEECH)?),
    });
    Ok(out)
}

/// The 24 Niemeier lattices: 23 with roots, then Leech.
pub fn catalog() -> &'static [NiemeierRecord] {
    static CATALOG: OnceLock<Vec<NiemeierRecord>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog().expect("embedded catalog parses"))
}

pub fn find_record(name: &str) -> Result<&'static NiemeierRecord> {
    let key = normalize_name(name);
    catalog()
        .iter()
        .find(|r| normalize_name(&r.name) == key)
        .ok_or_else(|| Error::UnknownRecord(name.to_string()))
}

/// Assembled mass maps of all 24 Niemeier lattices, in catalog order.
pub fn niemeier_maps() -> Result<&'static [MassMap]> {
    use rayon::prelude::*;
    static MAPS: OnceLock<Vec<MassMap>> = OnceLock::new();
    if let Some(m) = MAPS.get() {
        return Ok(m);
    }
    let maps = catalog().par_iter().map(niemeier_mass).collect::<Result<Vec<_>>>()?;
    Ok(MAPS.get_or_init(|| maps))
}

/// Census of types over a finite subgroup of `H_n`, each weighted by
/// `1/|G|`.
pub fn type_census(elements: &[SignedPermutation]) -> BTreeMap<ColoredType, Rational> {
    let mut out: BTreeMap<ColoredType, Rational> = BTreeMap::new();
    let unit = Rational::new(1.into(), elements.len().into());
    for g in elements {
        *out.entry(g.type_of()).or_insert_with(Rational::zero) += &unit;
    }
    out
}

/// Signed permutation of a matrix acting on chosen line representatives of
/// `(Z/p)^2`; `same_class(a, b)` returns the sign relating `a` to `b` when
/// they represent the same point, else `None`.
fn action_on_lines(
    g: [[u32; 2]; 2],
    p: u32,
    reps: &[[u32; 2]],
    same_class: impl Fn([u32; 2], [u32; 2]) -> Option<i8>,
) -> SignedPermutation {
    let n = reps.len();
    let mut perm = vec![0; n];
    let mut signs = vec![1; n];
    for (i, v) in reps.iter().enumerate() {
        let w = [(g[0][0] * v[0] + g[0][1] * v[1]) % p, (g[1][0] * v[0] + g[1][1] * v[1]) % p];
        let (j, s) = reps
            .iter()
            .enumerate()
            .find_map(|(j, r)| same_class(w, *r).map(|s| (j, s)))
            .expect("image lies on a listed line");
        perm[i] = j;
        signs[j] = s;
    }
    // e_i ↦ signs[perm[i]] e_{perm[i]}; store per source point
    let signs = (0..n).map(|i| signs[perm[i]]).collect();
    SignedPermutation { perm, signs }
}

fn gl2(p: u32) -> impl Iterator<Item = [[u32; 2]; 2]> {
    (0..p.pow(4)).filter_map(move |k| {
        let (a, b, c, d) = (k % p, (k / p) % p, (k / p / p) % p, k / p / p / p);
        ((a * d + p * p - b * c) % p != 0).then_some([[a, b], [c, d]])
    })
}

/// `GL₂(Z/3)` acting on the four pairs `{v, −v}`.
pub fn gl2z3_elements() -> Vec<SignedPermutation> {
    let reps = [[0, 1], [1, 0], [1, 1], [1, 2]];
    let sc = |w: [u32; 2], r: [u32; 2]| {
        if w == r {
            Some(1)
        } else if w == [(3 - r[0]) % 3, (3 - r[1]) % 3] {
            Some(-1)
        } else {
            None
        }
    };
    gl2(3).map(|g| action_on_lines(g, 3, &reps, sc)).collect()
}

/// `GL₂(Z/5)/±I` acting on the six pairs `{[v], [2v]}` of
/// `((Z/5)² − 0)/±1`.
pub fn gl2z5_mod_pm_elements() -> Vec<SignedPermutation> {
    let reps = [[0, 1], [1, 0], [1, 1], [1, 2], [1, 3], [1, 4]];
    let scal = |c: u32, r: [u32; 2]| [(c * r[0]) % 5, (c * r[1]) % 5];
    let sc = |w: [u32; 2], r: [u32; 2]| {
        if w == scal(1, r) || w == scal(4, r) {
            Some(1)
        } else if w == scal(2, r) || w == scal(3, r) {
            Some(-1)
        } else {
            None
        }
    };
    // one matrix per ±I coset: first nonzero entry in {1, 2}
    gl2(5)
        .filter(|g| {
            let first = [g[0][0], g[0][1], g[1][0], g[1][1]].into_iter().find(|&x| x != 0).unwrap();
            first <= 2
        })
        .map(|g| action_on_lines(g, 5, &reps, sc))
        .collect()
}

pub fn verify_gl2z3() -> BTreeMap<ColoredType, Rational> {
    type_census(&gl2z3_elements())
}

pub fn verify_2s5() -> BTreeMap<ColoredType, Rational> {
    type_census(&gl2z5_mod_pm_elements())
}

/// The published censuses these enumerations must reproduce.
pub fn expected_gl2z3() -> BTreeMap<ColoredType, Rational> {
    expected_from(find_record("4E6").expect("catalog has 4E6"))
}

pub fn expected_2s5() -> BTreeMap<ColoredType, Rational> {
    expected_from(find_record("6A4").expect("catalog has 6A4"))
}

fn expected_from(r: &NiemeierRecord) -> BTreeMap<ColoredType, Rational> {
    r.classes.iter().map(|c| (c.types[0].clone(), c.size.clone())).collect()
}

/// Remark on spinor norms: for `P = (t−1)^a (t+1)^b Q` with `Q(±1) ≠ 0`,
/// `Q(1)` is a square when `a = 0` and `Q(−1)` is a square when `b = 0`.
pub fn square_condition(p: &CycloProduct) -> bool {
    let q = CycloProduct::from_pairs(p.exponents().iter().filter(|(&m, _)| m > 2).map(|(&m, &a)| (m, a)));
    let is_square = |x: num_bigint::BigInt| {
        if x.sign() == num_bigint::Sign::Minus {
            return false;
        }
        let r = x.sqrt();
        &r * &r == x
    };
    (p.exponent(1) != 0 || is_square(q.eval(1))) && (p.exponent(2) != 0 || is_square(q.eval(-1)))
}
