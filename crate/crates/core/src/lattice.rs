//! Lattices given by Gram matrices: short vectors, root data, automorphism
//! groups by basis-image backtracking, and the two mass algorithms (full
//! census, or Weyl-vector stabilizer plus closed-form Weyl masses).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cycpoly::{divisors, factor_cyclo, CycloProduct, IntPoly};
use crate::error::{Error, Result};
use crate::linalg::{charpoly_finite_order, det_bareiss, Matrix};
use crate::weylmass::{average, census_to_mass, coset_mass, CosetCycle, IrredKind, MassMap};
use crate::Rational;

pub type Vector = Vec<i64>;

/// Symmetric positive definite integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    m: Matrix<i64>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("Gram matrix must be square, got {n} rows of unequal length")));
        }
        Self::from_matrix(Matrix::from_rows(rows))
    }

    pub fn from_matrix(m: Matrix<i64>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !ldl_positive(&m) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(GramMatrix { m })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[(i, j)]
    }

    pub fn is_even(&self) -> bool {
        (0..self.dim()).all(|i| self.m[(i, i)] % 2 == 0)
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(&self.m.map(|&x| BigInt::from(x)))
    }

    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.dim();
        let mut s = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            let mut t = 0;
            for j in 0..n {
                t += self.m[(i, j)] * v[j];
            }
            s += u[i] * t;
        }
        s
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        self.inner(v, v)
    }

    /// `G v`
    pub fn apply(&self, v: &[i64]) -> Vector {
        (0..self.dim()).map(|i| self.m.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `Uᵀ G U`, the Gram matrix of the basis given by the columns of `U`.
    pub fn transform(&self, u: &Matrix<i64>) -> Result<GramMatrix> {
        if det_bareiss(&u.map(|&x| BigInt::from(x))).abs() != BigInt::one() {
            return Err(Error::Structure("change of basis is not unimodular".into()));
        }
        Ok(GramMatrix { m: u.transpose().mul(&self.m).mul(u) })
    }

    pub fn direct_sum(&self, other: &GramMatrix) -> GramMatrix {
        let (a, b) = (self.dim(), other.dim());
        let m = Matrix::from_fn(a + b, a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.m[(i, j)],
            (false, false) => other.m[(i - a, j - a)],
            _ => 0,
        });
        GramMatrix { m }
    }

    /// Cartan matrix of an ADE root system.
    pub fn root_lattice(kind: IrredKind) -> GramMatrix {
        GramMatrix { m: Matrix::from_rows(kind.cartan()) }
    }

    /// The standard lattice `Z^n`.
    pub fn identity(n: usize) -> GramMatrix {
        GramMatrix { m: Matrix::identity(n) }
    }

    pub fn leech() -> GramMatrix {
        leech_gram()
    }

    /// Built-in lattices: `A2`, `E8`, `I3`, `Leech`, and sums such as
    /// `A2+A2` or `3A1`.
    pub fn builtin(name: &str) -> Result<GramMatrix> {
        let bad = || Error::UnknownRecord(name.to_string());
        let mut acc: Option<GramMatrix> = None;
        for part in name.split(|c: char| c == '+' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let digits = part.chars().take_while(|c| c.is_ascii_digit()).count();
            let k: usize = if digits == 0 { 1 } else { part[..digits].parse().map_err(|_| bad())? };
            let base = &part[digits..];
            let g = if base.eq_ignore_ascii_case("leech") {
                Self::leech()
            } else if let Some(n) = base.strip_prefix(['I', 'i']) {
                Self::identity(n.parse().map_err(|_| bad())?)
            } else {
                Self::root_lattice(base.parse().map_err(|_| bad())?)
            };
            for _ in 0..k {
                acc = Some(match acc {
                    None => g.clone(),
                    Some(a) => a.direct_sum(&g),
                });
            }
        }
        acc.ok_or_else(bad)
    }

    /// JSON array of rows, or a dimension line followed by the entries.
    pub fn parse(s: &str) -> Result<GramMatrix> {
        let t = s.trim();
        if t.starts_with('[') {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("Gram JSON: {e}")))?;
            return Self::new(rows);
        }
        let mut it = t.split_whitespace().map(|w| w.parse::<i64>());
        let n = match it.next() {
            Some(Ok(n)) if n > 0 => n as usize,
            _ => return Err(Error::Parse("Gram file must start with its dimension".into())),
        };
        let vals = it
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("Gram entry: {e}")))?;
        if vals.len() != n * n {
            return Err(Error::Parse(format!("expected {} entries, found {}", n * n, vals.len())));
        }
        Self::new(vals.chunks(n).map(|r| r.to_vec()).collect())
    }
}

impl FromStr for GramMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = self.m.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// LDLᵀ over the rationals; true iff every pivot is positive.
fn ldl_positive(m: &Matrix<i64>) -> bool {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::from_integer(m[(i, j)].into())).collect()).collect();
    for k in 0..n {
        let piv = a[k][k].clone();
        if !piv.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    true
}

/// LLL-reduced basis, decisions in floating point and all updates exact.
/// Returns `(Uᵀ G U, U)` with `U` unimodular.
fn lll(g: &Matrix<i64>) -> (Matrix<i64>, Matrix<i64>) {
    let n = g.rows();
    let mut gg = g.clone();
    let mut u = Matrix::<i64>::identity(n);
    if n < 2 {
        return (gg, u);
    }
    let delta = 0.99;
    let mut k = 1;
    let mut guard = 0u64;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "LLL did not terminate");
        let (mu, b) = gso(&gg);
        // size reduction of b_k
        let mut changed = false;
        let mut muk = mu[k].clone();
        for j in (0..k).rev() {
            let q = muk[j].round() as i64;
            if q == 0 {
                continue;
            }
            changed = true;
            add_multiple(&mut gg, &mut u, k, j, -q);
            for l in 0..j {
                muk[l] -= q as f64 * mu[j][l];
            }
            muk[j] -= q as f64;
        }
        let (mu, b) = if changed { gso(&gg) } else { (mu, b) };
        if b[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            k += 1;
        } else {
            swap_basis(&mut gg, &mut u, k, k - 1);
            k = k.saturating_sub(1).max(1);
        }
    }
    (gg, u)
}

fn gso(g: &Matrix<i64>) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = g.rows();
    let mut mu = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[(i, j)] as f64;
            for l in 0..j {
                s -= mu[j][l] * mu[i][l] * b[l];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = g[(i, i)] as f64;
        for l in 0..i {
            s -= mu[i][l] * mu[i][l] * b[l];
        }
        b[i] = s;
    }
    (mu, b)
}

/// `b_k += q b_j`
fn add_multiple(g: &mut Matrix<i64>, u: &mut Matrix<i64>, k: usize, j: usize, q: i64) {
    let n = g.rows();
    for r in 0..n {
        u[(r, k)] += q * u[(r, j)];
    }
    let gkk = g[(k, k)] + 2 * q * g[(k, j)] + q * q * g[(j, j)];
    for r in 0..n {
        if r != k {
            let v = g[(r, k)] + q * g[(r, j)];
            g[(r, k)] = v;
            g[(k, r)] = v;
        }
    }
    g[(k, k)] = gkk;
}

fn swap_basis(g: &mut Matrix<i64>, u: &mut Matrix<i64>, a: usize, b: usize) {
    let n = g.rows();
    for r in 0..n {
        let t = u[(r, a)];
        u[(r, a)] = u[(r, b)];
        u[(r, b)] = t;
    }
    *g = Matrix::from_fn(n, n, |i, j| {
        let p = |x: usize| if x == a { b } else if x == b { a } else { x };
        g[(p(i), p(j))]
    });
}

/// All nonzero `x` with `xᵀ G x ≤ bound`, both signs, for an LLL-reduced
/// Gram matrix.
fn enumerate_ball(g: &Matrix<i64>, bound: i64) -> Vec<Vector> {
    let n = g.rows();
    let (mu, b) = gso(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let eps = 1e-6 * (1.0 + bound as f64);
    fn rec(
        i: usize,
        rem: f64,
        x: &mut Vec<i64>,
        mu: &[Vec<f64>],
        b: &[f64],
        eps: f64,
        g: &Matrix<i64>,
        bound: i64,
        out: &mut Vec<Vector>,
    ) {
        let n = x.len();
        let c: f64 = -(i + 1..n).map(|j| mu[j][i] * x[j] as f64).sum::<f64>();
        let r = ((rem + eps).max(0.0) / b[i]).sqrt();
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let d = v as f64 - c;
            let left = rem - b[i] * d * d;
            if left < -eps {
                continue;
            }
            if i == 0 {
                if x.iter().any(|&t| t != 0) && quad(g, x) <= bound {
                    out.push(x.clone());
                }
            } else {
                rec(i - 1, left, x, mu, b, eps, g, bound, out);
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        rec(n - 1, bound as f64, &mut x, &mu, &b, eps, g, bound, &mut out);
    }
    out
}

fn quad(g: &Matrix<i64>, x: &[i64]) -> i64 {
    let n = g.rows();
    let mut s = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        s += x[i] * x[i] * g[(i, i)];
        for j in 0..i {
            s += 2 * x[i] * x[j] * g[(i, j)];
        }
    }
    s
}

fn mat_vec(m: &Matrix<i64>, v: &[i64]) -> Vector {
    (0..m.rows()).map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn first_nonzero_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Nonzero vectors of norm at most `bound`, one per `±` pair (first nonzero
/// coordinate positive), sorted by norm and then lexicographically.
pub fn short_vectors(g: &GramMatrix, bound: i64) -> Vec<Vector> {
    let (red, u) = lll(&g.m);
    let mut out: Vec<(i64, Vector)> = enumerate_ball(&red, bound)
        .into_iter()
        .map(|x| mat_vec(&u, &x))
        .filter(|v| first_nonzero_positive(v))
        .map(|v| (g.norm(&v), v))
        .collect();
    out.sort();
    out.into_iter().map(|(_, v)| v).collect()
}

/// Words of the extended binary Golay code spanned by the shifts of the
/// cyclic generator `1 + x² + x⁴ + x⁵ + x⁶ + x¹⁰ + x¹¹`.
pub fn golay_basis() -> Vec<[u8; 24]> {
    let gen = [0usize, 2, 4, 5, 6, 10, 11];
    (0..12)
        .map(|k| {
            let mut w = [0u8; 24];
            for &e in &gen {
                w[(e + k) % 23] = 1;
            }
            w[23] = w[..23].iter().sum::<u8>() % 2;
            w
        })
        .collect()
}

/// Integer row basis of the lattice spanned by `rows`, by Euclidean row
/// reduction.
fn row_basis(mut rows: Vec<Vector>) -> Vec<Vector> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut basis = Vec::new();
    for col in 0..n {
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    basis.push(rows.swap_remove(p));
                }
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let p = nz[0];
            let pv = rows[p][col];
            for &i in &nz[1..] {
                let q = Integer::div_floor(&rows[i][col], &pv);
                for c in 0..n {
                    rows[i][c] -= q * rows[p][c];
                }
            }
        }
    }
    basis
}

/// Leech lattice from the Golay code: vectors of `Z^24/√8` spanned by
/// `2c`, `4(e_i ± e_j)` and `(−3, 1^23)`.
fn leech_gram() -> GramMatrix {
    let mut gens: Vec<Vector> = golay_basis().iter().map(|w| w.iter().map(|&b| 2 * b as i64).collect()).collect();
    for j in 1..24 {
        for s in [1, -1] {
            let mut v = vec![0; 24];
            v[0] = 4;
            v[j] = 4 * s;
            gens.push(v);
        }
    }
    let mut v = vec![1; 24];
    v[0] = -3;
    gens.push(v);
    let b = row_basis(gens);
    assert_eq!(b.len(), 24);
    let raw = Matrix::from_fn(24, 24, |i, j| {
        let d: i64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
        assert_eq!(d % 8, 0);
        d / 8
    });
    GramMatrix { m: lll(&raw).0 }
}

/// One irreducible component of a root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootComponent {
    pub kind: IrredKind,
    pub simple: Vec<Vector>,
    pub positive: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub roots: Vec<Vector>,
    pub positive: Vec<Vector>,
    pub simple: Vec<Vector>,
    pub weyl_vector_times_2: Vector,
    pub components: Vec<RootComponent>,
}

impl RootDatum {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// `α·ρ = 1` on simple roots and the component kinds match their sizes.
    pub fn check(&self, g: &GramMatrix) -> Result<()> {
        for a in &self.simple {
            if g.inner(a, &self.weyl_vector_times_2) != 2 {
                return Err(Error::Structure("simple root with α·ρ ≠ 1".into()));
            }
        }
        for c in &self.components {
            if c.simple.len() != c.kind.rank as usize || c.positive.len() != c.kind.positive_roots() as usize {
                return Err(Error::Structure(format!("component {} has the wrong size", c.kind)));
            }
        }
        if self.roots.len() != 2 * self.positive.len() {
            return Err(Error::Structure("roots are not ± the positive system".into()));
        }
        Ok(())
    }
}

fn kind_from_sizes(rank: usize, positive: usize) -> Result<IrredKind> {
    let r = rank as u32;
    let p = positive as u32;
    if p == r * (r + 1) / 2 {
        Ok(IrredKind::a(r))
    } else if r >= 4 && p == r * (r - 1) {
        Ok(IrredKind::d(r))
    } else if matches!((r, p), (6, 36) | (7, 63) | (8, 120)) {
        Ok(IrredKind::e(r))
    } else {
        Err(Error::Structure(format!("no ADE system of rank {r} with {p} positive roots")))
    }
}

fn add(u: &[i64], v: &[i64]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn sub(u: &[i64], v: &[i64]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Roots, the lexicographically positive system, simple roots, `2ρ` and the
/// irreducible components.
pub fn root_datum(g: &GramMatrix) -> Result<RootDatum> {
    let n = g.dim();
    let positive: Vec<Vector> = short_vectors(g, 2).into_iter().filter(|v| g.norm(v) == 2).collect();
    let pos_set: HashSet<&Vector> = positive.iter().collect();
    let simple: Vec<Vector> = positive
        .iter()
        .filter(|a| !positive.iter().any(|b| pos_set.contains(&sub(a, b))))
        .cloned()
        .collect();
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vector>()));
    roots.sort();
    let mut two_rho = vec![0i64; n];
    for a in &positive {
        two_rho = add(&two_rho, a);
    }
    // components of the Dynkin diagram
    let k = simple.len();
    let mut comp = vec![usize::MAX; k];
    let mut ncomp = 0;
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if comp[j] == usize::MAX && g.inner(&simple[i], &simple[j]) != 0 {
                    comp[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut components = Vec::with_capacity(ncomp);
    for c in 0..ncomp {
        let simple_c: Vec<Vector> = (0..k).filter(|&i| comp[i] == c).map(|i| simple[i].clone()).collect();
        // every positive root is reached from a simple root by adding simple roots
        let mut seen: HashSet<Vector> = simple_c.iter().cloned().collect();
        let mut frontier = simple_c.clone();
        while let Some(v) = frontier.pop() {
            for s in &simple_c {
                let w = add(&v, s);
                if pos_set.contains(&w) && seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let mut pos_c: Vec<Vector> = seen.into_iter().collect();
        pos_c.sort();
        let kind = kind_from_sizes(simple_c.len(), pos_c.len())?;
        components.push(RootComponent { kind, simple: simple_c, positive: pos_c });
    }
    // block order: the component owning the earliest coordinates comes first
    components.sort_by(|a, b| b.simple.iter().max().cmp(&a.simple.iter().max()));
    let rd = RootDatum { roots, positive, simple, weyl_vector_times_2: two_rho, components };
    rd.check(g)?;
    Ok(rd)
}

/// Integer matrix `g` with `gᵀ G g = G`; column `i` is the image of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub g: Matrix<i64>,
}

impl Isometry {
    pub fn preserves(&self, gram: &GramMatrix) -> bool {
        self.g.transpose().mul(&gram.m).mul(&self.g) == gram.m
    }

    pub fn apply(&self, v: &[i64]) -> Vector {
        mat_vec(&self.g, v)
    }

    pub fn charpoly(&self) -> Result<CycloProduct> {
        let n = self.g.rows();
        let flat: Vec<i64> = (0..n).flat_map(|i| self.g.row(i).to_vec()).collect();
        factor_cyclo(&IntPoly::from_i64(&charpoly_finite_order(&flat, n)))
    }
}

/// Flat row-major `n×n` product.
fn mul_flat(a: &[i64], b: &[i64], n: usize) -> Vector {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn flat_apply(a: &[i64], v: &[i64], n: usize) -> Vector {
    (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect()
}

/// Matrix with the given columns, flattened row-major.
fn from_columns(cols: &[&[i64]], n: usize) -> Vector {
    let mut out = vec![0i64; n * n];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            out[i * n + j] = c[i];
        }
    }
    out
}

/// Candidate images for the reduced basis, with their `G`-images for fast
/// inner products.
struct Search<'a> {
    n: usize,
    gram: &'a Matrix<i64>,
    cands: Vec<Vector>,
    gcands: Vec<Vector>,
    index: HashMap<Vector, usize>,
    /// Candidates per basis position, already filtered by norm and by the
    /// fixed-vector condition.
    level: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(gram: &'a Matrix<i64>, fix_form: Option<&[i64]>) -> Search<'a> {
        let n = gram.rows();
        let maxd = (0..n).map(|i| gram[(i, i)]).max().unwrap_or(0);
        let mut cands = enumerate_ball(gram, maxd);
        cands.sort();
        let gcands: Vec<Vector> = cands.iter().map(|c| mat_vec(gram, c)).collect();
        let index = cands.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let level = (0..n)
            .map(|j| {
                (0..cands.len())
                    .filter(|&c| gcands[c].iter().zip(&cands[c]).map(|(a, b)| a * b).sum::<i64>() == gram[(j, j)])
                    .filter(|&c| match fix_form {
                        None => true,
                        Some(h) => cands[c].iter().zip(h).map(|(a, b)| a * b).sum::<i64>() == h[j],
                    })
                    .collect()
            })
            .collect();
        Search { n, gram, cands, gcands, index, level }
    }

    fn ip(&self, a: usize, b: usize) -> i64 {
        self.cands[a].iter().zip(&self.gcands[b]).map(|(x, y)| x * y).sum()
    }

    /// Extends `images` (fixed for positions `< images.len()`) to a full
    /// automorphism.
    fn extend(&self, images: &mut Vec<usize>) -> bool {
        let j = images.len();
        if j == self.n {
            return true;
        }
        for &c in &self.level[j] {
            if images.iter().enumerate().all(|(k, &im)| self.ip(c, im) == self.gram[(j, k)]) {
                images.push(c);
                if self.extend(images) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }

    fn matrix(&self, images: &[usize]) -> Vector {
        let cols: Vec<&[i64]> = images.iter().map(|&i| self.cands[i].as_slice()).collect();
        from_columns(&cols, self.n)
    }

    fn unit(&self, i: usize) -> usize {
        let mut e = vec![0; self.n];
        e[i] = 1;
        self.index[&e]
    }
}

/// Automorphism group (or stabilizer of a vector) as a stabilizer chain
/// over a reduced basis: generators, orbit transversals and order.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    n: usize,
    u: Matrix<i64>,
    u_inv: Matrix<i64>,
    /// Generators in the reduced basis, flat.
    gens: Vec<Vector>,
    /// Transversal of each stabilizer-chain level, flat, in the reduced basis.
    transversals: Vec<Vec<Vector>>,
    order: BigInt,
}

impl AutomorphismGroup {
    pub fn order(&self) -> &BigInt {
        &self.order
    }

    fn to_original(&self, g: &[i64]) -> Isometry {
        let n = self.n;
        let m = Matrix::from_fn(n, n, |i, j| g[i * n + j]);
        Isometry { g: self.u.mul(&m).mul(&self.u_inv) }
    }

    pub fn generators(&self) -> Vec<Isometry> {
        self.gens.iter().map(|g| self.to_original(g)).collect()
    }

    fn check_bound(&self, bound: u64) -> Result<()> {
        match self.order.to_u64() {
            Some(o) if o <= bound => Ok(()),
            _ => Err(Error::EnumerationTooLarge(bound)),
        }
    }

    /// Every element, as products of transversal elements.
    pub fn elements(&self, bound: u64) -> Result<Vec<Isometry>> {
        self.check_bound(bound)?;
        let mut out = Vec::new();
        self.for_each_reduced(|g| out.push(self.to_original(g)));
        Ok(out)
    }

    fn nontrivial_levels(&self) -> Vec<&Vec<Vector>> {
        self.transversals.iter().filter(|t| t.len() > 1).collect()
    }

    fn for_each_reduced(&self, mut f: impl FnMut(&[i64])) {
        let levels = self.nontrivial_levels();
        let id = identity_flat(self.n);
        fn rec(levels: &[&Vec<Vector>], acc: &[i64], n: usize, f: &mut dyn FnMut(&[i64])) {
            match levels.split_first() {
                None => f(acc),
                Some((t, rest)) => {
                    for x in t.iter() {
                        rec(rest, &mul_flat(acc, x, n), n, f);
                    }
                }
            }
        }
        rec(&levels, &id, self.n, &mut f);
    }

    /// Counts of `key(g)` over all elements, computed in parallel over the
    /// first level of the chain. Elements are given in the reduced basis.
    fn census<K, F>(&self, key: F) -> Result<HashMap<K, u64>>
    where
        K: std::hash::Hash + Eq + Send,
        F: Fn(&[i64]) -> Result<K> + Sync,
    {
        let levels = self.nontrivial_levels();
        let n = self.n;
        let id = identity_flat(n);
        let Some((first, rest)) = levels.split_first() else {
            let mut m = HashMap::new();
            m.insert(key(&id)?, 1);
            return Ok(m);
        };
        first
            .par_iter()
            .map(|t0| {
                let mut local: HashMap<K, u64> = HashMap::new();
                let mut err = None;
                fn rec<K: std::hash::Hash + Eq>(
                    levels: &[&Vec<Vector>],
                    acc: &[i64],
                    n: usize,
                    key: &dyn Fn(&[i64]) -> Result<K>,
                    local: &mut HashMap<K, u64>,
                    err: &mut Option<Error>,
                ) {
                    if err.is_some() {
                        return;
                    }
                    match levels.split_first() {
                        None => match key(acc) {
                            Ok(k) => *local.entry(k).or_insert(0) += 1,
                            Err(e) => *err = Some(e),
                        },
                        Some((t, rest)) => {
                            for x in t.iter() {
                                rec(rest, &mul_flat(acc, x, n), n, key, local, err);
                            }
                        }
                    }
                }
                rec(rest, t0, n, &key, &mut local, &mut err);
                match err {
                    Some(e) => Err(e),
                    None => Ok(local),
                }
            })
            .try_reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok(a)
            })
    }
}

fn identity_flat(n: usize) -> Vector {
    let mut id = vec![0i64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    id
}

/// Integer inverse of a unimodular matrix.
fn unimodular_inverse(u: &Matrix<i64>) -> Matrix<i64> {
    let q = crate::linalg::inverse(&u.map(|&x| Rational::from_integer(x.into()))).expect("unimodular");
    q.map(|x| {
        assert!(x.is_integer());
        x.to_integer().to_i64().expect("small entries")
    })
}

/// Generators and stabilizer chain of `O(L)`, or of `{g : g·fix = fix}` when
/// `fix` is given.
pub fn automorphism_group(g: &GramMatrix, fix: Option<&[i64]>) -> AutomorphismGroup {
    let n = g.dim();
    let (red, u) = lll(&g.m);
    // order the basis so that positions with few candidates come first
    let (red, u) = {
        let s = Search::new(&red, None);
        let mut ord: Vec<usize> = (0..n).collect();
        ord.sort_by_key(|&j| (s.level[j].len(), j));
        let p = Matrix::from_fn(n, n, |i, j| i64::from(ord[j] == i));
        (p.transpose().mul(&red).mul(&p), u.mul(&p))
    };
    let u_inv = unimodular_inverse(&u);
    // g fixes f iff (g b)·f = b·f for every basis vector b
    let fix_form = fix.map(|f| mat_vec(&u.transpose(), &g.apply(f)));
    let search = Search::new(&red, fix_form.as_deref());

    let mut gens_at: Vec<Vec<Vector>> = vec![Vec::new(); n];
    let mut transversals: Vec<Vec<Vector>> = vec![Vec::new(); n];
    let units: Vec<usize> = (0..n).map(|i| search.unit(i)).collect();
    for i in (0..n).rev() {
        let mut orbit = Orbit::new(units[i], n);
        let gens: Vec<Vector> = gens_at[i..].iter().flatten().cloned().collect();
        orbit.extend(&gens, &search);
        let mut gens = gens;
        for &v in &search.level[i] {
            if orbit.contains(v) {
                continue;
            }
            let mut images: Vec<usize> = units[..i].to_vec();
            if !units[..i].iter().enumerate().all(|(k, &e)| search.ip(v, e) == red[(i, k)]) {
                continue;
            }
            images.push(v);
            if search.extend(&mut images) {
                let m = search.matrix(&images);
                gens_at[i].push(m.clone());
                gens.push(m);
                orbit.extend(&gens, &search);
            }
        }
        transversals[i] = orbit.transversal;
    }
    let order = transversals.iter().fold(BigInt::one(), |acc, t| acc * t.len());
    let gens = gens_at.into_iter().flatten().collect();
    AutomorphismGroup { n, u, u_inv, gens, transversals, order }
}

/// Orbit of a candidate vector with a transversal of group elements.
struct Orbit {
    n: usize,
    points: Vec<usize>,
    transversal: Vec<Vector>,
    pos: HashMap<usize, usize>,
}

impl Orbit {
    fn new(start: usize, n: usize) -> Orbit {
        Orbit { n, points: vec![start], transversal: vec![identity_flat(n)], pos: HashMap::from([(start, 0)]) }
    }

    fn contains(&self, p: usize) -> bool {
        self.pos.contains_key(&p)
    }

    fn extend(&mut self, gens: &[Vector], s: &Search) {
        let mut i = 0;
        while i < self.points.len() {
            for g in gens {
                let w = flat_apply(g, &s.cands[self.points[i]], self.n);
                let w = s.index[&w];
                if !self.contains(w) {
                    let t = mul_flat(g, &self.transversal[i], self.n);
                    self.pos.insert(w, self.points.len());
                    self.points.push(w);
                    self.transversal.push(t);
                }
            }
            i += 1;
        }
    }
}

/// Census of characteristic polynomials over the whole of `O(L)`.
pub fn algorithm_a(g: &GramMatrix, bound: u64) -> Result<MassMap> {
    let grp = automorphism_group(g, None);
    grp.check_bound(bound)?;
    let n = g.dim();
    let counts = grp.census(|m| Ok(charpoly_finite_order(m, n)))?;
    census_to_mass(n, counts)
}

/// `O(L) = W(R) ⋊ O(L)_ρ`: enumerate the stabilizer of the Weyl vector and
/// combine closed-form Weyl masses over each element's action on the
/// components with its characteristic polynomial on `R^⊥`.
pub fn algorithm_b(g: &GramMatrix, bound: u64) -> Result<MassMap> {
    let rd = root_datum(g)?;
    if rd.is_empty() {
        return algorithm_a(g, bound);
    }
    let n = g.dim();
    let stab = automorphism_group(g, Some(&rd.weyl_vector_times_2));
    if stab.check_bound(bound).is_err() {
        return Err(Error::StabilizerTooLarge(bound));
    }
    // simple roots in the reduced basis, labelled by component
    let mut label: HashMap<Vector, usize> = HashMap::new();
    let mut comp_of = Vec::new();
    let mut first_of = Vec::new();
    for (c, comp) in rd.components.iter().enumerate() {
        first_of.push(comp_of.len());
        for s in &comp.simple {
            label.insert(mat_vec(&stab.u_inv, s), comp_of.len());
            comp_of.push(c);
        }
    }
    let reduced_simple: Vec<Vector> = {
        let mut v: Vec<(usize, Vector)> = label.iter().map(|(k, &i)| (i, k.clone())).collect();
        v.sort();
        v.into_iter().map(|(_, k)| k).collect()
    };
    let k = reduced_simple.len();
    let factor_cache = std::sync::Mutex::new(HashMap::<Vector, CycloProduct>::new());
    let counts = stab.census(|m| {
        let pi: Vec<usize> = reduced_simple
            .iter()
            .map(|s| label.get(&flat_apply(m, s, n)).copied())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Structure("stabilizer element does not permute the simple roots".into()))?;
        // charpoly on Q(R) from the cycles of the permutation of simple roots
        let mut on_roots = CycloProduct::one();
        let mut seen = vec![false; k];
        for s in 0..k {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = pi[x];
                len += 1;
            }
            if len > 0 {
                for d in divisors(len) {
                    on_roots.push(d, 1);
                }
            }
        }
        let coeffs = charpoly_finite_order(m, n);
        let full = {
            let cached = factor_cache.lock().unwrap().get(&coeffs).cloned();
            match cached {
                Some(p) => p,
                None => {
                    let p = factor_cyclo(&IntPoly::from_i64(&coeffs))?;
                    factor_cache.lock().unwrap().insert(coeffs, p.clone());
                    p
                }
            }
        };
        let complement = divide(&full, &on_roots)?;
        // cycles on components with the order of the return map
        let ncomp = rd.components.len();
        let sigma: Vec<usize> = (0..ncomp).map(|c| comp_of[pi[first_of[c]]]).collect();
        let mut done = vec![false; ncomp];
        let mut cycles = Vec::new();
        for c in 0..ncomp {
            if done[c] {
                continue;
            }
            let mut len = 0u32;
            let mut x = c;
            while !done[x] {
                done[x] = true;
                x = sigma[x];
                len += 1;
            }
            // π^len restricted to component c
            let members: Vec<usize> = (0..k).filter(|&s| comp_of[s] == c).collect();
            let ret = |s: usize| (0..len).fold(s, |y, _| pi[y]);
            let mut order = 1u32;
            loop {
                if members.iter().all(|&s| (0..order).fold(s, |y, _| ret(y)) == s) {
                    break;
                }
                order += 1;
            }
            cycles.push(CosetCycle::new(rd.components[c].kind, len, order)?);
        }
        cycles.sort();
        Ok((complement, cycles))
    })?;
    let total: u64 = counts.values().sum();
    let ordered: BTreeMap<_, _> = counts.into_iter().collect();
    let weighted = ordered
        .into_iter()
        .map(|((complement, cycles), c)| {
            Ok((coset_mass(&cycles, &complement)?, Rational::new(c.into(), total.into())))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = average(&weighted)?;
    if m.degree() != n {
        return Err(Error::DegreeMismatch(m.degree(), n));
    }
    Ok(m)
}

/// `p / q` for `q` dividing `p`.
fn divide(p: &CycloProduct, q: &CycloProduct) -> Result<CycloProduct> {
    let mut out = Vec::new();
    for (&m, &a) in p.exponents() {
        let b = q.exponent(m);
        if b > a {
            return Err(Error::Structure(format!("{q} does not divide {p}")));
        }
        if a > b {
            out.push((m, a - b));
        }
    }
    if q.exponents().keys().any(|m| p.exponent(*m) == 0) {
        return Err(Error::Structure(format!("{q} does not divide {p}")));
    }
    Ok(CycloProduct::from_pairs(out))
}

/// `algorithm_b` when the root system is nonempty and its stabilizer is
/// small enough, else `algorithm_a`.
pub fn masses_auto(g: &GramMatrix, bound: u64) -> Result<MassMap> {
    match algorithm_b(g, bound) {
        Err(Error::StabilizerTooLarge(_)) => algorithm_a(g, bound),
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_formats() {
        let a: GramMatrix = "[[2,-1],[-1,2]]".parse().unwrap();
        let b: GramMatrix = "2\n2 -1\n-1 2\n".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, GramMatrix::builtin("A2").unwrap());
        assert_eq!(b.to_string().parse::<GramMatrix>().unwrap(), b);
        assert_eq!("[[1,2],[3,4]]".parse::<GramMatrix>(), Err(Error::NotSymmetric));
        assert_eq!("[[1,2],[2,1]]".parse::<GramMatrix>(), Err(Error::NotPositiveDefinite));
        assert!("3\n1 0".parse::<GramMatrix>().is_err());
    }

    #[test]
    fn lll_is_a_change_of_basis() {
        let g = GramMatrix::builtin("E8").unwrap();
        let (red, u) = lll(&g.m);
        assert_eq!(g.transform(&u).unwrap().m, red);
    }

    #[test]
    fn small_short_vectors() {
        assert_eq!(short_vectors(&GramMatrix::identity(1), 2).len(), 1);
        assert_eq!(short_vectors(&GramMatrix::builtin("A2").unwrap(), 2).len(), 3);
        assert_eq!(short_vectors(&GramMatrix::builtin("E8").unwrap(), 2).len(), 120);
    }

    #[test]
    fn small_groups() {
        assert_eq!(automorphism_group(&GramMatrix::identity(2), None).order(), &BigInt::from(8));
        assert_eq!(automorphism_group(&GramMatrix::builtin("A2").unwrap(), None).order(), &BigInt::from(12));
    }

    #[test]
    fn divide_products() {
        let p: CycloProduct = "1^2 2 3".parse().unwrap();
        assert_eq!(divide(&p, &"1 3".parse().unwrap()).unwrap().to_string(), "1 2");
        assert!(divide(&p, &"4".parse().unwrap()).is_err());
    }
}
