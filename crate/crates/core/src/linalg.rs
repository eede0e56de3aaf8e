//! Dense matrices over an exact ring, with fraction-free determinants and
//! characteristic polynomials.

use std::ops::{Index, IndexMut, Neg};

use num_traits::Num;

/// Row-major square or rectangular matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by Bareiss fraction-free elimination. Every division is exact
/// over an integral domain.
pub fn det_bareiss<T>(m: &Matrix<T>) -> T
where
    T: Clone + Num + Neg<Output = T>,
{
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return T::zero();
            };
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            sign = !sign;
        }
        let piv = a[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (piv.clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = piv;
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Inverse over a field by Gauss–Jordan elimination, `None` when singular.
pub fn inverse<T>(m: &Matrix<T>) -> Option<Matrix<T>>
where
    T: Clone + Num,
{
    assert_eq!(m.rows, m.cols, "inverse of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = Matrix::<T>::identity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
        for j in 0..n {
            a.data.swap(k * n + j, p * n + j);
            inv.data.swap(k * n + j, p * n + j);
        }
        let piv = a[(k, k)].clone();
        for j in 0..n {
            a[(k, j)] = a[(k, j)].clone() / piv.clone();
            inv[(k, j)] = inv[(k, j)].clone() / piv.clone();
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                inv[(i, j)] = inv[(i, j)].clone() - f.clone() * inv[(k, j)].clone();
            }
        }
    }
    Some(inv)
}

/// Coefficients of `det(t·I − A)` in ascending order, by Berkowitz's
/// division-free algorithm.
pub fn charpoly_berkowitz<T>(a: &Matrix<T>) -> Vec<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    assert_eq!(a.rows, a.cols, "characteristic polynomial of a non-square matrix");
    let n = a.rows;
    // descending coefficients, leading 1
    let mut poly = vec![T::one()];
    for r in 0..n {
        // leading principal submatrix of size r + 1, split as [[A_r, c], [r, a]]
        let a_rr = a[(r, r)].clone();
        let col: Vec<T> = (0..r).map(|i| a[(i, r)].clone()).collect();
        let row: Vec<T> = (0..r).map(|j| a[(r, j)].clone()).collect();
        // Toeplitz column: 1, -a, -R C, -R A C, ...
        let mut tcol = Vec::with_capacity(r + 2);
        tcol.push(T::one());
        tcol.push(-a_rr);
        let mut v = col.clone();
        for _ in 0..r {
            let s = row.iter().zip(&v).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            tcol.push(-s);
            v = (0..r)
                .map(|i| (0..r).fold(T::zero(), |acc, j| acc + a[(i, j)].clone() * v[j].clone()))
                .collect();
        }
        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && i - j < tcol.len() {
                    *slot = slot.clone() + tcol[i - j].clone() * p.clone();
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

/// Characteristic polynomial of an integer matrix of finite order, from the
/// traces of its powers via Newton's identities. Ascending coefficients.
pub fn charpoly_finite_order(g: &[i64], n: usize) -> Vec<i64> {
    let mut traces = Vec::with_capacity(n);
    let mut pow = g.to_vec();
    let mut tmp = vec![0i64; n * n];
    for k in 0..n {
        traces.push((0..n).map(|i| pow[i * n + i]).sum::<i64>());
        if k + 1 < n {
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0;
                    for l in 0..n {
                        s += pow[i * n + l] * g[l * n + j];
                    }
                    tmp[i * n + j] = s;
                }
            }
            std::mem::swap(&mut pow, &mut tmp);
        }
    }
    // c_0 = 1, k c_k = -Σ_{i=1..k} c_{k-i} p_i ; charpoly = Σ c_k t^{n-k}
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        let s: i64 = (1..=k).map(|i| c[k - i] * traces[i - 1]).sum();
        debug_assert_eq!(s % k as i64, 0);
        c[k] = -s / k as i64;
    }
    c.reverse();
    c
}
