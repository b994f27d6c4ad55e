//! Small dense linear algebra over any [`Scalar`].

use std::ops::{Index, IndexMut};

use crate::scalars::{Scalar, TolerancePolicy};

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix with the given vectors as columns.
    pub fn from_cols(rows: usize, cols: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        for v in t.data.iter_mut() {
            *v = v.conj();
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_exact_zero() {
                        let t = a.clone() * b.clone();
                        let cur = std::mem::replace(&mut out[(i, j)], S::zero());
                        out[(i, j)] = cur + t;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "apply shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_exact_zero() && !b.is_exact_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &S) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Largest entry modulus (0 for an empty matrix).
    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_exact_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a.clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Pivots are chosen left to right; within a column the entry of largest
    /// modulus is used. Entries negligible relative to the matrix scale count
    /// as zero.
    pub fn rref(&self, pol: &TolerancePolicy) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let scale = self.max_modulus();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let mut best = None;
            let mut best_mod = 0.0;
            for i in r..a.rows {
                let v = &a[(i, c)];
                if v.negligible(pol, scale) {
                    continue;
                }
                if S::EXACT {
                    best = Some(i);
                    break;
                }
                let m = v.modulus();
                if best.is_none() || m > best_mod {
                    best = Some(i);
                    best_mod = m;
                }
            }
            let Some(p) = best else {
                for i in r..a.rows {
                    a[(i, c)] = S::zero();
                }
                continue;
            };
            a.swap_rows(r, p);
            let inv = S::one() / a[(r, c)].clone();
            for j in c..a.cols {
                let v = std::mem::replace(&mut a[(r, j)], S::zero());
                a[(r, j)] = v * inv.clone();
            }
            a[(r, c)] = S::one();
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_exact_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if a[(r, j)].is_exact_zero() {
                        continue;
                    }
                    let t = f.clone() * a[(r, j)].clone();
                    let v = std::mem::replace(&mut a[(i, j)], S::zero());
                    a[(i, j)] = v - t;
                }
                a[(i, c)] = S::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self, pol: &TolerancePolicy) -> usize {
        self.rref(pol).1.len()
    }

    /// A basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self, pol: &TolerancePolicy) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref(pol);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// A solution of `A x = b`, if the system is consistent at tolerance.
    ///
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[S], pol: &TolerancePolicy) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in b.iter().enumerate() {
            aug[(i, self.cols)] = v.clone();
        }
        let (r, pivots) = aug.rref(pol);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it is nonsingular at tolerance.
    pub fn inverse(&self, pol: &TolerancePolicy) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (r, pivots) = aug.rref(pol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    /// A left inverse `(A* A)^{-1} A*` of a matrix with independent columns.
    pub fn left_inverse(&self, pol: &TolerancePolicy) -> Option<Self> {
        let adj = self.adjoint();
        Some(adj.matmul(self).inverse(pol)?.matmul(&adj))
    }

    /// Largest entry modulus of `self - other`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_modulus()
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Largest entry modulus of a vector.
pub fn max_modulus<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(Scalar::modulus).fold(0.0, f64::max)
}

/// `Σ c_k v_k` for equally long vectors.
pub fn combine<S: Scalar>(len: usize, terms: impl IntoIterator<Item = (S, Vec<S>)>) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (c, v) in terms {
        axpy(&mut out, &c, &v);
    }
    out
}

/// `y += a x`.
pub fn axpy<S: Scalar>(y: &mut [S], a: &S, x: &[S]) {
    if a.is_exact_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_exact_zero() {
            let cur = std::mem::replace(yi, S::zero());
            *yi = cur + a.clone() * xi.clone();
        }
    }
}
