//! Small dense matrices over `Int` and `Rat`.
//!
//! Matrices act on column vectors: `m.mul_vec(v)` is `m · v`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::arith::{to_rat, Int, IntVector, Rat, RatVector};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors. Fails on ragged input.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Build from column vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
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

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

macro_rules! ring_ops {
    ($t:ty) => {
        impl Matrix<$t> {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Matrix::from_fn(rows, cols, |_, _| <$t>::zero())
            }

            pub fn identity(n: usize) -> Self {
                Matrix::from_fn(n, n, |i, j| if i == j { <$t>::one() } else { <$t>::zero() })
            }

            pub fn is_identity(&self) -> bool {
                self.is_square() && *self == Self::identity(self.rows)
            }

            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
                Matrix::from_fn(self.rows, other.cols, |i, j| {
                    let mut acc = <$t>::zero();
                    for k in 0..self.cols {
                        acc += &self[(i, k)] * &other[(k, j)];
                    }
                    acc
                })
            }

            pub fn mul_vec(&self, v: &[$t]) -> Vec<$t> {
                assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
                (0..self.rows)
                    .map(|i| {
                        let mut acc = <$t>::zero();
                        for (a, b) in self.row(i).iter().zip(v) {
                            acc += a * b;
                        }
                        acc
                    })
                    .collect()
            }

            pub fn add(&self, other: &Self) -> Self {
                Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
            }

            pub fn sub(&self, other: &Self) -> Self {
                Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
            }

            pub fn neg(&self) -> Self {
                Matrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
            }

            pub fn is_symmetric(&self) -> bool {
                self.is_square()
                    && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
            }

            pub fn pow(&self, mut e: u64) -> Self {
                let mut base = self.clone();
                let mut acc = Self::identity(self.rows);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul(&base);
                    }
                    base = base.mul(&base);
                    e >>= 1;
                }
                acc
            }
        }
    };
}

ring_ops!(Int);
ring_ops!(Rat);

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Matrix::from_rows(&rows).expect("ragged literal matrix")
    }

    pub fn to_rat(&self) -> RatMatrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| to_rat(&self[(i, j)]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Inverse over the integers; `NotUnimodular` if it is not integral.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let inv = self.to_rat().inverse().ok_or(Error::NotUnimodular)?;
        rat_matrix_to_int(&inv).ok_or(Error::NotUnimodular)
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }
}

pub fn rat_matrix_to_int(m: &RatMatrix) -> Option<IntMatrix> {
    if m.data.iter().all(|x| x.is_integer()) {
        Some(Matrix::from_fn(m.rows, m.cols, |i, j| {
            m[(i, j)].to_integer()
        }))
    } else {
        None
    }
}

impl RatMatrix {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = Rat::one() / &self[(r, c)];
            for j in 0..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[Rat]) -> Option<RatVector> {
        let n = self.cols;
        let mut aug = Matrix::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![Rat::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, n)].clone();
        }
        Some(x)
    }

    /// Basis of the rational null space.
    pub fn kernel(&self) -> Vec<RatVector> {
        let mut a = self.clone();
        let pivots = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -a[(r, f)].clone();
                }
                v
            })
            .collect()
    }
}

/// Rank of a list of integer row vectors.
pub fn rank_of_rows(rows: &[IntVector], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = Matrix::from_fn(rows.len(), dim, |i, j| to_rat(&rows[i][j]));
    m.rank()
}
