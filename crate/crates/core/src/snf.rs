//! Integer normal forms: Smith (with both transforms), Hermite, and the
//! integer kernel / integer solving built on them.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, IntVector};
use crate::matrix::IntMatrix;

/// `p · a · q = d` with `p`, `q` unimodular, `d` diagonal with
/// `d[0] | d[1] | ...` and nonnegative entries. `p_inv` is kept alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
}

impl Work {
    // row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Int) {
        for k in 0..self.a.cols() {
            let v = &self.a[(i, k)] + c * &self.a[(j, k)];
            self.a[(i, k)] = v;
        }
        for k in 0..self.p.cols() {
            let v = &self.p[(i, k)] + c * &self.p[(j, k)];
            self.p[(i, k)] = v;
        }
        for k in 0..self.p_inv.rows() {
            let v = &self.p_inv[(k, j)] - c * &self.p_inv[(k, i)];
            self.p_inv[(k, j)] = v;
        }
    }

    // col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &Int) {
        for k in 0..self.a.rows() {
            let v = &self.a[(k, i)] + c * &self.a[(k, j)];
            self.a[(k, i)] = v;
        }
        for k in 0..self.q.rows() {
            let v = &self.q[(k, i)] + c * &self.q[(k, j)];
            self.q[(k, i)] = v;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols() {
            self.a[(i, k)] = -&self.a[(i, k)];
        }
        for k in 0..self.p.cols() {
            self.p[(i, k)] = -&self.p[(i, k)];
        }
        for k in 0..self.p_inv.rows() {
            self.p_inv[(k, i)] = -&self.p_inv[(k, i)];
        }
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        p: IntMatrix::identity(m),
        p_inv: IntMatrix::identity(m),
        q: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !w.a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| w.a[(i, j)].abs() < w.a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(w, rank);
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m {
                if !w.a[(i, t)].is_zero() {
                    let qt = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                    w.add_row(i, t, &-qt);
                    clean &= w.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[(t, j)].is_zero() {
                    let qt = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                    w.add_col(j, t, &-qt);
                    clean &= w.a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.add_row(t, i, &Int::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        rank += 1;
    }
    finish(w, rank)
}

fn finish(w: Work, rank: usize) -> Smith {
    Smith {
        d: w.a,
        p: w.p,
        p_inv: w.p_inv,
        q: w.q,
        rank,
    }
}

/// Basis of `{x in Z^n : a x = 0}`. The basis spans a saturated sublattice
/// (it is part of a unimodular basis of `Z^n`) and is returned in Hermite
/// normal form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let s = smith(a);
    let basis: Vec<IntVector> = (s.rank..a.cols()).map(|j| s.q.col(j)).collect();
    hermite_rows(&basis)
}

/// General integer solution of `a x = b`: one particular solution and a
/// kernel basis, or `None` when there is no integral solution.
pub fn integer_solve(a: &IntMatrix, b: &[Int]) -> Option<(IntVector, Vec<IntVector>)> {
    let s = smith(a);
    let pb = s.p.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols()];
    for i in 0..pb.len() {
        if i < s.rank {
            let (quot, rem) = pb[i].div_rem(&s.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = quot;
        } else if !pb[i].is_zero() {
            return None;
        }
    }
    let x = s.q.mul_vec(&y);
    let kernel = (s.rank..a.cols()).map(|j| s.q.col(j)).collect();
    Some((x, kernel))
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows
/// dropped. Pivots are positive, entries above a pivot lie in `[0, pivot)`.
pub fn hermite_rows(rows: &[IntVector]) -> Vec<IntVector> {
    let Some(n) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<IntVector> = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        // gcd-combine column c over rows r.. into row r
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz
                .iter()
                .min_by(|&&i, &&j| m[i][c].abs().cmp(&m[j][c].abs()))
                .unwrap();
            m.swap(r, piv);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let (head, tail) = m.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                        *x -= &q * y;
                    }
                    done &= tail[0][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    let (head, tail) = m.split_at_mut(r);
                    for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}
