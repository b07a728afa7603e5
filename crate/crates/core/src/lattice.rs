//! Integral lattices with a nondegenerate symmetric form, their isometries,
//! and finite groups acting on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::arith::{to_rat, Int, IntVector, Rat};
use crate::error::{check_dim, Error, Result};
use crate::group::{closure, FiniteGroup};
use crate::matrix::{IntMatrix, Matrix, RatMatrix};
use crate::snf::integer_kernel;

#[derive(Debug)]
struct LatticeData {
    gram: IntMatrix,
    signature: (usize, usize),
    det: Int,
}

/// A free Z-module with integral symmetric bilinear form, given by its Gram
/// matrix on the standard basis. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Lattice(Arc<LatticeData>);

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.0.gram == other.0.gram
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::NotSquare);
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let det = gram.det();
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let signature = signature(&gram.to_rat());
        Ok(Lattice(Arc::new(LatticeData {
            gram,
            signature,
            det,
        })))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// The hyperbolic plane U.
    pub fn hyperbolic_plane() -> Self {
        Self::from_i64(&[&[0, 1], &[1, 0]]).expect("U is nondegenerate")
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        Self::new(Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Int::from(entries[i])
            } else {
                Int::zero()
            }
        }))
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let gram = Matrix::from_fn(a + b, a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.gram()[(i, j)].clone(),
            (false, false) => other.gram()[(i - a, j - a)].clone(),
            _ => Int::zero(),
        });
        Lattice::new(gram).expect("direct sum of nondegenerate lattices")
    }

    pub fn rank(&self) -> usize {
        self.0.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.0.gram
    }

    /// `(positive, negative)` inertia indices.
    pub fn signature(&self) -> (usize, usize) {
        self.0.signature
    }

    pub fn det(&self) -> &Int {
        &self.0.det
    }

    /// Signature `(1, rank - 1)`, the setting of positive cones.
    pub fn is_hyperbolic(&self) -> bool {
        self.signature() == (1, self.rank() - 1)
    }

    pub fn check_vector(&self, v: &[Int]) -> Result<()> {
        check_dim(self.rank(), v.len())
    }

    /// `vᵀ · gram · w`.
    pub fn inner(&self, v: &[Int], w: &[Int]) -> Result<Int> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        Ok(self.pair(v, w))
    }

    /// Unchecked pairing for internal hot paths.
    pub(crate) fn pair(&self, v: &[Int], w: &[Int]) -> Int {
        let g = self.gram();
        let mut acc = Int::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut row = Int::zero();
            for (j, wj) in w.iter().enumerate() {
                row += &g[(i, j)] * wj;
            }
            acc += vi * row;
        }
        acc
    }

    pub fn norm(&self, v: &[Int]) -> Result<Int> {
        self.inner(v, v)
    }

    /// The functional `x ↦ (x, w)` as a coefficient vector `gram · w`.
    pub fn functional(&self, w: &[Int]) -> IntVector {
        self.gram().mul_vec(w)
    }

    pub fn rat_pair(&self, v: &[Rat], w: &[Rat]) -> Rat {
        let g = self.gram();
        let mut acc = Rat::zero();
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                acc += vi * to_rat(&g[(i, j)]) * wj;
            }
        }
        acc
    }

    /// Does `m` satisfy `mᵀ · gram · m = gram`?
    pub fn is_isometry(&self, m: &IntMatrix) -> Result<bool> {
        check_dim(self.rank(), m.rows())?;
        check_dim(self.rank(), m.cols())?;
        Ok(m.transpose().mul(self.gram()).mul(m) == *self.gram())
    }

    /// Integral basis (Hermite normal form) of the vectors fixed by every
    /// matrix of `action`; saturated in the lattice.
    pub fn fixed_sublattice(&self, action: &LatticeAction) -> Result<Vec<IntVector>> {
        if action.lattice() != self {
            return Err(Error::InvalidAction(
                "action is defined on a different lattice".into(),
            ));
        }
        fixed_vectors(self.rank(), action.matrices())
    }
}

/// Basis of the common fixed lattice of `matrices`, as the integer kernel of
/// the stacked `(g - id)`.
pub fn fixed_vectors(rank: usize, matrices: &[IntMatrix]) -> Result<Vec<IntVector>> {
    let id = IntMatrix::identity(rank);
    let mut rows = Vec::new();
    for m in matrices {
        check_dim(rank, m.rows())?;
        rows.extend(m.sub(&id).to_rows());
    }
    if rows.is_empty() {
        return Ok(integer_kernel(&IntMatrix::zeros(1, rank)));
    }
    Ok(integer_kernel(&Matrix::from_rows(&rows)?))
}

/// Inertia of a symmetric rational matrix by congruence diagonalization.
pub fn signature(gram: &RatMatrix) -> (usize, usize) {
    let mut a = gram.clone();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                a.swap_rows(k, j);
                a.swap_cols(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // replace e_k by e_k + e_j: new diagonal entry 2·a_kj
                for c in 0..n {
                    let v = &a[(k, c)] + &a[(j, c)];
                    a[(k, c)] = v;
                }
                for r in 0..n {
                    let v = &a[(r, k)] + &a[(r, j)];
                    a[(r, k)] = v;
                }
            } else {
                // zero row: degenerate direction
                k += 1;
                continue;
            }
        }
        let p = a[(k, k)].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &p;
            for c in 0..n {
                let v = &a[(i, c)] - &f * &a[(k, c)];
                a[(i, c)] = v;
            }
            for r in 0..n {
                let v = &a[(r, i)] - &f * &a[(r, k)];
                a[(r, i)] = v;
            }
        }
        k += 1;
    }
    (pos, neg)
}

/// An integral isometry of a lattice, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Isometry {
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(lattice: &Lattice, matrix: IntMatrix) -> Result<Self> {
        if !lattice.is_isometry(&matrix)? {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry { matrix })
    }

    pub(crate) fn from_trusted(matrix: IntMatrix) -> Self {
        Isometry { matrix }
    }

    pub fn identity(rank: usize) -> Self {
        Isometry {
            matrix: IntMatrix::identity(rank),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> IntVector {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            matrix: self.matrix.inverse().expect("isometries are unimodular"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// A finite group acting on a lattice by isometries: `matrices[g]` is the
/// image of group element `g`, and `g·h ↦ matrices[g]·matrices[h]`.
#[derive(Clone, Debug)]
pub struct LatticeAction {
    lattice: Lattice,
    group: FiniteGroup,
    matrices: Vec<IntMatrix>,
}

impl LatticeAction {
    pub fn new(lattice: &Lattice, group: FiniteGroup, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        for m in &matrices {
            if !lattice.is_isometry(m)? {
                return Err(Error::NotAnIsometry);
            }
        }
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if matrices[group.mul(a, b)] != matrices[a].mul(&matrices[b]) {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        Ok(LatticeAction {
            lattice: lattice.clone(),
            group,
            matrices,
        })
    }

    /// The finite group generated by the given isometries, with its table.
    /// Element 0 is the identity.
    pub fn generated(lattice: &Lattice, generators: &[IntMatrix]) -> Result<Self> {
        for g in generators {
            if !lattice.is_isometry(g)? {
                return Err(Error::NotAnIsometry);
            }
        }
        let id = IntMatrix::identity(lattice.rank());
        let elems = closure(id.clone(), generators, |a, b| a.mul(b), 10_000)?;
        let mut sorted: Vec<IntMatrix> = elems.into_iter().filter(|m| *m != id).collect();
        sorted.sort();
        sorted.insert(0, id);
        let index: BTreeMap<&IntMatrix, usize> =
            sorted.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let table = sorted
            .iter()
            .map(|a| sorted.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let group = FiniteGroup::from_table(table)?;
        Ok(LatticeAction {
            lattice: lattice.clone(),
            group,
            matrices: sorted,
        })
    }

    pub fn trivial(lattice: &Lattice) -> Self {
        LatticeAction {
            lattice: lattice.clone(),
            group: FiniteGroup::trivial(),
            matrices: vec![IntMatrix::identity(lattice.rank())],
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn apply(&self, g: usize, v: &[Int]) -> IntVector {
        self.matrices[g].mul_vec(v)
    }

    /// The orbit of `v` in group-element order (with repetitions).
    pub fn orbit(&self, v: &[Int]) -> Vec<IntVector> {
        self.matrices.iter().map(|m| m.mul_vec(v)).collect()
    }
}
