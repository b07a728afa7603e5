//! `H¹(Γ, Z^r)` by integer linear algebra: cocycles are the integer kernel
//! of a linear system, coboundaries a sublattice of it, and the quotient is
//! read off a Smith normal form.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Int, IntVector};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::IntMatrix;
use crate::snf::{integer_kernel, integer_solve, smith};

const MAX_CLASSES: usize = 1 << 20;

/// `Γ` acting on `Z^r` by unimodular matrices (`matrices[γ]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelianAction {
    gamma: FiniteGroup,
    rank: usize,
    matrices: Vec<IntMatrix>,
}

impl FreeAbelianAction {
    pub fn new(gamma: FiniteGroup, rank: usize, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != gamma.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for |Γ| = {}",
                matrices.len(),
                gamma.order()
            )));
        }
        for m in &matrices {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidAction(format!(
                    "matrix is not {rank} x {rank}"
                )));
            }
            if !m.det().abs().is_one() {
                return Err(Error::InvalidAction(
                    "matrix is not invertible over the integers".into(),
                ));
            }
        }
        for a in 0..gamma.order() {
            for b in 0..gamma.order() {
                if matrices[gamma.mul(a, b)] != matrices[a].mul(&matrices[b]) {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        Ok(FreeAbelianAction {
            gamma,
            rank,
            matrices,
        })
    }

    pub fn from_generator_images(
        gamma: FiniteGroup,
        rank: usize,
        gens: &[usize],
        images: &[IntMatrix],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidAction(
                "generator/image count mismatch".into(),
            ));
        }
        let mut mats: Vec<Option<IntMatrix>> = vec![None; gamma.order()];
        mats[gamma.identity()] = Some(IntMatrix::identity(rank));
        let mut queue = vec![gamma.identity()];
        while let Some(x) = queue.pop() {
            for (g, img) in gens.iter().zip(images) {
                if img.rows() != rank || img.cols() != rank {
                    return Err(Error::InvalidAction(format!(
                        "matrix is not {rank} x {rank}"
                    )));
                }
                let y = gamma.mul(x, *g);
                let m = mats[x].as_ref().expect("visited").mul(img);
                match &mats[y] {
                    None => {
                        mats[y] = Some(m);
                        queue.push(y);
                    }
                    Some(old) if *old != m => {
                        return Err(Error::InvalidAction(
                            "generator images do not define a homomorphism".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        let mats = mats
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAction("listed elements do not generate Γ".into()))?;
        Self::new(gamma, rank, mats)
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn is_cocycle(&self, c: &[IntVector]) -> bool {
        let g = &self.gamma;
        c.len() == g.order()
            && c.iter().all(|v| v.len() == self.rank)
            && (0..g.order()).all(|a| {
                (0..g.order()).all(|b| {
                    let rhs: IntVector = c[a]
                        .iter()
                        .zip(self.matrices[a].mul_vec(&c[b]))
                        .map(|(x, y)| x + y)
                        .collect();
                    c[g.mul(a, b)] == rhs
                })
            })
    }

    /// `γ ↦ c(γ) + σ_γ(b) − b` (the additive form of `b⁻¹ c(γ) σ_γ(b)`).
    pub fn coboundary(&self, c: &[IntVector], b: &[Int]) -> Vec<IntVector> {
        c.iter()
            .zip(&self.matrices)
            .map(|(v, m)| {
                v.iter()
                    .zip(m.mul_vec(b))
                    .zip(b)
                    .map(|((x, y), z)| x + y - z)
                    .collect()
            })
            .collect()
    }

    /// Is `c` a coboundary? Solves `σ_γ(b) − b = c(γ)` over the integers.
    pub fn is_coboundary(&self, c: &[IntVector]) -> bool {
        let (n, r) = (self.gamma.order(), self.rank);
        let a = IntMatrix::from_fn(n * r, r, |row, j| {
            let (g, i) = (row / r, row % r);
            let id = if i == j { Int::one() } else { Int::zero() };
            &self.matrices[g][(i, j)] - id
        });
        let rhs: IntVector = c.iter().flatten().cloned().collect();
        integer_solve(&a, &rhs).is_some()
    }
}

/// `H¹(Γ, Z^r) ≅ ⊕ Z/d_i`.
#[derive(Clone, Debug)]
pub struct FreeAbelianH1 {
    /// Elementary divisors greater than one.
    pub divisors: Vec<Int>,
    /// One cocycle per class, the trivial one first.
    pub representatives: Vec<Vec<IntVector>>,
    rank: usize,
    z1: IntMatrix,
    p: IntMatrix,
    all_divisors: Vec<Int>,
}

impl FreeAbelianH1 {
    pub fn order(&self) -> Int {
        self.divisors.iter().product()
    }

    /// Coordinates of the class of a cocycle in `⊕ Z/d_i` (one residue per
    /// elementary divisor, ones included), or `None` if `c` is no cocycle.
    pub fn class_of(&self, c: &[IntVector]) -> Option<Vec<Int>> {
        let flat: IntVector = c.iter().flatten().cloned().collect();
        if flat.len() != self.z1.rows() || c.iter().any(|v| v.len() != self.rank) {
            return None;
        }
        let (y, kernel) = integer_solve(&self.z1, &flat)?;
        debug_assert!(kernel.is_empty());
        let e = self.p.mul_vec(&y);
        Some(
            e.iter()
                .zip(&self.all_divisors)
                .map(|(x, d)| x.mod_floor(d))
                .collect(),
        )
    }
}

pub fn h1_free_abelian(action: &FreeAbelianAction) -> Result<FreeAbelianH1> {
    let g = &action.gamma;
    let (n, r) = (g.order(), action.rank);
    if r == 0 {
        return Ok(FreeAbelianH1 {
            divisors: Vec::new(),
            representatives: vec![vec![Vec::new(); n]],
            rank: 0,
            z1: IntMatrix::zeros(0, 0),
            p: IntMatrix::zeros(0, 0),
            all_divisors: Vec::new(),
        });
    }
    // c(ab) − c(a) − σ_a c(b) = 0, unknowns c(γ)_i at column γ r + i
    let mut sys = IntMatrix::zeros(n * n * r, n * r);
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for i in 0..r {
                let row = (a * n + b) * r + i;
                sys[(row, ab * r + i)] += 1;
                sys[(row, a * r + i)] -= 1;
                for j in 0..r {
                    let v = &sys[(row, b * r + j)] - &action.matrices[a][(i, j)];
                    sys[(row, b * r + j)] = v;
                }
            }
        }
    }
    let basis = integer_kernel(&sys);
    let m = basis.len();
    let z1 = IntMatrix::from_cols(n * r, &basis);
    // coboundaries of the unit vectors, in Z¹ coordinates
    let mut rel_cols: Vec<IntVector> = Vec::with_capacity(r);
    for j in 0..r {
        let col: IntVector = (0..n * r)
            .map(|row| {
                let (gm, i) = (row / r, row % r);
                let id = if i == j { Int::one() } else { Int::zero() };
                &action.matrices[gm][(i, j)] - id
            })
            .collect();
        let (y, _) = integer_solve(&z1, &col).expect("coboundaries are cocycles");
        rel_cols.push(y);
    }
    let rel = IntMatrix::from_cols(m, &rel_cols);
    let s = smith(&rel);
    if s.rank != m {
        return Err(Error::InvalidAction(
            "first cohomology is infinite; the acting group must be finite".into(),
        ));
    }
    let all_divisors: Vec<Int> = (0..m).map(|i| s.d[(i, i)].clone()).collect();
    let divisors: Vec<Int> = all_divisors
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    let count = divisors
        .iter()
        .try_fold(1usize, |acc, d| acc.checked_mul(d.to_usize()?));
    let count = match count {
        Some(c) if c <= MAX_CLASSES => c,
        _ => return Err(Error::GroupTooLarge(MAX_CLASSES)),
    };
    let mut representatives = Vec::with_capacity(count);
    let mut e = vec![Int::zero(); m];
    // odometer over residues, last coordinate fastest
    'outer: loop {
        let flat = z1.mul_vec(&s.p_inv.mul_vec(&e));
        representatives.push(flat.chunks(r).map(<[Int]>::to_vec).collect::<Vec<_>>());
        let mut i = m;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            e[i] += 1;
            if e[i] < all_divisors[i] {
                continue 'outer;
            }
            e[i] = Int::zero();
        }
    }
    Ok(FreeAbelianH1 {
        divisors,
        representatives,
        rank: r,
        z1,
        p: s.p,
        all_divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn c2_action(m: &[&[i64]]) -> FreeAbelianAction {
        let r = m.len();
        FreeAbelianAction::new(
            FiniteGroup::cyclic(2),
            r,
            vec![IntMatrix::identity(r), IntMatrix::from_i64(m)],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let triv = h1_free_abelian(&c2_action(&[&[1]])).unwrap();
        assert!(triv.divisors.is_empty());
        assert_eq!(triv.representatives.len(), 1);
        let neg = h1_free_abelian(&c2_action(&[&[-1]])).unwrap();
        assert_eq!(neg.divisors, vec![int(2)]);
        assert_eq!(neg.representatives.len(), 2);
        let swap = h1_free_abelian(&c2_action(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(swap.divisors.is_empty());
    }

    #[test]
    fn representatives_are_distinct_cocycles() {
        let a = c2_action(&[&[-1, 0], &[0, -1]]);
        let h = h1_free_abelian(&a).unwrap();
        assert_eq!(h.order(), int(4));
        let mut classes = Vec::new();
        for c in &h.representatives {
            assert!(a.is_cocycle(c));
            let k = h.class_of(c).unwrap();
            assert!(!classes.contains(&k));
            classes.push(k);
            let twice: Vec<IntVector> = c
                .iter()
                .map(|v| v.iter().map(|x| x * 2).collect())
                .collect();
            assert!(a.is_coboundary(&twice));
        }
        assert!(h.representatives[0].iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            FreeAbelianAction::new(
                FiniteGroup::cyclic(2),
                1,
                vec![IntMatrix::identity(1), IntMatrix::from_i64(&[&[2]])]
            ),
            Err(Error::InvalidAction(_))
        ));
    }
}
