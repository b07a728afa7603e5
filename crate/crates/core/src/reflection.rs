//! Reflections in negative-square vectors and walking a positive vector into
//! the chamber cut out by a finite root system.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{primitive, to_strings, Int, IntVector};
use crate::cone::PositiveConeRef;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{Isometry, Lattice};
use crate::matrix::IntMatrix;

pub const DEFAULT_ITERATION_CAP: usize = 10_000;

/// A vector of negative square whose reflection is integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    vector: IntVector,
    norm: Int,
}

impl Root {
    pub fn new(lattice: &Lattice, v: IntVector) -> Result<Self> {
        let norm = lattice.norm(&v)?;
        if !norm.is_negative() {
            return Err(Error::NotARoot);
        }
        let gv = lattice.functional(&v);
        if gv
            .iter()
            .any(|c: &Int| !Integer::is_multiple_of(&(c * Int::from(2)), &norm))
        {
            return Err(Error::NonIntegralReflection(to_strings(&v)));
        }
        Ok(Root { vector: v, norm })
    }

    pub fn vector(&self) -> &[Int] {
        &self.vector
    }

    pub fn norm(&self) -> &Int {
        &self.norm
    }
}

/// `x ↦ x − (2 (x, v) / (v, v)) v` as an integral matrix.
pub fn reflection(lattice: &Lattice, root: &Root) -> Isometry {
    let v = &root.vector;
    let gv = lattice.functional(v);
    let n = lattice.rank();
    let m = IntMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { Int::from(1) } else { Int::zero() };
        d - (&v[i] * &gv[j] * 2) / &root.norm
    });
    Isometry::from_trusted(m)
}

/// Reflection in an arbitrary vector, validating that it is a root.
pub fn reflection_in(lattice: &Lattice, v: &[Int]) -> Result<Isometry> {
    let root = Root::new(lattice, v.to_vec())?;
    Ok(reflection(lattice, &root))
}

fn reflect(lattice: &Lattice, root: &Root, x: &[Int]) -> IntVector {
    let c = lattice.pair(x, &root.vector) * 2 / &root.norm;
    x.iter()
        .zip(&root.vector)
        .map(|(a, b)| a - &c * b)
        .collect()
}

/// Finitely many roots, primitive and sorted; the chamber is
/// `{x : (x, r) >= 0 for every root r}`.
#[derive(Clone, Debug)]
pub struct WallSystem {
    lattice: Lattice,
    roots: Vec<Root>,
}

impl WallSystem {
    pub fn new(lattice: &Lattice, vectors: &[IntVector]) -> Result<Self> {
        let mut prim: Vec<IntVector> = Vec::with_capacity(vectors.len());
        for v in vectors {
            check_dim(lattice.rank(), v.len())?;
            prim.push(primitive(v));
        }
        prim.sort();
        prim.dedup();
        let roots = prim
            .into_iter()
            .map(|v| Root::new(lattice, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(WallSystem {
            lattice: lattice.clone(),
            roots,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn pairings(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.lattice.check_vector(x)?;
        Ok(self
            .roots
            .iter()
            .map(|r| self.lattice.pair(x, &r.vector))
            .collect())
    }

    pub fn is_in_chamber(&self, x: &[Int]) -> Result<bool> {
        Ok(self.pairings(x)?.iter().all(|p| !p.is_negative()))
    }

    /// The isometry obtained by applying the reflections of `word` in order.
    pub fn word_isometry(&self, word: &[usize]) -> Isometry {
        let n = self.lattice.rank();
        word.iter().fold(Isometry::identity(n), |acc, &i| {
            reflection(&self.lattice, &self.roots[i]).compose(&acc)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub image: IntVector,
    pub word: Vec<usize>,
}

/// Reflect `x` in the first violated wall until none is violated. Each step
/// strictly lowers `(x, y)` for `y` inside the chamber, so a valid system
/// terminates; `cap` guards against invalid ones.
pub fn chamber_walk(
    x: &[Int],
    walls: &WallSystem,
    positive: &PositiveConeRef,
    cap: usize,
) -> Result<Walk> {
    walls.lattice.check_vector(x)?;
    if !positive.contains(x)? {
        return Err(Error::NotInPositiveCone(format!("{:?}", to_strings(x))));
    }
    let l = &walls.lattice;
    let mut cur = x.to_vec();
    let mut word = Vec::new();
    loop {
        let violated = walls
            .roots
            .iter()
            .position(|r| l.pair(&cur, &r.vector).is_negative());
        let Some(i) = violated else {
            return Ok(Walk { image: cur, word });
        };
        if word.len() >= cap {
            return Err(Error::WalkDiverged(cap));
        }
        cur = reflect(l, &walls.roots[i], &cur);
        word.push(i);
    }
}
