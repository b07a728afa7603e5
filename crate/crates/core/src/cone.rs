//! Rational polyhedral cones with both generator and half-space
//! representations, computed exactly by the double description method.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::arith::{
    clear_denominators, dot, is_zero_vec, neg_vec, primitive, rat_dot, scale_vec, sub_vec, to_rat,
    to_rat_vec, Int, IntVector, Rat, RatVector,
};
use crate::error::{check_dim, Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{rank_of_rows, Matrix, RatMatrix};
use crate::snf::hermite_rows;

/// A finitely generated cone in the real span of a lattice.
///
/// Canonical form: extreme rays as primitive integer vectors, sorted and
/// deduplicated; lineality space as a Hermite basis (rays are projected
/// orthogonally to it). Facets are primitive integral functionals `u` with
/// `u · x >= 0`, equalities `u · x = 0`.
#[derive(Clone, Debug)]
pub struct RationalCone {
    ambient: Lattice,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    inequalities: Vec<IntVector>,
    equalities: Vec<IntVector>,
}

impl PartialEq for RationalCone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.rays == other.rays
            && self.lineality == other.lineality
    }
}

impl Eq for RationalCone {}

impl RationalCone {
    pub fn from_generators(ambient: &Lattice, generators: &[IntVector]) -> Result<Self> {
        let n = ambient.rank();
        for g in generators {
            check_dim(n, g.len())?;
            if is_zero_vec(g) {
                return Err(Error::ZeroGenerator);
            }
        }
        let (dual_lin, dual_rays) = hrep_to_vrep(n, generators);
        Ok(Self::from_dual(ambient, dual_rays, dual_lin))
    }

    /// The cone `{x : u·x >= 0 for u in inequalities, u·x = 0 for u in equalities}`.
    pub fn from_halfspaces(
        ambient: &Lattice,
        inequalities: &[IntVector],
        equalities: &[IntVector],
    ) -> Result<Self> {
        let n = ambient.rank();
        for u in inequalities.iter().chain(equalities) {
            check_dim(n, u.len())?;
        }
        let mut all: Vec<IntVector> = inequalities.to_vec();
        for e in equalities {
            all.push(e.clone());
            all.push(neg_vec(e));
        }
        let (lin, rays) = hrep_to_vrep(n, &all);
        let mut gens = rays;
        for l in &lin {
            gens.push(l.clone());
            gens.push(neg_vec(l));
        }
        Self::from_generators(ambient, &gens)
    }

    pub fn zero(ambient: &Lattice) -> Self {
        Self::from_generators(ambient, &[]).expect("zero cone")
    }

    // facets from the dual cone's rays, then canonical generators from facets
    fn from_dual(ambient: &Lattice, dual_rays: Vec<IntVector>, dual_lin: Vec<IntVector>) -> Self {
        let n = ambient.rank();
        let mut inequalities: Vec<IntVector> = dual_rays.iter().map(|r| primitive(r)).collect();
        let equalities = hermite_rows(&dual_lin);
        let mut constraints = inequalities.clone();
        for e in &equalities {
            constraints.push(e.clone());
            constraints.push(neg_vec(e));
        }
        let (lin, rays) = hrep_to_vrep(n, &constraints);
        let lineality = hermite_rows(&lin);
        let rays = canonical_rays(&rays, &lineality);
        if !equalities.is_empty() {
            inequalities = canonical_rays(&inequalities, &equalities);
        } else {
            inequalities.sort();
            inequalities.dedup();
        }
        RationalCone {
            ambient: ambient.clone(),
            rays,
            lineality,
            inequalities,
            equalities,
        }
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    /// Extreme rays (modulo the lineality space).
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// Minimal generating set: rays plus both signs of each lineality vector.
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg_vec(l));
        }
        g.sort();
        g
    }

    /// Facet functionals `u` (`u · x >= 0`).
    pub fn inequalities(&self) -> &[IntVector] {
        &self.inequalities
    }

    /// Functionals vanishing on the cone (a basis of the orthogonal of its span).
    pub fn equalities(&self) -> &[IntVector] {
        &self.equalities
    }

    pub fn dim(&self) -> usize {
        self.ambient.rank() - self.equalities.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Membership in the closed cone, or in its relative interior when
    /// `strict` is set.
    pub fn contains(&self, v: &[Rat], strict: bool) -> Result<bool> {
        check_dim(self.ambient.rank(), v.len())?;
        let eq_ok = self
            .equalities
            .iter()
            .all(|u| rat_dot(&to_rat_vec(u), v).is_zero());
        if !eq_ok {
            return Ok(false);
        }
        Ok(self.inequalities.iter().all(|u| {
            let s = rat_dot(&to_rat_vec(u), v);
            if strict {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        }))
    }

    pub fn contains_int(&self, v: &[Int], strict: bool) -> Result<bool> {
        check_dim(self.ambient.rank(), v.len())?;
        if !self.equalities.iter().all(|u| dot(u, v).is_zero()) {
            return Ok(false);
        }
        Ok(self.inequalities.iter().all(|u| {
            let s = dot(u, v);
            if strict {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        }))
    }

    /// Intersection with extra half-spaces `u · x >= 0`.
    pub fn cut(&self, extra: &[IntVector]) -> Result<RationalCone> {
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(extra.iter().cloned());
        RationalCone::from_halfspaces(&self.ambient, &ineqs, &self.equalities)
    }

    /// Some point of the relative interior: the sum of all generators.
    pub fn interior_point(&self) -> IntVector {
        let mut s = vec![Int::zero(); self.ambient.rank()];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }
}

fn canonical_rays(rays: &[IntVector], lineality: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = if lineality.is_empty() || rays.is_empty() {
        rays.iter().map(|r| primitive(r)).collect()
    } else {
        let n = rays.first().map_or(0, Vec::len);
        let l = Matrix::from_cols(
            n,
            &lineality.iter().map(|v| to_rat_vec(v)).collect::<Vec<_>>(),
        );
        let lt = l.transpose();
        let proj_inv = lt
            .mul(&l)
            .inverse()
            .expect("lineality basis is independent");
        rays.iter()
            .map(|r| {
                let rr = to_rat_vec(r);
                let coeffs = proj_inv.mul_vec(&lt.mul_vec(&rr));
                let along = l.mul_vec(&coeffs);
                let p: RatVector = rr.iter().zip(&along).map(|(a, b)| a - b).collect();
                clear_denominators(&p)
            })
            .filter(|r| !is_zero_vec(r))
            .collect()
    };
    out.sort();
    out.dedup();
    out
}

/// Double description: generators `(lineality, rays)` of
/// `{x in R^dim : a · x >= 0 for a in ineqs}`. Rays are extreme modulo the
/// lineality space.
pub(crate) fn hrep_to_vrep(dim: usize, ineqs: &[IntVector]) -> (Vec<IntVector>, Vec<IntVector>) {
    let mut lin: Vec<IntVector> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<IntVector> = Vec::new();
    for a in ineqs {
        if is_zero_vec(a) {
            continue;
        }
        if let Some(idx) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(idx);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0 = neg_vec(&l0);
                s = -s;
            }
            let project =
                |v: &IntVector| primitive(&sub_vec(&scale_vec(&s, v), &scale_vec(&dot(a, v), &l0)));
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(&l0));
        } else {
            let signs: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
            if signs.iter().any(Signed::is_negative) {
                let tight: Vec<BTreeSet<usize>> = rays
                    .iter()
                    .map(|r| {
                        (0..processed.len())
                            .filter(|&j| dot(&processed[j], r).is_zero())
                            .collect()
                    })
                    .collect();
                let mut next: Vec<IntVector> = Vec::new();
                for (i, r) in rays.iter().enumerate() {
                    if !signs[i].is_negative() {
                        next.push(r.clone());
                    }
                }
                let need = dim.saturating_sub(lin.len() + 2);
                for p in 0..rays.len() {
                    if !signs[p].is_positive() {
                        continue;
                    }
                    for q in 0..rays.len() {
                        if !signs[q].is_negative() {
                            continue;
                        }
                        let common: BTreeSet<usize> =
                            tight[p].intersection(&tight[q]).copied().collect();
                        if common.len() < need {
                            continue;
                        }
                        let adjacent = (0..rays.len())
                            .all(|r| r == p || r == q || !common.is_subset(&tight[r]));
                        if adjacent {
                            let c = sub_vec(
                                &scale_vec(&signs[p], &rays[q]),
                                &scale_vec(&signs[q], &rays[p]),
                            );
                            next.push(primitive(&c));
                        }
                    }
                }
                next.sort();
                next.dedup();
                rays = next;
            }
        }
        processed.push(a.clone());
    }
    (lin, rays)
}

/// Exact feasibility of `{x : c_k + a_k · x >= 0 for all k}` by
/// Fourier–Motzkin elimination.
pub fn fourier_motzkin_feasible(constraints: &[(RatVector, Rat)]) -> bool {
    let Some(nvars) = constraints.first().map(|(a, _)| a.len()) else {
        return true;
    };
    let mut cs: Vec<(RatVector, Rat)> = constraints.to_vec();
    for j in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cs {
            if c.0[j].is_positive() {
                pos.push(c);
            } else if c.0[j].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for (pa, pc) in &pos {
            for (na, nc) in &neg {
                let (fp, fn_) = (-&na[j], pa[j].clone());
                let a: RatVector = pa.iter().zip(na).map(|(x, y)| x * &fp + y * &fn_).collect();
                let c = pc * &fp + nc * &fn_;
                rest.push((a, c));
            }
        }
        // normalize and deduplicate to tame growth
        let mut seen = BTreeSet::new();
        cs = Vec::new();
        for (a, c) in rest {
            let scale = a
                .iter()
                .chain(std::iter::once(&c))
                .find(|x| !x.is_zero())
                .map(Rat::abs);
            let (a, c) = match scale {
                Some(s) => (a.iter().map(|x| x / &s).collect::<Vec<_>>(), c / &s),
                None => (a, c),
            };
            if seen.insert((a.clone(), c.clone())) {
                cs.push((a, c));
            }
        }
    }
    cs.iter().all(|(_, c)| !c.is_negative())
}

/// Is `v` a nonnegative combination of `generators`? Decided from the
/// generators alone (no facet computation): exact elimination of the
/// equality constraints, then Fourier–Motzkin on the remaining variables.
pub fn in_cone_by_generators(generators: &[IntVector], v: &[Rat]) -> bool {
    let n = v.len();
    let m = generators.len();
    if m == 0 {
        return v.iter().all(Zero::is_zero);
    }
    let mut aug: RatMatrix = Matrix::from_fn(n, m + 1, |i, j| {
        if j < m {
            to_rat(&generators[j][i])
        } else {
            v[i].clone()
        }
    });
    let pivots = aug.rref();
    if pivots.last() == Some(&m) {
        return false;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    // lambda_p = rhs_p - sum_f aug[p][f] lambda_f >= 0 ; lambda_f >= 0
    let mut cons: Vec<(RatVector, Rat)> = Vec::new();
    for (r, _) in pivots.iter().enumerate() {
        let a = free.iter().map(|&f| -aug[(r, f)].clone()).collect();
        cons.push((a, aug[(r, m)].clone()));
    }
    for (k, _) in free.iter().enumerate() {
        let a = (0..free.len())
            .map(|i| if i == k { Rat::one() } else { Rat::zero() })
            .collect();
        cons.push((a, Rat::zero()));
    }
    if free.is_empty() {
        return cons.iter().all(|(_, c)| !c.is_negative());
    }
    fourier_motzkin_feasible(&cons)
}

/// Split `cone` by the hyperplanes `(x, w) = 0` into closed subcones with
/// pairwise disjoint relative interiors, each on one closed side of every
/// wall. Walls whose hyperplane does not cut a cell leave it whole.
pub fn subdivide(cone: &RationalCone, walls: &[IntVector]) -> Result<Vec<RationalCone>> {
    let lattice = cone.ambient();
    for w in walls {
        lattice.check_vector(w)?;
    }
    let mut cells = vec![cone.clone()];
    for w in walls {
        let f = lattice.functional(w);
        if is_zero_vec(&f) {
            continue;
        }
        let mut next = Vec::new();
        for cell in cells {
            let splits_lineality = cell.lineality().iter().any(|l| !dot(&f, l).is_zero());
            let vals: Vec<Int> = cell.rays().iter().map(|r| dot(&f, r)).collect();
            let has_pos = vals.iter().any(Signed::is_positive);
            let has_neg = vals.iter().any(Signed::is_negative);
            if splits_lineality || (has_pos && has_neg) {
                next.push(cell.cut(std::slice::from_ref(&f))?);
                next.push(cell.cut(&[neg_vec(&f)])?);
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| (a.rays(), a.lineality()).cmp(&(b.rays(), b.lineality())));
    cells.dedup();
    Ok(cells)
}

/// Closures of the connected components of `cone` minus the wall
/// hyperplanes (walls containing the whole cone are ignored).
pub fn chamber_components(cone: &RationalCone, walls: &[IntVector]) -> Result<Vec<RationalCone>> {
    let cells = subdivide(cone, walls)?;
    let lattice = cone.ambient();
    let dim = cone.dim();
    let live: Vec<IntVector> = walls
        .iter()
        .map(|w| lattice.functional(w))
        .filter(|f| cone.generators().iter().any(|g| !dot(f, g).is_zero()))
        .collect();
    Ok(cells
        .into_iter()
        .filter(|c| c.dim() == dim)
        .filter(|c| {
            let p = c.interior_point();
            live.iter().all(|f| !dot(f, &p).is_zero())
                || c.lineality()
                    .iter()
                    .any(|l| live.iter().any(|f| !dot(f, l).is_zero()))
        })
        .collect())
}

/// Arithmetic mean of a nonempty list of vectors.
pub fn galois_average(vectors: &[IntVector]) -> Result<RatVector> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    let mut acc = vec![Rat::zero(); n];
    for v in vectors {
        check_dim(n, v.len())?;
        for (a, x) in acc.iter_mut().zip(v) {
            *a += to_rat(x);
        }
    }
    let k = Rat::from_integer(Int::from(vectors.len()));
    Ok(acc.into_iter().map(|a| a / &k).collect())
}

/// One component of `{v : (v, v) > 0}` in a lattice of signature
/// `(1, rank - 1)`, selected by a reference vector of positive square.
#[derive(Clone, Debug)]
pub struct PositiveConeRef {
    ambient: Lattice,
    reference: IntVector,
}

impl PositiveConeRef {
    pub fn new(ambient: &Lattice, reference: IntVector) -> Result<Self> {
        if !ambient.is_hyperbolic() {
            let (p, q) = ambient.signature();
            return Err(Error::WrongSignature(p, q));
        }
        let n = ambient.norm(&reference)?;
        if !n.is_positive() {
            return Err(Error::NotInPositiveCone(format!(
                "reference has square {n}"
            )));
        }
        Ok(PositiveConeRef {
            ambient: ambient.clone(),
            reference,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn reference(&self) -> &[Int] {
        &self.reference
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        let l = &self.ambient;
        Ok(l.norm(v)?.is_positive() && l.inner(v, &self.reference)?.is_positive())
    }

    /// Membership in the closure (null vectors on the chosen side and 0).
    pub fn closure_contains(&self, v: &[Int]) -> Result<bool> {
        let l = &self.ambient;
        let n = l.norm(v)?;
        if n.is_negative() {
            return Ok(false);
        }
        let s = l.inner(v, &self.reference)?;
        Ok(s.is_positive() || (s.is_zero() && is_zero_vec(v)))
    }

    pub fn contains_rat(&self, v: &[Rat]) -> Result<bool> {
        check_dim(self.ambient.rank(), v.len())?;
        let l = &self.ambient;
        Ok(l.rat_pair(v, v).is_positive()
            && l.rat_pair(v, &to_rat_vec(&self.reference)).is_positive())
    }
}

/// Rank of the span of a set of generators.
pub fn span_rank(generators: &[IntVector], dim: usize) -> usize {
    rank_of_rows(generators, dim)
}
