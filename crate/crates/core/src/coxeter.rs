//! Orbits of a finite group on a set of roots and the Coxeter type of the
//! reflection group of each orbit.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{line_representative, primitive, to_strings, Int, IntVector, Rat, RatVector};
use crate::cone::PositiveConeRef;
use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice, LatticeAction};
use crate::matrix::RatMatrix;
use crate::reflection::{reflection, Root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for PairOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairOrder::Finite(n) => write!(f, "{n}"),
            PairOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of `r_1 r_2` on the span of two roots with self-pairing `beta` and
/// mutual pairing `alpha`, with the data that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrderReport {
    pub order: PairOrder,
    /// Trace of `r_1 r_2` on the span: `4 alpha^2 / beta^2 - 2`.
    pub trace: Rat,
    /// `r_1 r_2` in the basis `(E_1, E_2)`.
    pub product: RatMatrix,
}

/// Reflections in the basis `(E_1, E_2)` of their span.
pub fn span_reflections(beta: &Int, alpha: &Int) -> (RatMatrix, RatMatrix) {
    let t = Rat::new(alpha * 2, beta.clone());
    let one = Rat::one();
    let zero = Rat::zero();
    let r1 = RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => -one.clone(),
        (0, 1) => -t.clone(),
        (1, 1) => one.clone(),
        _ => zero.clone(),
    });
    let r2 = RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => one.clone(),
        (1, 0) => -t.clone(),
        (1, 1) => -one.clone(),
        _ => zero.clone(),
    });
    (r1, r2)
}

/// The order is read off exactly: a rational 2x2 rotation of finite order
/// has trace in `{-2, -1, 0, 1, 2}`, so any other trace (or trace 2 with a
/// non-identity product) certifies infinite order; otherwise the smallest
/// `n <= 6` with `(r_1 r_2)^n = 1` is the order.
pub fn pair_order_from_pairings(beta: &Int, alpha: &Int) -> Result<PairOrderReport> {
    if !beta.is_negative() {
        return Err(Error::NotARoot);
    }
    let (r1, r2) = span_reflections(beta, alpha);
    let product = r1.mul(&r2);
    let trace = &product[(0, 0)] + &product[(1, 1)];
    let small: BTreeSet<Rat> = (-2..=2).map(|k| Rat::from_integer(Int::from(k))).collect();
    let mut order = PairOrder::Infinite;
    if small.contains(&trace) {
        let mut p = product.clone();
        for n in 1..=6u32 {
            if p.is_identity() {
                order = PairOrder::Finite(n);
                break;
            }
            p = p.mul(&product);
        }
    }
    Ok(PairOrderReport {
        order,
        trace,
        product,
    })
}

pub fn pair_order(lattice: &Lattice, e1: &Root, e2: &Root) -> Result<PairOrderReport> {
    let (v1, v2) = (e1.vector(), e2.vector());
    if line_representative(v1) == line_representative(v2) {
        return Err(Error::EqualRoots);
    }
    if e1.norm() != e2.norm() {
        return Err(Error::UnequalNorms);
    }
    pair_order_from_pairings(e1.norm(), &lattice.inner(v1, v2)?)
}

/// One orbit of the action on roots, with the signs of the supplied roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOrbit {
    pub roots: Vec<IntVector>,
    /// Whether every group element maps the orbit (with its signs) onto
    /// itself, rather than only up to sign.
    pub sign_consistent: bool,
}

/// Partition `roots` into orbits of `action`, comparing roots as lines.
pub fn root_orbits(roots: &[Root], action: &LatticeAction) -> Result<Vec<RootOrbit>> {
    let mut lines: Vec<(IntVector, IntVector)> = roots
        .iter()
        .map(|r| {
            let p = primitive(r.vector());
            (line_representative(&p), p)
        })
        .collect();
    lines.sort();
    lines.dedup_by(|a, b| a.0 == b.0);
    let lookup = |v: &IntVector| {
        lines
            .binary_search_by(|(l, _)| l.cmp(&line_representative(&primitive(v))))
            .ok()
    };
    let mut assigned = vec![false; lines.len()];
    let mut orbits = Vec::new();
    for start in 0..lines.len() {
        if assigned[start] {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut consistent = true;
        for m in action.matrices() {
            let img = m.mul_vec(&lines[start].1);
            let Some(j) = lookup(&img) else {
                return Err(Error::ActionDoesNotPreserveRoots(format!(
                    "image {:?} of {:?} is not a supplied root",
                    to_strings(&img),
                    to_strings(&lines[start].1)
                )));
            };
            members.insert(j);
        }
        for &j in &members {
            assigned[j] = true;
            for m in action.matrices() {
                let img = m.mul_vec(&lines[j].1);
                match lookup(&img) {
                    Some(k) if members.contains(&k) => consistent &= lines[k].1 == img,
                    _ => {
                        return Err(Error::ActionDoesNotPreserveRoots(format!(
                            "orbit of {:?} is not closed",
                            to_strings(&lines[start].1)
                        )))
                    }
                }
            }
        }
        let mut rs: Vec<IntVector> = members.iter().map(|&j| lines[j].1.clone()).collect();
        rs.sort();
        orbits.push(RootOrbit {
            roots: rs,
            sign_consistent: consistent,
        });
    }
    Ok(orbits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitCase {
    /// Pairwise orthogonal: type `A_1^r`.
    A,
    /// A perfect matching with `beta = -2 alpha`, all other pairs orthogonal:
    /// type `A_2^r`.
    B,
    Infinite,
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub orbit: RootOrbit,
    pub beta: Int,
    pub case: OrbitCase,
    /// Sum of the orbit (finite cases only).
    pub composite: Option<IntVector>,
    /// Longest element of `W_I` (finite cases only). On vectors fixed by the
    /// action it agrees with the reflection in the composite root.
    pub longest: Option<Isometry>,
    /// Matched pairs (case B), as indices into `orbit.roots`.
    pub matching: Vec<(usize, usize)>,
}

impl OrbitReport {
    pub fn is_finite(&self) -> bool {
        self.case != OrbitCase::Infinite
    }
}

pub fn analyze_orbit(lattice: &Lattice, orbit: &RootOrbit) -> Result<OrbitReport> {
    let roots = &orbit.roots;
    let first = roots.first().ok_or(Error::EmptyInput)?;
    let beta = lattice.norm(first)?;
    for r in roots {
        if lattice.norm(r)? != beta {
            return Err(Error::UnequalNorms);
        }
    }
    let k = roots.len();
    let mut partners: Vec<Vec<(usize, Int)>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let a = lattice.pair(&roots[i], &roots[j]);
                if a.is_negative() {
                    return Err(Error::NegativeOrbitPairing);
                }
                if !a.is_zero() {
                    partners[i].push((j, a));
                }
            }
        }
    }
    let case = if partners.iter().all(Vec::is_empty) {
        OrbitCase::A
    } else if partners
        .iter()
        .enumerate()
        .all(|(i, p)| p.len() == 1 && (&p[0].1 * -2) == beta && partners[p[0].0][0].0 == i)
    {
        OrbitCase::B
    } else {
        OrbitCase::Infinite
    };
    let matching = if case == OrbitCase::B {
        (0..k)
            .filter(|&i| partners[i][0].0 > i)
            .map(|i| (i, partners[i][0].0))
            .collect()
    } else {
        Vec::new()
    };
    let composite = (case != OrbitCase::Infinite).then(|| {
        let mut c = vec![Int::zero(); lattice.rank()];
        for r in roots {
            for (a, b) in c.iter_mut().zip(r) {
                *a += b;
            }
        }
        c
    });
    let mut report = OrbitReport {
        orbit: orbit.clone(),
        beta,
        case,
        composite,
        longest: None,
        matching,
    };
    report.longest = longest_element_by_words(lattice, &report)?;
    Ok(report)
}

/// `x ↦ x − 2 (x, C)/(C, C) C` for the composite root `C`, over the
/// rationals (the reflection need not be integral).
pub fn composite_reflection(
    lattice: &Lattice,
    report: &OrbitReport,
    x: &[Int],
) -> Option<RatVector> {
    let c = report.composite.as_ref()?;
    let t = Rat::new(lattice.pair(x, c) * 2, lattice.pair(c, c));
    Some(
        x.iter()
            .zip(c)
            .map(|(a, b)| Rat::from_integer(a.clone()) - &t * Rat::from_integer(b.clone()))
            .collect(),
    )
}

/// Do two isometries agree on every vector of `basis`?
pub fn agree_on(a: &Isometry, b: &Isometry, basis: &[IntVector]) -> bool {
    basis.iter().all(|v| a.apply(v) == b.apply(v))
}

/// The longest element of `W_I` as a product of simple reflections:
/// `Π r_E` in case A and `Π r_{E} r_{E'} r_{E}` over matched pairs in case B.
pub fn longest_element_by_words(
    lattice: &Lattice,
    report: &OrbitReport,
) -> Result<Option<Isometry>> {
    let refl = |v: &IntVector| -> Result<Isometry> {
        Ok(reflection(lattice, &Root::new(lattice, v.clone())?))
    };
    let roots = &report.orbit.roots;
    let mut acc = Isometry::identity(lattice.rank());
    match report.case {
        OrbitCase::Infinite => return Ok(None),
        OrbitCase::A => {
            for r in roots {
                acc = acc.compose(&refl(r)?);
            }
        }
        OrbitCase::B => {
            for &(i, j) in &report.matching {
                let (a, b) = (refl(&roots[i])?, refl(&roots[j])?);
                acc = acc.compose(&a.compose(&b).compose(&a));
            }
        }
    }
    Ok(Some(acc))
}

/// Longest elements `r_I` of the finite orbits.
pub fn invariant_generators(reports: &[OrbitReport]) -> Vec<Isometry> {
    reports.iter().filter_map(|r| r.longest.clone()).collect()
}

/// `(lambda, E) >= 0` for every root of every finite orbit.
pub fn invariant_chamber_test(
    lambda: &[Int],
    reports: &[OrbitReport],
    positive: &PositiveConeRef,
) -> Result<bool> {
    if !positive.contains(lambda)? {
        return Err(Error::NotInPositiveCone(format!(
            "{:?}",
            to_strings(lambda)
        )));
    }
    let l = positive.ambient();
    Ok(reports
        .iter()
        .filter(|r| r.is_finite())
        .flat_map(|r| &r.orbit.roots)
        .all(|e| !l.pair(lambda, e).is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec, to_rat_vec};
    use crate::matrix::IntMatrix;

    fn roots(l: &Lattice, vs: &[&[i64]]) -> Vec<Root> {
        vs.iter().map(|v| Root::new(l, ivec(v)).unwrap()).collect()
    }

    #[test]
    fn pair_order_examples() {
        assert_eq!(
            pair_order_from_pairings(&int(-2), &int(0)).unwrap().order,
            PairOrder::Finite(2)
        );
        assert_eq!(
            pair_order_from_pairings(&int(-2), &int(1)).unwrap().order,
            PairOrder::Finite(3)
        );
        let r = pair_order_from_pairings(&int(-2), &int(2)).unwrap();
        assert_eq!(r.order, PairOrder::Infinite);
        assert_eq!(r.trace, Rat::from_integer(int(2)));
        // rational trace -7/4 is not that of a finite-order rotation
        assert_eq!(
            pair_order_from_pairings(&int(-4), &int(1)).unwrap().order,
            PairOrder::Infinite
        );
    }

    #[test]
    fn pair_order_on_lattice_roots() {
        // A2 root lattice (negated) plus a hyperbolic plane
        let l = Lattice::from_i64(&[&[-2, 1, 0, 0], &[1, -2, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
            .unwrap();
        let rs = roots(&l, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(
            pair_order(&l, &rs[0], &rs[1]).unwrap().order,
            PairOrder::Finite(3)
        );
        assert_eq!(
            pair_order(&l, &rs[0], &rs[0]).unwrap_err(),
            Error::EqualRoots
        );
        let other = Root::new(&l, ivec(&[2, 1, 0, 0])).unwrap();
        assert_eq!(
            pair_order(&l, &rs[0], &other).unwrap_err(),
            Error::UnequalNorms
        );
    }

    #[test]
    fn orbit_examples() {
        let u = Lattice::hyperbolic_plane();
        let swap =
            LatticeAction::generated(&u, &[IntMatrix::from_i64(&[&[0, 1], &[1, 0]])]).unwrap();
        let orbits = root_orbits(&roots(&u, &[&[1, -1]]), &swap).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].roots, vec![ivec(&[1, -1])]);
        assert!(!orbits[0].sign_consistent);
        let rep = analyze_orbit(&u, &orbits[0]).unwrap();
        assert_eq!(rep.case, OrbitCase::A);
        assert_eq!(rep.composite, Some(ivec(&[1, -1])));

        // two orthogonal (-2)-vectors swapped by the action
        let l = Lattice::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -2]])
            .unwrap();
        let sw = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let act = LatticeAction::generated(&l, &[sw]).unwrap();
        let rs = roots(&l, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let orbits = root_orbits(&rs, &act).unwrap();
        assert_eq!(orbits.len(), 1);
        assert!(orbits[0].sign_consistent);
        let rep = analyze_orbit(&l, &orbits[0]).unwrap();
        assert_eq!(rep.case, OrbitCase::A);
        let c = rep.composite.clone().unwrap();
        assert_eq!(l.norm(&c).unwrap(), int(-4));
        // r_E1 r_E2 is -1 on the span, r_C only on C: they differ on E1 - E2
        let w0 = rep.longest.clone().unwrap();
        let d = ivec(&[0, 0, 1, -1]);
        assert_ne!(
            Some(to_rat_vec(&w0.apply(&d))),
            composite_reflection(&l, &rep, &d)
        );
        for f in l.fixed_sublattice(&act).unwrap() {
            assert_eq!(
                Some(to_rat_vec(&w0.apply(&f))),
                composite_reflection(&l, &rep, &f)
            );
        }

        let trivial = LatticeAction::trivial(&l);
        assert_eq!(root_orbits(&rs, &trivial).unwrap().len(), 2);
    }

    #[test]
    fn case_b_orbit() {
        let l = Lattice::from_i64(&[&[-2, 1, 0, 0], &[1, -2, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
            .unwrap();
        let sw = IntMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let act = LatticeAction::generated(&l, std::slice::from_ref(&sw)).unwrap();
        let rs = roots(&l, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let orbits = root_orbits(&rs, &act).unwrap();
        let rep = analyze_orbit(&l, &orbits[0]).unwrap();
        assert_eq!(rep.case, OrbitCase::B);
        let c = rep.composite.clone().unwrap();
        assert_eq!(l.norm(&c).unwrap(), int(-2));
        assert_eq!(
            longest_element_by_words(&l, &rep).unwrap(),
            rep.longest.clone()
        );
        let ri = rep.longest.clone().unwrap();
        let g = Isometry::new(&l, sw).unwrap();
        assert_eq!(g.compose(&ri).compose(&g.inverse()), ri);
        assert_eq!(g.apply(&c), c);
        assert_eq!(invariant_generators(&[rep]).len(), 1);
    }

    #[test]
    fn invariant_chamber_examples() {
        let u = Lattice::hyperbolic_plane();
        let p = PositiveConeRef::new(&u, ivec(&[1, 1])).unwrap();
        let orbit = RootOrbit {
            roots: vec![ivec(&[1, -1])],
            sign_consistent: true,
        };
        let rep = analyze_orbit(&u, &orbit).unwrap();
        assert!(invariant_chamber_test(&ivec(&[1, 1]), std::slice::from_ref(&rep), &p).unwrap());
        assert!(!invariant_chamber_test(&ivec(&[2, 1]), &[rep], &p).unwrap());
        assert!(invariant_chamber_test(&ivec(&[2, 1]), &[], &p).unwrap());
    }

    #[test]
    fn non_preserving_action_is_rejected() {
        let u = Lattice::hyperbolic_plane();
        let id = LatticeAction::trivial(&u);
        assert!(root_orbits(&roots(&u, &[&[1, -1]]), &id).is_ok());
        let l = Lattice::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -2]])
            .unwrap();
        let sw = IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let act = LatticeAction::generated(&l, &[sw]).unwrap();
        assert!(matches!(
            root_orbits(&roots(&l, &[&[0, 0, 1, 0]]), &act),
            Err(Error::ActionDoesNotPreserveRoots(_))
        ));
    }
}
