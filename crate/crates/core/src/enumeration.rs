//! Integral vectors of a given square inside a rational cone, Dirichlet
//! domains for groups of isometries, orbit representatives, and walls of
//! bounded square meeting a cone.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::arith::{
    content, exact_sqrt, floor_sqrt_rat, line_representative, to_rat, to_strings, Int, IntVector,
    Rat,
};
use crate::cone::{PositiveConeRef, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::par;

pub const DEFAULT_WORD_RADIUS: usize = 3;

/// Search region for vectors of square `d` in a cone: every such vector is
/// `Σ a_i x_i` with `0 <= a_i <= coefficient_bound`, hence lies in the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub coefficient_bound: Int,
    pub max_pairing: Int,
    pub lower: IntVector,
    pub upper: IntVector,
}

/// Checks that `cone` sits in the closure of one positive cone and derives
/// the box from `a_i <= d n M` (`M` the largest generator pairing).
pub fn enumeration_budget(cone: &RationalCone, d: &Int) -> Result<EnumerationBudget> {
    let l = cone.ambient();
    if !l.is_hyperbolic() {
        let (p, q) = l.signature();
        return Err(Error::WrongSignature(p, q));
    }
    if !cone.is_pointed() {
        return Err(Error::NotInPositiveCone("cone contains a line".into()));
    }
    let gens = cone.rays();
    let mut max_pairing = Int::zero();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            let p = l.pair(a, b);
            if p.is_negative() {
                return Err(Error::NotInPositiveCone(format!(
                    "generators {:?} and {:?} pair negatively",
                    to_strings(a),
                    to_strings(b)
                )));
            }
            if p > max_pairing {
                max_pairing = p;
            }
        }
    }
    let n = l.rank();
    if gens.is_empty() || max_pairing.is_zero() {
        return Err(Error::UnboundedRegion(
            "all generator pairings vanish; the coefficient bound degenerates".into(),
        ));
    }
    let bound = d * Int::from(gens.len()) * &max_pairing;
    let mut lower = vec![Int::zero(); n];
    let mut upper = vec![Int::zero(); n];
    for g in gens {
        for k in 0..n {
            if g[k].is_positive() {
                upper[k] += &g[k] * &bound;
            } else {
                lower[k] += &g[k] * &bound;
            }
        }
    }
    Ok(EnumerationBudget {
        coefficient_bound: bound,
        max_pairing,
        lower,
        upper,
    })
}

/// All integral `v` in the closed cone with `(v, v) = d`, sorted.
pub fn vectors_of_square_in_cone(cone: &RationalCone, d: &Int) -> Result<Vec<IntVector>> {
    if !d.is_positive() {
        return Err(Error::NotInPositiveCone(format!(
            "square {d} is not positive"
        )));
    }
    let budget = enumeration_budget(cone, d)?;
    let l = cone.ambient();
    let n = l.rank();
    let g = l.gram();
    let facets = cone.inequalities();
    let equalities = cone.equalities();

    // the best a facet can still gain from coordinates k.. of the box
    let slack: Vec<Vec<Int>> = facets
        .iter()
        .chain(equalities)
        .map(|u| {
            let mut s = vec![Int::zero(); n + 1];
            for k in (0..n).rev() {
                let best = (&u[k] * &budget.lower[k]).max(&u[k] * &budget.upper[k]);
                s[k] = &s[k + 1] + best;
            }
            s
        })
        .collect();
    let floor: Vec<Vec<Int>> = equalities
        .iter()
        .map(|u| {
            let mut s = vec![Int::zero(); n + 1];
            for k in (0..n).rev() {
                let worst = (&u[k] * &budget.lower[k]).min(&u[k] * &budget.upper[k]);
                s[k] = &s[k + 1] + worst;
            }
            s
        })
        .collect();

    let first: Vec<Int> = range(&budget.lower[0], &budget.upper[0]);
    let ctx = Ctx {
        l,
        g,
        d,
        n,
        budget: &budget,
        cone,
        facets,
        equalities,
        slack: &slack,
        floor: &floor,
    };
    let mut out: Vec<IntVector> = par::flat_map(&first, |x0| {
        let mut found = Vec::new();
        let mut prefix = vec![x0.clone()];
        ctx.dfs(&mut prefix, &mut found);
        found
    });
    out.sort();
    out.dedup();
    Ok(out)
}

fn range(lo: &Int, hi: &Int) -> Vec<Int> {
    let mut v = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        v.push(x.clone());
        x += 1;
    }
    v
}

struct Ctx<'a> {
    l: &'a Lattice,
    g: &'a IntMatrix,
    d: &'a Int,
    n: usize,
    budget: &'a EnumerationBudget,
    cone: &'a RationalCone,
    facets: &'a [IntVector],
    equalities: &'a [IntVector],
    slack: &'a [Vec<Int>],
    floor: &'a [Vec<Int>],
}

impl Ctx<'_> {
    fn feasible(&self, prefix: &[Int]) -> bool {
        let k = prefix.len();
        let partial = |u: &IntVector| -> Int { u.iter().zip(prefix).map(|(a, b)| a * b).sum() };
        let nf = self.facets.len();
        for (i, u) in self.facets.iter().chain(self.equalities).enumerate() {
            let p = partial(u);
            if (&p + &self.slack[i][k]).is_negative() {
                return false;
            }
            if i >= nf && (&p + &self.floor[i - nf][k]).is_positive() {
                return false;
            }
        }
        true
    }

    fn dfs(&self, prefix: &mut Vec<Int>, found: &mut Vec<IntVector>) {
        if !self.feasible(prefix) {
            return;
        }
        let k = prefix.len();
        if k + 1 == self.n {
            self.solve_last(prefix, found);
            return;
        }
        if k == self.n {
            // rank one: the prefix is the whole vector
            self.accept(prefix.clone(), found);
            return;
        }
        for x in range(&self.budget.lower[k], &self.budget.upper[k]) {
            prefix.push(x);
            self.dfs(prefix, found);
            prefix.pop();
        }
    }

    // (v, v) = a t^2 + 2 b t + c for the last coordinate t
    fn solve_last(&self, prefix: &[Int], found: &mut Vec<IntVector>) {
        let m = self.n - 1;
        let a = self.g[(m, m)].clone();
        let b: Int = (0..m).map(|j| &self.g[(m, j)] * &prefix[j]).sum();
        let c: Int = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| &prefix[i] * &self.g[(i, j)] * &prefix[j])
                    .sum::<Int>()
            })
            .sum();
        let rhs = self.d - &c;
        let (lo, hi) = (&self.budget.lower[m], &self.budget.upper[m]);
        let mut cands: Vec<Int> = Vec::new();
        if a.is_zero() {
            if b.is_zero() {
                if rhs.is_zero() {
                    cands = range(lo, hi);
                }
            } else {
                let two_b: Int = &b * Int::from(2);
                if (&rhs % &two_b).is_zero() {
                    cands.push(&rhs / &two_b);
                }
            }
        } else {
            // a t^2 + 2 b t - rhs = 0
            let disc = &b * &b + &a * &rhs;
            if !disc.is_negative() {
                if let Some(s) = exact_sqrt(&disc) {
                    for num in [-&b + &s, -&b - &s] {
                        if (&num % &a).is_zero() {
                            cands.push(&num / &a);
                        }
                    }
                }
            }
        }
        for t in cands {
            if &t < lo || &t > hi {
                continue;
            }
            let mut v = prefix.to_vec();
            v.push(t);
            self.accept(v, found);
        }
    }

    fn accept(&self, v: IntVector, found: &mut Vec<IntVector>) {
        if &self.l.pair(&v, &v) == self.d && self.cone.contains_int(&v, false).unwrap_or(false) {
            found.push(v);
        }
    }
}

/// A group generated by finitely many isometries (inverses included).
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    lattice: Lattice,
    generators: Vec<IntMatrix>,
}

/// An element of a word ball with one shortest word (indices into the
/// generator list, applied left to right).
#[derive(Clone, Debug)]
pub struct WordElement {
    pub matrix: IntMatrix,
    pub word: Vec<usize>,
}

impl GeneratedGroup {
    pub fn new(lattice: &Lattice, generators: &[IntMatrix]) -> Result<Self> {
        let mut gens: Vec<IntMatrix> = Vec::new();
        for g in generators {
            if !lattice.is_isometry(g)? {
                return Err(Error::NotAnIsometry);
            }
            let inv = g.inverse()?;
            for m in [g.clone(), inv] {
                if !m.is_identity() && !gens.contains(&m) {
                    gens.push(m);
                }
            }
        }
        Ok(GeneratedGroup {
            lattice: lattice.clone(),
            generators: gens,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// Elements of word length `<= radius`, shortest-first, each once.
    pub fn word_ball(&self, radius: usize) -> Vec<WordElement> {
        let n = self.lattice.rank();
        let id = IntMatrix::identity(n);
        let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
        seen.insert(id.clone());
        let mut ball = vec![WordElement {
            matrix: id,
            word: Vec::new(),
        }];
        let mut frontier = 0;
        for _ in 0..radius {
            let end = ball.len();
            for i in frontier..end {
                for (k, g) in self.generators.iter().enumerate() {
                    let m = g.mul(&ball[i].matrix);
                    if seen.insert(m.clone()) {
                        let mut word = ball[i].word.clone();
                        word.push(k);
                        ball.push(WordElement { matrix: m, word });
                    }
                }
            }
            frontier = end;
        }
        ball
    }

    /// A word of length `<= radius` mapping `x` to `z`, if one exists.
    pub fn find_word(&self, x: &[Int], z: &[Int], radius: usize) -> Option<Vec<usize>> {
        self.word_ball(radius)
            .into_iter()
            .find(|e| e.matrix.mul_vec(x) == z)
            .map(|e| e.word)
    }
}

/// Records how far the word-ball approximation was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainCertificate {
    /// Requested radius `R`; the domain at `R` equals the domain at `R + 1`.
    pub radius: usize,
    /// Smallest `r <= R` from which the domain is constant up to `R + 1`.
    pub stable_from: usize,
    pub ball_size: usize,
}

#[derive(Clone, Debug)]
pub struct DirichletDomain {
    pub cone: RationalCone,
    pub certificate: DomainCertificate,
}

fn domain_at(group: &GeneratedGroup, ball: &[WordElement], y: &[Int]) -> Result<RationalCone> {
    let l = &group.lattice;
    let gy = l.functional(y);
    let mut cuts: Vec<IntVector> = Vec::new();
    let mut images: Vec<IntVector> = Vec::new();
    for e in ball {
        images.push(e.matrix.mul_vec(y));
        if e.matrix.is_identity() {
            continue;
        }
        // x ↦ (γx − x, y) = x · (γᵀ G y − G y)
        let f: IntVector = e
            .matrix
            .transpose()
            .mul_vec(&gy)
            .iter()
            .zip(&gy)
            .map(|(a, b)| a - b)
            .collect();
        if f.iter().any(|c| !c.is_zero()) {
            cuts.push(f);
        }
    }
    let approx = RationalCone::from_generators(l, &images)?;
    approx.cut(&cuts)
}

/// `{x : (γx, y) >= (x, y)}` over the word ball of radius `radius`,
/// intersected with the cone spanned by the images of `y`. Certified when
/// growing the ball by one more step leaves the cone unchanged.
pub fn dirichlet_domain(
    group: &GeneratedGroup,
    y: &[Int],
    positive: &PositiveConeRef,
    radius: usize,
) -> Result<DirichletDomain> {
    let l = &group.lattice;
    l.check_vector(y)?;
    if !positive.contains(y)? {
        return Err(Error::NotInPositiveCone(format!("{:?}", to_strings(y))));
    }
    for g in &group.generators {
        if !l.pair(&g.mul_vec(y), y).is_positive() {
            return Err(Error::NotInPositiveCone(format!(
                "generator {g:?} does not preserve the component of {:?}",
                to_strings(y)
            )));
        }
    }
    let full = group.word_ball(radius + 1);
    let mut domains: Vec<RationalCone> = Vec::with_capacity(radius + 2);
    for r in 0..=radius + 1 {
        let ball: Vec<WordElement> = full.iter().filter(|e| e.word.len() <= r).cloned().collect();
        domains.push(domain_at(group, &ball, y)?);
    }
    if domains[radius] != domains[radius + 1] {
        return Err(Error::NotStabilized(radius));
    }
    let mut stable_from = radius;
    while stable_from > 0 && domains[stable_from - 1] == domains[radius] {
        stable_from -= 1;
    }
    let ball_size = full.iter().filter(|e| e.word.len() <= radius).count();
    Ok(DirichletDomain {
        cone: domains.swap_remove(radius),
        certificate: DomainCertificate {
            radius,
            stable_from,
            ball_size,
        },
    })
}

/// Vectors of square `d` in the Dirichlet domain, one per class under the
/// word ball (the lexicographically smallest member is kept).
pub fn orbit_representatives(
    d: &Int,
    group: &GeneratedGroup,
    y: &[Int],
    positive: &PositiveConeRef,
    radius: usize,
) -> Result<Vec<IntVector>> {
    let dom = dirichlet_domain(group, y, positive, radius)?;
    let vecs = vectors_of_square_in_cone(&dom.cone, d)?;
    let ball = group.word_ball(radius);
    let index: BTreeMap<&IntVector, usize> = vecs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vecs.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, v) in vecs.iter().enumerate() {
        for e in &ball {
            if let Some(&j) = index.get(&e.matrix.mul_vec(v)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                // vecs is sorted, so the smaller index is the smaller vector
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    Ok((0..vecs.len())
        .filter(|&i| find(&mut parent, i) == i)
        .map(|i| vecs[i].clone())
        .collect())
}

/// Majorant bound for walls meeting a cone: every primitive `v` with
/// `-N < (v, v) < 0` and `v^⊥` meeting the cone satisfies `Q_h(v) <= bound`,
/// where `Q_h(v) = 2 (v, h)^2 / (h, h) - (v, v)` and `h` is the sum of the
/// generators.
#[derive(Clone, Debug)]
pub struct WallBox {
    pub h: IntVector,
    pub bound: Rat,
    pub radii: IntVector,
}

pub fn wall_box(cone: &RationalCone, n_bound: &Int) -> Result<WallBox> {
    let l = cone.ambient();
    if !l.is_hyperbolic() {
        let (p, q) = l.signature();
        return Err(Error::WrongSignature(p, q));
    }
    let gens = cone.rays();
    if gens.is_empty() || !cone.is_pointed() {
        return Err(Error::UnboundedRegion(
            "cone is zero or contains a line".into(),
        ));
    }
    let mut m0: Option<Int> = None;
    for g in gens {
        let s = l.pair(g, g);
        if !s.is_positive() {
            return Err(Error::UnboundedRegion(format!(
                "generator {:?} has square {s}",
                to_strings(g)
            )));
        }
        m0 = Some(m0.map_or(s.clone(), |m| m.min(s)));
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if l.pair(a, b).is_negative() {
                return Err(Error::NotInPositiveCone(
                    "generators pair negatively".into(),
                ));
            }
        }
    }
    let m0 = m0.expect("nonempty");
    let rank = l.rank();
    let mut h = vec![Int::zero(); rank];
    for g in gens {
        for (a, b) in h.iter_mut().zip(g) {
            *a += b;
        }
    }
    let hh = l.pair(&h, &h);
    let big_h = gens.iter().map(|g| l.pair(g, &h)).max().expect("nonempty");
    // x^2 h^2 / (x, h)^2 >= m0 h^2 / (n H^2) on the cone
    let k = to_rat(&(&big_h * &big_h * Int::from(gens.len()))) / to_rat(&m0);
    let n = to_rat(n_bound);
    let hhr = to_rat(&hh);
    let bound = &n * (Rat::from_integer(Int::from(2)) * &k / &hhr - Rat::one());
    let gram = l.gram().to_rat();
    let gh = l.functional(&h);
    let s = RatMatrix::from_fn(rank, rank, |i, j| {
        to_rat(&(&gh[i] * &gh[j] * 2)) / &hhr - &gram[(i, j)]
    });
    let s_inv = s.inverse().expect("majorant is positive definite");
    let radii = (0..rank)
        .map(|i| floor_sqrt_rat(&(&bound * &s_inv[(i, i)])))
        .collect();
    Ok(WallBox { h, bound, radii })
}

/// Primitive `v` with `-N < (v, v) < 0` whose hyperplane meets the cone,
/// one per `±` pair (first nonzero coordinate positive), sorted.
pub fn walls_meeting_cone(cone: &RationalCone, n_bound: &Int) -> Result<Vec<IntVector>> {
    let wb = wall_box(cone, n_bound)?;
    let l = cone.ambient();
    let rank = l.rank();
    let gens = cone.rays();
    let neg_n = -n_bound;
    let accept = |v: &IntVector| -> bool {
        if v.iter().all(Zero::is_zero) || !content(v).is_one() || *v != line_representative(v) {
            return false;
        }
        let s = l.pair(v, v);
        if !(s.is_negative() && s > neg_n) {
            return false;
        }
        let p: Vec<Int> = gens.iter().map(|g| l.pair(g, v)).collect();
        p.iter().any(|x| !x.is_positive()) && p.iter().any(|x| !x.is_negative())
    };
    let first = range(&-&wb.radii[0], &wb.radii[0]);
    let mut out: Vec<IntVector> = par::flat_map(&first, |x0| {
        let mut found = Vec::new();
        let mut v = vec![Int::zero(); rank];
        v[0] = x0.clone();
        scan(&wb.radii, 1, &mut v, &mut |v| {
            if accept(v) {
                found.push(v.clone());
            }
        });
        found
    });
    out.sort();
    Ok(out)
}

fn scan(radii: &[Int], k: usize, v: &mut IntVector, f: &mut impl FnMut(&IntVector)) {
    if k == radii.len() {
        f(v);
        return;
    }
    for x in range(&-&radii[k], &radii[k]) {
        v[k] = x;
        scan(radii, k + 1, v, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec};

    fn quadrant() -> RationalCone {
        RationalCone::from_generators(
            &Lattice::hyperbolic_plane(),
            &[ivec(&[1, 0]), ivec(&[0, 1])],
        )
        .unwrap()
    }

    fn pell() -> (Lattice, GeneratedGroup, PositiveConeRef) {
        let l = Lattice::diagonal(&[2, -6]).unwrap();
        let g = GeneratedGroup::new(&l, &[IntMatrix::from_i64(&[&[2, 3], &[1, 2]])]).unwrap();
        let p = PositiveConeRef::new(&l, ivec(&[1, 0])).unwrap();
        (l, g, p)
    }

    #[test]
    fn square_enumeration_examples() {
        let q = quadrant();
        assert_eq!(
            vectors_of_square_in_cone(&q, &int(2)).unwrap(),
            vec![ivec(&[1, 1])]
        );
        assert_eq!(
            vectors_of_square_in_cone(&q, &int(4)).unwrap(),
            vec![ivec(&[1, 2]), ivec(&[2, 1])]
        );
        assert!(vectors_of_square_in_cone(&q, &int(3)).unwrap().is_empty());
        let def =
            RationalCone::from_generators(&Lattice::diagonal(&[1, 1]).unwrap(), &[ivec(&[1, 0])])
                .unwrap();
        assert_eq!(
            vectors_of_square_in_cone(&def, &int(1)).unwrap_err(),
            Error::WrongSignature(2, 0)
        );
        let null_ray =
            RationalCone::from_generators(&Lattice::hyperbolic_plane(), &[ivec(&[1, 0])]).unwrap();
        assert!(matches!(
            vectors_of_square_in_cone(&null_ray, &int(2)),
            Err(Error::UnboundedRegion(_))
        ));
    }

    #[test]
    fn pell_domain() {
        let (l, g, p) = pell();
        let dom = dirichlet_domain(&g, &ivec(&[1, 0]), &p, DEFAULT_WORD_RADIUS).unwrap();
        let expected = RationalCone::from_generators(&l, &[ivec(&[3, 1]), ivec(&[3, -1])]).unwrap();
        assert_eq!(dom.cone, expected);
        assert_eq!(dom.certificate.stable_from, 1);
        assert_eq!(
            orbit_representatives(&int(2), &g, &ivec(&[1, 0]), &p, DEFAULT_WORD_RADIUS).unwrap(),
            vec![ivec(&[1, 0])]
        );
        assert_eq!(
            orbit_representatives(&int(8), &g, &ivec(&[1, 0]), &p, DEFAULT_WORD_RADIUS).unwrap(),
            vec![ivec(&[2, 0])]
        );
        assert!(
            orbit_representatives(&int(3), &g, &ivec(&[1, 0]), &p, DEFAULT_WORD_RADIUS)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn trivial_group_domain() {
        let u = Lattice::hyperbolic_plane();
        let g = GeneratedGroup::new(&u, &[]).unwrap();
        let p = PositiveConeRef::new(&u, ivec(&[1, 1])).unwrap();
        let dom = dirichlet_domain(&g, &ivec(&[1, 2]), &p, 2).unwrap();
        assert_eq!(
            dom.cone,
            RationalCone::from_generators(&u, &[ivec(&[1, 2])]).unwrap()
        );
        let minus = GeneratedGroup::new(&u, &[IntMatrix::from_i64(&[&[-1, 0], &[0, -1]])]).unwrap();
        assert!(matches!(
            dirichlet_domain(&minus, &ivec(&[1, 1]), &p, 2),
            Err(Error::NotInPositiveCone(_))
        ));
    }

    #[test]
    fn walls_examples() {
        let u = Lattice::hyperbolic_plane();
        let p = RationalCone::from_generators(&u, &[ivec(&[2, 1]), ivec(&[1, 2])]).unwrap();
        assert_eq!(
            walls_meeting_cone(&p, &int(3)).unwrap(),
            vec![ivec(&[1, -1])]
        );
        assert!(walls_meeting_cone(&p, &int(1)).unwrap().is_empty());
        let ray = RationalCone::from_generators(&u, &[ivec(&[2, 3])]).unwrap();
        assert!(walls_meeting_cone(&ray, &int(5)).unwrap().is_empty());
        let null = RationalCone::from_generators(&u, &[ivec(&[1, 0]), ivec(&[1, 1])]).unwrap();
        assert!(matches!(
            walls_meeting_cone(&null, &int(3)),
            Err(Error::UnboundedRegion(_))
        ));
    }
}
