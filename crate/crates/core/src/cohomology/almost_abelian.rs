//! `H¹(Γ, G)` for an almost abelian `G` given in normal form.
//!
//! `G⁰ = K ⋊ Z^r` with `e_i k e_i⁻¹ = ψ_i(k)`, written `(k, v) = k·t^v`.
//! `G` is an extension of a finite group `Q` by `G⁰` with a section `s`:
//! every element is `s(q)·(k, v)` and
//! `s(q1) g1 s(q2) g2 = s(q1 q2) · f(q1, q2) · α_{q2}(g1) · g2`
//! where `α_q(g) = s(q)⁻¹ g s(q)` and `f(q1, q2) = s(q1 q2)⁻¹ s(q1) s(q2)`.
//!
//! The computation follows the fibration `G⁰ → G → Q` and, inside each
//! fiber, `K → G⁰ → Z^r`, twisting by a lifted cocycle at each stage so
//! that the fiber becomes the image of the kernel's cohomology.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::free_abelian::{h1_free_abelian, FreeAbelianAction};
use super::{h1_finite, FiniteAction};
use crate::arith::{Int, IntVector};
use crate::error::{Error, Result};
use crate::group::{compose, FiniteGroup, Perm};
use crate::matrix::IntMatrix;
use crate::par;
use crate::snf::integer_solve;

/// Half-width of the box searched over free integer parameters when a
/// lift or a conjugator is not pinned down by linear algebra alone.
pub const DEFAULT_SEARCH_BOUND: i64 = 2;

/// `s(q)·(k, v)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    pub q: usize,
    pub k: usize,
    pub v: IntVector,
}

/// Raw description of an almost abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub k: FiniteGroup,
    pub rank: usize,
    pub q: FiniteGroup,
    /// `psi[i]`: conjugation of `K` by the `i`-th basis vector.
    pub psi: Vec<Perm>,
    /// `theta[q]`: `α_q` on `K`.
    pub theta: Vec<Perm>,
    /// `α_q(e_i) = (kappa[q][i], A_q e_i)`.
    pub kappa: Vec<Vec<usize>>,
    pub a: Vec<IntMatrix>,
    /// `f(q1, q2) = (k, v)` as `factor[q1][q2]`.
    pub factor: Vec<Vec<(usize, IntVector)>>,
}

impl ExtensionDatum {
    /// `K × Z^r`-style split datum: `Q` trivial, `K` central, no twisting.
    pub fn direct(k: FiniteGroup, rank: usize) -> Self {
        let q = FiniteGroup::trivial();
        ExtensionDatum {
            psi: vec![k.identity_perm(); rank],
            theta: vec![k.identity_perm()],
            kappa: vec![vec![k.identity(); rank]],
            a: vec![IntMatrix::identity(rank)],
            factor: vec![vec![(k.identity(), vec![Int::zero(); rank])]],
            k,
            rank,
            q,
        }
    }
}

type G0 = (usize, IntVector);

#[derive(Clone, Debug)]
pub struct AlmostAbelianGroup {
    d: ExtensionDatum,
    psi_orders: Vec<usize>,
}

fn perm_order(p: &[usize]) -> usize {
    let id: Perm = (0..p.len()).collect();
    let mut cur = p.to_vec();
    let mut n = 1;
    while cur != id {
        cur = compose(p, &cur);
        n += 1;
    }
    n
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidExtensionDatum(msg.into())
}

impl AlmostAbelianGroup {
    pub fn new(d: ExtensionDatum) -> Result<Self> {
        let (nk, nq, r) = (d.k.order(), d.q.order(), d.rank);
        if d.psi.len() != r {
            return Err(bad(format!("psi has {} entries, rank is {r}", d.psi.len())));
        }
        if d.theta.len() != nq || d.kappa.len() != nq || d.a.len() != nq || d.factor.len() != nq {
            return Err(bad(
                "theta, kappa, a and factor need one entry per element of Q",
            ));
        }
        for p in d.psi.iter().chain(&d.theta) {
            if !d.k.is_automorphism(p) {
                return Err(bad("psi and theta entries must be automorphisms of K"));
            }
        }
        for (i, a) in d.psi.iter().enumerate() {
            for b in &d.psi[i + 1..] {
                if compose(a, b) != compose(b, a) {
                    return Err(bad("the psi automorphisms must commute"));
                }
            }
        }
        for q in 0..nq {
            if d.kappa[q].len() != r || d.kappa[q].iter().any(|&x| x >= nk) {
                return Err(bad(format!("kappa[{q}] is malformed")));
            }
            let m = &d.a[q];
            if m.rows() != r || m.cols() != r || (r > 0 && !m.det().abs().is_one()) {
                return Err(bad(format!("a[{q}] is not a unimodular {r} x {r} matrix")));
            }
            if d.factor[q].len() != nq || d.factor[q].iter().any(|(k, v)| *k >= nk || v.len() != r)
            {
                return Err(bad(format!("factor[{q}] is malformed")));
            }
        }
        let e = d.q.identity();
        let zero = (d.k.identity(), vec![Int::zero(); r]);
        if d.theta[e] != d.k.identity_perm()
            || d.kappa[e].iter().any(|&x| x != d.k.identity())
            || !d.a[e].is_identity()
            || (0..nq).any(|q| d.factor[e][q] != zero || d.factor[q][e] != zero)
        {
            return Err(bad("datum is not normalized at the identity of Q"));
        }
        let psi_orders = d.psi.iter().map(|p| perm_order(p)).collect();
        let g = AlmostAbelianGroup { d, psi_orders };
        let sample = g.sample();
        for x in &sample {
            for y in &sample {
                let xy = g.mul(x, y);
                for z in &sample {
                    if g.mul(&xy, z) != g.mul(x, &g.mul(y, z)) {
                        return Err(bad(format!(
                            "product is not associative at {x:?}, {y:?}, {z:?}"
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn datum(&self) -> &ExtensionDatum {
        &self.d
    }

    pub fn rank(&self) -> usize {
        self.d.rank
    }

    pub fn k_group(&self) -> &FiniteGroup {
        &self.d.k
    }

    pub fn q_group(&self) -> &FiniteGroup {
        &self.d.q
    }

    pub fn identity(&self) -> Elem {
        Elem {
            q: self.d.q.identity(),
            k: self.d.k.identity(),
            v: vec![Int::zero(); self.d.rank],
        }
    }

    pub fn k_elem(&self, k: usize) -> Elem {
        Elem {
            k,
            ..self.identity()
        }
    }

    pub fn e_elem(&self, i: usize) -> Elem {
        let mut x = self.identity();
        x.v[i] = Int::one();
        x
    }

    pub fn s_elem(&self, q: usize) -> Elem {
        Elem {
            q,
            ..self.identity()
        }
    }

    pub fn is_valid(&self, x: &Elem) -> bool {
        x.q < self.d.q.order() && x.k < self.d.k.order() && x.v.len() == self.d.rank
    }

    /// A deterministic spread of small elements used for validation.
    fn sample(&self) -> Vec<Elem> {
        let r = self.d.rank;
        let mut vs: Vec<IntVector> = vec![vec![Int::zero(); r]];
        for i in 0..r {
            for s in [1, -1] {
                let mut v = vec![Int::zero(); r];
                v[i] = Int::from(s);
                vs.push(v);
            }
        }
        if r >= 2 {
            let mut v = vec![Int::one(); r];
            v[0] = Int::from(2);
            vs.push(v);
        }
        let mut out = Vec::new();
        for v in &vs {
            for q in 0..self.d.q.order() {
                for k in 0..self.d.k.order() {
                    out.push(Elem { q, k, v: v.clone() });
                }
            }
        }
        let cap = 20;
        if out.len() > cap {
            let step = out.len().div_ceil(cap);
            out = out.into_iter().step_by(step).collect();
        }
        out
    }

    fn psi_of(&self, v: &[Int]) -> Perm {
        let mut p = self.d.k.identity_perm();
        for (i, x) in v.iter().enumerate() {
            let o = Int::from(self.psi_orders[i]);
            let e = x.mod_floor(&o).to_usize().expect("small");
            for _ in 0..e {
                p = compose(&self.d.psi[i], &p);
            }
        }
        p
    }

    fn g0_mul(&self, a: &G0, b: &G0) -> G0 {
        let k = self.d.k.mul(a.0, self.psi_of(&a.1)[b.0]);
        (k, a.1.iter().zip(&b.1).map(|(x, y)| x + y).collect())
    }

    fn g0_inv(&self, a: &G0) -> G0 {
        let neg: IntVector = a.1.iter().map(|x| -x).collect();
        (self.psi_of(&neg)[self.d.k.inv(a.0)], neg)
    }

    fn g0_pow(&self, a: &G0, n: &Int) -> G0 {
        let mut base = if n < &Int::zero() {
            self.g0_inv(a)
        } else {
            a.clone()
        };
        let mut e = if n < &Int::zero() { -n } else { n.clone() };
        let mut acc: G0 = (self.d.k.identity(), vec![Int::zero(); self.d.rank]);
        let two = Int::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.g0_mul(&acc, &base);
            }
            base = self.g0_mul(&base, &base);
            e = e.div_floor(&two);
        }
        acc
    }

    fn alpha(&self, q: usize, g: &G0) -> G0 {
        let mut acc: G0 = (self.d.theta[q][g.0], vec![Int::zero(); self.d.rank]);
        for (i, x) in g.1.iter().enumerate() {
            let img: G0 = (self.d.kappa[q][i], self.d.a[q].col(i));
            acc = self.g0_mul(&acc, &self.g0_pow(&img, x));
        }
        acc
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let q = self.d.q.mul(a.q, b.q);
        let f = &self.d.factor[a.q][b.q];
        let g = self.g0_mul(
            &self.g0_mul(f, &self.alpha(b.q, &(a.k, a.v.clone()))),
            &(b.k, b.v.clone()),
        );
        Elem { q, k: g.0, v: g.1 }
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        let qi = self.d.q.inv(a.q);
        // s(q) g · s(q⁻¹) g' = f(q, q⁻¹) α_{q⁻¹}(g) g' = 1
        let h = self.g0_mul(
            &self.d.factor[a.q][qi],
            &self.alpha(qi, &(a.k, a.v.clone())),
        );
        let g = self.g0_inv(&h);
        Elem {
            q: qi,
            k: g.0,
            v: g.1,
        }
    }

    pub fn pow(&self, a: &Elem, n: &Int) -> Elem {
        let mut base = if n < &Int::zero() {
            self.inv(a)
        } else {
            a.clone()
        };
        let mut e = if n < &Int::zero() { -n } else { n.clone() };
        let mut acc = self.identity();
        let two = Int::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e = e.div_floor(&two);
        }
        acc
    }

    fn in_g0(&self, x: &Elem) -> bool {
        x.q == self.d.q.identity()
    }
}

/// An endomorphism given by the images of `K`, the basis `e_i` and the
/// section `s(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Images {
    k: Vec<Elem>,
    e: Vec<Elem>,
    s: Vec<Elem>,
}

impl Images {
    fn identity(g: &AlmostAbelianGroup) -> Self {
        Images {
            k: (0..g.d.k.order()).map(|k| g.k_elem(k)).collect(),
            e: (0..g.d.rank).map(|i| g.e_elem(i)).collect(),
            s: (0..g.d.q.order()).map(|q| g.s_elem(q)).collect(),
        }
    }

    fn apply(&self, g: &AlmostAbelianGroup, x: &Elem) -> Elem {
        let mut acc = g.mul(&self.s[x.q], &self.k[x.k]);
        for (i, n) in x.v.iter().enumerate() {
            acc = g.mul(&acc, &g.pow(&self.e[i], n));
        }
        acc
    }

    fn then(&self, g: &AlmostAbelianGroup, outer: &Images) -> Images {
        Images {
            k: self.k.iter().map(|x| outer.apply(g, x)).collect(),
            e: self.e.iter().map(|x| outer.apply(g, x)).collect(),
            s: self.s.iter().map(|x| outer.apply(g, x)).collect(),
        }
    }
}

/// `Γ` acting on an almost abelian group by automorphisms that stabilize
/// `G⁰` (and hence `K`).
#[derive(Clone, Debug)]
pub struct AlmostAbelianAction {
    group: AlmostAbelianGroup,
    gamma: FiniteGroup,
    maps: Vec<Images>,
}

impl AlmostAbelianAction {
    pub fn trivial(group: AlmostAbelianGroup, gamma: FiniteGroup) -> Self {
        let maps = vec![Images::identity(&group); gamma.order()];
        AlmostAbelianAction { group, gamma, maps }
    }

    /// `images[j] = (σ(K), σ(e_i), σ(s(q)))` for the generator `gens[j]`.
    #[allow(clippy::type_complexity)]
    pub fn from_generator_images(
        group: AlmostAbelianGroup,
        gamma: FiniteGroup,
        gens: &[usize],
        images: &[(Vec<Elem>, Vec<Elem>, Vec<Elem>)],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidAction(
                "generator/image count mismatch".into(),
            ));
        }
        let g = &group;
        let mut gen_maps = Vec::new();
        for (k, e, s) in images {
            if k.len() != g.d.k.order() || e.len() != g.d.rank || s.len() != g.d.q.order() {
                return Err(Error::InvalidAction(
                    "image lists have the wrong length".into(),
                ));
            }
            if k.iter().chain(e).chain(s).any(|x| !g.is_valid(x)) {
                return Err(Error::InvalidAction("image is not an element of G".into()));
            }
            gen_maps.push(Images {
                k: k.clone(),
                e: e.clone(),
                s: s.clone(),
            });
        }
        let n = gamma.order();
        let mut maps: Vec<Option<Images>> = vec![None; n];
        maps[gamma.identity()] = Some(Images::identity(g));
        let mut queue = vec![gamma.identity()];
        while let Some(x) = queue.pop() {
            for (gen, img) in gens.iter().zip(&gen_maps) {
                let y = gamma.mul(x, *gen);
                // σ_{xg} = σ_x ∘ σ_g
                let m = img.then(g, maps[x].as_ref().expect("visited"));
                match &maps[y] {
                    None => {
                        maps[y] = Some(m);
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
        let maps = maps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAction("listed elements do not generate Γ".into()))?;
        let act = AlmostAbelianAction { group, gamma, maps };
        act.validate()?;
        Ok(act)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        for (gi, m) in self.maps.iter().enumerate() {
            if m.k
                .iter()
                .any(|x| !g.in_g0(x) || x.v.iter().any(|c| !c.is_zero()))
            {
                return Err(bad(format!("σ of element {gi} does not map K into K")));
            }
            if m.e.iter().any(|x| !g.in_g0(x)) {
                return Err(bad(format!(
                    "σ of element {gi} does not stabilize G⁰; pass to the Γ-stable G¹ = ∩ γG⁰ first"
                )));
            }
            let kperm: Vec<usize> = m.k.iter().map(|x| x.k).collect();
            if !g.d.k.is_automorphism(&kperm) {
                return Err(Error::InvalidAction(format!(
                    "σ of element {gi} is not bijective on K"
                )));
            }
            let qperm: Vec<usize> = m.s.iter().map(|x| x.q).collect();
            if !g.d.q.is_automorphism(&qperm) {
                return Err(Error::InvalidAction(format!(
                    "σ of element {gi} is not an automorphism of Q"
                )));
            }
            if g.d.rank > 0 {
                let mat = IntMatrix::from_cols(
                    g.d.rank,
                    &m.e.iter().map(|x| x.v.clone()).collect::<Vec<_>>(),
                );
                if !mat.det().abs().is_one() {
                    return Err(Error::InvalidAction(format!(
                        "σ of element {gi} is not bijective on Z^r"
                    )));
                }
            }
            let sample = g.sample();
            for x in &sample {
                for y in &sample {
                    if m.apply(g, &g.mul(x, y)) != g.mul(&m.apply(g, x), &m.apply(g, y)) {
                        return Err(Error::InvalidAction(format!(
                            "σ of element {gi} is not a homomorphism"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &AlmostAbelianGroup {
        &self.group
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn act(&self, gamma: usize, x: &Elem) -> Elem {
        self.maps[gamma].apply(&self.group, x)
    }

    pub fn trivial_cocycle(&self) -> Vec<Elem> {
        vec![self.group.identity(); self.gamma.order()]
    }

    pub fn is_cocycle(&self, c: &[Elem]) -> bool {
        is_cocycle_with(&self.gamma, &self.group, &|a, x| self.act(a, x), c)
    }

    /// `γ ↦ b⁻¹·c(γ)·σ_γ(b)`.
    pub fn coboundary(&self, c: &[Elem], b: &Elem) -> Vec<Elem> {
        let g = &self.group;
        let bi = g.inv(b);
        c.iter()
            .enumerate()
            .map(|(a, x)| g.mul(&g.mul(&bi, x), &self.act(a, b)))
            .collect()
    }
}

fn is_cocycle_with(
    gamma: &FiniteGroup,
    g: &AlmostAbelianGroup,
    act: &dyn Fn(usize, &Elem) -> Elem,
    c: &[Elem],
) -> bool {
    c.len() == gamma.order()
        && c.iter().all(|x| g.is_valid(x))
        && (0..gamma.order())
            .all(|a| (0..gamma.order()).all(|b| c[gamma.mul(a, b)] == g.mul(&c[a], &act(a, &c[b]))))
}

/// Extend values on generators to a map on `Γ` via `c(xs) = c(x)·σ_x(c(s))`.
fn extend_with(
    gamma: &FiniteGroup,
    g: &AlmostAbelianGroup,
    act: &dyn Fn(usize, &Elem) -> Elem,
    gens: &[usize],
    vals: &[Elem],
) -> Option<Vec<Elem>> {
    let mut c: Vec<Option<Elem>> = vec![None; gamma.order()];
    c[gamma.identity()] = Some(g.identity());
    let mut queue = vec![gamma.identity()];
    while let Some(x) = queue.pop() {
        let cx = c[x].clone().expect("visited");
        for (s, v) in gens.iter().zip(vals) {
            let y = gamma.mul(x, *s);
            let cy = g.mul(&cx, &act(x, v));
            match &c[y] {
                None => {
                    c[y] = Some(cy);
                    queue.push(y);
                }
                Some(old) if *old != cy => return None,
                _ => {}
            }
        }
    }
    c.into_iter().collect()
}

/// Odometer over `[-bound, bound]^dim`, starting at the origin and sorted by
/// max-norm so that small parameters are tried first.
fn small_vectors(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.sort_by_key(|p| (p.iter().map(|x| x.abs()).max().unwrap_or(0), p.clone()));
    out
}

/// Integer solutions `x` of the affine system `R(x) = 0` where `R` is given
/// as a black box that is known to be affine: evaluates `R(0)` and `R(e_j)`.
fn affine_solve(
    dim: usize,
    residual: &dyn Fn(&[Int]) -> IntVector,
) -> Option<(IntVector, Vec<IntVector>)> {
    let zero = vec![Int::zero(); dim];
    let r0 = residual(&zero);
    if dim == 0 {
        return if r0.iter().all(Zero::is_zero) {
            Some((Vec::new(), Vec::new()))
        } else {
            None
        };
    }
    let cols: Vec<IntVector> = (0..dim)
        .map(|j| {
            let mut e = zero.clone();
            e[j] = Int::one();
            residual(&e).iter().zip(&r0).map(|(a, b)| a - b).collect()
        })
        .collect();
    if r0.is_empty() {
        let kernel = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|i| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        return Some((zero, kernel));
    }
    let lin = IntMatrix::from_cols(r0.len(), &cols);
    let rhs: IntVector = r0.iter().map(|x| -x).collect();
    integer_solve(&lin, &rhs)
}

fn point(x0: &[Int], kernel: &[IntVector], lambda: &[i64]) -> IntVector {
    let mut x = x0.to_vec();
    for (l, kv) in lambda.iter().zip(kernel) {
        for (a, b) in x.iter_mut().zip(kv) {
            *a += b * Int::from(*l);
        }
    }
    x
}

#[derive(Clone, Debug)]
pub struct AlmostAbelianH1 {
    /// One cocycle per class, the trivial cocycle first.
    pub classes: Vec<Vec<Elem>>,
    /// True when every equivalence decision was made by exact linear algebra
    /// plus finite search; false when a bounded search was inconclusive and
    /// two candidates were kept apart.
    pub exact: bool,
    pub caveats: Vec<String>,
    pub quotient_classes: usize,
    pub lifted_quotient_classes: usize,
    pub candidates: usize,
}

/// Find a cocycle `c` with the given `Q`-components.
fn lift_quotient_cocycle(
    action: &AlmostAbelianAction,
    qbar: &[usize],
    bound: i64,
) -> Result<Option<Vec<Elem>>> {
    let (g, gamma) = (&action.group, &action.gamma);
    let (n, r) = (gamma.order(), g.d.rank);
    let build = |x: &[Int], ks: &[usize]| -> Vec<Elem> {
        (0..n)
            .map(|a| Elem {
                q: qbar[a],
                k: ks[a],
                v: x[a * r..(a + 1) * r].to_vec(),
            })
            .collect()
    };
    let kid = vec![g.d.k.identity(); n];
    let residual = |x: &[Int]| -> IntVector {
        let c = build(x, &kid);
        let mut out = Vec::with_capacity(n * n * r);
        for a in 0..n {
            for b in 0..n {
                let lhs = g.mul(&c[a], &action.act(a, &c[b]));
                out.extend(lhs.v.iter().zip(&c[gamma.mul(a, b)].v).map(|(p, q)| p - q));
            }
        }
        out
    };
    let Some((x0, kernel)) = affine_solve(n * r, &residual) else {
        return Ok(None);
    };
    let gens = gamma.generators();
    let nk = g.d.k.order();
    let act = |a: usize, x: &Elem| action.act(a, x);
    for lambda in small_vectors(kernel.len(), bound) {
        let x = point(&x0, &kernel, &lambda);
        let base = build(&x, &kid);
        let mut ks = vec![0usize; gens.len()];
        loop {
            let vals: Vec<Elem> = gens
                .iter()
                .zip(&ks)
                .map(|(&s, &k)| Elem {
                    k,
                    ..base[s].clone()
                })
                .collect();
            if let Some(c) = extend_with(gamma, g, &act, &gens, &vals) {
                if is_cocycle_with(gamma, g, &act, &c) {
                    return Ok(Some(c));
                }
            }
            let mut i = 0;
            while i < ks.len() {
                ks[i] += 1;
                if ks[i] < nk {
                    break;
                }
                ks[i] = 0;
                i += 1;
            }
            if i == ks.len() {
                break;
            }
        }
    }
    Err(Error::LiftSearchExhausted(bound))
}

/// Decide whether `c ~ d`. Returns `Some(true/false)` when decided, `None`
/// when a bounded search over a free parameter found nothing.
fn equivalent(action: &AlmostAbelianAction, c: &[Elem], d: &[Elem], bound: i64) -> Option<bool> {
    let (g, gamma) = (&action.group, &action.gamma);
    let (n, r) = (gamma.order(), g.d.rank);
    let qg = &g.d.q;
    let mut inconclusive = false;
    for q in 0..qg.order() {
        // Q-components: q⁻¹ c̄(γ) σ̄_γ(q) = d̄(γ)
        let qbar_ok = (0..n)
            .all(|a| qg.mul(qg.mul(qg.inv(q), c[a].q), action.act(a, &g.s_elem(q)).q) == d[a].q);
        if !qbar_ok {
            continue;
        }
        // v-components of c(γ) σ_γ(b) and b d(γ) are affine in v(b)
        let residual = |v: &[Int]| -> IntVector {
            let b = Elem {
                q,
                k: g.d.k.identity(),
                v: v.to_vec(),
            };
            let mut out = Vec::with_capacity(n * r);
            for a in 0..n {
                let lhs = g.mul(&c[a], &action.act(a, &b));
                let rhs = g.mul(&b, &d[a]);
                out.extend(lhs.v.iter().zip(&rhs.v).map(|(x, y)| x - y));
            }
            out
        };
        let Some((v0, kernel)) = affine_solve(r, &residual) else {
            continue;
        };
        let lambdas = if kernel.is_empty() {
            vec![Vec::new()]
        } else {
            small_vectors(kernel.len(), bound)
        };
        for lambda in lambdas {
            let v = point(&v0, &kernel, &lambda);
            for k in 0..g.d.k.order() {
                let b = Elem { q, k, v: v.clone() };
                if action.coboundary(c, &b) == d {
                    return Some(true);
                }
            }
        }
        if !kernel.is_empty() {
            inconclusive = true;
        }
    }
    if inconclusive {
        None
    } else {
        Some(false)
    }
}

/// Class representatives of `H¹(Γ, G)`.
pub fn h1_almost_abelian(action: &AlmostAbelianAction, bound: i64) -> Result<AlmostAbelianH1> {
    let (g, gamma) = (&action.group, &action.gamma);
    let (n, r) = (gamma.order(), g.d.rank);

    // (i) the finite quotient
    let qmaps: Vec<Perm> = (0..n)
        .map(|a| {
            (0..g.d.q.order())
                .map(|q| action.act(a, &g.s_elem(q)).q)
                .collect()
        })
        .collect();
    let qaction = FiniteAction::new(gamma.clone(), g.d.q.clone(), qmaps)?;
    let qclasses = h1_finite(&qaction);

    // (ii) lift each quotient class, (iii) the fiber through the twisted G⁰
    let fibers: Vec<Result<Option<Vec<Vec<Elem>>>>> = par::map(&qclasses, |qbar| {
        let Some(c) = lift_quotient_cocycle(action, qbar, bound)? else {
            return Ok(None);
        };
        let cinv: Vec<Elem> = c.iter().map(|x| g.inv(x)).collect();
        let tau = |a: usize, x: &Elem| g.mul(&g.mul(&c[a], &action.act(a, x)), &cinv[a]);

        // Z^r layer with the induced (twisted) action
        let mats: Vec<IntMatrix> = (0..n)
            .map(|a| {
                IntMatrix::from_cols(
                    r,
                    &(0..r).map(|i| tau(a, &g.e_elem(i)).v).collect::<Vec<_>>(),
                )
            })
            .collect();
        let zaction = FreeAbelianAction::new(gamma.clone(), r, mats)?;
        let zh1 = h1_free_abelian(&zaction)?;

        let gens = gamma.generators();
        let nk = g.d.k.order();
        let mut out = Vec::new();
        for z in &zh1.representatives {
            // lift z to a τ-cocycle in G⁰: only the K-components are free
            let mut lift: Option<Vec<Elem>> = None;
            let mut ks = vec![0usize; gens.len()];
            loop {
                let vals: Vec<Elem> = gens
                    .iter()
                    .zip(&ks)
                    .map(|(&s, &k)| Elem {
                        q: g.d.q.identity(),
                        k,
                        v: if r == 0 { Vec::new() } else { z[s].clone() },
                    })
                    .collect();
                if let Some(d) = extend_with(gamma, g, &tau, &gens, &vals) {
                    if is_cocycle_with(gamma, g, &tau, &d)
                        && (0..n).all(|a| r == 0 || d[a].v == z[a])
                    {
                        lift = Some(d);
                        break;
                    }
                }
                let mut i = 0;
                while i < ks.len() {
                    ks[i] += 1;
                    if ks[i] < nk {
                        break;
                    }
                    ks[i] = 0;
                    i += 1;
                }
                if i == ks.len() {
                    break;
                }
            }
            let Some(d) = lift else {
                continue;
            };
            // K layer twisted by d
            let dinv: Vec<Elem> = d.iter().map(|x| g.inv(x)).collect();
            let kmaps: Vec<Perm> = (0..n)
                .map(|a| {
                    (0..nk)
                        .map(|k| g.mul(&g.mul(&d[a], &tau(a, &g.k_elem(k))), &dinv[a]).k)
                        .collect()
                })
                .collect();
            let kaction = FiniteAction::new(gamma.clone(), g.d.k.clone(), kmaps)?;
            for e in h1_finite(&kaction) {
                // untwist twice: e·d is a τ-cocycle, (e·d)·c a σ-cocycle
                let y: Vec<Elem> = (0..n)
                    .map(|a| g.mul(&g.mul(&g.k_elem(e[a]), &d[a]), &c[a]))
                    .collect();
                debug_assert!(action.is_cocycle(&y));
                out.push(y);
            }
        }
        Ok(Some(out))
    });

    let mut candidates: Vec<Vec<Elem>> = vec![action.trivial_cocycle()];
    let mut lifted = 0;
    for f in fibers {
        if let Some(list) = f? {
            lifted += 1;
            candidates.extend(list);
        }
    }
    let total = candidates.len();
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    let mut caveats = Vec::new();
    for cand in candidates {
        let verdicts = par::map(&classes, |rep| equivalent(action, rep, &cand, bound));
        if verdicts.contains(&Some(true)) {
            continue;
        }
        if verdicts.contains(&None) {
            caveats.push(format!(
                "candidate {cand:?} kept as a separate class: conjugator search within ±{bound} was inconclusive"
            ));
        }
        classes.push(cand);
    }
    let mut rest = classes.split_off(1);
    rest.sort();
    classes.extend(rest);
    Ok(AlmostAbelianH1 {
        classes,
        exact: caveats.is_empty(),
        caveats,
        quotient_classes: qclasses.len(),
        lifted_quotient_classes: lifted,
        candidates: total,
    })
}

/// Brute-force reference: cocycles whose values on the generators of `Γ`
/// have `|v_i| <= value_bound`, grouped by conjugators with
/// `|v_i| <= conj_bound`. Returns the number of groups found.
pub fn bounded_cocycle_classes(
    action: &AlmostAbelianAction,
    value_bound: i64,
    conj_bound: i64,
) -> usize {
    let (g, gamma) = (&action.group, &action.gamma);
    let r = g.d.rank;
    let gens = gamma.generators();
    let mut elems = Vec::new();
    for v in small_vectors(r, value_bound) {
        for q in 0..g.d.q.order() {
            for k in 0..g.d.k.order() {
                elems.push(Elem {
                    q,
                    k,
                    v: v.iter().map(|&x| Int::from(x)).collect(),
                });
            }
        }
    }
    let act = |a: usize, x: &Elem| action.act(a, x);
    let mut cocycles: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let vals: Vec<Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        if let Some(c) = extend_with(gamma, g, &act, &gens, &vals) {
            if is_cocycle_with(gamma, g, &act, &c) {
                cocycles.insert(c);
            }
        }
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    let mut conj = Vec::new();
    for v in small_vectors(r, conj_bound) {
        for q in 0..g.d.q.order() {
            for k in 0..g.d.k.order() {
                conj.push(Elem {
                    q,
                    k,
                    v: v.iter().map(|&x| Int::from(x)).collect(),
                });
            }
        }
    }
    let list: Vec<Vec<Elem>> = cocycles.into_iter().collect();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..list.len() {
        for b in &conj {
            let d = action.coboundary(&list[i], b);
            if let Ok(j) = list.binary_search(&d) {
                let (a, c) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(c)] = a.min(c);
            }
        }
    }
    (0..list.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}
