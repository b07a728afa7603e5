//! First nonabelian cohomology `H¹(Γ, G)` of a finite group `Γ`.
//!
//! Conventions: a cocycle satisfies `c(γδ) = c(γ)·σ_γ(c(δ))`, two cocycles
//! are equivalent when `c'(γ) = b⁻¹·c(γ)·σ_γ(b)`, and twisting by `c` gives
//! the action `σ_c(γ)(g) = c(γ)·σ_γ(g)·c(γ)⁻¹`.

mod almost_abelian;
mod free_abelian;

pub use almost_abelian::{
    bounded_cocycle_classes, h1_almost_abelian, AlmostAbelianAction, AlmostAbelianGroup,
    AlmostAbelianH1, Elem, ExtensionDatum, DEFAULT_SEARCH_BOUND,
};
pub use free_abelian::{h1_free_abelian, FreeAbelianAction, FreeAbelianH1};

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{compose, FiniteGroup, Perm};
use crate::par;

/// A cocycle with values in a finite group: `c[γ]` is an element index.
pub type Cocycle = Vec<usize>;

/// `Γ` acting on a finite group `G` by automorphisms `maps[γ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    gamma: FiniteGroup,
    group: FiniteGroup,
    maps: Vec<Perm>,
}

impl FiniteAction {
    pub fn new(gamma: FiniteGroup, group: FiniteGroup, maps: Vec<Perm>) -> Result<Self> {
        if maps.len() != gamma.order() {
            return Err(Error::InvalidAction(format!(
                "{} maps for |Γ| = {}",
                maps.len(),
                gamma.order()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if !group.is_automorphism(m) {
                return Err(Error::InvalidAction(format!(
                    "map {i} is not an automorphism"
                )));
            }
        }
        for a in 0..gamma.order() {
            for b in 0..gamma.order() {
                if maps[gamma.mul(a, b)] != compose(&maps[a], &maps[b]) {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        Ok(FiniteAction { gamma, group, maps })
    }

    pub fn trivial(gamma: FiniteGroup, group: FiniteGroup) -> Self {
        let maps = vec![group.identity_perm(); gamma.order()];
        FiniteAction { gamma, group, maps }
    }

    /// Build from the images of a generating set of `Γ` (`gens[i] ↦ images[i]`).
    pub fn from_generator_images(
        gamma: FiniteGroup,
        group: FiniteGroup,
        gens: &[usize],
        images: &[Perm],
    ) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidAction(
                "generator/image count mismatch".into(),
            ));
        }
        let n = gamma.order();
        let mut maps: Vec<Option<Perm>> = vec![None; n];
        maps[gamma.identity()] = Some(group.identity_perm());
        let mut queue = vec![gamma.identity()];
        while let Some(x) = queue.pop() {
            for (g, img) in gens.iter().zip(images) {
                let y = gamma.mul(x, *g);
                let m = compose(maps[x].as_ref().expect("visited"), img);
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
        Self::new(gamma, group, maps)
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn maps(&self) -> &[Perm] {
        &self.maps
    }

    pub fn act(&self, gamma: usize, x: usize) -> usize {
        self.maps[gamma][x]
    }

    pub fn trivial_cocycle(&self) -> Cocycle {
        vec![self.group.identity(); self.gamma.order()]
    }

    pub fn is_cocycle(&self, c: &[usize]) -> bool {
        let (gm, g) = (&self.gamma, &self.group);
        c.len() == gm.order()
            && c.iter().all(|&x| x < g.order())
            && (0..gm.order())
                .all(|a| (0..gm.order()).all(|b| c[gm.mul(a, b)] == g.mul(c[a], self.act(a, c[b]))))
    }

    /// `γ ↦ b⁻¹·c(γ)·σ_γ(b)`.
    pub fn coboundary(&self, c: &[usize], b: usize) -> Cocycle {
        let g = &self.group;
        c.iter()
            .enumerate()
            .map(|(a, &x)| g.mul(g.mul(g.inv(b), x), self.act(a, b)))
            .collect()
    }

    pub fn equivalent(&self, c: &[usize], d: &[usize]) -> bool {
        (0..self.group.order()).any(|b| self.coboundary(c, b) == d)
    }

    /// Every cocycle, sorted. Values on a generating set of `Γ` determine a
    /// cocycle, so the search runs over those and extends.
    pub fn cocycles(&self) -> Vec<Cocycle> {
        let gens = self.gamma.generators();
        let m = self.group.order();
        if gens.is_empty() {
            return vec![self.trivial_cocycle()];
        }
        let firsts: Vec<usize> = (0..m).collect();
        let mut out: Vec<Cocycle> = par::flat_map(&firsts, |&v0| {
            let mut found = Vec::new();
            let mut vals = vec![0usize; gens.len()];
            vals[0] = v0;
            loop {
                if let Some(c) = self.extend(&gens, &vals) {
                    if self.is_cocycle(&c) {
                        found.push(c);
                    }
                }
                // odometer over the remaining generator values
                let mut i = 1;
                while i < vals.len() {
                    vals[i] += 1;
                    if vals[i] < m {
                        break;
                    }
                    vals[i] = 0;
                    i += 1;
                }
                if i == vals.len() {
                    break;
                }
            }
            found
        });
        out.sort();
        out
    }

    fn extend(&self, gens: &[usize], vals: &[usize]) -> Option<Cocycle> {
        let (gm, g) = (&self.gamma, &self.group);
        let mut c: Vec<Option<usize>> = vec![None; gm.order()];
        c[gm.identity()] = Some(g.identity());
        let mut queue = vec![gm.identity()];
        while let Some(x) = queue.pop() {
            let cx = c[x].expect("visited");
            for (s, &v) in gens.iter().zip(vals) {
                let y = gm.mul(x, *s);
                let cy = g.mul(cx, self.act(x, v));
                match c[y] {
                    None => {
                        c[y] = Some(cy);
                        queue.push(y);
                    }
                    Some(old) if old != cy => return None,
                    _ => {}
                }
            }
        }
        c.into_iter().collect()
    }
}

/// One representative per class of `H¹(Γ, G)`: the trivial cocycle first,
/// then the lexicographically smallest member of each other class, sorted.
pub fn h1_finite(action: &FiniteAction) -> Vec<Cocycle> {
    let all = action.cocycles();
    let index: BTreeMap<&Cocycle, usize> = all.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = vec![false; all.len()];
    let trivial = action.trivial_cocycle();
    let mut reps = Vec::new();
    let mut trivial_seen = false;
    for i in 0..all.len() {
        if seen[i] {
            continue;
        }
        let mut is_trivial = false;
        for b in 0..action.group.order() {
            let d = action.coboundary(&all[i], b);
            is_trivial |= d == trivial;
            seen[index[&d]] = true;
        }
        if is_trivial {
            trivial_seen = true;
        } else {
            reps.push(all[i].clone());
        }
    }
    debug_assert!(trivial_seen);
    reps.insert(0, trivial);
    reps
}

/// `σ_c(γ)(g) = c(γ)·σ_γ(g)·c(γ)⁻¹`.
pub fn twist_action(action: &FiniteAction, c: &[usize]) -> Result<FiniteAction> {
    if !action.is_cocycle(c) {
        return Err(Error::NotACocycle);
    }
    let g = &action.group;
    let maps = (0..action.gamma.order())
        .map(|a| {
            (0..g.order())
                .map(|x| g.mul(g.mul(c[a], action.act(a, x)), g.inv(c[a])))
                .collect()
        })
        .collect();
    Ok(FiniteAction {
        gamma: action.gamma.clone(),
        group: action.group.clone(),
        maps,
    })
}

/// `d ↦ d·c⁻¹` (pointwise), the bijection from cocycles for `σ` to cocycles
/// for `σ_c` sending `c` to the trivial cocycle.
pub fn twist_cocycle(action: &FiniteAction, d: &[usize], c: &[usize]) -> Cocycle {
    let g = &action.group;
    d.iter().zip(c).map(|(&x, &y)| g.mul(x, g.inv(y))).collect()
}

/// Upper bound for `#H¹(Γ, G)` with `G` almost abelian: the quotient layer
/// contributes at most `index^(|Γ|-1)` cocycles, the `Z^r` layer at most
/// `|Γ|^(r(|Γ|-1))` classes (a `|Γ|`-torsion quotient of a rank
/// `r(|Γ|-1)` lattice), the finite kernel at most `|K|^(|Γ|-1)`.
pub fn h1_cardinality_bound(gamma_order: u64, index: u64, k_order: u64, r: u64) -> BigUint {
    if gamma_order <= 1 {
        return BigUint::one();
    }
    let e = gamma_order - 1;
    let pw = |b: u64, x: u64| -> BigUint { num_traits::pow(BigUint::from(b), x as usize) };
    pw(index, e) * pw(gamma_order, r * e) * pw(k_order, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn h1_finite_examples() {
        let t = FiniteAction::trivial(FiniteGroup::trivial(), FiniteGroup::cyclic(5));
        assert_eq!(h1_finite(&t).len(), 1);
        let a = FiniteAction::trivial(c2(), c2());
        assert_eq!(h1_finite(&a), vec![vec![0, 0], vec![0, 1]]);
        let c3 = FiniteGroup::cyclic(3);
        let inv =
            FiniteAction::new(c2(), c3.clone(), vec![c3.identity_perm(), c3.inversion()]).unwrap();
        assert_eq!(h1_finite(&inv).len(), 1);
    }

    #[test]
    fn rejects_bad_actions() {
        let c3 = FiniteGroup::cyclic(3);
        assert!(matches!(
            FiniteAction::new(c2(), c3.clone(), vec![c3.identity_perm(), vec![0, 2, 2]]),
            Err(Error::InvalidAction(_))
        ));
        // inversion squared is the identity, but C3 -> Aut(C3) needs maps[2] = maps[1]^2
        let c3g = FiniteGroup::cyclic(3);
        assert!(matches!(
            FiniteAction::new(
                c3g.clone(),
                c3.clone(),
                vec![c3.identity_perm(), c3.inversion(), c3.inversion()]
            ),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn twisting() {
        let (s3, _) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let a = FiniteAction::trivial(c2(), s3.clone());
        // homomorphisms C2 -> S3 up to conjugacy: trivial and transpositions
        let reps = h1_finite(&a);
        assert_eq!(reps.len(), 2);
        let c = &reps[1];
        let t = twist_action(&a, c).unwrap();
        assert_ne!(t, a);
        assert!(t.is_cocycle(&twist_cocycle(&a, c, c)));
        assert_eq!(twist_action(&a, &a.trivial_cocycle()).unwrap(), a);
        let three_cycle = (0..s3.order())
            .find(|&x| s3.mul(x, x) != s3.identity())
            .unwrap();
        assert_eq!(
            twist_action(&a, &[0, three_cycle]).unwrap_err(),
            Error::NotACocycle
        );
        let ab = FiniteAction::trivial(c2(), FiniteGroup::cyclic(4));
        for c in ab.cocycles() {
            assert_eq!(twist_action(&ab, &c).unwrap(), ab);
        }
    }

    #[test]
    fn cardinality_bound() {
        assert_eq!(h1_cardinality_bound(1, 5, 7, 3), BigUint::one());
        assert!(h1_cardinality_bound(2, 1, 2, 0) >= BigUint::from(2u32));
        assert!(h1_cardinality_bound(3, 2, 2, 1) <= h1_cardinality_bound(3, 2, 2, 2));
    }
}
