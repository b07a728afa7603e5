mod support;

use num_bigint::BigInt;
use support::*;
use twistlat::cohomology::{
    h1_almost_abelian, AlmostAbelianAction, AlmostAbelianGroup, Elem, ExtensionDatum,
    DEFAULT_SEARCH_BOUND,
};
use twistlat::group::FiniteGroup;
use twistlat::matrix::IntMatrix;

#[test]
fn corpus_is_large_enough() {
    let corpus = finite_corpus();
    assert!(corpus.len() >= 30, "only {} cases", corpus.len());
    assert!(corpus
        .iter()
        .all(|(_, a)| a.gamma().order() <= 6 && a.group().order() <= 24));
    assert!(nonabelian_cases().len() >= 5);
    assert!(free_corpus().len() >= 10);
}

#[test]
fn h1_finite_matches_exhaustive_enumeration() {
    for (name, a) in finite_corpus() {
        check_h1_finite(&name, &a).unwrap();
    }
}

#[test]
fn free_abelian_matches_smith_oracle() {
    for (name, n, g) in free_corpus() {
        check_free(name, n, &g).unwrap();
    }
}

#[test]
fn twisting_is_a_bijection_on_classes() {
    let checked: usize = nonabelian_cases()
        .iter()
        .map(|(name, a)| check_twists(name, a).unwrap())
        .sum();
    assert!(checked >= 5);
}

#[test]
fn almost_abelian_z_times_c2_has_four_classes() {
    // Γ = C2 acting on Z × C2 by (v, k) ↦ (−v, k). Every c(t) = (v, k) is a
    // cocycle; b shifts v by −2b and fixes k, so a class is (v mod 2, k).
    let a = z_times_c2();
    let h = h1_almost_abelian(&a, DEFAULT_SEARCH_BOUND).unwrap();
    assert!(h.exact);
    assert_eq!(h.classes.len(), 4);
    let mut invariants: Vec<(i64, usize)> = h
        .classes
        .iter()
        .map(|c| {
            assert_eq!(
                c[0],
                Elem {
                    q: 0,
                    k: 0,
                    v: vec![BigInt::from(0)]
                }
            );
            let v = i64::try_from(&c[1].v[0]).unwrap();
            (v.rem_euclid(2), c[1].k)
        })
        .collect();
    invariants.sort_unstable();
    assert_eq!(invariants, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
}

#[test]
fn almost_abelian_infinite_dihedral() {
    // involutions of D∞ = Z ⋊ C2 up to conjugacy: 1, t, t·e
    let zero = (0usize, vec![BigInt::from(0)]);
    let grp = AlmostAbelianGroup::new(ExtensionDatum {
        k: FiniteGroup::trivial(),
        rank: 1,
        q: FiniteGroup::cyclic(2),
        psi: vec![vec![0]],
        theta: vec![vec![0], vec![0]],
        kappa: vec![vec![0], vec![0]],
        a: vec![IntMatrix::identity(1), IntMatrix::from_i64(&[&[-1]])],
        factor: vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]],
    })
    .unwrap();
    let a = AlmostAbelianAction::trivial(grp, FiniteGroup::cyclic(2));
    let h = h1_almost_abelian(&a, DEFAULT_SEARCH_BOUND).unwrap();
    assert_eq!(h.classes.len(), 3);
    let parities: Vec<(usize, i64)> = h
        .classes
        .iter()
        .map(|c| (c[1].q, i64::try_from(&c[1].v[0]).unwrap().rem_euclid(2)))
        .collect();
    let mut nontrivial: Vec<_> = parities[1..].to_vec();
    nontrivial.sort_unstable();
    assert_eq!(nontrivial, vec![(1, 0), (1, 1)]);
}
