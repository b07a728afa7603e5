//! Reference computations for the integration and acceptance tests. The
//! oracles never call into the algorithms under test: groups and actions are
//! built with the library's plain data types, everything else is brute force
//! over `i64` or exact 2x2 rational arithmetic. The `check_*` drivers run the
//! library and compare it with an oracle.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use twistlat::cohomology::{
    h1_finite, h1_free_abelian, twist_action, twist_cocycle, AlmostAbelianAction,
    AlmostAbelianGroup, Elem, ExtensionDatum, FiniteAction, FreeAbelianAction,
};
use twistlat::group::{compose, FiniteGroup, Perm};
use twistlat::matrix::IntMatrix;
use twistlat::Lattice;

// ---------------------------------------------------------------- groups

fn perm_group(gens: &[Perm]) -> (FiniteGroup, Vec<Perm>) {
    FiniteGroup::from_permutations(gens).unwrap()
}

/// Quaternion units `±1, ±i, ±j, ±k` by their multiplication table.
pub fn quaternion() -> FiniteGroup {
    // element index = 4 * (sign bit) + unit, unit 0..4 = 1, i, j, k
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (neg, u) = unit_mul(x % 4, y % 4);
                    let sign = (x / 4) ^ (y / 4) ^ usize::from(neg);
                    4 * sign + u
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table).unwrap()
}

pub fn symmetric3() -> (FiniteGroup, Vec<Perm>) {
    perm_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn coefficient_groups() -> Vec<(&'static str, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    vec![
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C6", c(6)),
        ("C2xC2", FiniteGroup::direct_product(&c(2), &c(2))),
        ("C2xC4", FiniteGroup::direct_product(&c(2), &c(4))),
        ("C3xC3", FiniteGroup::direct_product(&c(3), &c(3))),
        ("S3", symmetric3().0),
        ("D4", perm_group(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).0),
        ("Q8", quaternion()),
        ("A4", perm_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).0),
        (
            "D6",
            perm_group(&[vec![1, 2, 3, 4, 5, 0], vec![0, 5, 4, 3, 2, 1]]).0,
        ),
        ("S4", perm_group(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).0),
    ]
}

fn perm_pow(p: &[usize], n: usize) -> Perm {
    let mut acc: Perm = (0..p.len()).collect();
    for _ in 0..n {
        acc = compose(p, &acc);
    }
    acc
}

/// `(a, b) ↦ (b, a)` on a square direct product.
fn swap_factors(order: usize) -> Option<Perm> {
    let n = (1..=order).find(|k| k * k == order)?;
    Some((0..order).map(|x| (x % n) * n + x / n).collect())
}

fn is_nonabelian(g: &FiniteGroup) -> bool {
    !g.is_abelian()
}

/// `(Γ, G, σ)` triples with `|Γ| <= 6` and `|G| <= 24`.
pub fn finite_corpus() -> Vec<(String, FiniteAction)> {
    let mut out = Vec::new();
    for (gname, g) in coefficient_groups() {
        let id = g.identity_perm();
        let mut autos: Vec<Perm> = vec![id.clone()];
        if g.is_abelian() {
            autos.push(g.inversion());
        }
        if let Some(s) =
            swap_factors(g.order()).filter(|s| g.is_automorphism(s) && gname.contains('x'))
        {
            autos.push(s);
        }
        for x in 1..g.order() {
            autos.push(g.inner_automorphism(x));
        }
        let mut seen: Vec<Perm> = Vec::new();
        autos.retain(|a| {
            let new = !seen.contains(a);
            seen.push(a.clone());
            new
        });
        for n in [2usize, 3, 4, 6] {
            let gamma = FiniteGroup::cyclic(n);
            // trivial plus up to two nontrivial actions of each order
            let picks: Vec<&Perm> = autos
                .iter()
                .filter(|a| perm_pow(a, n) == id)
                .take(3)
                .collect();
            for (i, a) in picks.into_iter().enumerate() {
                let act = FiniteAction::from_generator_images(
                    gamma.clone(),
                    g.clone(),
                    &[1],
                    std::slice::from_ref(a),
                )
                .unwrap();
                out.push((format!("C{n} on {gname} #{i}"), act));
            }
        }
    }
    // Klein four acting through two commuting involutions
    let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    for (gname, g) in coefficient_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= 8)
    {
        let id = g.identity_perm();
        let inv: Vec<Perm> = (0..g.order())
            .map(|x| g.inner_automorphism(x))
            .chain(g.is_abelian().then(|| g.inversion()))
            .filter(|a| perm_pow(a, 2) == id && *a != id)
            .collect();
        if let Some(a) = inv.first() {
            let b = inv
                .iter()
                .find(|b| *b != a && compose(a, b) == compose(b, a))
                .unwrap_or(&id);
            let act = FiniteAction::from_generator_images(
                v4.clone(),
                g.clone(),
                &[2, 1],
                &[a.clone(), b.clone()],
            )
            .unwrap();
            out.push((format!("V4 on {gname}"), act));
        }
    }
    // S3 acting on C3 through the sign, and on itself by conjugation
    let (s3, perms) = symmetric3();
    let sign = |p: &Perm| {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                inv += usize::from(p[i] > p[j]);
            }
        }
        inv % 2 == 1
    };
    let c3 = FiniteGroup::cyclic(3);
    let maps = perms
        .iter()
        .map(|p| {
            if sign(p) {
                c3.inversion()
            } else {
                c3.identity_perm()
            }
        })
        .collect();
    out.push((
        "S3 on C3 by sign".into(),
        FiniteAction::new(s3.clone(), c3, maps).unwrap(),
    ));
    let conj = (0..s3.order()).map(|x| s3.inner_automorphism(x)).collect();
    out.push((
        "S3 on S3 by conjugation".into(),
        FiniteAction::new(s3.clone(), s3.clone(), conj).unwrap(),
    ));
    out.push((
        "S3 on Q8 trivially".into(),
        FiniteAction::trivial(s3, quaternion()),
    ));
    out
}

/// Cases of `finite_corpus` whose coefficient group is nonabelian.
pub fn nonabelian_cases() -> Vec<(String, FiniteAction)> {
    finite_corpus()
        .into_iter()
        .filter(|(_, a)| is_nonabelian(a.group()))
        .collect()
}

// ------------------------------------------------------ cocycle oracle

/// Every map `Γ → G` satisfying the cocycle identity, found by assigning
/// values in index order and rejecting as soon as a fully assigned triple
/// fails.
pub fn brute_force_cocycles(a: &FiniteAction) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c = vec![usize::MAX; a.gamma().order()];
    fn rec(i: usize, c: &mut Vec<usize>, a: &FiniteAction, out: &mut Vec<Vec<usize>>) {
        let (gm, g) = (a.gamma(), a.group());
        let n = gm.order();
        if i == n {
            out.push(c.clone());
            return;
        }
        for v in 0..g.order() {
            c[i] = v;
            let ok = (0..=i).all(|x| {
                (0..=i).all(|y| {
                    let xy = gm.mul(x, y);
                    xy > i || c[xy] == g.mul(c[x], a.act(x, c[y]))
                })
            });
            if ok {
                rec(i + 1, c, a, out);
            }
        }
        c[i] = usize::MAX;
    }
    rec(0, &mut c, a, &mut out);
    out.sort();
    out
}

/// Class label per cocycle under `c ~ b⁻¹ c(γ) σ_γ(b)`.
pub fn brute_force_classes(a: &FiniteAction, cocycles: &[Vec<usize>]) -> Vec<usize> {
    let g = a.group();
    let mut label = vec![usize::MAX; cocycles.len()];
    let mut next = 0;
    for i in 0..cocycles.len() {
        if label[i] != usize::MAX {
            continue;
        }
        for b in 0..g.order() {
            let d: Vec<usize> = cocycles[i]
                .iter()
                .enumerate()
                .map(|(x, &v)| g.mul(g.mul(g.inv(b), v), a.act(x, b)))
                .collect();
            let j = cocycles
                .binary_search(&d)
                .expect("coboundary of a cocycle is a cocycle");
            label[j] = next;
        }
        next += 1;
    }
    label
}

pub fn brute_force_h1_size(a: &FiniteAction) -> usize {
    let cs = brute_force_cocycles(a);
    let labels = brute_force_classes(a, &cs);
    labels.iter().max().map_or(0, |m| m + 1)
}

// ----------------------------------------------- free abelian, cyclic Γ

pub type M64 = Vec<Vec<i64>>;

pub fn mat_mul(a: &M64, b: &M64) -> M64 {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity64(n: usize) -> M64 {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Diagonal of a Smith form of `a` together with `V`, `V⁻¹` (column side).
pub fn smith64(a: &M64) -> (Vec<i64>, M64, M64) {
    let mut a = a.clone();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut v = identity64(n);
    let mut vi = identity64(n);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return (diag, v, vi);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            vi.swap(t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(p);
                let pivot = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    row[j] -= q * row[t];
                }
                let rj = vi[j].clone();
                for (x, y) in vi[t].iter_mut().zip(&rj) {
                    *x += q * y;
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    (diag, v, vi)
}

/// Invariant factors (> 1) of `H¹(C_n, Z^r) = ker N / im(g − 1)` for the
/// generator matrix `g`, with `N = 1 + g + ... + g^{n−1}`.
pub fn cyclic_h1_divisors(g: &M64, n: usize) -> Vec<i64> {
    let r = g.len();
    let mut norm = vec![vec![0i64; r]; r];
    let mut p = identity64(r);
    for _ in 0..n {
        for i in 0..r {
            for j in 0..r {
                norm[i][j] += p[i][j];
            }
        }
        p = mat_mul(&p, g);
    }
    let (d, _v, vi) = smith64(&norm);
    let rank = d.len();
    let gm1: M64 = (0..r)
        .map(|i| (0..r).map(|j| g[i][j] - i64::from(i == j)).collect())
        .collect();
    // coordinates of the columns of g − 1 in the kernel basis
    let k = r - rank;
    if k == 0 {
        return Vec::new();
    }
    let coords: M64 = (0..k)
        .map(|row| {
            (0..r)
                .map(|col| (0..r).map(|t| vi[rank + row][t] * gm1[t][col]).sum())
                .collect()
        })
        .collect();
    let (e, _, _) = smith64(&coords);
    assert_eq!(e.len(), k, "im(g − 1) must have full rank in ker N");
    let mut out: Vec<i64> = e.into_iter().filter(|&x| x > 1).collect();
    out.sort_unstable();
    out
}

/// `(name, order of Γ, generator matrix)` for cyclic actions on `Z^r`.
pub fn free_corpus() -> Vec<(&'static str, usize, M64)> {
    vec![
        ("C2 trivial on Z", 2, vec![vec![1]]),
        ("C2 negation on Z", 2, vec![vec![-1]]),
        ("C2 swap on Z2", 2, vec![vec![0, 1], vec![1, 0]]),
        ("C2 negation on Z2", 2, vec![vec![-1, 0], vec![0, -1]]),
        ("C2 shear on Z2", 2, vec![vec![1, 1], vec![0, -1]]),
        ("C3 rotation on Z2", 3, vec![vec![0, -1], vec![1, -1]]),
        ("C4 rotation on Z2", 4, vec![vec![0, -1], vec![1, 0]]),
        ("C6 rotation on Z2", 6, vec![vec![1, -1], vec![1, 0]]),
        (
            "C3 cycle on Z3",
            3,
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
        ),
        (
            "C2 diag(-1,1,-1)",
            2,
            vec![vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]],
        ),
        (
            "C4 cycle on Z4",
            4,
            vec![
                vec![0, 0, 0, 1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
            ],
        ),
        (
            "C6 rotation plus sign",
            6,
            vec![vec![1, -1, 0], vec![1, 0, 0], vec![0, 0, -1]],
        ),
        (
            "C4 rotation plus swap",
            4,
            vec![
                vec![0, -1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
            ],
        ),
    ]
}

// ----------------------------------------------------- lattice points

/// Integer points `x` with `xᵀ G x = d` and `x = a g1 + b g2`, `a, b >= 0`,
/// for a 2-dimensional cone, scanning `|x_i| <= bound`.
pub fn box_scan_2d(
    gram: [[i64; 2]; 2],
    g1: [i64; 2],
    g2: [i64; 2],
    d: i64,
    bound: i64,
) -> Vec<[i64; 2]> {
    let det = g1[0] * g2[1] - g1[1] * g2[0];
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let q = gram[0][0] * x * x + 2 * gram[0][1] * x * y + gram[1][1] * y * y;
            if q != d {
                continue;
            }
            // Cramer: a = det(x, g2)/det, b = det(g1, x)/det
            let a = (x * g2[1] - y * g2[0]) * det.signum();
            let b = (g1[0] * y - g1[1] * x) * det.signum();
            if a >= 0 && b >= 0 {
                out.push([x, y]);
            }
        }
    }
    out.sort();
    out
}

/// Cone coefficients of `x` in terms of `g1, g2` as exact rationals.
pub fn coefficients_2d(g1: [i64; 2], g2: [i64; 2], x: [i64; 2]) -> (Ratio<i64>, Ratio<i64>) {
    let det = g1[0] * g2[1] - g1[1] * g2[0];
    (
        Ratio::new(x[0] * g2[1] - x[1] * g2[0], det),
        Ratio::new(g1[0] * x[1] - g1[1] * x[0], det),
    )
}

// ------------------------------------------------- two-root reflections

type R2 = [[BigRational; 2]; 2];

fn r2_mul(a: &R2, b: &R2) -> R2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Order of `r1 r2` on `span{E1, E2}` for the Gram matrix `[[β, α], [α, β]]`,
/// by exact powers. Finite orders of rational 2x2 matrices are at most 6, so
/// anything not the identity by the 12th power has infinite order.
pub fn pair_order_by_powers(beta: i64, alpha: i64) -> Option<u32> {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let (one, z) = (r(1, 1), r(0, 1));
    // r_i(x) = x − 2 (x, E_i)/β E_i in the basis E1, E2
    let t = r(2 * alpha, beta);
    let r1: R2 = [[-one.clone(), -t.clone()], [z.clone(), one.clone()]];
    let r2: R2 = [[one.clone(), z.clone()], [-t, -one.clone()]];
    let p = r2_mul(&r1, &r2);
    let id: R2 = [[one.clone(), z.clone()], [z, one]];
    let mut acc = p.clone();
    for k in 1..=12u32 {
        if acc == id {
            return Some(k);
        }
        acc = r2_mul(&acc, &p);
    }
    None
}

// ------------------------------------------------------ orbit fixtures

/// `[[β, α], [α, β]] ⊕ U` with `E_1, E_2` the first two basis vectors.
pub fn two_root_lattice(beta: i64, alpha: i64) -> Lattice {
    Lattice::from_i64(&[
        &[beta, alpha, 0, 0],
        &[alpha, beta, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, 1, 0],
    ])
    .unwrap()
}

fn lattice_of(rows: &[Vec<i64>]) -> Lattice {
    Lattice::from_i64(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>()).unwrap()
}

fn permutation_matrix(images: &[usize]) -> IntMatrix {
    let n = images.len();
    IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(images[j] == i)))
}

/// `(lattice, roots, generators of the action)`; every orbit is finite.
pub fn orbit_cases() -> Vec<(Lattice, Vec<Vec<i64>>, Vec<IntMatrix>)> {
    let unit = |n: usize, i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    // k copies of A1 (or A2) permuted, plus U
    let block_sum = |blocks: &[[[i64; 2]; 2]], single: &[i64]| {
        let n = 2 * blocks.len() + single.len() + 2;
        let mut rows = vec![vec![0i64; n]; n];
        for (b, m) in blocks.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    rows[2 * b + i][2 * b + j] = m[i][j];
                }
            }
        }
        let off = 2 * blocks.len();
        for (i, &x) in single.iter().enumerate() {
            rows[off + i][off + i] = x;
        }
        rows[n - 2][n - 1] = 1;
        rows[n - 1][n - 2] = 1;
        lattice_of(&rows)
    };
    let a2 = [[-2, 1], [1, -2]];
    vec![
        (
            two_root_lattice(-2, 1),
            vec![unit(4, 0), unit(4, 1)],
            vec![permutation_matrix(&[1, 0, 2, 3])],
        ),
        (
            two_root_lattice(-2, 0),
            vec![unit(4, 0), unit(4, 1)],
            vec![permutation_matrix(&[1, 0, 2, 3])],
        ),
        (
            two_root_lattice(-4, 2),
            vec![unit(4, 0), unit(4, 1)],
            vec![permutation_matrix(&[1, 0, 2, 3])],
        ),
        (
            block_sum(&[], &[-2, -2, -2]),
            vec![unit(5, 0), unit(5, 1), unit(5, 2)],
            vec![permutation_matrix(&[1, 2, 0, 3, 4])],
        ),
        (
            block_sum(&[a2, a2], &[]),
            (0..4).map(|i| unit(6, i)).collect(),
            vec![permutation_matrix(&[3, 2, 1, 0, 4, 5])],
        ),
        (
            block_sum(&[a2], &[-2, -2]),
            (0..4).map(|i| unit(6, i)).collect(),
            vec![permutation_matrix(&[1, 0, 3, 2, 4, 5])],
        ),
    ]
}

// ------------------------------------------------------------ drivers

pub fn z_times_c2() -> AlmostAbelianAction {
    let grp = AlmostAbelianGroup::new(ExtensionDatum::direct(FiniteGroup::cyclic(2), 1)).unwrap();
    let ks = vec![grp.k_elem(0), grp.k_elem(1)];
    let es = vec![Elem {
        q: 0,
        k: 0,
        v: vec![BigInt::from(-1)],
    }];
    let ss = vec![grp.s_elem(0)];
    AlmostAbelianAction::from_generator_images(grp, FiniteGroup::cyclic(2), &[1], &[(ks, es, ss)])
        .unwrap()
}

pub fn check_h1_finite(name: &str, a: &FiniteAction) -> Result<(), String> {
    let reps = h1_finite(a);
    let cocycles = brute_force_cocycles(a);
    let labels = brute_force_classes(a, &cocycles);
    let count = labels.iter().max().map_or(0, |m| m + 1);
    if reps.len() != count {
        return Err(format!("{name}: {} classes, oracle {count}", reps.len()));
    }
    if reps[0] != vec![a.group().identity(); a.gamma().order()] {
        return Err(format!("{name}: first class is not the trivial one"));
    }
    let mut hit = vec![false; count];
    for r in &reps {
        let i = cocycles
            .binary_search(r)
            .map_err(|_| format!("{name}: {r:?} is not a cocycle"))?;
        if std::mem::replace(&mut hit[labels[i]], true) {
            return Err(format!("{name}: two representatives of one class"));
        }
    }
    Ok(())
}

fn to_matrix(m: &M64) -> IntMatrix {
    IntMatrix::from_fn(m.len(), m.len(), |i, j| BigInt::from(m[i][j]))
}

pub fn check_free(name: &str, n: usize, g: &M64) -> Result<(), String> {
    let r = g.len();
    let a =
        FreeAbelianAction::from_generator_images(FiniteGroup::cyclic(n), r, &[1], &[to_matrix(g)])
            .map_err(|e| format!("{name}: {e}"))?;
    let h = h1_free_abelian(&a).map_err(|e| format!("{name}: {e}"))?;
    let got: Vec<i64> = h
        .divisors
        .iter()
        .map(|d| i64::try_from(d).unwrap())
        .collect();
    let want = cyclic_h1_divisors(g, n);
    if got != want {
        return Err(format!("{name}: divisors {got:?}, oracle {want:?}"));
    }
    if h.representatives.len() as i64 != got.iter().product::<i64>() {
        return Err(format!(
            "{name}: {} representatives",
            h.representatives.len()
        ));
    }
    if let Some(d) = got.iter().find(|&&d| n as i64 % d != 0) {
        return Err(format!("{name}: divisor {d} does not divide |Γ|"));
    }
    for c in &h.representatives {
        let scaled: Vec<Vec<BigInt>> = c
            .iter()
            .map(|v| v.iter().map(|x| x * BigInt::from(n)).collect())
            .collect();
        if !a.is_cocycle(c) || !a.is_coboundary(&scaled) {
            return Err(format!("{name}: representative is not a |Γ|-torsion class"));
        }
    }
    Ok(())
}

/// Twisting by `c` must biject cocycles for `σ` onto cocycles for `σ_c` and
/// induce a bijection of classes; returns the number of twists checked.
pub fn check_twists(name: &str, a: &FiniteAction) -> Result<usize, String> {
    let cocycles = brute_force_cocycles(a);
    let labels = brute_force_classes(a, &cocycles);
    let mut checked = 0;
    let picks: Vec<Vec<usize>> = h1_finite(a)
        .into_iter()
        .skip(1)
        .take(2)
        .chain(std::iter::once(cocycles[cocycles.len() / 2].clone()))
        .collect();
    for c in &picks {
        let t = twist_action(a, c).map_err(|e| format!("{name}: {e}"))?;
        let t_cocycles = brute_force_cocycles(&t);
        let t_labels = brute_force_classes(&t, &t_cocycles);
        if twist_cocycle(a, c, c) != vec![a.group().identity(); a.gamma().order()] {
            return Err(format!("{name}: c does not twist to the trivial cocycle"));
        }
        let mut image: Vec<Vec<usize>> = cocycles.iter().map(|d| twist_cocycle(a, d, c)).collect();
        let mut class_map: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, d) in image.iter().enumerate() {
            let j = t_cocycles
                .binary_search(d)
                .map_err(|_| format!("{name}: twisted image is not a cocycle"))?;
            if class_map
                .insert(labels[i], t_labels[j])
                .is_some_and(|p| p != t_labels[j])
            {
                return Err(format!("{name}: class map is not well defined"));
            }
        }
        let mut targets: Vec<usize> = class_map.values().copied().collect();
        targets.sort_unstable();
        targets.dedup();
        if targets.len() != class_map.len() || targets.len() != t_labels.iter().max().unwrap() + 1 {
            return Err(format!("{name}: class map is not bijective"));
        }
        image.sort();
        if image != t_cocycles {
            return Err(format!("{name}: not a bijection on cocycles"));
        }
        checked += 1;
    }
    Ok(checked)
}
