//! Explicit effective constants for automorphism groups of polarized
//! varieties and for torsion in `GL_ρ(Z)`, as exact integers.
//!
//! Every function has a second, naive evaluation (plain repeated
//! multiplication) used to cross-check the fast one.

use num_bigint::BigUint;
use num_traits::{One, Pow};

/// `m = 2·(n+2)!·n`; `mL` is base point free for an ample `L` on an
/// `n`-dimensional variety with the relevant vanishing. Requires `n >= 1`.
pub fn bpf_multiple(n: u32) -> BigUint {
    let fact: BigUint = (1..=n + 2).map(BigUint::from).product();
    fact * BigUint::from(2u32) * BigUint::from(n)
}

fn base(n: u32, ln: &BigUint) -> BigUint {
    Pow::pow(&bpf_multiple(n), n) * ln
}

/// `(mⁿ·Lⁿ)^{n+1}`: order bound for a finite cyclic group of automorphisms.
pub fn cyclic_subgroup_bound(n: u32, ln: &BigUint) -> BigUint {
    Pow::pow(&base(n, ln), n + 1)
}

/// `(mⁿ·Lⁿ)^{16·n·3ⁿ}`: order bound for `Aut(X, mL)`.
pub fn aut_group_bound(n: u32, ln: &BigUint) -> BigUint {
    Pow::pow(&base(n, ln), aut_exponent(n))
}

pub fn aut_exponent(n: u32) -> u64 {
    16 * u64::from(n) * 3u64.pow(n)
}

/// `4^{22²} = 2^968`: bound for finite subgroups of automorphisms of a K3
/// lattice of rank 22.
pub fn k3_aut_torsion_bound() -> BigUint {
    Pow::pow(&BigUint::from(4u32), 22u32 * 22)
}

/// `|GL_ρ(F_3)| = ∏_{i<ρ} (3^ρ − 3^i)`. Torsion of `GL_ρ(Z)` injects into
/// it, since `1 + 3M_ρ(Z_3)` is torsion free.
pub fn gl_f3_order(rho: u32) -> BigUint {
    let three = BigUint::from(3u32);
    let top = Pow::pow(&three, rho);
    (0..rho).map(|i| &top - Pow::pow(&three, i)).product()
}

fn naive_pow(b: &BigUint, e: u64) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

fn naive_m(n: u32) -> BigUint {
    let mut m = BigUint::from(2u32 * n);
    let mut i = BigUint::one();
    while i <= BigUint::from(n + 2) {
        m *= &i;
        i += 1u32;
    }
    m
}

/// Recompute every entry by repeated multiplication and compare.
pub fn dual_path_agrees(n: u32, ln: &BigUint, rho: u32) -> bool {
    let nb = naive_pow(&naive_m(n), u64::from(n)) * ln;
    let mut gl = BigUint::one();
    for i in 0..rho {
        gl *= naive_pow(&BigUint::from(3u32), u64::from(rho))
            - naive_pow(&BigUint::from(3u32), u64::from(i));
    }
    let mut k3 = BigUint::one();
    for _ in 0..968 {
        k3 *= 2u32;
    }
    bpf_multiple(n) == naive_m(n)
        && cyclic_subgroup_bound(n, ln) == naive_pow(&nb, u64::from(n) + 1)
        && aut_group_bound(n, ln) == naive_pow(&nb, aut_exponent(n))
        && k3_aut_torsion_bound() == k3
        && gl_f3_order(rho) == gl
}

/// Where a constant comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The published closed form, evaluated.
    Stated,
    /// Combined here from stated ingredients.
    Assembled,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Stated => "stated",
            Provenance::Assembled => "assembled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: BigUint,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub dimension: u32,
    pub self_intersection: BigUint,
    pub rank: Option<u32>,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// Requires `n >= 1`, `ln >= 1` and `rank >= 1` if given.
    pub fn new(n: u32, ln: &BigUint, rank: Option<u32>) -> Self {
        let mut entries = vec![
            BoundEntry {
                name: "bpf_multiple",
                formula: "m = 2(n+2)!n",
                value: bpf_multiple(n),
                provenance: Provenance::Stated,
            },
            BoundEntry {
                name: "cyclic_subgroup_bound",
                formula: "(m^n L^n)^(n+1)",
                value: cyclic_subgroup_bound(n, ln),
                provenance: Provenance::Stated,
            },
            BoundEntry {
                name: "aut_group_bound",
                formula: "(m^n L^n)^(16 n 3^n)",
                value: aut_group_bound(n, ln),
                provenance: Provenance::Stated,
            },
            BoundEntry {
                name: "k3_aut_torsion_bound",
                formula: "4^(22^2)",
                value: k3_aut_torsion_bound(),
                provenance: Provenance::Stated,
            },
        ];
        if let Some(rho) = rank {
            entries.push(BoundEntry {
                name: "gl_f3_order",
                formula: "prod_{i<rho} (3^rho - 3^i)",
                value: gl_f3_order(rho),
                provenance: Provenance::Assembled,
            });
        }
        BoundReport {
            dimension: n,
            self_intersection: ln.clone(),
            rank,
            entries,
        }
    }

    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.value)
    }
}
