//! Finite groups given by multiplication tables.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// A permutation of `0..n`, composed as functions: `(a * b)(x) = a(b(x))`.
pub type Perm = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table (`table[a][b] = a·b`): closure,
    /// associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroupTable(
                "table is not n x n over 0..n".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroupTable("no identity".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroupTable(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup {
            table,
            identity: 0,
            inverses: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// Elements `(a, b)` indexed as `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        let inverses = (0..m * n)
            .map(|x| g.inv(x / n) * n + h.inv(x % n))
            .collect();
        FiniteGroup {
            table,
            identity: g.identity * n + h.identity,
            inverses,
        }
    }

    /// The permutation group generated by `gens`. Element 0 is the identity;
    /// the rest are in lexicographic order of their images. Also returns the
    /// permutations themselves.
    pub fn from_permutations(gens: &[Perm]) -> Result<(Self, Vec<Perm>)> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::InvalidGroupTable(
                    "generator is not a permutation".into(),
                ));
            }
        }
        let id: Perm = (0..degree).collect();
        let elems = closure(id.clone(), gens, |a, b| compose(a, b), 1 << 16)?;
        let mut sorted: Vec<Perm> = elems.into_iter().filter(|p| *p != id).collect();
        sorted.sort();
        sorted.insert(0, id);
        let index: BTreeMap<&Perm, usize> =
            sorted.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = sorted
            .iter()
            .map(|a| sorted.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let group = Self::from_table(table)?;
        Ok((group, sorted))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn pow(&self, a: usize, mut e: i64) -> usize {
        let mut base = if e < 0 { self.inv(a) } else { a };
        e = e.abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[self.identity] = true;
        for a in 0..self.order() {
            if !span[a] {
                gens.push(a);
                let elems = closure(self.identity, &gens, |x, y| self.mul(*x, *y), usize::MAX)
                    .expect("finite group closure");
                for e in elems {
                    span[e] = true;
                }
            }
        }
        gens
    }

    /// Is `perm` an automorphism of this group (as a map on element indices)?
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in perm {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| perm[self.mul(a, b)] == self.mul(perm[a], perm[b])))
    }

    /// Conjugation `x ↦ g x g⁻¹`.
    pub fn inner_automorphism(&self, g: usize) -> Perm {
        (0..self.order())
            .map(|x| self.mul(self.mul(g, x), self.inv(g)))
            .collect()
    }

    /// `x ↦ x⁻¹`; an automorphism only for abelian groups.
    pub fn inversion(&self) -> Perm {
        (0..self.order()).map(|x| self.inv(x)).collect()
    }

    pub fn identity_perm(&self) -> Perm {
        (0..self.order()).collect()
    }
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert_perm(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Breadth-first closure of `{start}` under right multiplication by `gens`.
pub(crate) fn closure<T: Clone + Ord>(
    start: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<Vec<T>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    Ok(out)
}
