//! The JSON problem file. Unknown fields are rejected.

use num_bigint::BigInt;
use serde::Deserialize;
use twistlat::cohomology::{AlmostAbelianAction, AlmostAbelianGroup, Elem, ExtensionDatum};
use twistlat::group::FiniteGroup;
use twistlat::matrix::IntMatrix;
use twistlat::{Error, Int, IntVector, Lattice};

use crate::CliError;

/// An integer written as a JSON number or, when it does not fit, a decimal
/// string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub Int);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(x) => Ok(Num(BigInt::from(x))),
            Raw::S(s) => s
                .trim()
                .parse()
                .map(Num)
                .map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

pub type JVec = Vec<Num>;
pub type JMat = Vec<JVec>;

pub fn vec_of(v: &[Num]) -> IntVector {
    v.iter().map(|n| n.0.clone()).collect()
}

pub fn mat_of(m: &[JVec]) -> Result<IntMatrix, Error> {
    let rows: Vec<IntVector> = m.iter().map(|r| vec_of(r)).collect();
    IntMatrix::from_rows(&rows)
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub lattice: Option<LatticeSpec>,
    /// A vector inside the positive cone; also the base point of Dirichlet
    /// domains.
    pub reference: Option<JVec>,
    pub roots: Option<Vec<JVec>>,
    /// Start vectors for `walk`.
    pub vectors: Option<Vec<JVec>>,
    pub cone: Option<ConeSpec>,
    /// Generators of an infinite group of isometries (Dirichlet domains).
    pub group: Option<GroupSpec>,
    /// A finite group acting on the lattice (orbit analysis).
    pub action: Option<ActionSpec>,
    /// Classes tested against the invariant chamber.
    pub lambda: Option<Vec<JVec>>,
    pub cohomology: Option<CohomologySpec>,
    #[serde(default)]
    pub parameters: Parameters,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub gram: JMat,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub generators: Option<Vec<JVec>>,
    pub inequalities: Option<Vec<JVec>>,
    pub equalities: Option<Vec<JVec>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub generators: Vec<JMat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    /// Either generators (the group is their closure) or every element
    /// together with a multiplication table.
    pub generators: Option<Vec<JMat>>,
    pub matrices: Option<Vec<JMat>>,
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub square: Option<Num>,
    pub wall_bound: Option<Num>,
    pub word_radius: Option<usize>,
    pub iteration_cap: Option<usize>,
    pub search_bound: Option<i64>,
}

/// A finite group: exactly one of the fields.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteGroupSpec {
    pub table: Option<Vec<Vec<usize>>>,
    pub cyclic: Option<usize>,
    /// Generated by permutations; element 0 is the identity, the rest sorted
    /// lexicographically as permutations.
    pub permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, Error> {
        match (&self.table, self.cyclic, &self.permutations) {
            (Some(t), None, None) => FiniteGroup::from_table(t.clone()),
            (None, Some(n), None) if n >= 1 => Ok(FiniteGroup::cyclic(n)),
            (None, None, Some(p)) => FiniteGroup::from_permutations(p).map(|(g, _)| g),
            _ => Err(Error::InvalidGroupTable(
                "give exactly one of table, cyclic (>= 1) or permutations".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologySpec {
    pub gamma: FiniteGroupSpec,
    /// Elements of Γ whose images are listed below; they must generate Γ.
    pub generators: Vec<usize>,
    pub finite: Option<FiniteCoefficients>,
    pub free_abelian: Option<FreeAbelianCoefficients>,
    pub almost_abelian: Option<AlmostAbelianCoefficients>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteCoefficients {
    pub group: FiniteGroupSpec,
    /// One automorphism (as a permutation of element indices) per generator.
    pub images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeAbelianCoefficients {
    pub rank: usize,
    pub images: Vec<JMat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElemSpec {
    #[serde(default)]
    pub q: usize,
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub v: JVec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G0Spec {
    pub k: usize,
    pub v: JVec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageSpec {
    pub k: Vec<ElemSpec>,
    pub e: Vec<ElemSpec>,
    pub s: Vec<ElemSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlmostAbelianCoefficients {
    pub k: FiniteGroupSpec,
    pub rank: usize,
    /// Defaults to the trivial group.
    pub q: Option<FiniteGroupSpec>,
    /// Defaults to the identity for every basis vector.
    pub psi: Option<Vec<Vec<usize>>>,
    pub theta: Option<Vec<Vec<usize>>>,
    pub kappa: Option<Vec<Vec<usize>>>,
    pub a: Option<Vec<JMat>>,
    pub factor: Option<Vec<Vec<G0Spec>>>,
    pub images: Vec<ImageSpec>,
}

fn elem(e: &ElemSpec, rank: usize) -> Elem {
    let mut v = vec_of(&e.v);
    if v.is_empty() {
        v = vec![Int::from(0); rank];
    }
    Elem { q: e.q, k: e.k, v }
}

impl AlmostAbelianCoefficients {
    pub fn build(&self, gamma: FiniteGroup, gens: &[usize]) -> Result<AlmostAbelianAction, Error> {
        let k = self.k.build()?;
        let q = match &self.q {
            Some(q) => q.build()?,
            None => FiniteGroup::trivial(),
        };
        let r = self.rank;
        let nq = q.order();
        let base = ExtensionDatum::direct(k.clone(), r);
        let zero = || (k.identity(), vec![Int::from(0); r]);
        let d = ExtensionDatum {
            psi: self.psi.clone().unwrap_or(base.psi),
            theta: self
                .theta
                .clone()
                .unwrap_or_else(|| vec![k.identity_perm(); nq]),
            kappa: self
                .kappa
                .clone()
                .unwrap_or_else(|| vec![vec![k.identity(); r]; nq]),
            a: match &self.a {
                Some(a) => a.iter().map(|m| mat_of(m)).collect::<Result<_, _>>()?,
                None => vec![IntMatrix::identity(r); nq],
            },
            factor: match &self.factor {
                Some(f) => f
                    .iter()
                    .map(|row| row.iter().map(|x| (x.k, vec_of(&x.v))).collect())
                    .collect(),
                None => vec![vec![zero(); nq]; nq],
            },
            k,
            rank: r,
            q,
        };
        for v in d.factor.iter().flatten() {
            if v.1.len() != r {
                return Err(Error::InvalidExtensionDatum(format!(
                    "factor vector has length {}, rank is {r}",
                    v.1.len()
                )));
            }
        }
        let g = AlmostAbelianGroup::new(d)?;
        let images: Vec<(Vec<Elem>, Vec<Elem>, Vec<Elem>)> = self
            .images
            .iter()
            .map(|i| {
                (
                    i.k.iter().map(|e| elem(e, r)).collect(),
                    i.e.iter().map(|e| elem(e, r)).collect(),
                    i.s.iter().map(|e| elem(e, r)).collect(),
                )
            })
            .collect();
        AlmostAbelianAction::from_generator_images(g, gamma, gens, &images)
    }
}

impl ProblemFile {
    pub fn lattice(&self) -> Result<Lattice, CliError> {
        let spec = self
            .lattice
            .as_ref()
            .ok_or_else(|| CliError::Missing("lattice".into()))?;
        Ok(Lattice::new(mat_of(&spec.gram)?)?)
    }
}
