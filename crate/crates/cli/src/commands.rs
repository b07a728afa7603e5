use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use twistlat::bounds::{dual_path_agrees, BoundReport};
use twistlat::cohomology::{
    h1_almost_abelian, h1_cardinality_bound, h1_finite, h1_free_abelian, Elem, FiniteAction,
    FreeAbelianAction, DEFAULT_SEARCH_BOUND,
};
use twistlat::cone::{PositiveConeRef, RationalCone};
use twistlat::coxeter::{
    analyze_orbit, invariant_chamber_test, invariant_generators, pair_order, root_orbits, OrbitCase,
};
use twistlat::enumeration::{
    dirichlet_domain, enumeration_budget, orbit_representatives, vectors_of_square_in_cone,
    wall_box, walls_meeting_cone, GeneratedGroup, DEFAULT_WORD_RADIUS,
};
use twistlat::group::FiniteGroup;
use twistlat::matrix::IntMatrix;
use twistlat::reflection::{chamber_walk, Root, WallSystem, DEFAULT_ITERATION_CAP};
use twistlat::{Int, IntVector, Lattice, LatticeAction};

use crate::schema::{mat_of, vec_of, ProblemFile};
use crate::{Cli, CliError, Command};

type Res = Result<Value, CliError>;

/// Integers that fit in an `i64` are JSON numbers, larger ones strings.
fn ji(x: &Int) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn jv(v: &[Int]) -> Value {
    Value::Array(v.iter().map(ji).collect())
}

fn jvs(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(|v| jv(v)).collect())
}

fn jm(m: &IntMatrix) -> Value {
    jvs(&m.to_rows())
}

fn checked_vec(l: &Lattice, v: &[crate::schema::Num]) -> Result<IntVector, CliError> {
    let v = vec_of(v);
    l.check_vector(&v)?;
    Ok(v)
}

fn reference(p: &ProblemFile, l: &Lattice) -> Result<PositiveConeRef, CliError> {
    let r = p
        .reference
        .as_ref()
        .ok_or_else(|| CliError::Missing("reference".into()))?;
    Ok(PositiveConeRef::new(l, checked_vec(l, r)?)?)
}

fn cone(p: &ProblemFile, l: &Lattice) -> Result<RationalCone, CliError> {
    let c = p
        .cone
        .as_ref()
        .ok_or_else(|| CliError::Missing("cone".into()))?;
    let list = |x: &Option<Vec<crate::schema::JVec>>| -> Result<Vec<IntVector>, CliError> {
        x.iter().flatten().map(|v| checked_vec(l, v)).collect()
    };
    match (&c.generators, &c.inequalities) {
        (Some(_), None) if c.equalities.is_none() => {
            Ok(RationalCone::from_generators(l, &list(&c.generators)?)?)
        }
        (None, Some(_)) => Ok(RationalCone::from_halfspaces(
            l,
            &list(&c.inequalities)?,
            &list(&c.equalities)?,
        )?),
        _ => Err(CliError::Invalid(
            "cone needs either generators or inequalities (with optional equalities)".into(),
        )),
    }
}

fn group(p: &ProblemFile, l: &Lattice) -> Result<Option<GeneratedGroup>, CliError> {
    let Some(g) = &p.group else {
        return Ok(None);
    };
    let gens = g
        .generators
        .iter()
        .map(|m| mat_of(m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(GeneratedGroup::new(l, &gens)?))
}

fn square(cli: &Cli, p: &ProblemFile) -> Result<Int, CliError> {
    cli.square
        .clone()
        .or_else(|| p.parameters.square.as_ref().map(|n| n.0.clone()))
        .ok_or_else(|| {
            CliError::Usage("this subcommand needs --square <d> (or parameters.square)".into())
        })
}

fn word_radius(cli: &Cli, p: &ProblemFile) -> usize {
    cli.word_radius
        .or(p.parameters.word_radius)
        .unwrap_or(DEFAULT_WORD_RADIUS)
}

pub fn dispatch(cli: &Cli, p: &ProblemFile) -> Res {
    match cli.command {
        Command::Info => info(p),
        Command::Walk => walk(cli, p),
        Command::Enumerate => enumerate(cli, p),
        Command::Domain => domain(cli, p),
        Command::Orbits => orbits(cli, p),
        Command::Walls => walls(cli, p),
        Command::Coxeter => coxeter(p),
        Command::H1 => h1(cli, p),
        Command::Bounds => bounds(cli),
    }
}

fn info(p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let (pos, neg) = l.signature();
    Ok(json!({
        "rank": l.rank(),
        "gram": jm(l.gram()),
        "signature": [pos, neg],
        "det": ji(l.det()),
        "hyperbolic": l.is_hyperbolic(),
    }))
}

fn walk(cli: &Cli, p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let pos = reference(p, &l)?;
    let roots = p
        .roots
        .as_ref()
        .ok_or_else(|| CliError::Missing("roots".into()))?;
    let roots = roots
        .iter()
        .map(|v| checked_vec(&l, v))
        .collect::<Result<Vec<_>, _>>()?;
    let walls = WallSystem::new(&l, &roots)?;
    let cap = cli
        .iteration_cap
        .or(p.parameters.iteration_cap)
        .unwrap_or(DEFAULT_ITERATION_CAP);
    let starts = p
        .vectors
        .as_ref()
        .ok_or_else(|| CliError::Missing("vectors".into()))?;
    let mut walks = Vec::new();
    for v in starts {
        let x = checked_vec(&l, v)?;
        let w = chamber_walk(&x, &walls, &pos, cap)?;
        walks.push(json!({
            "start": jv(&x),
            "image": jv(&w.image),
            "word": w.word,
            "in_chamber": walls.is_in_chamber(&w.image)?,
            "square": ji(&l.norm(&w.image)?),
        }));
    }
    Ok(json!({
        "roots": walls.roots().iter().map(|r| jv(r.vector())).collect::<Vec<_>>(),
        "supplied_roots_only": true,
        "iteration_cap": cap,
        "walks": walks,
    }))
}

fn enumerate(cli: &Cli, p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let d = square(cli, p)?;
    if let Some(g) = group(p, &l)? {
        let pos = reference(p, &l)?;
        let radius = word_radius(cli, p);
        let dom = dirichlet_domain(&g, pos.reference(), &pos, radius)?;
        let vecs = vectors_of_square_in_cone(&dom.cone, &d)?;
        let reps = orbit_representatives(&d, &g, pos.reference(), &pos, radius)?;
        return Ok(json!({
            "square": ji(&d),
            "word_radius": radius,
            "vectors": jvs(&vecs),
            "representatives": jvs(&reps),
        }));
    }
    let c = cone(p, &l)?;
    let budget = enumeration_budget(&c, &d)?;
    let vecs = vectors_of_square_in_cone(&c, &d)?;
    Ok(json!({
        "square": ji(&d),
        "coefficient_bound": ji(&budget.coefficient_bound),
        "vectors": jvs(&vecs),
    }))
}

fn domain(cli: &Cli, p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let g = group(p, &l)?.ok_or_else(|| CliError::Missing("group".into()))?;
    let pos = reference(p, &l)?;
    let radius = word_radius(cli, p);
    let dom = dirichlet_domain(&g, pos.reference(), &pos, radius)?;
    Ok(json!({
        "base_point": jv(pos.reference()),
        "rays": jvs(dom.cone.rays()),
        "lineality": jvs(dom.cone.lineality()),
        "inequalities": jvs(dom.cone.inequalities()),
        "certificate": {
            "radius": dom.certificate.radius,
            "stable_from": dom.certificate.stable_from,
            "ball_size": dom.certificate.ball_size,
        },
    }))
}

fn orbits(cli: &Cli, p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let d = square(cli, p)?;
    let g = group(p, &l)?.ok_or_else(|| CliError::Missing("group".into()))?;
    let pos = reference(p, &l)?;
    let radius = word_radius(cli, p);
    let dom = dirichlet_domain(&g, pos.reference(), &pos, radius)?;
    let vecs = vectors_of_square_in_cone(&dom.cone, &d)?;
    let reps = orbit_representatives(&d, &g, pos.reference(), &pos, radius)?;
    let classes: Vec<Value> = reps
        .iter()
        .map(|r| {
            let members: Vec<Value> = vecs
                .iter()
                .filter_map(|v| {
                    g.find_word(r, v, radius)
                        .map(|w| json!({ "vector": jv(v), "word": w }))
                })
                .collect();
            json!({ "representative": jv(r), "members": members })
        })
        .collect();
    Ok(json!({
        "square": ji(&d),
        "word_radius": radius,
        "representatives": jvs(&reps),
        "classes": classes,
    }))
}

fn walls(cli: &Cli, p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let c = cone(p, &l)?;
    let n = cli
        .wall_bound
        .clone()
        .or_else(|| p.parameters.wall_bound.as_ref().map(|x| x.0.clone()))
        .ok_or_else(|| {
            CliError::Usage("walls needs --wall-bound <N> (or parameters.wall_bound)".into())
        })?;
    if !n.is_positive() {
        return Err(CliError::Invalid("wall bound N must be positive".into()));
    }
    let wb = wall_box(&c, &n)?;
    let found = walls_meeting_cone(&c, &n)?;
    Ok(json!({
        "wall_bound": ji(&n),
        "h": jv(&wb.h),
        "majorant_bound": wb.bound.to_string(),
        "radii": jv(&wb.radii),
        "walls": jvs(&found),
    }))
}

fn action(p: &ProblemFile, l: &Lattice) -> Result<LatticeAction, CliError> {
    let a = p
        .action
        .as_ref()
        .ok_or_else(|| CliError::Missing("action".into()))?;
    let mats =
        |ms: &Vec<crate::schema::JMat>| ms.iter().map(|m| mat_of(m)).collect::<Result<Vec<_>, _>>();
    match (&a.generators, &a.matrices, &a.table) {
        (Some(g), None, None) => Ok(LatticeAction::generated(l, &mats(g)?)?),
        (None, Some(m), Some(t)) => Ok(LatticeAction::new(
            l,
            FiniteGroup::from_table(t.clone())?,
            mats(m)?,
        )?),
        _ => Err(CliError::Invalid(
            "action needs either generators or matrices together with table".into(),
        )),
    }
}

fn coxeter(p: &ProblemFile) -> Res {
    let l = p.lattice()?;
    let act = action(p, &l)?;
    let roots = p
        .roots
        .as_ref()
        .ok_or_else(|| CliError::Missing("roots".into()))?;
    let roots = roots
        .iter()
        .map(|v| Root::new(&l, checked_vec(&l, v)?).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let orbits = root_orbits(&roots, &act)?;
    let mut reports = Vec::new();
    let mut out = Vec::new();
    for o in &orbits {
        let rep = analyze_orbit(&l, o)?;
        let mut pairs = Vec::new();
        for i in 0..o.roots.len() {
            for j in i + 1..o.roots.len() {
                let (a, b) = (
                    Root::new(&l, o.roots[i].clone())?,
                    Root::new(&l, o.roots[j].clone())?,
                );
                let po = pair_order(&l, &a, &b)?;
                pairs.push(json!({ "pair": [i, j], "order": po.order.to_string(), "trace": po.trace.to_string() }));
            }
        }
        out.push(json!({
            "roots": jvs(&o.roots),
            "sign_consistent": o.sign_consistent,
            "beta": ji(&rep.beta),
            "case": match rep.case { OrbitCase::A => "A", OrbitCase::B => "B", OrbitCase::Infinite => "infinite" },
            "composite": rep.composite.as_ref().map(|c| jv(c)),
            "longest": rep.longest.as_ref().map(|r| jm(r.matrix())),
            "matching": rep.matching.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "pair_orders": pairs,
        }));
        reports.push(rep);
    }
    let gens = invariant_generators(&reports);
    let mut report = json!({
        "group_order": act.group().order(),
        "orbits": out,
        "invariant_generators": gens.iter().map(|g| jm(g.matrix())).collect::<Vec<_>>(),
    });
    if let Some(lams) = &p.lambda {
        let pos = reference(p, &l)?;
        let mut tests = Vec::new();
        for lam in lams {
            let v = checked_vec(&l, lam)?;
            tests.push(json!({ "lambda": jv(&v), "in_invariant_chamber": invariant_chamber_test(&v, &reports, &pos)? }));
        }
        report["chamber_tests"] = Value::Array(tests);
    }
    Ok(report)
}

fn elem_json(e: &Elem) -> Value {
    json!({ "q": e.q, "k": e.k, "v": jv(&e.v) })
}

fn h1(cli: &Cli, p: &ProblemFile) -> Res {
    let spec = p
        .cohomology
        .as_ref()
        .ok_or_else(|| CliError::Missing("cohomology".into()))?;
    let gamma = spec.gamma.build()?;
    let gens = &spec.generators;
    if gens.iter().any(|&g| g >= gamma.order()) {
        return Err(CliError::Invalid(format!(
            "generator index out of range for |Γ| = {}",
            gamma.order()
        )));
    }
    let n = gamma.order() as u64;
    match (&spec.finite, &spec.free_abelian, &spec.almost_abelian) {
        (Some(f), None, None) => {
            let g = f.group.build()?;
            let order = g.order() as u64;
            let act = FiniteAction::from_generator_images(gamma, g, gens, &f.images)?;
            let classes = h1_finite(&act);
            Ok(json!({
                "coefficients": "finite",
                "count": classes.len(),
                "classes": classes,
                "cardinality_bound": h1_cardinality_bound(n, 1, order, 0).to_string(),
            }))
        }
        (None, Some(f), None) => {
            let images = f
                .images
                .iter()
                .map(|m| mat_of(m))
                .collect::<Result<Vec<_>, _>>()?;
            let act = FreeAbelianAction::from_generator_images(gamma, f.rank, gens, &images)?;
            let h = h1_free_abelian(&act)?;
            Ok(json!({
                "coefficients": "free_abelian",
                "divisors": jv(&h.divisors),
                "order": ji(&h.order()),
                "representatives": h.representatives.iter().map(|c| jvs(c)).collect::<Vec<_>>(),
            }))
        }
        (None, None, Some(a)) => {
            let act = a.build(gamma, gens)?;
            let bound = cli
                .search_bound
                .or(p.parameters.search_bound)
                .unwrap_or(DEFAULT_SEARCH_BOUND);
            if bound < 0 {
                return Err(CliError::Invalid("search bound must be nonnegative".into()));
            }
            let h = h1_almost_abelian(&act, bound)?;
            let grp = act.group();
            Ok(json!({
                "coefficients": "almost_abelian",
                "count": h.classes.len(),
                "classes": h.classes.iter().map(|c| c.iter().map(elem_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "exact": h.exact,
                "caveats": h.caveats,
                "quotient_classes": h.quotient_classes,
                "lifted_quotient_classes": h.lifted_quotient_classes,
                "candidates": h.candidates,
                "search_bound": bound,
                "cardinality_bound": h1_cardinality_bound(
                    n,
                    grp.q_group().order() as u64,
                    grp.k_group().order() as u64,
                    grp.rank() as u64
                )
                .to_string(),
            }))
        }
        _ => Err(CliError::Invalid(
            "cohomology needs exactly one of finite, free_abelian, almost_abelian".into(),
        )),
    }
}

/// Reports larger than this many bits are refused rather than printed.
const MAX_BOUND_BITS: u64 = 1 << 20;

fn bounds(cli: &Cli) -> Res {
    let n = cli
        .dimension
        .ok_or_else(|| CliError::Usage("bounds needs --dimension <n>".into()))?;
    let ln = cli.self_intersection.clone().unwrap_or_else(BigInt::one);
    if n == 0 || !ln.is_positive() || cli.rank == Some(0) {
        return Err(CliError::Invalid(
            "dimension, self-intersection and rank must be positive".into(),
        ));
    }
    let ln = ln.to_biguint().expect("positive");
    let base_bits = u64::from(n) * twistlat::bounds::bpf_multiple(n).bits() + ln.bits();
    let bits = base_bits.saturating_mul(twistlat::bounds::aut_exponent(n));
    if n > 6 || bits > MAX_BOUND_BITS {
        return Err(CliError::Invalid(format!(
            "aut_group_bound would have about {bits} bits (limit {MAX_BOUND_BITS}); lower --dimension or --self-intersection"
        )));
    }
    let rep = BoundReport::new(n, &ln, cli.rank);
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            let s = e.value.to_string();
            json!({
                "name": e.name,
                "formula": e.formula,
                "provenance": e.provenance.label(),
                "digits": s.len(),
                "value": s,
            })
        })
        .collect();
    Ok(json!({
        "dimension": n,
        "self_intersection": ln.to_string(),
        "rank": cli.rank,
        "m": rep.get("bpf_multiple").map(|m| m.to_string()),
        "entries": entries,
        "dual_path_agrees": dual_path_agrees(n, &ln, cli.rank.unwrap_or(1)),
    }))
}
