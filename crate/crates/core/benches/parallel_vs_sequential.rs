use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use twistlat::arith::{int, ivec};
use twistlat::cohomology::{h1_finite, FiniteAction};
use twistlat::cone::RationalCone;
use twistlat::enumeration::{vectors_of_square_in_cone, walls_meeting_cone};
use twistlat::group::FiniteGroup;
use twistlat::{par, Lattice};

fn compare<R: Send>(c: &mut Criterion, name: &str, work: impl Fn() -> R + Sync + Send) {
    let mut g = c.benchmark_group(name);
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| par::with_threads(1, || black_box(work())))
    });
    g.bench_function("parallel", |b| b.iter(|| black_box(work())));
    g.finish();
}

fn benches(c: &mut Criterion) {
    let pell = Lattice::diagonal(&[2, -6]).unwrap();
    let cone = RationalCone::from_generators(&pell, &[ivec(&[3, 1]), ivec(&[3, -1])]).unwrap();
    compare(c, "enumerate_pell_d200", || {
        vectors_of_square_in_cone(&cone, &int(200)).unwrap()
    });

    let u2 = Lattice::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]).unwrap();
    let wcone =
        RationalCone::from_generators(&u2, &[ivec(&[2, 1, 0]), ivec(&[1, 2, 0]), ivec(&[2, 2, 1])])
            .unwrap();
    compare(c, "walls_rank3", || {
        walls_meeting_cone(&wcone, &int(5)).unwrap()
    });

    let (s4, _) = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
    let conj = FiniteAction::from_generator_images(
        FiniteGroup::cyclic(4),
        s4.clone(),
        &[1],
        &[s4.inner_automorphism(5)],
    )
    .unwrap();
    compare(c, "h1_c4_on_s4", || h1_finite(&conj).len());
}

criterion_group!(parallel_vs_sequential, benches);
criterion_main!(parallel_vs_sequential);
