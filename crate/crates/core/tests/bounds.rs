use num_bigint::BigUint;
use num_traits::One;
use twistlat::bounds::{
    aut_exponent, aut_group_bound, bpf_multiple, cyclic_subgroup_bound, dual_path_agrees,
    gl_f3_order, k3_aut_torsion_bound, BoundReport,
};

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// `|GL_n(F_3)| = Π_{i<n} (3^n − 3^i)`.
fn gl_order_oracle(n: u32) -> BigUint {
    let q = BigUint::from(3u32);
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

#[test]
fn small_values() {
    assert_eq!(bpf_multiple(2), BigUint::from(96u32));
    for n in 1..=6 {
        assert_eq!(
            bpf_multiple(n),
            BigUint::from(2 * factorial(n + 2) * u64::from(n))
        );
    }
    assert_eq!(aut_exponent(2), 16 * 2 * 9);
    let l = BigUint::from(2u32);
    let base = BigUint::from(96u32 * 96 * 2);
    assert_eq!(cyclic_subgroup_bound(2, &l), base.pow(3));
    assert_eq!(aut_group_bound(2, &l), base.pow(288));
}

#[test]
fn k3_bound_is_two_to_the_968() {
    assert_eq!(k3_aut_torsion_bound(), BigUint::one() << 968);
}

#[test]
fn gl_f3_orders() {
    assert_eq!(gl_f3_order(2), BigUint::from(48u32));
    for n in 1..=22 {
        assert_eq!(gl_f3_order(n), gl_order_oracle(n), "n = {n}");
    }
}

#[test]
fn dual_paths_agree() {
    for n in 1..=3 {
        for ln in [1u32, 2, 7, 16] {
            assert!(dual_path_agrees(n, &BigUint::from(ln), 22));
        }
    }
}

#[test]
fn report_lists_every_entry() {
    let r = BoundReport::new(2, &BigUint::from(2u32), Some(2));
    assert_eq!(r.get("gl_f3_order"), Some(&BigUint::from(48u32)));
    assert_eq!(
        r.get("k3_aut_torsion_bound"),
        Some(&(BigUint::one() << 968))
    );
    assert_eq!(r.get("bpf_multiple"), Some(&BigUint::from(96u32)));
}
