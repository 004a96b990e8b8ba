use indec_core::contfrac::cf_expand;
use indec_core::exactalg::ntheory::is_squarefree;
use indec_core::exactalg::{rat, QuadField};
use indec_core::quadindec::*;
use proptest::prelude::*;

#[test]
fn iota_of_small_fields() {
    for (d, iota) in [
        (2, 2),
        (3, 1),
        (5, 1),
        (6, 2),
        (7, 2),
        (10, 6),
        (13, 3),
        (11, 3),
        (14, 2),
    ] {
        assert_eq!(quad_iota(d).unwrap(), iota, "D = {d}");
    }
}

#[test]
fn list_matches_brute_force_up_to_200() {
    for d in (2..=200u64).filter(|&d| is_squarefree(d)) {
        let list = quad_indecomposables(d).unwrap();
        let from_cf = canonical_list(&list).unwrap();
        assert_eq!(
            from_cf.len(),
            list.iota(),
            "D = {d}: list has repeated orbits"
        );
        let brute = quad_brute_force(d, &list.unit).unwrap();
        assert_eq!(from_cf, brute, "D = {d}");
    }
}

#[test]
fn listed_elements_are_indecomposable() {
    for d in (2..=300u64).filter(|&d| is_squarefree(d)) {
        for r in quad_indecomposables(d).unwrap().reps {
            assert!(r.elem.is_totally_positive() && r.elem.is_integral());
            assert!(
                quad_is_indecomposable(&r.elem).unwrap(),
                "D = {d}: {}",
                r.elem
            );
        }
    }
}

#[test]
fn decomposition_witness() {
    let f = QuadField::new(2).unwrap();
    let four = f.from_sqrt_form(rat(4, 1), rat(0, 1));
    let (b, c) = quad_decomposition(&four).unwrap().unwrap();
    assert!(b.is_totally_positive() && c.is_totally_positive());
    assert_eq!(&b + &c, four);
    assert!(quad_decomposition(&f.from_sqrt_form(rat(-1, 1), rat(0, 1))).is_err());
}

proptest! {
    #[test]
    fn iota_equals_sum_of_odd_partial_quotients(d in 2u64..3000) {
        prop_assume!(is_squarefree(d));
        let cf = cf_expand(d).unwrap();
        let s = cf.s();
        let len = if s.is_multiple_of(2) { s } else { 2 * s };
        let sum: u64 = (1..=len).step_by(2).map(|k| cf.u(k)).sum();
        prop_assert_eq!(quad_iota(d).unwrap() as u64, sum);
    }

    #[test]
    fn orbit_canonical_form_is_unit_invariant(d in 2u64..400, e in -3i32..3) {
        prop_assume!(is_squarefree(d));
        let list = quad_indecomposables(d).unwrap();
        let eta = &list.unit;
        let mut u = list.unit.field.one();
        for _ in 0..e.unsigned_abs() {
            u = if e > 0 { &u * eta } else { &u * &eta.inv().unwrap() };
        }
        for r in &list.reps {
            let moved = &r.elem * &u;
            prop_assert_eq!(canonical_quad(&moved, eta).unwrap(), canonical_quad(&r.elem, eta).unwrap());
        }
    }
}
