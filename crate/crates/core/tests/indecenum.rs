use indec_core::biquadstruct::totally_positive_units;
use indec_core::census::enumerate_fields;
use indec_core::exactalg::{rint, BiquadElem, BiquadField};
use indec_core::indecenum::oracle::oracle_indecomposables;
use indec_core::indecenum::*;
use num_bigint::BigInt;
use proptest::prelude::*;

/// `(a + b√p + c√q + d√r)/den` from coefficients keyed by radicand.
fn elem(k: &BiquadField, rational: i64, terms: &[(u64, i64)], den: i64) -> BiquadElem {
    let mut v = [rational * 4 / den, 0, 0, 0];
    for &(d, c) in terms {
        let i = k.subfield_index(d).expect("radicand of the field");
        v[i + 1] = c * 4 / den;
    }
    k.from_quarters_i64(v)
}

fn same_pair(found: &[(BiquadElem, BiquadElem)], b: &BiquadElem, c: &BiquadElem) -> bool {
    found
        .iter()
        .any(|(x, y)| (x == b && y == c) || (x == c && y == b))
}

#[test]
fn iota_of_small_fields() {
    for (a, b, iota) in [
        (2, 3, 5),
        (2, 5, 14),
        (3, 5, 3),
        (2, 7, 4),
        (3, 7, 15),
        (7, 5, 11),
        (3, 13, 13),
        (2, 21, 2),
    ] {
        let k = BiquadField::new(a, b).unwrap();
        assert_eq!(indecomposables(&k).unwrap().iota, iota, "({a},{b})");
    }
}

#[test]
fn representatives_are_indecomposable_and_distinct() {
    let k = BiquadField::new(2, 5).unwrap();
    let set = indecomposables(&k).unwrap();
    assert_eq!(set.reps[0].elem, k.one());
    for (i, a) in set.reps.iter().enumerate() {
        assert!(a.elem.is_totally_positive() && a.elem.is_integral());
        assert!(is_indecomposable(&a.elem).unwrap());
        assert_eq!(a.norm, a.elem.norm());
        for b in &set.reps[i + 1..] {
            assert!(!equivalent(&a.elem, &b.elem).unwrap());
        }
        // a sum of two totally positive integers always decomposes
        let (x, y) = decompose(&(&a.elem + &a.elem)).unwrap().unwrap();
        assert!(x.is_totally_positive() && y.is_totally_positive());
        assert_eq!(&x + &y, &a.elem + &a.elem);
    }
}

#[test]
fn decompositions_are_complete_for_small_elements() {
    let k = BiquadField::new(2, 3).unwrap();
    let alpha = k.int_elem([6, 1, 1, 0]);
    let all = decompositions(&alpha, 1_000_000).unwrap();
    // brute force over integral-basis coordinates; every embedding of α
    // is below 10, which bounds each coordinate
    let basis = k.integral_basis();
    let mut count = 0usize;
    for x0 in 0..=10i64 {
        for x1 in -12..=12i64 {
            for x2 in -12..=12i64 {
                for x3 in -12..=12i64 {
                    let mut beta = k.zero();
                    for (c, b) in [x0, x1, x2, x3].iter().zip(basis.iter()) {
                        beta = &beta + &b.scale(&rint(*c));
                    }
                    let gamma = &alpha - &beta;
                    if beta.is_totally_positive() && gamma.is_totally_positive() {
                        count += 1;
                        assert!(same_pair(&all, &beta, &gamma));
                    }
                }
            }
        }
    }
    assert_eq!(all.len(), count.div_ceil(2));
}

#[test]
fn reference_counterexamples_decompose() {
    let k = BiquadField::new(14, 91).unwrap();
    let alpha = elem(&k, 26, &[(26, 5)], 1);
    let b = elem(&k, 26, &[(14, -5), (91, -2), (26, 5)], 2);
    let c = elem(&k, 26, &[(14, 5), (91, 2), (26, 5)], 2);
    assert_eq!(&b + &c, alpha);
    assert!(same_pair(
        &decompositions(&alpha, 10_000_000).unwrap(),
        &b,
        &c
    ));

    let k = BiquadField::new(5, 13).unwrap();
    let alpha = elem(&k, 25, &[(65, 3)], 2);
    let b = elem(&k, 25, &[(5, -5), (13, -3), (65, 3)], 4);
    let c = elem(&k, 25, &[(5, 5), (13, 3), (65, 3)], 4);
    assert_eq!(&b + &c, alpha);
    assert!(same_pair(
        &decompositions(&alpha, 10_000_000).unwrap(),
        &b,
        &c
    ));
}

#[test]
fn designated_subfields_are_preserved() {
    for k in enumerate_fields(2, 10_000).unwrap() {
        let f = k.biquad().unwrap();
        let rep = preservation_check(&f, Limits::default().search).unwrap();
        assert!(rep.designated_ok(), "{}", f.label());
        assert_eq!(rep.subfields.iter().filter(|s| s.designated).count(), 2);
        for s in &rep.subfields {
            for w in &s.failures {
                assert_eq!(&w.beta + &w.gamma, w.alpha);
                assert!(w.beta.is_totally_positive() && w.gamma.is_totally_positive());
            }
        }
    }
}

#[test]
fn oracle_agrees_with_cone_method() {
    let fields = enumerate_fields(2, 10_000).unwrap();
    assert_eq!(fields.len(), 6);
    for desc in fields {
        let k = desc.biquad().unwrap();
        let set = indecomposables(&k).unwrap();
        let oracle = oracle_indecomposables(&k, &set.units, None, u64::MAX).unwrap();
        assert_eq!(set.iota, oracle.iota, "{}", k.label());
        let cone: Vec<BiquadElem> = set.reps.iter().map(|r| r.elem.clone()).collect();
        let (missing, extra) = match_orbits(&cone, &oracle.reps).unwrap();
        assert!(missing.is_empty() && extra.is_empty(), "{}", k.label());
    }
}

#[test]
fn oracle_handles_recombined_generators() {
    let k = BiquadField::new(7, 11).unwrap();
    let set = indecomposables(&k).unwrap();
    assert!(set.cones_disjoint);
    let oracle = oracle_indecomposables(&k, &set.units, None, u64::MAX).unwrap();
    assert_eq!((set.iota, oracle.iota), (16, 16));
}

#[test]
fn constants_and_rank_bounds() {
    assert_eq!(crm_constant(16, 2).unwrap(), BigInt::from(480));
    assert_eq!(crm_constant(10, 2).unwrap(), BigInt::from(480));
    assert_eq!(crm_constant(20, 2).unwrap(), BigInt::from(760));
    assert_eq!(crm_constant(10, 1).unwrap(), BigInt::from(20));
    // 2·binom(R + 2m - 2, 2m - 1) with R = 5, m = 3
    assert_eq!(crm_constant(5, 3).unwrap(), BigInt::from(2 * 126));
    assert!(crm_constant(0, 2).is_err());
    assert_eq!(rank_upper_bound(45, 4), 1260);
    assert_eq!(rank_upper_bound(35, 4), 980);
    assert_eq!(rank_upper_bound(8, 4), 224);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_orbits(v in prop::array::uniform4(-30i64..30), e in prop::array::uniform3(-2i64..=2), pick in 0usize..3) {
        let k = [(2u64, 3u64), (2, 5), (5, 13)][pick];
        let k = BiquadField::new(k.0, k.1).unwrap();
        let units = totally_positive_units(&k).unwrap();
        let basis = k.integral_basis();
        let mut x = k.int_elem([40, 0, 0, 0]);
        for (c, b) in v.iter().zip(basis.iter()) {
            x = &x + &b.scale(&rint(*c));
        }
        prop_assume!(x.is_totally_positive());
        let mut u = k.one();
        for j in 0..3 {
            u = &u * &units.gens[j].powi(e[j]).unwrap();
        }
        let y = &x * &u;
        prop_assert!(equivalent(&x, &y).unwrap());
        prop_assert!(equivalent(&y, &x).unwrap());
        prop_assert!(!equivalent(&x, &(&x + &x)).unwrap());
        let rx = reduce_by_units(&x, &units.gens).unwrap();
        prop_assert!(equivalent(&rx, &x).unwrap());
        prop_assert!(rx.trace() <= x.trace());
        prop_assert_eq!(is_indecomposable(&x).unwrap(), is_indecomposable(&y).unwrap());
    }
}
