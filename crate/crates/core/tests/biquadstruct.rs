use indec_core::biquadstruct::*;
use indec_core::exactalg::{BiquadElem, BiquadField, FieldType};
use num_bigint::BigInt;
use proptest::prelude::*;

fn f1_field() -> BiquadField {
    BiquadField::new(143, 165).unwrap()
}

#[test]
fn kubota_data_for_first_family() {
    let k = f1_field();
    let units = subfield_units(&k).unwrap();
    let deltas: Vec<u64> = units.iter().map(|u| u.kubota.delta).collect();
    assert_eq!(deltas, [26, 15, 30]);
    for u in &units {
        let root = &u.kubota.root;
        assert_eq!(
            root * root,
            u.totally_positive
                .scale(&indec_core::exactalg::rint(u.kubota.delta as i64))
        );
    }
}

#[test]
fn unit_square_test_accepts_exactly_one_class() {
    let k = f1_field();
    let units = subfield_units(&k).unwrap();
    for bits in 0u8..8 {
        let exps = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
        let root = unit_square_test(&k, &units, exps).unwrap();
        let expect = exps == [0, 0, 0] || exps == [1, 0, 1];
        assert_eq!(root.is_some(), expect, "{exps:?}");
        // independent route: integral square root of the product
        let mut prod = k.one();
        for j in 0..3 {
            if exps[j] == 1 {
                prod = &prod * &k.embed_quad(&units[j].totally_positive).unwrap();
            }
        }
        assert_eq!(exact_sqrt(&prod).is_some(), expect, "{exps:?}");
        if let Some(r) = root {
            assert_eq!(&r * &r, prod);
        }
    }
}

#[test]
fn unit_indices_of_first_family() {
    let g = totally_positive_units(&f1_field()).unwrap();
    assert_eq!((g.index_total_pos, g.index_squares), (4, 4));
    assert!(!g.extra_units);
    assert_eq!(g.square_classes, vec![[1, 0, 1]]);
}

#[test]
fn parallelepiped_sizes_of_first_family() {
    let k = f1_field();
    let g = totally_positive_units(&k).unwrap();
    let cd = cone_decomposition(&k, &g).unwrap();
    assert!(cd.disjoint);
    let sizes: Vec<(String, BigInt)> = cd
        .cones
        .iter()
        .map(|c| (c.label.clone(), parallelepiped_size(c).unwrap()))
        .collect();
    let get = |l: &str| sizes.iter().find(|(x, _)| x == l).unwrap().1.clone();
    assert_eq!(get("P'_pqr"), BigInt::from(13));
    assert_eq!(get("P'_prq"), BigInt::from(28));
    assert_eq!(get("P'_rqp"), BigInt::from(13));
    for c in &cd.cones {
        let pts = parallelepiped_points(&k, c, 1_000).unwrap();
        assert_eq!(BigInt::from(pts.len()), parallelepiped_size(c).unwrap());
        assert!(pts.iter().all(BiquadElem::is_integral));
    }
}

#[test]
fn extra_units_match_reference_asterisks() {
    let starred = [
        (2, 3),
        (2, 5),
        (2, 7),
        (2, 13),
        (2, 17),
        (3, 13),
        (2, 21),
        (5, 13),
        (5, 17),
    ];
    let plain = [(3, 5), (3, 21), (6, 5), (3, 33), (7, 5), (6, 21)];
    for (a, b) in starred {
        assert!(
            totally_positive_units(&BiquadField::new(a, b).unwrap())
                .unwrap()
                .extra_units,
            "({a},{b})"
        );
    }
    for (a, b) in plain {
        assert!(
            !totally_positive_units(&BiquadField::new(a, b).unwrap())
                .unwrap()
                .extra_units,
            "({a},{b})"
        );
    }
}

#[test]
fn field_types() {
    assert_eq!(classify_field(2, 3).unwrap().kind, FieldType::One);
    assert_eq!(classify_field(2, 5).unwrap().kind, FieldType::Two);
    assert_eq!(classify_field(3, 5).unwrap().kind, FieldType::Two);
    assert_eq!(classify_field(5, 13).unwrap().kind, FieldType::Three);
    assert_eq!(classify_field(3, 7).unwrap().kind, FieldType::Two);
}

const RADICANDS: [u64; 16] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unit_group_invariants(i in 0..RADICANDS.len(), j in 0..RADICANDS.len()) {
        let (a, b) = (RADICANDS[i], RADICANDS[j]);
        prop_assume!(a != b);
        let Ok(k) = BiquadField::new(a, b) else { return Ok(()); };
        let g = totally_positive_units(&k).unwrap();
        // units modulo squares form a group of order 2^4
        prop_assert_eq!(g.index_total_pos * g.index_squares, 16);
        for u in &g.gens {
            prop_assert!(u.is_integral() && u.is_totally_positive());
            prop_assert!(u.inv().unwrap().is_integral());
        }
        prop_assert_eq!(conductor_discriminant(&k), k.discriminant());
        let cd = cone_decomposition(&k, &g).unwrap();
        prop_assert_eq!(cd.cones.len(), 6);
    }

    #[test]
    fn exact_sqrt_recovers_squares(v in prop::array::uniform4(-40i64..40), pick in 0usize..4) {
        let k = [(2u64, 3u64), (5, 13), (3, 7), (2, 5)][pick];
        let k = BiquadField::new(k.0, k.1).unwrap();
        let basis = k.integral_basis();
        let mut x = k.zero();
        for (c, b) in v.iter().zip(basis.iter()) {
            x = &x + &b.scale(&indec_core::exactalg::rint(*c));
        }
        prop_assume!(!x.is_zero());
        let sq = &x * &x;
        let r = exact_sqrt(&sq).unwrap();
        prop_assert!(r == x || r == -&x);
    }
}
