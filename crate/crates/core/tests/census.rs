use std::collections::BTreeSet;

use indec_core::census::*;
use indec_core::exactalg::BiquadField;
use indec_core::indecenum::Limits;
use num_integer::Integer;
use proptest::prelude::*;

fn squarefree(n: u64) -> bool {
    (2..)
        .take_while(|p| p * p <= n)
        .all(|p| !n.is_multiple_of(p * p))
}

fn quad_disc(d: u64) -> u64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// Real quadratic fields of discriminant at most `x`, by radicand.
fn brute_quadratic(x: u64) -> BTreeSet<u64> {
    (2..=x)
        .filter(|&d| squarefree(d) && quad_disc(d) <= x)
        .collect()
}

/// Real biquadratic fields of discriminant at most `x`, each as the sorted
/// triple of its radicands. `Δ >= (ab/gcd(a,b))^2` bounds both radicands by
/// `√x`.
fn brute_biquadratic(x: u64) -> BTreeSet<[u64; 3]> {
    let lim = (x as f64).sqrt() as u64 + 1;
    let mut out = BTreeSet::new();
    for a in 2..=lim {
        for b in a + 1..=lim {
            if !squarefree(a) || !squarefree(b) {
                continue;
            }
            let k = BiquadField::new(a, b).unwrap();
            if k.discriminant() <= x {
                let mut t = k.radicands();
                t.sort_unstable();
                out.insert(t);
            }
        }
    }
    out
}

fn triple(d: &MultiquadDescriptor) -> [u64; 3] {
    let mut t = [d.a[0], d.a[1], d.a[2]];
    t.sort_unstable();
    t
}

#[test]
fn quadratic_count_matches_brute_force() {
    for x in [1u64, 5, 8, 100, 1_000, 10_000] {
        let fields = enumerate_fields(1, x as u128).unwrap();
        let got: BTreeSet<u64> = fields.iter().map(|f| f.a[0]).collect();
        assert_eq!(got.len(), fields.len());
        assert_eq!(got, brute_quadratic(x), "X = {x}");
        for f in &fields {
            assert_eq!(f.discriminant, quad_disc(f.a[0]) as u128);
        }
    }
    assert_eq!(enumerate_fields(1, 100).unwrap().len(), 30);
}

#[test]
fn biquadratic_count_matches_brute_force() {
    for x in [1u64, 2_304, 5_000, 10_000] {
        let fields = enumerate_fields(2, x as u128).unwrap();
        let got: BTreeSet<[u64; 3]> = fields.iter().map(triple).collect();
        assert_eq!(got.len(), fields.len(), "duplicates at X = {x}");
        assert_eq!(got, brute_biquadratic(x), "X = {x}");
        for f in &fields {
            assert_eq!(f.discriminant, f.biquad().unwrap().discriminant() as u128);
        }
    }
    assert!(enumerate_fields(2, 2_303)
        .unwrap()
        .iter()
        .all(|f| f.discriminant < 2_304));
}

#[test]
fn growth_ratio_stays_in_band() {
    let ratios: Vec<f64> = [10_000u128, 100_000, 1_000_000]
        .iter()
        .map(|&x| {
            let fields = enumerate_fields(2, x).unwrap();
            let set: BTreeSet<[u64; 3]> = fields.iter().map(triple).collect();
            assert_eq!(set.len(), fields.len());
            fields.len() as f64 / growth_rate(2, x)
        })
        .collect();
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(hi / lo < 3.0, "{ratios:?}");
}

#[test]
fn gamma_parametrization_examples() {
    let f = gamma_to_field(2, &[2, 3, 1]).unwrap();
    assert_eq!(f.a, vec![2, 3, 6]);
    assert_eq!(f.two_exponent, 3);
    assert_eq!(f.discriminant, 2304);

    let f = gamma_to_field(2, &[5, 13, 1]).unwrap();
    assert_eq!(f.two_exponent, 0);
    assert_eq!(f.discriminant, 4225);

    let f = gamma_to_field(1, &[5]).unwrap();
    assert_eq!(f.discriminant, 5);
    let f = gamma_to_field(1, &[6]).unwrap();
    assert_eq!(f.discriminant, 24);

    assert!(enumerate_fields(2, 1).unwrap().is_empty());
}

#[test]
fn rejects_bad_parameters() {
    assert!(gamma_to_field(2, &[2, 6, 1]).is_err());
    assert!(gamma_to_field(2, &[4, 3, 1]).is_err());
    assert!(gamma_to_field(2, &[2, 3]).is_err());
    assert!(gamma_to_field(5, &[1; 31]).is_err());
    assert!(enumerate_fields(0, 100).is_err());
    assert!(enumerate_fields(5, 100).is_err());
}

#[test]
fn higher_degree_counts_are_consistent() {
    let octic = enumerate_fields(3, 10_000_000_000).unwrap();
    assert!(!octic.is_empty());
    for f in &octic {
        assert_eq!(f.a.len(), 7);
        let prod: u128 = f.a.iter().map(|&x| x as u128).product();
        assert!(f.discriminant >= prod);
        assert!(f.discriminant <= 10_000_000_000);
    }
    let set: BTreeSet<Vec<u64>> = octic
        .iter()
        .map(|f| {
            let mut v = f.a.clone();
            v.sort_unstable();
            v
        })
        .collect();
    assert_eq!(set.len(), octic.len());
}

#[test]
fn stats_partition_the_fields() {
    let s = census_stats(2, 30_000, 3, Some(4), &Limits::default()).unwrap();
    assert_eq!(s.total, enumerate_fields(2, 30_000).unwrap().len() as u64);
    assert_eq!(s.buckets.iter().map(|b| b.count).sum::<u64>(), s.total);
    assert_eq!(s.within_b + s.exceeding_b, s.total);
    let iota = s.iota.unwrap();
    assert_eq!(iota.histogram.values().sum::<u64>(), s.total);
    assert_eq!(
        iota.histogram
            .iter()
            .filter(|(i, _)| **i <= 4)
            .map(|(_, c)| c)
            .sum::<u64>(),
        iota.at_most_r
    );
    assert!(census_stats(3, 1_000, 3, Some(4), &Limits::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monotone_in_bound(x in 1u128..20_000, dx in 0u128..20_000) {
        let a = enumerate_fields(2, x).unwrap();
        let b = enumerate_fields(2, x + dx).unwrap();
        prop_assert!(a.len() <= b.len());
        let big: BTreeSet<[u64; 3]> = b.iter().map(triple).collect();
        prop_assert!(a.iter().all(|f| big.contains(&triple(f))));
    }

    #[test]
    fn pairwise_coprime_gammas_give_squarefree_radicands(g1 in 1u64..200, g2 in 1u64..200, g3 in 1u64..200) {
        let gamma = [g1, g2, g3];
        let ok = gamma.iter().all(|&g| squarefree(g))
            && g1.gcd(&g2) == 1 && g1.gcd(&g3) == 1 && g2.gcd(&g3) == 1
            && g1 * g3 > 1 && g2 * g3 > 1 && g1 * g2 > 1;
        match gamma_to_field(2, &gamma) {
            Ok(f) => {
                prop_assert!(ok);
                prop_assert!(f.a.iter().all(|&d| squarefree(d) && d > 1));
                let k = f.biquad().unwrap();
                prop_assert_eq!(f.discriminant, k.discriminant() as u128);
            }
            Err(_) => prop_assert!(!ok),
        }
    }
}
