//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use indec_cli::commands::{cmd_crm, table_row};
use indec_cli::Report;
use indec_core::biquadstruct::{subfield_units, totally_positive_units, unit_square_test};
use indec_core::census::{enumerate_fields, growth_rate};
use indec_core::contfrac::{best_lower_bounds, best_upper_bounds, Approximation};
use indec_core::exactalg::{BiquadElem, BiquadField};
use indec_core::families::{verify_family, Family};
use indec_core::indecenum::oracle::oracle_indecomposables;
use indec_core::indecenum::{
    crm_constant, decompositions, indecomposables, match_orbits, preservation_check,
    rank_upper_bound, Limits,
};
use indec_core::quadindec::{canonical_list, quad_brute_force, quad_indecomposables};
use indec_core::{par, Result};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<std::result::Result<String, String>>;

fn check(
    cond: bool,
    ok: impl Into<String>,
    bad: impl Into<String>,
) -> std::result::Result<String, String> {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn squarefree(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|p| p * p <= n)
            .all(|p| !n.is_multiple_of(p * p))
}

/// Table rows: ι(K) and the subfield values keyed by radicand.
fn table_rows() -> Outcome {
    let rows: [(u64, u64, u64, [usize; 3], usize); 8] = [
        (2, 3, 6, [2, 1, 2], 5),
        (3, 5, 15, [1, 1, 1], 3),
        (2, 5, 10, [2, 1, 6], 14),
        (2, 7, 14, [2, 2, 2], 4),
        (3, 21, 7, [1, 1, 2], 15),
        (7, 5, 35, [2, 1, 1], 11),
        (3, 13, 39, [1, 3, 4], 13),
        (2, 21, 42, [2, 1, 2], 2),
    ];
    let stretch: [(u64, u64, usize); 2] = [(2, 11, 79), (3, 57, 243)];
    let limits = Limits::default();
    let mut slowest = Duration::ZERO;
    for (a, b, c, sub, iota) in rows {
        let expected: BTreeMap<u64, usize> = [(a, sub[0]), (b, sub[1]), (c, sub[2])].into();
        let k = BiquadField::new(a, b)?;
        let start = Instant::now();
        let row = par::sequential(|| table_row(&k, &limits))?;
        slowest = slowest.max(start.elapsed());
        let got = [
            (row.p, row.iota_p),
            (row.q, row.iota_q),
            (row.r, row.iota_r),
        ];
        if row.iota != iota || got.iter().any(|(d, i)| expected.get(d) != Some(i)) {
            return Ok(Err(format!(
                "({a},{b},{c}): got ι = {}, subfields {got:?}",
                row.iota
            )));
        }
    }
    let mut stretch_done = Vec::new();
    for (a, b, iota) in stretch {
        let got = indecomposables(&BiquadField::new(a, b)?)?.iota;
        if got != iota {
            return Ok(Err(format!(
                "stretch ({a},{b}): got ι = {got}, expected {iota}"
            )));
        }
        stretch_done.push(format!("({a},{b})→{got}"));
    }
    Ok(check(
        slowest <= Duration::from_secs(60),
        format!(
            "8 rows exact, slowest {:.1}s single-threaded; stretch {}",
            slowest.as_secs_f64(),
            stretch_done.join(", ")
        ),
        format!("slowest row took {:.1}s", slowest.as_secs_f64()),
    ))
}

fn families() -> Outcome {
    let cases = [
        (Family::F1, 6, 45),
        (Family::F1, 7, 55),
        (Family::F2, 9, 35),
        (Family::F2, 10, 39),
        (Family::F3, 2, 8),
        (Family::F3, 9, 36),
    ];
    for (which, n, iota) in cases {
        let r = verify_family(which, n, &Limits::default())?;
        if !r.passed || r.iota != iota {
            return Ok(Err(format!(
                "{which} n={n}: ι = {}, missing {}, extra {}",
                r.iota,
                r.missing.len(),
                r.extra.len()
            )));
        }
    }
    Ok(Ok("six instances, element sets matched up to units".into()))
}

fn kubota() -> Outcome {
    let k = BiquadField::new(143, 165)?;
    let units = subfield_units(&k)?;
    let deltas: Vec<u64> = units.iter().map(|u| u.kubota.delta).collect();
    let mut accepted = Vec::new();
    for bits in 0u8..8 {
        let e = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
        if unit_square_test(&k, &units, e)?.is_some() {
            accepted.push(e);
        }
    }
    let g = totally_positive_units(&k)?;
    Ok(check(
        deltas == [26, 15, 30]
            && accepted == [[0, 0, 0], [1, 0, 1]]
            && (g.index_total_pos, g.index_squares) == (4, 4),
        "δ = 26, 15, 30; squares {(0,0,0), (1,0,1)}; indices 4 and 4",
        format!(
            "δ = {deltas:?}, accepted {accepted:?}, indices {} {}",
            g.index_total_pos, g.index_squares
        ),
    ))
}

fn elem(k: &BiquadField, rational: i64, terms: &[(u64, i64)], den: i64) -> BiquadElem {
    let mut v = [rational * 4 / den, 0, 0, 0];
    for &(d, c) in terms {
        let i = k.subfield_index(d).expect("radicand of the field");
        v[i + 1] = c * 4 / den;
    }
    k.from_quarters_i64(v)
}

fn witness_found(alpha: &BiquadElem, b: &BiquadElem, c: &BiquadElem) -> Result<bool> {
    let all = decompositions(alpha, Limits::default().search)?;
    Ok(&(b + c) == alpha
        && all
            .iter()
            .any(|(x, y)| (x == b && y == c) || (x == c && y == b)))
}

fn preservation() -> Outcome {
    let fields = enumerate_fields(2, 10_000)?;
    for f in &fields {
        let k = f.biquad()?;
        let rep = preservation_check(&k, Limits::default().search)?;
        if !rep.designated_ok() {
            return Ok(Err(format!(
                "{} loses a designated indecomposable",
                k.label()
            )));
        }
    }
    let k1 = BiquadField::new(14, 91)?;
    let first = witness_found(
        &elem(&k1, 26, &[(26, 5)], 1),
        &elem(&k1, 26, &[(14, -5), (91, -2), (26, 5)], 2),
        &elem(&k1, 26, &[(14, 5), (91, 2), (26, 5)], 2),
    )?;
    let k2 = BiquadField::new(5, 13)?;
    let second = witness_found(
        &elem(&k2, 25, &[(65, 3)], 2),
        &elem(&k2, 25, &[(5, -5), (13, -3), (65, 3)], 4),
        &elem(&k2, 25, &[(5, 5), (13, 3), (65, 3)], 4),
    )?;
    Ok(check(
        first && second,
        format!(
            "{} fields preserved; both counterexample witnesses found",
            fields.len()
        ),
        format!("witnesses found: {first}, {second}"),
    ))
}

fn oracle() -> Outcome {
    let fields = enumerate_fields(2, 10_000)?;
    let mut summary = Vec::new();
    for f in &fields {
        let k = f.biquad()?;
        let set = indecomposables(&k)?;
        let o = oracle_indecomposables(&k, &set.units, None, u64::MAX)?;
        let cone: Vec<BiquadElem> = set.reps.iter().map(|r| r.elem.clone()).collect();
        let (missing, extra) = match_orbits(&cone, &o.reps)?;
        if set.iota != o.iota || !missing.is_empty() || !extra.is_empty() {
            return Ok(Err(format!(
                "{}: cone ι = {}, oracle ι = {}",
                k.label(),
                set.iota,
                o.iota
            )));
        }
        summary.push(format!("{}", set.iota));
    }
    Ok(Ok(format!(
        "{} fields, ι = {}",
        fields.len(),
        summary.join(",")
    )))
}

/// `floor(t·ξ)` for `ξ = -ω̄_D`.
fn floor_times(d: u64, t: u64) -> i128 {
    let m = ((t as u128) * (t as u128) * (d as u128)).isqrt() as i128;
    if d % 4 == 1 {
        (m - t as i128).div_euclid(2)
    } else {
        m
    }
}

fn brute_one_sided(d: u64, max_den: u64) -> (Vec<(i128, i128)>, Vec<(i128, i128)>) {
    let (mut upper, mut lower): (Vec<(i128, i128)>, Vec<(i128, i128)>) = (Vec::new(), Vec::new());
    for t in 1..=max_den {
        let f = floor_times(d, t);
        let t = t as i128;
        if upper.last().is_none_or(|&(s0, t0)| (f + 1) * t0 < s0 * t) {
            upper.push((f + 1, t));
        }
        if lower.last().is_none_or(|&(s0, t0)| f * t0 > s0 * t) {
            lower.push((f, t));
        }
    }
    (upper, lower)
}

fn pairs(v: &[Approximation]) -> Vec<(i128, i128)> {
    v.iter()
        .map(|a| {
            (
                a.num.to_string().parse().unwrap(),
                a.den.to_string().parse().unwrap(),
            )
        })
        .collect()
}

fn quadratic() -> Outcome {
    let mut fields = 0;
    for d in (2..=200u64).filter(|&d| squarefree(d)) {
        let list = quad_indecomposables(d)?;
        let from_cf = canonical_list(&list)?;
        if from_cf.len() != list.iota() || from_cf != quad_brute_force(d, &list.unit)? {
            return Ok(Err(format!(
                "D = {d}: semiconvergent list differs from brute force"
            )));
        }
        fields += 1;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 50 {
        let d: u64 = rng.gen_range(2..100_000);
        if !squarefree(d) {
            continue;
        }
        let (upper, lower) = brute_one_sided(d, 10_000);
        if pairs(&best_upper_bounds(d, 10_000)?) != upper
            || pairs(&best_lower_bounds(d, 10_000)?) != lower
        {
            return Ok(Err(format!("D = {d}: one-sided approximations differ")));
        }
        checked += 1;
    }
    Ok(Ok(format!(
        "{fields} fields D <= 200; 50 random D with denominators <= 10^4"
    )))
}

fn constants() -> Outcome {
    let c16 = crm_constant(16, 2)?;
    let c20 = crm_constant(20, 2)?;
    let c53 = crm_constant(5, 3)?;
    let via_cli = match cmd_crm(16, 2)? {
        Report::Crm(c) => c.value == "480",
        _ => false,
    };
    let bounds = [
        rank_upper_bound(45, 4),
        rank_upper_bound(35, 4),
        rank_upper_bound(8, 4),
    ];
    Ok(check(
        c16 == BigInt::from(480)
            && c20 == BigInt::from(760)
            && c53 == BigInt::from(252)
            && via_cli
            && bounds == [1260, 980, 224],
        "C(16,2) = 480, C(20,2) = 760, C(5,3) = 252; rank bounds 1260, 980, 224",
        format!("C = {c16}, {c20}, {c53}; bounds {bounds:?}"),
    ))
}

fn brute_fields(x: u64) -> Result<(BTreeSet<u64>, BTreeSet<[u64; 3]>)> {
    let quad = (2..=x)
        .filter(|&d| squarefree(d) && (if d % 4 == 1 { d } else { 4 * d }) <= x)
        .collect();
    let lim = (x as f64).sqrt() as u64 + 1;
    let mut biquad = BTreeSet::new();
    for a in (2..=lim).filter(|&a| squarefree(a)) {
        for b in (a + 1..=lim).filter(|&b| squarefree(b)) {
            let k = BiquadField::new(a, b)?;
            if k.discriminant() <= x {
                let mut t = k.radicands();
                t.sort_unstable();
                biquad.insert(t);
            }
        }
    }
    Ok((quad, biquad))
}

fn census() -> Outcome {
    let start = Instant::now();
    for x in [100u64, 1_000, 5_000, 10_000] {
        let (quad, biquad) = brute_fields(x)?;
        let f1 = enumerate_fields(1, x as u128)?;
        let f2 = enumerate_fields(2, x as u128)?;
        let s1: BTreeSet<u64> = f1.iter().map(|f| f.a[0]).collect();
        let s2: BTreeSet<[u64; 3]> = f2
            .iter()
            .map(|f| {
                let mut t = [f.a[0], f.a[1], f.a[2]];
                t.sort_unstable();
                t
            })
            .collect();
        if s1 != quad || s2 != biquad || s1.len() != f1.len() || s2.len() != f2.len() {
            return Ok(Err(format!(
                "X = {x}: counts {} {} vs brute force {} {}",
                f1.len(),
                f2.len(),
                quad.len(),
                biquad.len()
            )));
        }
    }
    let mut ratios = Vec::new();
    let mut counts = Vec::new();
    for x in [10_000u128, 100_000, 1_000_000] {
        let f = enumerate_fields(2, x)?;
        let distinct: BTreeSet<&Vec<u64>> = f.iter().map(|d| &d.a).collect();
        if distinct.len() != f.len() {
            return Ok(Err(format!("X = {x}: duplicate fields")));
        }
        counts.push(f.len());
        ratios.push(f.len() as f64 / growth_rate(2, x));
    }
    let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
        / ratios.iter().cloned().fold(f64::MAX, f64::min);
    let elapsed = start.elapsed();
    Ok(check(
        spread < 3.0 && elapsed <= Duration::from_secs(600),
        format!("brute force agrees for X <= 10^4; #K(2,X) = {counts:?}, ratio spread {spread:.2}"),
        format!("ratio spread {spread:.2}, {:.0}s", elapsed.as_secs_f64()),
    ))
}

/// Float tokens in the core sources, outside the reporting helper.
fn float_tokens(dir: &Path, found: &mut Vec<String>) -> std::io::Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            float_tokens(&path, found)?;
            continue;
        }
        let text = std::fs::read_to_string(&path)?;
        let mut in_growth = false;
        for (i, line) in text.lines().enumerate() {
            if line.starts_with("pub fn growth_rate") {
                in_growth = true;
            }
            let code = line.split("//").next().unwrap_or("");
            let has_float = code
                .split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                .any(|w| {
                    w == "f32"
                        || w == "f64"
                        || w.ends_with("f64")
                            && w.chars().next().is_some_and(|c| c.is_ascii_digit())
                });
            if has_float && !in_growth {
                found.push(format!("{}:{}", path.display(), i + 1));
            }
            if in_growth && line == "}" {
                in_growth = false;
            }
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> std::io::Result<Vec<u8>> {
    Ok(Command::new(env!("CARGO_BIN_EXE_indec"))
        .args(args)
        .output()?
        .stdout)
}

fn exactness() -> Outcome {
    let core_src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/src");
    let mut found = Vec::new();
    float_tokens(&core_src, &mut found)
        .map_err(|e| indec_core::Error::InvalidInput(e.to_string()))?;
    if !found.is_empty() {
        return Ok(Err(format!("floating point in {}", found.join(", "))));
    }
    let k = BiquadField::new(5, 17)?;
    let a = indecomposables(&k)?;
    let b = par::sequential(|| indecomposables(&k))?;
    if a != b {
        return Ok(Err("sequential and parallel enumeration differ".into()));
    }
    let io = |e: std::io::Error| indec_core::Error::InvalidInput(e.to_string());
    for args in [
        ["biquad", "5", "13", "--oracle", "--json"].as_slice(),
        [
            "census",
            "2",
            "30000",
            "--stats",
            "--iota-max",
            "8",
            "--json",
        ]
        .as_slice(),
        ["preserve", "14", "91", "--json"].as_slice(),
    ] {
        let mut outs = Vec::new();
        for jobs in ["1", "1", "4"] {
            let mut full = vec!["--jobs", jobs];
            full.extend_from_slice(args);
            outs.push(run_cli(&full).map_err(io)?);
        }
        if outs[0].is_empty() || outs.iter().any(|o| *o != outs[0]) {
            return Ok(Err(format!("{args:?} differs across runs or job counts")));
        }
    }
    Ok(Ok(
        "no floats in predicate code; identical output across runs and --jobs 1/4".into(),
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("table reproduction", table_rows),
        ("family formulas", families),
        ("Kubota data", kubota),
        ("preservation", preservation),
        ("oracle equivalence", oracle),
        ("quadratic layer", quadratic),
        ("constants and bounds", constants),
        ("census properties", census),
        ("exactness", exactness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = match f() {
            Ok(Ok(msg)) => format!("PASS criterion {} ({name}): {msg}", i + 1),
            Ok(Err(msg)) => {
                failed += 1;
                format!("FAIL criterion {} ({name}): {msg}", i + 1)
            }
            Err(e) => {
                failed += 1;
                format!("FAIL criterion {} ({name}): error {e}", i + 1)
            }
        };
        println!("{line} [{:.1}s]", start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
