//! Builds reports from the core library.

use indec_core::biquadstruct::{cone_decomposition, parallelepiped_size};
use indec_core::census::{census_stats, enumerate_fields, growth_rate, MultiquadDescriptor};
use indec_core::contfrac::{best_lower_bounds, best_upper_bounds, cf_expand};
use indec_core::exactalg::ntheory::gcd_u64;
use indec_core::exactalg::BiquadField;
use indec_core::families::{verify_family, Family};
use indec_core::indecenum::bounds::{crm_constant, rank_upper_bound, PYTHAGORAS_BOUND};
use indec_core::indecenum::oracle::oracle_indecomposables;
use indec_core::indecenum::preserve::preservation_check;
use indec_core::indecenum::{indecomposables_with, match_orbits, IndecSet, Limits};
use indec_core::quadindec::{quad_indecomposables, quad_iota};
use indec_core::{par, Error, Result};

use crate::report::*;

/// Decimal places of the printed ratios.
pub const PRECISION: usize = 4;

pub fn cmd_cf(d: u64, max_den: Option<u64>) -> Result<Report> {
    let cf = cf_expand(d)?;
    let unit = cf.fundamental_unit();
    let norm = unit.norm().to_integer();
    let approximations = match max_den {
        None => None,
        Some(t) => Some(Approximations {
            max_den: t,
            upper: best_upper_bounds(d, t)?
                .iter()
                .map(|a| a.to_string())
                .collect(),
            lower: best_lower_bounds(d, t)?
                .iter()
                .map(|a| a.to_string())
                .collect(),
        }),
    };
    Ok(Report::Cf(CfReport {
        d,
        number: if d % 4 == 1 {
            format!("(-1+√{d})/2")
        } else {
            format!("√{d}")
        },
        expansion: cf.to_string(),
        period_length: cf.s(),
        fundamental_unit: unit.to_string(),
        unit_norm: if norm == 1.into() { 1 } else { -1 },
        totally_positive_unit: cf.totally_positive_unit().to_string(),
        odd_partial_quotient_max: cf.odd_partial_quotient_max(),
        approximations,
    }))
}

pub fn cmd_quad(d: u64) -> Result<Report> {
    let list = quad_indecomposables(d)?;
    Ok(Report::Quad(QuadReport {
        d,
        expansion: list.cf.to_string(),
        totally_positive_unit: list.unit.to_string(),
        iota: list.iota(),
        indecomposables: list
            .reps
            .iter()
            .map(|r| QuadRow {
                i: r.i,
                l: r.l,
                elem: r.elem.to_string(),
                norm: r.elem.norm().to_string(),
            })
            .collect(),
    }))
}

fn subfield_rows(set: &IndecSet) -> Result<Vec<SubfieldOut>> {
    set.units
        .subfield
        .iter()
        .map(|u| {
            Ok(SubfieldOut {
                d: u.d,
                fundamental_unit: u.fundamental.to_string(),
                norm: u.norm,
                totally_positive_unit: u.totally_positive.to_string(),
                kubota_delta: u.kubota.delta,
                iota: quad_iota(u.d)?,
            })
        })
        .collect()
}

pub fn biquad_report(k: &BiquadField, limits: &Limits, oracle: bool) -> Result<BiquadReport> {
    let set = indecomposables_with(k, limits)?;
    let cd = cone_decomposition(k, &set.units)?;
    let cones = cd
        .cones
        .iter()
        .map(|c| {
            Ok(Labelled {
                label: c.label.clone(),
                value: parallelepiped_size(c)?.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let oracle = if oracle {
        let o = oracle_indecomposables(k, &set.units, None, limits.search)?;
        let reps: Vec<_> = set.reps.iter().map(|r| r.elem.clone()).collect();
        let (missing, extra) = match_orbits(&reps, &o.reps)?;
        Some(OracleOut {
            iota: o.iota,
            subdivisions: o.subdivisions,
            scanned: o.scanned,
            norm_bound: o.norm_bound,
            matched: missing.is_empty() && extra.is_empty() && o.iota == set.iota,
            missing: missing.iter().map(|e| e.to_string()).collect(),
            extra: extra.iter().map(|e| e.to_string()).collect(),
        })
    } else {
        None
    };
    Ok(BiquadReport {
        p: k.p,
        q: k.q,
        r: k.r,
        field_type: k.kind.number(),
        discriminant: k.discriminant(),
        integral_basis: k.integral_basis().iter().map(|b| b.to_string()).collect(),
        subfields: subfield_rows(&set)?,
        unit_generators: set
            .units
            .labels
            .iter()
            .zip(&set.units.gens)
            .map(|(l, g)| Labelled {
                label: l.clone(),
                value: g.to_string(),
            })
            .collect(),
        index_total_pos: set.units.index_total_pos,
        index_squares: set.units.index_squares,
        extra_units: set.units.extra_units,
        cones,
        cones_disjoint: set.cones_disjoint,
        iota: set.iota,
        representatives: set
            .reps
            .iter()
            .map(|r| RepOut {
                elem: r.elem.to_string(),
                norm: r.norm.to_string(),
                provenance: r.provenance.clone(),
            })
            .collect(),
        oracle,
    })
}

pub fn cmd_biquad(p: u64, q: u64, limits: &Limits, oracle: bool) -> Result<Report> {
    Ok(Report::Biquad(biquad_report(
        &BiquadField::new(p, q)?,
        limits,
        oracle,
    )?))
}

fn ratio(num: f64, den: f64) -> String {
    format!("{:.*}", PRECISION, num / den)
}

pub fn table_row(k: &BiquadField, limits: &Limits) -> Result<TableRow> {
    let set = indecomposables_with(k, limits)?;
    let disc = k.discriminant();
    Ok(TableRow {
        p: k.p,
        q: k.q,
        r: k.r,
        extra_units: set.units.extra_units,
        iota_p: quad_iota(k.p)?,
        iota_q: quad_iota(k.q)?,
        iota_r: quad_iota(k.r)?,
        iota: set.iota,
        discriminant: disc,
        ratio: ratio((set.iota as f64).ln(), (disc as f64).ln()),
    })
}

/// Biquadratic fields with `Δ_K <= max_disc`, ordered by the product of
/// their ramified primes and then by `(p, q)`.
pub fn cmd_table(max_disc: u64, limits: &Limits) -> Result<Report> {
    let fields = enumerate_fields(2, max_disc as u128)?;
    let ks = fields
        .iter()
        .map(|f| f.biquad())
        .collect::<Result<Vec<_>>>()?;
    let mut rows = par::try_map(&ks, |k| table_row(k, limits))?;
    // p·q / gcd(p, q) is the product of the ramified odd and even primes
    rows.sort_by_key(|r| (r.p * r.q / gcd_u64(r.p, r.q), r.p, r.q));
    Ok(Report::Table(TableReport {
        max_disc,
        precision: PRECISION,
        rows,
    }))
}

pub fn cmd_family(which: Family, n: u64, limits: &Limits) -> Result<Report> {
    let r = verify_family(which, n, limits)?;
    let names = ["p", "q", "r"];
    Ok(Report::Family(FamilyOut {
        family: which.to_string(),
        n,
        p: r.spec.p,
        q: r.spec.q,
        r: r.spec.r,
        squarefree: r.spec.squarefree,
        coprime: r.spec.coprime,
        expected_iota: r.spec.expected_iota,
        iota: r.iota,
        units: r
            .spec
            .units
            .iter()
            .zip(names)
            .map(|((_, u), l)| Labelled {
                label: l.into(),
                value: u.clone(),
            })
            .collect(),
        elements: r
            .spec
            .elements
            .iter()
            .map(|e| Labelled {
                label: e.label.clone(),
                value: e.elem.to_string(),
            })
            .collect(),
        units_ok: r.units_ok,
        elements_ok: r.elements_ok,
        missing: r.missing,
        extra: r.extra,
        index_squares: r.index_squares,
        rank_bound: r.rank_bound,
        passed: r.passed,
    }))
}

pub fn cmd_preserve(p: u64, q: u64, limits: &Limits) -> Result<Report> {
    let k = BiquadField::new(p, q)?;
    let rep = preservation_check(&k, limits.search)?;
    Ok(Report::Preserve(PreserveOut {
        p: k.p,
        q: k.q,
        r: k.r,
        designated_ok: rep.designated_ok(),
        subfields: rep
            .subfields
            .iter()
            .map(|s| SubfieldPreserveOut {
                d: s.d,
                designated: s.designated,
                tested: s.tested,
                witnesses: s
                    .failures
                    .iter()
                    .map(|w| WitnessOut {
                        alpha: w.alpha.to_string(),
                        beta: w.beta.to_string(),
                        gamma: w.gamma.to_string(),
                    })
                    .collect(),
            })
            .collect(),
    }))
}

fn field_row(f: &MultiquadDescriptor) -> FieldRow {
    FieldRow {
        gamma: f.gamma.clone(),
        a: f.a.clone(),
        generators: f.generators.clone(),
        two_exponent: f.two_exponent,
        discriminant: f.discriminant,
    }
}

/// Statistics options of the census command.
#[derive(Clone, Copy, Debug)]
pub struct StatsOptions {
    pub b: u64,
    pub r: Option<usize>,
}

pub fn cmd_census(n: u32, x: u128, stats: Option<StatsOptions>, limits: &Limits) -> Result<Report> {
    let out = match stats {
        None => {
            let fields = enumerate_fields(n, x)?;
            CensusOut {
                n,
                max_disc: x,
                count: fields.len() as u64,
                fields: fields.iter().map(field_row).collect(),
                stats: None,
            }
        }
        Some(o) => {
            let st = census_stats(n, x, o.b, o.r, limits)?;
            let growth = growth_rate(n, x);
            let growth_ratio = if growth > 0.0 {
                ratio(st.total as f64, growth)
            } else {
                "-".into()
            };
            CensusOut {
                n,
                max_disc: x,
                count: st.total,
                fields: Vec::new(),
                stats: Some(StatsOut {
                    buckets: st
                        .buckets
                        .iter()
                        .map(|b| BucketOut {
                            lo: b.lo,
                            hi: b.hi,
                            count: b.count,
                        })
                        .collect(),
                    b: st.b,
                    within_b: st.within_b,
                    exceeding_b: st.exceeding_b,
                    growth_ratio,
                    precision: PRECISION,
                    iota: st.iota.map(|i| IotaOut {
                        r: i.r,
                        at_most_r: i.at_most_r,
                        histogram: i.histogram.into_iter().collect(),
                    }),
                }),
            }
        }
    };
    Ok(Report::Census(out))
}

/// Census rows as CSV: `n, gamma_1.., A_1.., two_exponent, discriminant`.
pub fn census_csv(c: &CensusOut) -> Result<String> {
    let size = (1usize << c.n) - 1;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string()];
    header.extend((1..=size).map(|j| format!("gamma_{j}")));
    header.extend((1..=size).map(|j| format!("A_{j}")));
    header.push("two_exponent".into());
    header.push("discriminant".into());
    let io = |e: csv::Error| Error::InvalidInput(e.to_string());
    w.write_record(&header).map_err(io)?;
    for f in &c.fields {
        let mut rec = vec![c.n.to_string()];
        rec.extend(f.gamma.iter().map(|g| g.to_string()));
        rec.extend(f.a.iter().map(|a| a.to_string()));
        rec.push(f.two_exponent.to_string());
        rec.push(f.discriminant.to_string());
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn cmd_crm(r: u64, m: u64) -> Result<Report> {
    Ok(Report::Crm(CrmReport {
        r,
        m,
        value: crm_constant(r, m)?.to_string(),
    }))
}

pub fn cmd_rankbound(iota: u64, index_squares: u64) -> Result<Report> {
    Ok(Report::Rankbound(RankReport {
        field: None,
        iota,
        index_squares,
        pythagoras: PYTHAGORAS_BOUND,
        bound: rank_upper_bound(iota, index_squares),
    }))
}

pub fn cmd_rankbound_field(p: u64, q: u64, limits: &Limits) -> Result<Report> {
    let k = BiquadField::new(p, q)?;
    let set = indecomposables_with(&k, limits)?;
    let iota = set.iota as u64;
    let index_squares = u64::from(set.units.index_squares);
    Ok(Report::Rankbound(RankReport {
        field: Some(k.label()),
        iota,
        index_squares,
        pythagoras: PYTHAGORAS_BOUND,
        bound: rank_upper_bound(iota, index_squares),
    }))
}
