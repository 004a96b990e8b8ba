//! Serializable command results and their human-readable rendering.
//!
//! Every value is stored as an integer or an exact string, and the text
//! output is a pure function of the report, so rendering a report parsed
//! back from JSON reproduces the original text.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

/// `u128` values travel as decimal strings: the tagged report enum buffers
/// its fields, and the buffer has no 128-bit integers.
mod wide {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Cf(CfReport),
    Quad(QuadReport),
    Biquad(BiquadReport),
    Table(TableReport),
    Family(FamilyOut),
    Preserve(PreserveOut),
    Census(CensusOut),
    Crm(CrmReport),
    Rankbound(RankReport),
}

impl Report {
    /// False when a consistency check inside the report failed.
    pub fn verified(&self) -> bool {
        match self {
            Report::Biquad(b) => b.oracle.as_ref().is_none_or(|o| o.matched),
            Report::Family(f) => f.passed,
            Report::Preserve(p) => p.designated_ok,
            _ => true,
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Cf(r) => r.render(&mut s),
            Report::Quad(r) => r.render(&mut s),
            Report::Biquad(r) => r.render(&mut s),
            Report::Table(r) => r.render(&mut s),
            Report::Family(r) => r.render(&mut s),
            Report::Preserve(r) => r.render(&mut s),
            Report::Census(r) => r.render(&mut s),
            Report::Crm(r) => r.render(&mut s),
            Report::Rankbound(r) => r.render(&mut s),
        }
        s
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximations {
    pub max_den: u64,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfReport {
    pub d: u64,
    /// The expanded number, `√D` or `(-1+√D)/2`.
    pub number: String,
    pub expansion: String,
    pub period_length: usize,
    pub fundamental_unit: String,
    pub unit_norm: i64,
    pub totally_positive_unit: String,
    pub odd_partial_quotient_max: u64,
    pub approximations: Option<Approximations>,
}

impl CfReport {
    fn render(&self, s: &mut String) {
        let _ = writeln!(s, "{} = {}", self.number, self.expansion);
        let _ = writeln!(s, "period length: {}", self.period_length);
        let _ = writeln!(
            s,
            "unit: {} (norm {})",
            self.fundamental_unit, self.unit_norm
        );
        let _ = writeln!(s, "totally positive unit: {}", self.totally_positive_unit);
        let _ = writeln!(
            s,
            "max odd partial quotient: {}",
            self.odd_partial_quotient_max
        );
        if let Some(a) = &self.approximations {
            let _ = writeln!(
                s,
                "best upper bounds (den <= {}): {}",
                a.max_den,
                a.upper.join(", ")
            );
            let _ = writeln!(
                s,
                "best lower bounds (den <= {}): {}",
                a.max_den,
                a.lower.join(", ")
            );
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRow {
    pub i: i64,
    pub l: u64,
    pub elem: String,
    pub norm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadReport {
    pub d: u64,
    pub expansion: String,
    pub totally_positive_unit: String,
    pub iota: usize,
    pub indecomposables: Vec<QuadRow>,
}

impl QuadReport {
    fn render(&self, s: &mut String) {
        let _ = writeln!(s, "Q(√{}): expansion {}", self.d, self.expansion);
        let _ = writeln!(s, "totally positive unit: {}", self.totally_positive_unit);
        let _ = writeln!(s, "ι = {}", self.iota);
        for r in &self.indecomposables {
            let _ = writeln!(s, "  α({},{}) = {}  norm {}", r.i, r.l, r.elem, r.norm);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldOut {
    pub d: u64,
    pub fundamental_unit: String,
    pub norm: i64,
    pub totally_positive_unit: String,
    pub kubota_delta: u64,
    pub iota: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelled {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepOut {
    pub elem: String,
    pub norm: String,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOut {
    pub iota: usize,
    pub subdivisions: u32,
    pub scanned: u64,
    pub norm_bound: u64,
    pub matched: bool,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiquadReport {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub field_type: u8,
    pub discriminant: u64,
    pub integral_basis: Vec<String>,
    pub subfields: Vec<SubfieldOut>,
    pub unit_generators: Vec<Labelled>,
    pub index_total_pos: u32,
    pub index_squares: u32,
    pub extra_units: bool,
    pub cones: Vec<Labelled>,
    pub cones_disjoint: bool,
    pub iota: usize,
    pub representatives: Vec<RepOut>,
    pub oracle: Option<OracleOut>,
}

impl BiquadReport {
    fn render(&self, s: &mut String) {
        let _ = writeln!(
            s,
            "K = Q(√{},√{}), r = {}, type {}",
            self.p, self.q, self.r, self.field_type
        );
        let _ = writeln!(s, "discriminant: {}", self.discriminant);
        let _ = writeln!(s, "integral basis: {}", self.integral_basis.join(", "));
        for f in &self.subfields {
            let _ = writeln!(
                s,
                "K_{}: unit {} (norm {}), totally positive {}, δ = {}, ι = {}",
                f.d, f.fundamental_unit, f.norm, f.totally_positive_unit, f.kubota_delta, f.iota
            );
        }
        let _ = writeln!(
            s,
            "[O_K^× : O_K^×+] = {}, [O_K^×+ : (O_K^×)²] = {}{}",
            self.index_total_pos,
            self.index_squares,
            if self.extra_units {
                ", extra totally positive units"
            } else {
                ""
            }
        );
        for g in &self.unit_generators {
            let _ = writeln!(s, "  unit {}: {}", g.label, g.value);
        }
        let cones: Vec<String> = self
            .cones
            .iter()
            .map(|c| format!("{} {}", c.label, c.value))
            .collect();
        let _ = writeln!(
            s,
            "parallelepiped points: {} ({})",
            cones.join(", "),
            if self.cones_disjoint {
                "disjoint"
            } else {
                "overlapping"
            }
        );
        let _ = writeln!(s, "ι(K) = {}", self.iota);
        for r in &self.representatives {
            let _ = writeln!(s, "  {}  norm {}  [{}]", r.elem, r.norm, r.provenance);
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                s,
                "oracle: ι = {}, {}³ cells, {} points, norm bound {}: {}",
                o.iota,
                o.subdivisions,
                o.scanned,
                o.norm_bound,
                if o.matched { "match" } else { "MISMATCH" }
            );
            for m in &o.missing {
                let _ = writeln!(s, "  missing from oracle: {m}");
            }
            for e in &o.extra {
                let _ = writeln!(s, "  extra in oracle: {e}");
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub extra_units: bool,
    pub iota_p: usize,
    pub iota_q: usize,
    pub iota_r: usize,
    pub iota: usize,
    pub discriminant: u64,
    /// `log ι(K) / log Δ_K` rounded to `precision` decimals.
    pub ratio: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub max_disc: u64,
    pub precision: usize,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    fn render(&self, s: &mut String) {
        let _ = writeln!(
            s,
            "{:<16} {:>7} {:>7} {:>7} {:>6} {:>10} {:>12}",
            "(p,q,r)", "ι(K_p)", "ι(K_q)", "ι(K_r)", "ι(K)", "Δ_K", "logι/logΔ"
        );
        for r in &self.rows {
            let name = format!(
                "({},{},{}){}",
                r.p,
                r.q,
                r.r,
                if r.extra_units { "*" } else { "" }
            );
            let _ = writeln!(
                s,
                "{:<16} {:>7} {:>7} {:>7} {:>6} {:>10} {:>12}",
                name, r.iota_p, r.iota_q, r.iota_r, r.iota, r.discriminant, r.ratio
            );
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyOut {
    pub family: String,
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub squarefree: bool,
    pub coprime: bool,
    pub expected_iota: u64,
    pub iota: u64,
    pub units: Vec<Labelled>,
    pub elements: Vec<Labelled>,
    pub units_ok: bool,
    pub elements_ok: bool,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    pub index_squares: u64,
    pub rank_bound: u64,
    pub passed: bool,
}

impl FamilyOut {
    fn render(&self, s: &mut String) {
        let _ = writeln!(
            s,
            "{} n={}: p={}, q={}, r={}",
            self.family, self.n, self.p, self.q, self.r
        );
        for u in &self.units {
            let _ = writeln!(s, "  ε_{} = {}", u.label, u.value);
        }
        let _ = writeln!(s, "closed-form units {}", mark(self.units_ok));
        let _ = writeln!(
            s,
            "listed elements totally positive {}",
            mark(self.elements_ok)
        );
        for e in &self.elements {
            let _ = writeln!(s, "  {} = {}", e.label, e.value);
        }
        for m in &self.missing {
            let _ = writeln!(s, "missing: {m}");
        }
        for e in &self.extra {
            let _ = writeln!(s, "extra: {e}");
        }
        let _ = writeln!(s, "ι = {} (expected {})", self.iota, self.expected_iota);
        let _ = writeln!(
            s,
            "rank bound: 7·{}·{} = {}",
            self.index_squares, self.iota, self.rank_bound
        );
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldPreserveOut {
    pub d: u64,
    pub designated: bool,
    pub tested: usize,
    pub witnesses: Vec<WitnessOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreserveOut {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub subfields: Vec<SubfieldPreserveOut>,
    pub designated_ok: bool,
}

impl PreserveOut {
    fn render(&self, s: &mut String) {
        let _ = writeln!(s, "K = Q(√{},√{}), r = {}", self.p, self.q, self.r);
        for f in &self.subfields {
            let _ = writeln!(
                s,
                "K_{}{}: {} ({} tested)",
                f.d,
                if f.designated { " (designated)" } else { "" },
                mark(f.witnesses.is_empty()),
                f.tested
            );
            for w in &f.witnesses {
                let _ = writeln!(s, "  {} = {} + {}", w.alpha, w.beta, w.gamma);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRow {
    pub gamma: Vec<u64>,
    pub a: Vec<u64>,
    pub generators: Vec<u64>,
    pub two_exponent: u32,
    #[serde(with = "wide")]
    pub discriminant: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketOut {
    #[serde(with = "wide")]
    pub lo: u128,
    #[serde(with = "wide")]
    pub hi: u128,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaOut {
    pub r: usize,
    pub at_most_r: u64,
    /// `(ι, number of fields)`.
    pub histogram: Vec<(usize, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsOut {
    pub buckets: Vec<BucketOut>,
    pub b: u64,
    pub within_b: u64,
    pub exceeding_b: u64,
    /// `#K(n,X) / (X^{2^{1-n}} (log X)^{2^n-2})` rounded to `precision` decimals.
    pub growth_ratio: String,
    pub precision: usize,
    pub iota: Option<IotaOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOut {
    pub n: u32,
    #[serde(with = "wide")]
    pub max_disc: u128,
    pub count: u64,
    pub fields: Vec<FieldRow>,
    pub stats: Option<StatsOut>,
}

impl CensusOut {
    fn render(&self, s: &mut String) {
        let _ = writeln!(
            s,
            "degree 2^{} fields with Δ <= {}: {}",
            self.n, self.max_disc, self.count
        );
        for f in &self.fields {
            let _ = writeln!(
                s,
                "  Δ = {}  γ = {:?}  A = {:?}  generators {:?}  r = {}",
                f.discriminant, f.gamma, f.a, f.generators, f.two_exponent
            );
        }
        if let Some(st) = &self.stats {
            for b in &st.buckets {
                let _ = writeln!(s, "  [{}, {}): {}", b.lo, b.hi, b.count);
            }
            let _ = writeln!(
                s,
                "odd partial quotients <= {}: {} fields, exceeding: {}",
                st.b, st.within_b, st.exceeding_b
            );
            let _ = writeln!(s, "count / growth rate: {}", st.growth_ratio);
            if let Some(i) = &st.iota {
                let _ = writeln!(s, "ι <= {}: {}", i.r, i.at_most_r);
                for (v, c) in &i.histogram {
                    let _ = writeln!(s, "  ι = {v}: {c}");
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrmReport {
    pub r: u64,
    pub m: u64,
    pub value: String,
}

impl CrmReport {
    fn render(&self, s: &mut String) {
        let _ = writeln!(s, "C({},{}) = {}", self.r, self.m, self.value);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub field: Option<String>,
    pub iota: u64,
    pub index_squares: u64,
    pub pythagoras: u64,
    pub bound: u64,
}

impl RankReport {
    fn render(&self, s: &mut String) {
        if let Some(f) = &self.field {
            let _ = writeln!(s, "{f}");
        }
        let _ = writeln!(
            s,
            "rank bound: {}·{}·{} = {}",
            self.pythagoras, self.index_squares, self.iota, self.bound
        );
    }
}
