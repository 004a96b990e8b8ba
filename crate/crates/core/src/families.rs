//! Three one-parameter families of real biquadratic fields with explicitly
//! known indecomposables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::contfrac::fundamental_unit;
use crate::exactalg::ntheory::{gcd_u64, is_squarefree};
use crate::exactalg::{rat, BiquadElem, BiquadField, QuadField};
use crate::indecenum::bounds::rank_upper_bound;
use crate::indecenum::{indecomposables_with, match_orbits, Limits};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2,
    F3,
}

impl Family {
    pub fn min_n(self) -> u64 {
        match self {
            Family::F1 => 6,
            Family::F2 => 9,
            Family::F3 => 2,
        }
    }

    pub fn expected_iota(self, n: u64) -> u64 {
        match self {
            Family::F1 => 10 * n - 15,
            Family::F2 => 4 * n - 1,
            Family::F3 => 4 * n,
        }
    }

    /// `(p, q)` for parameter `n`.
    pub fn radicands(self, n: u64) -> (u64, u64) {
        let p = (2 * n - 1) * (2 * n + 1);
        let q = match self {
            Family::F1 => (2 * n - 1) * (2 * n + 3),
            Family::F2 => (4 * n - 3) * (4 * n + 1),
            Family::F3 => (4 * n - 1) * (4 * n + 3),
        };
        (p, q)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" | "1" => Ok(Family::F1),
            "f2" | "2" => Ok(Family::F2),
            "f3" | "3" => Ok(Family::F3),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyElement {
    /// Expression in `ε_p, ε_q, ε_r, μ`.
    pub label: String,
    pub elem: BiquadElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub which: Family,
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub squarefree: bool,
    /// `gcd(p, q) = 1`; only required for the second and third families.
    pub coprime: bool,
    pub valid: bool,
    pub expected_iota: u64,
    /// Closed-form subfield units `(radicand, unit)`; empty when invalid.
    pub units: Vec<(u64, String)>,
    pub elements: Vec<FamilyElement>,
}

struct Units {
    ep: BiquadElem,
    eq: BiquadElem,
    er: BiquadElem,
    quad: [(u64, crate::exactalg::QuadElem); 3],
}

fn closed_form_units(
    which: Family,
    n: u64,
    k: &BiquadField,
    p: u64,
    q: u64,
    r: u64,
) -> Result<Units> {
    let n = n as i64;
    let (a_q, a_r) = match which {
        Family::F1 => (2 * n + 1, 2 * n + 2),
        Family::F2 => (4 * n - 1, 8 * n * n - 2 * n - 2),
        Family::F3 => (4 * n + 1, 8 * n * n + 2 * n - 2),
    };
    let ep = QuadField::new(p)?.from_sqrt_form(rat(2 * n, 1), rat(1, 1));
    let eq = QuadField::new(q)?.from_sqrt_form(rat(a_q, 2), rat(1, 2));
    let er = QuadField::new(r)?.from_sqrt_form(rat(a_r, 1), rat(1, 1));
    Ok(Units {
        ep: k.embed_quad(&ep)?,
        eq: k.embed_quad(&eq)?,
        er: k.embed_quad(&er)?,
        quad: [(p, ep), (q, eq), (r, er)],
    })
}

fn elements(which: Family, n: u64, k: &BiquadField, u: &Units) -> Result<Vec<FamilyElement>> {
    let (ep, eq, er) = (&u.ep, &u.eq, &u.er);
    let (epi, eqi, eri) = (ep.inv()?, eq.inv()?, er.inv()?);
    let one = k.one();
    let n = n as i64;
    let mut out = vec![FamilyElement {
        label: "1".into(),
        elem: one.clone(),
    }];
    let mut push = |label: String, elem: BiquadElem| out.push(FamilyElement { label, elem });
    let times = |x: &BiquadElem, t: i64| x.scale(&rat(t, 1));
    match which {
        Family::F1 => {
            let (p, q, r) = (
                k.subfield_index(u.quad[0].0),
                k.subfield_index(u.quad[1].0),
                k.subfield_index(u.quad[2].0),
            );
            let mut c = [rat(2 * n + 3, 2), rat(0, 1), rat(0, 1), rat(0, 1)];
            for i in [p, q, r] {
                c[i.ok_or(Error::FieldMismatch)? + 1] = rat(1, 2);
            }
            let mu = k.elem(c);
            let mu1 = mu.add_int(-1);
            let mu2 = mu.add_int(-2);
            let a = (&epi + er).half();
            let b = (&one + &(ep * er)).half();
            push("(ε_p^-1+ε_r)/2".into(), a);
            push("μ".into(), mu.clone());
            for t in 3..=2 * n - 2 {
                push(format!("1+ε_p+{t}(μ-1)"), &(&one + ep) + &times(&mu1, t));
                push(
                    format!("(1+ε_pε_r)/2+ε_p+{t}(μ-1)"),
                    &(&b + ep) + &times(&mu1, t),
                );
            }
            for t in 4..=2 * n - 1 {
                push(
                    format!("1+ε_q^-1+{t}(μ-1)"),
                    &(&one + &eqi) + &times(&mu1, t),
                );
                push(
                    format!("(1+ε_pε_r)/2+ε_q^-1+{t}(μ-1)"),
                    &(&b + &eqi) + &times(&mu1, t),
                );
            }
            let c = (&eri + ep).half();
            for t in 2..=2 * n - 1 {
                push(format!("(ε_r^-1+ε_p)/2+{t}(μ-2)"), &c + &times(&mu2, t));
            }
        }
        Family::F2 => {
            let a = (&epi + er).half();
            let step = eq - &epi;
            for t in 0..=2 * n - 2 {
                push(
                    format!("(ε_p^-1+ε_r)/2+{t}(ε_q-ε_p^-1)"),
                    &a + &times(&step, t),
                );
            }
            let b = &epi - eq;
            let step = (ep * eq).add_int(-1);
            for t in 1..=2 * n - 1 {
                push(format!("(ε_p^-1-ε_q)+{t}(ε_pε_q-1)"), &b + &times(&step, t));
            }
        }
        Family::F3 => {
            push("(ε_p^-1+ε_r)/2".into(), (&epi + er).half());
            let a = (ep + er).half();
            let step = ep - &eqi;
            for t in 0..=2 * n - 2 {
                push(
                    format!("(ε_p+ε_r)/2+{t}(ε_p-ε_q^-1)"),
                    &a + &times(&step, t),
                );
            }
            let b = &eqi - ep;
            let step = (ep * eq).add_int(-1);
            for t in 1..=2 * n - 1 {
                push(format!("(ε_q^-1-ε_p)+{t}(ε_pε_q-1)"), &b + &times(&step, t));
            }
        }
    }
    Ok(out)
}

pub fn family_spec(which: Family, n: u64) -> Result<FamilySpec> {
    if n < which.min_n() || n > 1_000_000 {
        return Err(Error::InvalidInput(format!(
            "{which} needs n >= {}, got {n}",
            which.min_n()
        )));
    }
    let (p, q) = which.radicands(n);
    let g = gcd_u64(p, q);
    let r = (p / g) * (q / g);
    let squarefree = is_squarefree(p) && is_squarefree(q) && is_squarefree(r);
    let coprime = g == 1;
    let valid = squarefree && (coprime || which == Family::F1);
    let mut spec = FamilySpec {
        which,
        n,
        p,
        q,
        r,
        squarefree,
        coprime,
        valid,
        expected_iota: which.expected_iota(n),
        units: Vec::new(),
        elements: Vec::new(),
    };
    if valid {
        let k = BiquadField::new(p, q)?;
        let u = closed_form_units(which, n, &k, p, q, r)?;
        spec.units = u.quad.iter().map(|(d, e)| (*d, e.to_string())).collect();
        spec.elements = elements(which, n, &k, &u)?;
        if spec.elements.len() as u64 != spec.expected_iota {
            return Err(Error::Mismatch(format!(
                "{which} n={n}: {} listed elements, closed form {}",
                spec.elements.len(),
                spec.expected_iota
            )));
        }
    }
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub spec: FamilySpec,
    pub iota: u64,
    /// Closed-form units agree with the continued fraction units.
    pub units_ok: bool,
    /// Listed elements that are integral and totally positive.
    pub elements_ok: bool,
    /// Listed elements without a matching enumerated orbit.
    pub missing: Vec<String>,
    /// Enumerated orbits without a listed element.
    pub extra: Vec<String>,
    pub index_squares: u64,
    pub rank_bound: u64,
    pub passed: bool,
}

pub fn verify_family(which: Family, n: u64, limits: &Limits) -> Result<FamilyReport> {
    let spec = family_spec(which, n)?;
    if !spec.valid {
        return Err(Error::InvalidInput(format!(
            "{which} n={n}: p={} q={} (squarefree {}, coprime {})",
            spec.p, spec.q, spec.squarefree, spec.coprime
        )));
    }
    let k = BiquadField::new(spec.p, spec.q)?;
    let u = closed_form_units(which, n, &k, spec.p, spec.q, spec.r)?;
    let mut units_ok = true;
    for (d, e) in &u.quad {
        units_ok &= fundamental_unit(*d)? == *e;
    }
    let elements_ok = spec
        .elements
        .iter()
        .all(|e| e.elem.is_integral() && e.elem.is_totally_positive());
    let set = indecomposables_with(&k, limits)?;
    let listed: Vec<BiquadElem> = spec.elements.iter().map(|e| e.elem.clone()).collect();
    let found: Vec<BiquadElem> = set.reps.iter().map(|r| r.elem.clone()).collect();
    let (missing, extra) = match_orbits(&listed, &found)?;
    let missing: Vec<String> = spec
        .elements
        .iter()
        .filter(|e| missing.contains(&e.elem))
        .map(|e| format!("{} = {}", e.label, e.elem))
        .collect();
    let extra: Vec<String> = extra.iter().map(|e| e.to_string()).collect();
    let iota = set.iota as u64;
    let index_squares = u64::from(set.units.index_squares);
    let passed = units_ok
        && elements_ok
        && missing.is_empty()
        && extra.is_empty()
        && iota == spec.expected_iota;
    Ok(FamilyReport {
        spec,
        iota,
        units_ok,
        elements_ok,
        missing,
        extra,
        index_squares,
        rank_bound: rank_upper_bound(iota, index_squares),
        passed,
    })
}
