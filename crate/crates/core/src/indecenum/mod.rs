//! Indecomposable elements of real biquadratic fields.
//!
//! [`indecomposables`] runs the cone method: every indecomposable is, up to a
//! totally positive unit, a point of one of six parallelepipeds spanned by
//! unit products, or a unit. The points are tested one by one and the
//! survivors are grouped into unit orbits. [`oracle`] provides an
//! independent scan of a fundamental parallelotope for cross-checking.

pub mod bounds;
pub mod oracle;
pub mod preserve;
pub mod search;

pub use bounds::{crm_constant, rank_upper_bound, PYTHAGORAS_BOUND};
pub use preserve::{preservation_check, PreservationReport, SubfieldPreservation, Witness};
pub use search::{Bounds, Searcher};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::biquadstruct::{
    cone_decomposition, parallelepiped_quarters, totally_positive_units, UnitGroup,
};
use crate::exactalg::{BiquadElem, BiquadField, Quarters, Rat};
use crate::{par, Error, Result};

/// Work caps. Exceeding one is reported as an error, never as a partial
/// answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of points in one parallelepiped.
    pub points: u64,
    /// Maximum number of lattice points visited by one decomposition search.
    pub search: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            points: 50_000_000,
            search: 2_000_000_000,
        }
    }
}

fn check_candidate(alpha: &BiquadElem) -> Result<Quarters> {
    if !alpha.is_integral() {
        return Err(Error::InvalidInput(format!("{alpha} is not integral")));
    }
    if !alpha.is_totally_positive() {
        return Err(Error::InvalidInput(format!(
            "{alpha} is not totally positive"
        )));
    }
    Quarters::from_elem(alpha)
}

/// A decomposition `α = β + γ` into totally positive integers.
pub fn decompose(alpha: &BiquadElem) -> Result<Option<(BiquadElem, BiquadElem)>> {
    decompose_with(alpha, Limits::default().search)
}

pub fn decompose_with(alpha: &BiquadElem, budget: u64) -> Result<Option<(BiquadElem, BiquadElem)>> {
    let q = check_candidate(alpha)?;
    let s = Searcher::new(alpha.field);
    Ok(s.summands(&q, true, budget)?.into_iter().next().map(|b| {
        let beta = b.to_elem(&alpha.field);
        let gamma = alpha - &beta;
        (beta, gamma)
    }))
}

/// Every decomposition `α = β + γ`, listed once per unordered pair.
pub fn decompositions(alpha: &BiquadElem, budget: u64) -> Result<Vec<(BiquadElem, BiquadElem)>> {
    let q = check_candidate(alpha)?;
    let s = Searcher::new(alpha.field);
    Ok(s.summands(&q, false, budget)?
        .into_iter()
        .map(|b| {
            let beta = b.to_elem(&alpha.field);
            let gamma = alpha - &beta;
            (beta, gamma)
        })
        // summands of equal trace arrive in both orders
        .filter(|(b, c)| elem_order(b, c) != Ordering::Greater)
        .collect())
}

pub fn is_indecomposable(alpha: &BiquadElem) -> Result<bool> {
    Ok(decompose(alpha)?.is_none())
}

/// True if `a = u·b` for a totally positive unit `u`. Both arguments must be
/// totally positive.
pub fn equivalent(a: &BiquadElem, b: &BiquadElem) -> Result<bool> {
    if a.norm() != b.norm() {
        return Ok(false);
    }
    let u = a * &b.inv()?;
    Ok(u.is_integral() && u.is_totally_positive())
}

/// Orders elements by trace, then by coordinates.
pub fn elem_order(a: &BiquadElem, b: &BiquadElem) -> Ordering {
    a.trace().cmp(&b.trace()).then_with(|| a.c.cmp(&b.c))
}

/// Local trace minimum of the orbit of `alpha` under the group generated by
/// `gens`, moving by products `g1^a g2^b g3^c` with `a, b, c ∈ {-1, 0, 1}`.
/// Ties go to the smaller element under [`elem_order`].
pub fn reduce_by_units(alpha: &BiquadElem, gens: &[BiquadElem; 3]) -> Result<BiquadElem> {
    let inv: Vec<BiquadElem> = gens.iter().map(|g| g.inv()).collect::<Result<_>>()?;
    let f = alpha.field;
    let mut steps = Vec::new();
    for a in -1i32..=1 {
        for b in -1i32..=1 {
            for c in -1i32..=1 {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let mut u = f.one();
                for (e, j) in [(a, 0), (b, 1), (c, 2)] {
                    if e == 1 {
                        u = &u * &gens[j];
                    } else if e == -1 {
                        u = &u * &inv[j];
                    }
                }
                steps.push(u);
            }
        }
    }
    let mut cur = alpha.clone();
    loop {
        let best = steps
            .iter()
            .map(|u| &cur * u)
            .min_by(elem_order)
            .expect("nonempty");
        if elem_order(&best, &cur) == Ordering::Less {
            cur = best;
        } else {
            return Ok(cur);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndecRep {
    pub elem: BiquadElem,
    pub norm: Rat,
    /// Parallelepiped label where the orbit was first met, or `unit`.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndecSet {
    pub field: BiquadField,
    pub units: UnitGroup,
    pub cones_disjoint: bool,
    pub reps: Vec<IndecRep>,
    pub iota: usize,
    /// Totally positive parallelepiped points tested.
    pub points_tested: u64,
}

/// Groups elements into unit orbits, keeping the first member of each.
pub fn orbit_classes(items: Vec<(BiquadElem, String)>) -> Result<Vec<(BiquadElem, String)>> {
    // (norm, member, inverse of member, tag)
    let mut classes: Vec<(Rat, BiquadElem, BiquadElem, String)> = Vec::new();
    for (e, tag) in items {
        let n = e.norm();
        let mut seen = false;
        for (cn, _, ci, _) in &classes {
            if *cn == n && (&e * ci).is_integral() {
                seen = true;
                break;
            }
        }
        if !seen {
            let inv = e.inv()?;
            classes.push((n, e, inv, tag));
        }
    }
    Ok(classes.into_iter().map(|(_, e, _, t)| (e, t)).collect())
}

pub fn indecomposables(k: &BiquadField) -> Result<IndecSet> {
    indecomposables_with(k, &Limits::default())
}

pub fn indecomposables_with(k: &BiquadField, limits: &Limits) -> Result<IndecSet> {
    let units = totally_positive_units(k)?;
    let cones = cone_decomposition(k, &units)?;
    let searcher = Searcher::new(*k);
    let mut found: Vec<(BiquadElem, String)> = vec![(k.one(), "unit".to_string())];
    let mut tested = 0u64;
    for cone in &cones.cones {
        let pts = parallelepiped_quarters(cone, limits.points)?;
        let pos: Vec<Quarters> = pts
            .into_iter()
            .filter(|q| !q.is_zero() && searcher.engine.is_totally_positive(q))
            .collect();
        tested += pos.len() as u64;
        let flags = par::try_map(&pos, |q| {
            Ok::<bool, Error>(searcher.summands(q, true, limits.search)?.is_empty())
        })?;
        for (q, indec) in pos.iter().zip(flags) {
            if indec {
                found.push((q.to_elem(k), cone.label.clone()));
            }
        }
    }
    let classes = orbit_classes(found)?;
    let reduced = par::try_map(&classes, |(e, tag)| {
        let r = reduce_by_units(e, &units.gens)?;
        let n = r.norm();
        Ok::<IndecRep, Error>(IndecRep {
            elem: r,
            norm: n,
            provenance: tag.clone(),
        })
    })?;
    let mut reps = reduced;
    reps.sort_by(|a, b| elem_order(&a.elem, &b.elem));
    debug_assert!(reps.first().is_some_and(|r| r.elem == k.one()));
    let iota = reps.len();
    Ok(IndecSet {
        field: *k,
        units,
        cones_disjoint: cones.disjoint,
        reps,
        iota,
        points_tested: tested,
    })
}

/// Bijective matching of two lists of orbit representatives. Returns the
/// elements of `a` without a partner in `b` and vice versa.
pub fn match_orbits(
    a: &[BiquadElem],
    b: &[BiquadElem],
) -> Result<(Vec<BiquadElem>, Vec<BiquadElem>)> {
    let mut used = vec![false; b.len()];
    let mut missing = Vec::new();
    for x in a {
        let mut hit = None;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && equivalent(x, y)? {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => used[j] = true,
            None => missing.push(x.clone()),
        }
    }
    let extra = b
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(y, _)| y.clone())
        .collect();
    Ok((missing, extra))
}
