use serde::{Deserialize, Serialize};

use super::Searcher;
use crate::exactalg::{BiquadElem, BiquadField, Quarters};
use crate::quadindec::quad_indecomposables;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub alpha: BiquadElem,
    pub beta: BiquadElem,
    pub gamma: BiquadElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldPreservation {
    pub d: u64,
    /// Whether indecomposables of this subfield are guaranteed to stay
    /// indecomposable (the subfields `Q(√p)` and `Q(√q)` of the normal form).
    pub designated: bool,
    pub tested: usize,
    pub failures: Vec<Witness>,
}

impl SubfieldPreservation {
    pub fn preserved(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationReport {
    pub field: BiquadField,
    pub subfields: Vec<SubfieldPreservation>,
}

impl PreservationReport {
    /// True when both designated subfields are preserved.
    pub fn designated_ok(&self) -> bool {
        self.subfields
            .iter()
            .filter(|s| s.designated)
            .all(|s| s.preserved())
    }
}

/// Tests every indecomposable of each quadratic subfield for
/// indecomposability in `K`.
pub fn preservation_check(k: &BiquadField, budget: u64) -> Result<PreservationReport> {
    let searcher = Searcher::new(*k);
    let mut subfields = Vec::new();
    for (idx, d) in k.radicands().into_iter().enumerate() {
        let list = quad_indecomposables(d)?;
        let mut tested = 0;
        let mut failures = Vec::new();
        for rep in &list.reps {
            let x = k.embed_quad(&rep.elem)?;
            tested += 1;
            let q = Quarters::from_elem(&x)?;
            if let Some(b) = searcher.summands(&q, true, budget)?.into_iter().next() {
                let beta = b.to_elem(k);
                let gamma = &x - &beta;
                failures.push(Witness {
                    alpha: x,
                    beta,
                    gamma,
                });
            }
        }
        subfields.push(SubfieldPreservation {
            d,
            designated: idx < 2,
            tested,
            failures,
        });
    }
    Ok(PreservationReport {
        field: *k,
        subfields,
    })
}
