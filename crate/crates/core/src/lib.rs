//! Exact arithmetic and enumeration of indecomposable totally positive
//! integers in real quadratic and real biquadratic number fields.
//!
//! Every predicate (total positivity, integrality, indecomposability, unit
//! equivalence) is decided with exact integer arithmetic. Floating point is
//! only used for printed statistics.

pub mod biquadstruct;
pub mod census;
pub mod contfrac;
pub mod error;
pub mod exactalg;
pub mod families;
pub mod indecenum;
pub mod lattice;
pub mod par;
pub mod quadindec;

pub use error::{Error, Result};
