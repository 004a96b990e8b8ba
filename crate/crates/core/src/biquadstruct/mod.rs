//! Biquadratic field structure: classification, unit group, and the cone
//! cover of the unit-action fundamental domain.

mod cone;
mod units;

pub use cone::{
    cone_decomposition, parallelepiped_points, parallelepiped_quarters, parallelepiped_size, Cone,
    ConeDecomposition, PERMUTATIONS,
};
pub use units::{
    exact_sqrt, kubota_delta, subfield_units, totally_positive_units, unit_square_test, Kubota,
    SubfieldUnit, UnitGroup,
};

use crate::exactalg::{BiquadField, QuadField};
use crate::Result;

pub fn classify_field(p: u64, q: u64) -> Result<BiquadField> {
    BiquadField::new(p, q)
}

/// Product of the discriminants of the three quadratic subfields.
pub fn conductor_discriminant(k: &BiquadField) -> u64 {
    k.radicands()
        .iter()
        .map(|&d| QuadField { d }.discriminant())
        .product()
}
