use num_bigint::BigInt;

use crate::exactalg::ntheory::binomial;
use crate::{Error, Result};

/// Upper bound on the Pythagoras number of the ring of integers of a real
/// biquadratic field.
pub const PYTHAGORAS_BOUND: u64 = 7;

/// `C(R, m)`: `max(480, 2R(R-1))` for `m = 2`, otherwise
/// `2·binom(R + 2m - 2, 2m - 1)`.
pub fn crm_constant(r: u64, m: u64) -> Result<BigInt> {
    if r == 0 || m == 0 {
        return Err(Error::InvalidInput("R and m must be at least 1".into()));
    }
    if m == 2 {
        let v = BigInt::from(2) * BigInt::from(r) * BigInt::from(r - 1);
        Ok(v.max(BigInt::from(480)))
    } else {
        Ok(BigInt::from(2) * binomial(r + 2 * m - 2, 2 * m - 1))
    }
}

/// Rank of the universal lattice built from sums of squares attached to
/// every indecomposable class: `7 · index_squares · iota`.
pub fn rank_upper_bound(iota: u64, index_squares: u64) -> u64 {
    PYTHAGORAS_BOUND * index_squares * iota
}
