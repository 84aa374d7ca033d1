//! Desk-scale scans. Each returns a [`ScanReport`] whose records are ordered
//! by index and identical across runs with the same inputs.

mod approx;
mod digits;
mod divisor;
mod intersect;
mod sharpness;
mod spart;

pub use approx::approx_violation_scan;
pub use digits::{digit_growth_scan, stewart_constant, window_min};
pub use divisor::{divisor_bound_scan, DivisorVariant};
pub use intersect::{intersect_scan, terms_for_bound};
pub use sharpness::{boundedness, sharpness_scan, window_max};
pub use spart::{spart_scan, SpartParams};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use convlab_core::cfrac::ContinuedFractionExpansion;
use convlab_core::numeric::{floor_to_bits, log2_floor, parse_rational, LOG_FRACTION_BITS};
use convlab_core::Result;

use crate::record::{decimal_down, decimal_up, ScanReport};

/// Default precision cap of the scans, in bits.
pub const DEFAULT_SCAN_CAP_BITS: u64 = 1 << 16;

/// Bits of the precision rung that certified `a_k`, or 0 for expansions
/// built from known quotients.
pub fn precision_at(cfe: &ContinuedFractionExpansion, k: usize) -> u64 {
    cfe.precision_log()
        .iter()
        .take_while(|s| s.index <= k)
        .last()
        .map_or(0, |s| s.bits)
}

/// `2^-LOG_FRACTION_BITS`, the error of one [`log2_floor`].
fn log_ulp() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << LOG_FRACTION_BITS)
}

/// Bounds `[lo, hi]` on `log2(r)` for a positive rational.
pub fn log2_bounds(r: &BigRational) -> (BigRational, BigRational) {
    let ln = log2_floor(r.numer().magnitude());
    let ld = log2_floor(r.denom().magnitude());
    let base = ln - ld;
    (&base - log_ulp(), base + log_ulp())
}

/// Bounds on `log a / log b` for integers `a >= 1` and `b >= 2`, rounded
/// outward to [`LOG_FRACTION_BITS`] bits.
pub fn log_ratio_bounds(a: &BigUint, b: &BigUint) -> (BigRational, BigRational) {
    if a.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    let la = log2_floor(a);
    let lb = log2_floor(b);
    let lo = &la / (&lb + log_ulp());
    let hi = (la + log_ulp()) / lb;
    (
        floor_to_bits(&lo, LOG_FRACTION_BITS),
        -floor_to_bits(&-hi, LOG_FRACTION_BITS),
    )
}

/// Adds `<key>_lo` and `<key>_hi` ratio columns.
fn with_bounds(
    rec: crate::ExperimentRecord,
    key: &str,
    (lo, hi): (BigRational, BigRational),
) -> crate::ExperimentRecord {
    rec.ratio(&format!("{key}_lo"), decimal_down(&lo))
        .ratio(&format!("{key}_hi"), decimal_up(&hi))
}

/// Reads back a ratio column written by [`with_bounds`].
pub fn ratio_value(report: &ScanReport, index: u64, key: &str) -> Option<BigRational> {
    report
        .records
        .iter()
        .find(|r| r.index == index)
        .and_then(|r| r.ratios.get(key))
        .and_then(|s| parse_rational(s).ok())
}

fn check_window(cfe: &ContinuedFractionExpansion, last: usize) -> Result<()> {
    if cfe.last_index() < last {
        return Err(convlab_core::Error::InsufficientTerms {
            needed: last + 1,
            got: cfe.len(),
        });
    }
    Ok(())
}
