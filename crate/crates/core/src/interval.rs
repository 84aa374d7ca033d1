use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{cmp_q, fmt_rational, parse_rational};
use std::cmp::Ordering;

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if cmp_q(&lo, &hi) == Ordering::Greater {
            return Err(Error::InvalidInput(format!(
                "interval endpoints out of order: [{}, {}]",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Result<Self> {
        Self::new(
            BigRational::from_integer(lo.into()),
            BigRational::from_integer(hi.into()),
        )
    }

    /// The dyadic cell `[m/2^bits, (m+1)/2^bits]`.
    pub fn dyadic_cell(m: &BigInt, bits: u64) -> Self {
        let den = BigInt::one() << bits;
        RationalInterval {
            lo: BigRational::new(m.clone(), den.clone()),
            hi: BigRational::new(m + 1, den),
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        cmp_q(&self.lo, x) != Ordering::Greater && cmp_q(x, &self.hi) != Ordering::Greater
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        cmp_q(&self.lo, &other.lo) != Ordering::Greater && cmp_q(&other.hi, &self.hi) != Ordering::Greater
    }

    /// True when the width is at most `2^-bits`.
    pub fn width_at_most_bits(&self, bits: u64) -> bool {
        self.width() * BigRational::from_integer(BigInt::one() << bits) <= BigRational::one()
    }

    /// Image under `x -> a*x + b`.
    pub fn affine(&self, a: &BigRational, b: &BigRational) -> Self {
        let x = a * &self.lo + b;
        let y = a * &self.hi + b;
        if cmp_q(&x, &y) != Ordering::Greater {
            RationalInterval { lo: x, hi: y }
        } else {
            RationalInterval { lo: y, hi: x }
        }
    }

    /// Enclosure of `|x|` over the interval.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            RationalInterval {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            }
        } else {
            let hi = if cmp_q(&-self.lo.clone(), &self.hi) == Ordering::Greater {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            RationalInterval {
                lo: BigRational::zero(),
                hi,
            }
        }
    }

    /// Product with an interval whose endpoints are both non-negative; `self`
    /// must also be non-negative.
    pub fn mul_nonneg(&self, other: &RationalInterval) -> Self {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RationalInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    hi: String,
}

impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: fmt_rational(&self.lo),
            hi: fmt_rational(&self.hi),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = IntervalRepr::deserialize(d)?;
        let lo = parse_rational(&repr.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&repr.hi).map_err(serde::de::Error::custom)?;
        RationalInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}
