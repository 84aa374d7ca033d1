//! Small exact helpers shared by the kernels: rational text forms, directed
//! logarithms, integer roots and exponent comparisons.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Number of fractional bits kept by [`log2_floor`].
pub const LOG_FRACTION_BITS: u32 = 64;

/// Formats a rational as `"num/den"` (always with a denominator).
/// Order of two rationals by cross-multiplication. The `Ord` impl of
/// `num_rational` recurses once per shared continued fraction term and can
/// exhaust the stack on nearly equal operands with large denominators.
pub fn cmp_q(a: &BigRational, b: &BigRational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"n"`, `"n/d"` or a plain decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational from {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int_part.abs() * &scale + frac_part;
        let numer = if negative { -mag } else { mag };
        return Ok(BigRational::new(numer, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Parses a decimal integer.
pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("cannot parse integer from {s:?}")))
}

/// Parses a comma separated list of decimal integers.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_int)
        .collect()
}

/// Lower bound for `log2(n)` with [`LOG_FRACTION_BITS`] fractional bits.
///
/// Every truncation rounds toward zero, so the result never exceeds the true
/// value and is within `2^-60` of it.
pub fn log2_floor(n: &BigUint) -> BigRational {
    assert!(!n.is_zero(), "log2 of zero");
    let bits = n.bits();
    let int_part = bits - 1;
    // 64-bit mantissa m with 2^63 <= m < 2^64, representing n / 2^int_part.
    let mantissa: u128 = if bits >= 64 {
        (n >> (bits - 64)).to_u64().unwrap() as u128
    } else {
        (n << (64 - bits)).to_u64().unwrap() as u128
    };
    let mut y = mantissa;
    let mut frac: u64 = 0;
    for i in 0..LOG_FRACTION_BITS {
        y = (y * y) >> 63;
        if y >= 1u128 << 64 {
            y >>= 1;
            frac |= 1u64 << (63 - i);
        }
    }
    let scaled = (BigInt::from(int_part) << LOG_FRACTION_BITS) + BigInt::from(frac);
    BigRational::new(scaled, BigInt::one() << LOG_FRACTION_BITS)
}

/// Rounds `r` down to a multiple of `2^-bits`.
pub fn floor_to_bits(r: &BigRational, bits: u32) -> BigRational {
    let scaled = (r * BigRational::from_integer(BigInt::one() << bits)).floor();
    BigRational::new(scaled.to_integer(), BigInt::one() << bits)
}

/// Decimal rendering of a rational with `digits` digits after the point,
/// truncated toward negative infinity.
pub fn decimal_string(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).floor().to_integer();
    let negative = scaled.is_negative();
    let mag = scaled.abs();
    let (int, frac) = mag.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0width$}", frac, width = digits as usize)
}

/// `floor(sqrt(n))` and `ceil(sqrt(n))`.
pub fn sqrt_floor_ceil(n: &BigUint) -> (BigUint, BigUint) {
    let f = n.sqrt();
    if &f * &f == *n {
        (f.clone(), f)
    } else {
        let c = &f + 1u32;
        (f, c)
    }
}

/// Rational enclosure `[lo, hi]` of `sqrt(r)` for `r >= 0` with both ends on
/// the grid `2^-bits`.
pub fn sqrt_enclosure(r: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!r.is_negative(), "square root of a negative rational");
    let den = BigInt::one() << (2 * bits);
    // floor(r * 4^bits) <= r * 4^bits <= ceil(r * 4^bits)
    let scaled = r * BigRational::from_integer(den);
    let lo_int = scaled.floor().to_integer().to_biguint().unwrap();
    let hi_int = scaled.ceil().to_integer().to_biguint().unwrap();
    let (lo_root, _) = sqrt_floor_ceil(&lo_int);
    let (_, hi_root) = sqrt_floor_ceil(&hi_int);
    let grid = BigInt::one() << bits;
    (
        BigRational::new(BigInt::from(lo_root), grid.clone()),
        BigRational::new(BigInt::from(hi_root), grid),
    )
}

/// Compares `a^p` with `b^q` exactly for non-negative integers.
pub fn cmp_powers(a: &BigUint, p: u64, b: &BigUint, q: u64) -> Ordering {
    // Cheap bit-length screen before the exact powers.
    if !a.is_zero() && !b.is_zero() {
        // 2^((bits-1)p) <= a^p < 2^(bits p)
        let a_lo = (a.bits() - 1) as u128 * p as u128;
        let a_hi = a.bits() as u128 * p as u128;
        let b_lo = (b.bits() - 1) as u128 * q as u128;
        let b_hi = b.bits() as u128 * q as u128;
        if a_hi <= b_lo {
            return Ordering::Less;
        }
        if b_hi <= a_lo {
            return Ordering::Greater;
        }
    }
    pow_u(a, p).cmp(&pow_u(b, q))
}

/// `base^exp` for a `u64` exponent.
pub fn pow_u(base: &BigUint, exp: u64) -> BigUint {
    let mut result = BigUint::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// `base^exp` for a `u64` exponent on signed integers.
pub fn pow_i(base: &BigInt, exp: u64) -> BigInt {
    let mag = pow_u(base.magnitude(), exp);
    let negative = base.sign() == Sign::Minus && exp % 2 == 1;
    BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, mag)
}

/// Splits a positive rational exponent into `(numerator, denominator)` as `u64`.
pub fn exponent_parts(e: &BigRational) -> Result<(u64, u64)> {
    if !e.is_positive() {
        return Err(Error::InvalidInput(format!(
            "exponent must be positive, got {}",
            fmt_rational(e)
        )));
    }
    let n = e.numer().to_u64();
    let d = e.denom().to_u64();
    match (n, d) {
        (Some(n), Some(d)) if n <= 1 << 20 && d <= 1 << 20 => Ok((n, d)),
        _ => Err(Error::InvalidInput(format!(
            "exponent {} has too large a numerator or denominator",
            fmt_rational(e)
        ))),
    }
}

/// Decides `value < base^exponent` exactly, for `value >= 0`, `base >= 1`
/// and a positive rational exponent `n/d`: `value^d < base^n`.
pub fn rational_lt_power(value: &BigRational, base: &BigUint, exponent: &BigRational) -> Result<bool> {
    let (n, d) = exponent_parts(exponent)?;
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    // (num/den)^d < base^n  <=>  num^d < base^n * den^d
    let lhs = pow_u(num, d);
    let rhs = pow_u(base, n) * pow_u(den, d);
    Ok(lhs < rhs)
}

/// Decides `value * base^exponent < 1` exactly: `num^d * base^n < den^d`.
pub fn rational_times_power_lt_one(
    value: &BigRational,
    base: &BigUint,
    exponent: &BigRational,
) -> Result<bool> {
    let (n, d) = exponent_parts(exponent)?;
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    Ok(pow_u(num, d) * pow_u(base, n) < pow_u(den, d))
}

/// Decides `value * base^exponent > 1` exactly.
pub fn rational_times_power_gt_one(
    value: &BigRational,
    base: &BigUint,
    exponent: &BigRational,
) -> Result<bool> {
    let (n, d) = exponent_parts(exponent)?;
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    Ok(pow_u(num, d) * pow_u(base, n) > pow_u(den, d))
}

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a `BigUint` as a decimal string.
pub mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a `Vec<BigInt>` as an array of decimal strings.
pub mod bigint_vec_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter writing a `BigRational` as `"num/den"`.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
