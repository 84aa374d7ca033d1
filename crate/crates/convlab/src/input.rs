//! Parsing of command-line inputs and access to the convergent cache.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::Signed;

use convlab_core::algebraic::{make_algebraic, AlgebraicReal};
use convlab_core::cfrac::cache::ConvergentCache;
use convlab_core::cfrac::{expand_interval, expand_with_cap, ContinuedFractionExpansion};
use convlab_core::construct::EMWitness;
use convlab_core::numeric::{parse_int, parse_int_list, parse_rational};
use convlab_core::poly::{isolate_largest_real_root, RootBracket};
use convlab_core::recurrence::LinearRecurrence;
use convlab_core::{Error, IntPolynomial, RationalInterval, Result};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "CONVLAB_CACHE";

/// An algebraic number from `"c0,c1,..."` (constant term first) and an
/// isolating interval; without one, the largest real root is taken.
pub fn parse_algebraic(minpoly: &str, iso_lo: Option<&str>, iso_hi: Option<&str>) -> Result<AlgebraicReal> {
    let coeffs = parse_int_list(minpoly)?;
    let iso = match (iso_lo, iso_hi) {
        (Some(lo), Some(hi)) => RationalInterval::new(parse_rational(lo)?, parse_rational(hi)?)?,
        (None, None) => {
            let f = IntPolynomial::new(coeffs.clone());
            match isolate_largest_real_root(&f) {
                Some(RootBracket::Open(iv)) => iv,
                Some(RootBracket::Exact(r)) => RationalInterval::point(r),
                None => return Err(Error::InvalidInput(format!("{f} has no real root"))),
            }
        }
        _ => return Err(Error::InvalidInput("give both --iso-lo and --iso-hi or neither".into())),
    };
    make_algebraic(&coeffs, iso)
}

pub fn parse_polynomial(s: &str) -> Result<IntPolynomial> {
    let f = IntPolynomial::new(parse_int_list(s)?);
    if f.is_zero() {
        return Err(Error::InvalidInput("polynomial is zero".into()));
    }
    Ok(f)
}

/// Recurrence `u_n = c_1 u_(n-1) + ... + c_t u_(n-t)` from `"c_1,...,c_t"`
/// and `"u_1,...,u_t"`.
pub fn parse_recurrence(coeffs: &str, init: &str) -> Result<LinearRecurrence> {
    LinearRecurrence::new(parse_int_list(coeffs)?, parse_int_list(init)?)
}

/// A positive integer written plainly, as `a^e`, or as `aEe` meaning `a * 10^e`.
pub fn parse_bound(s: &str) -> Result<BigInt> {
    let s = s.trim();
    let exponent = |e: &str| -> Result<u32> {
        e.trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad exponent in {s:?}")))
    };
    let v = if let Some((a, e)) = s.split_once('^') {
        parse_int(a)?.pow(exponent(e)?)
    } else if let Some((a, e)) = s.split_once(['e', 'E']) {
        parse_int(a)? * BigInt::from(10).pow(exponent(e)?)
    } else {
        parse_int(s)?
    };
    if !v.is_positive() {
        return Err(Error::InvalidInput(format!("bound {s:?} must be positive")));
    }
    Ok(v)
}

/// Cache directory: the explicit one, else `$CONVLAB_CACHE`, else
/// `$HOME/.cache/convlab`.
pub fn cache_dir(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("convlab")))
}

/// `terms + 1` certified quotients, through the cache when one is given.
pub fn expansion(
    x: &AlgebraicReal,
    terms: usize,
    cap_bits: u64,
    cache: Option<&ConvergentCache>,
) -> Result<ContinuedFractionExpansion> {
    match cache {
        Some(c) => c.get_or_expand(x, terms, cap_bits),
        None => expand_with_cap(x, terms, cap_bits),
    }
}

/// Enclosure of the number described by a witness, with `s` the last stage
/// and `u / v` its truncation. Index `s + 1` always holds a free digit, which
/// is at least 1, so the number lies in
/// `[u / v + t^(-3^(s+1)), u / v + 4 t^(-3^(s+1))]`.
pub fn witness_enclosure(w: &EMWitness) -> Result<RationalInterval> {
    let last = w
        .certificates
        .last()
        .ok_or_else(|| Error::Format("witness has no stages".into()))?;
    let s = last.index as u32;
    let t = BigInt::from(w.config.base());
    let v = BigInt::from(last.v.clone());
    let u = BigInt::from(last.u.clone());
    let exp_s = 3usize.pow(s);
    let exp_i = 3usize
        .checked_pow(s + 1)
        .ok_or_else(|| Error::ResourceLimit("tail exponent overflows".into()))?;
    let big_v = t.pow(exp_i as u32);
    let lift = t.pow((exp_i - exp_s) as u32);
    if &v * &lift != big_v {
        return Err(Error::Format("stage denominator is not t^(3^s)".into()));
    }
    let lo = num_rational::BigRational::new(&u * &lift + BigInt::from(1), big_v.clone());
    let hi = num_rational::BigRational::new(u * lift + BigInt::from(4), big_v);
    RationalInterval::new(lo, hi)
}

/// Certified quotient prefix of a witness-backed number, at most `terms + 1`
/// long.
pub fn witness_expansion(w: &EMWitness, terms: usize) -> Result<ContinuedFractionExpansion> {
    let cfe = expand_interval(&witness_enclosure(w)?, terms);
    if cfe.is_empty() {
        return Err(Error::PrecisionExhausted { index: 0, cap: 0 });
    }
    Ok(cfe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(parse_bound("10^40").unwrap(), BigInt::from(10).pow(40));
        assert_eq!(parse_bound("1e6").unwrap(), BigInt::from(1_000_000));
        assert_eq!(parse_bound("3E2").unwrap(), BigInt::from(300));
        assert_eq!(parse_bound("12345").unwrap(), BigInt::from(12345));
        assert!(parse_bound("0").is_err());
        assert!(parse_bound("10^x").is_err());
    }

    #[test]
    fn algebraic_without_isolator_takes_largest_root() {
        let x = parse_algebraic("-2,0,1", None, None).unwrap();
        assert!((x.to_f64() - 2f64.sqrt()).abs() < 1e-12);
        let y = parse_algebraic("-2,0,1", Some("-2"), Some("-1")).unwrap();
        assert!((y.to_f64() + 2f64.sqrt()).abs() < 1e-12);
        assert!(parse_algebraic("-2,0,1", Some("-2"), None).is_err());
        assert!(parse_algebraic("1,0,1", None, None).is_err());
    }

    #[test]
    fn recurrences() {
        let r = parse_recurrence("1,1", "1,1").unwrap();
        assert_eq!(r.eval_range(1, 6).unwrap(), [1, 1, 2, 3, 5, 8].map(BigInt::from).to_vec());
        assert!(parse_recurrence("1,1", "1").is_err());
    }
}
