use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use convlab_core::algebraic::{make_algebraic, trace_power_sums, AlgebraicReal};
use convlab_core::numeric::{parse_rational, sqrt_enclosure};
use convlab_core::poly::{cubic_discriminant, isolate_real_roots, RootBracket};
use convlab_core::{Error, IntPolynomial, RationalInterval, Result};

use crate::record::{decimal_down, decimal_up, ExperimentRecord, ScanReport, Verdict};

const NAME: &str = "sharpness";

/// Width, as a power of two, at which an `R_n` enclosure counts as certified.
const TARGET_WIDTH_BITS: u64 = 40;

/// The real root of a cubic unit with a complex pair, after checking the
/// hypotheses.
fn real_root(f: &IntPolynomial) -> Result<AlgebraicReal> {
    let disc = cubic_discriminant(f).map_err(|e| Error::HypothesisViolation(e.to_string()))?;
    let c0 = f.coeff(0);
    if c0.abs() != BigInt::one() {
        return Err(Error::HypothesisViolation(format!(
            "constant term {c0} is not +-1, so the real root is not a unit"
        )));
    }
    if !disc.is_negative() {
        return Err(Error::HypothesisViolation(format!(
            "discriminant {disc} is not negative, so there is no complex pair"
        )));
    }
    let roots = isolate_real_roots(f);
    let iso = match roots.as_slice() {
        [RootBracket::Open(iv)] => iv.clone(),
        _ => {
            return Err(Error::HypothesisViolation(format!(
                "{f} does not have a single irrational real root"
            )))
        }
    };
    let xi = make_algebraic(f.coeffs(), iso).map_err(|e| Error::HypothesisViolation(e.to_string()))?;
    let one = BigRational::one();
    if xi.cmp_rational(&one) != Ordering::Greater && xi.cmp_rational(&-one) != Ordering::Less {
        return Err(Error::HypothesisViolation("real root has modulus at most 1".into()));
    }
    Ok(xi)
}

/// Certified enclosures of `R_n = |u_n xi - u_(n+1)| |u_n|^(1/2)` for
/// `n_lo <= n <= n_hi`, with `u_n` the power sums of the roots of `f`.
///
/// The summary compares the maximum over the upper half of the range with
/// twice the maximum over the lower half.
pub fn sharpness_scan(f: &IntPolynomial, n_lo: usize, n_hi: usize, cap_bits: u64) -> Result<ScanReport> {
    if n_lo > n_hi {
        return Err(Error::InvalidInput(format!("empty range [{n_lo}, {n_hi}]")));
    }
    let xi = real_root(f)?;
    let u = trace_power_sums(f, n_hi + 1)?;
    let mut report = ScanReport::new(NAME);
    report.set_config("polynomial", f);
    report.set_config("n_lo", n_lo);
    report.set_config("n_hi", n_hi);
    report.set_config("precision_cap", cap_bits);
    report.records = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| scan_one(&xi, n, &u[n], &u[n + 1], cap_bits))
        .collect();
    report.tally();
    let mid = (n_lo + n_hi) / 2;
    let lower = (n_lo as u64, mid as u64);
    let upper = (mid as u64 + 1, n_hi as u64);
    report.set_summary("lower_window", format!("{}..={}", lower.0, lower.1));
    report.set_summary("upper_window", format!("{}..={}", upper.0, upper.1));
    if let (Some(lo_max), Some(up_max)) = (window_max(&report, lower.0, lower.1), window_max(&report, upper.0, upper.1)) {
        report.set_summary("lower_max_hi", decimal_up(lo_max.hi()));
        report.set_summary("upper_max_hi", decimal_up(up_max.hi()));
    }
    let verdict = boundedness(&report, lower, upper, &BigRational::from_integer(BigInt::from(2)));
    report.set_summary("bounded_factor_2", format!("{verdict:?}"));
    Ok(report)
}

fn scan_one(xi: &AlgebraicReal, n: usize, un: &BigInt, un1: &BigInt, cap_bits: u64) -> ExperimentRecord {
    let start = (2 * un.bits() + 64).max(128);
    let mut bits = start.min(cap_bits);
    let root = BigRational::from_integer(un.abs());
    loop {
        let enc = r_enclosure(xi, un, un1, &root, bits);
        let done = enc.width_at_most_bits(TARGET_WIDTH_BITS);
        if done || bits >= cap_bits {
            let verdict = if done { Verdict::Holds } else { Verdict::Undecided };
            let mut rec = ExperimentRecord::new(NAME, n as u64, verdict, bits)
                .value("u_n", un)
                .value("u_n1", un1)
                .ratio("r_lo", decimal_down(enc.lo()))
                .ratio("r_hi", decimal_up(enc.hi()));
            if !done {
                rec = rec.reason("enclosure wider than 2^-40 at the cap");
            }
            return rec;
        }
        bits = (bits * 2).min(cap_bits);
    }
}

fn r_enclosure(xi: &AlgebraicReal, un: &BigInt, un1: &BigInt, root_arg: &BigRational, bits: u64) -> RationalInterval {
    let cell = xi.refine(bits);
    let diff = cell
        .affine(&BigRational::from_integer(un.clone()), &BigRational::from_integer(-un1))
        .abs();
    let (s_lo, s_hi) = sqrt_enclosure(root_arg, bits as u32);
    let root = RationalInterval::new(s_lo, s_hi).expect("ordered square root enclosure");
    diff.mul_nonneg(&root)
}

/// Outward enclosure of `max R_n` over `lo <= n <= hi` from the recorded
/// decimal bounds, or `None` when the window has no records.
pub fn window_max(report: &ScanReport, lo: u64, hi: u64) -> Option<RationalInterval> {
    let mut best: Option<(BigRational, BigRational)> = None;
    for r in report.records.iter().filter(|r| (lo..=hi).contains(&r.index)) {
        let a = parse_rational(r.ratios.get("r_lo")?).ok()?;
        let b = parse_rational(r.ratios.get("r_hi")?).ok()?;
        best = Some(match best {
            None => (a, b),
            Some((x, y)) => (x.max(a), y.max(b)),
        });
    }
    best.map(|(a, b)| RationalInterval::new(a, b).expect("ordered"))
}

/// `Holds` when `max_upper R_n <= factor * max_lower R_n` is certified,
/// `Violates` when its negation is, `Undecided` otherwise.
pub fn boundedness(report: &ScanReport, lower: (u64, u64), upper: (u64, u64), factor: &BigRational) -> Verdict {
    let (Some(l), Some(u)) = (window_max(report, lower.0, lower.1), window_max(report, upper.0, upper.1)) else {
        return Verdict::Skipped;
    };
    if u.lo() > &(factor * l.hi()) {
        Verdict::Violates
    } else if u.hi() <= &(factor * l.lo()) {
        Verdict::Holds
    } else {
        Verdict::Undecided
    }
}
