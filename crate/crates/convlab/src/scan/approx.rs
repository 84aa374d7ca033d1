use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use convlab_core::algebraic::{nearest_distance, AlgebraicReal, DistanceVerdict, Threshold};
use convlab_core::numeric::fmt_rational;
use convlab_core::recurrence::{classify, decompose, BranchTag, LinearRecurrence};
use convlab_core::{Error, Result};

use super::{log2_bounds, with_bounds};
use crate::record::{ExperimentRecord, ScanReport, Verdict};

const NAME: &str = "approx";

/// Why the hypothesis gate refuses `rec`, if it does.
fn gate(rec: &LinearRecurrence) -> Result<Option<String>> {
    let cls = classify(rec)?;
    if cls.polynomial_sequence {
        return Ok(Some("polynomial sequence".into()));
    }
    if !cls.admissible {
        return Ok(Some("every characteristic root is a root of unity".into()));
    }
    for b in decompose(rec)? {
        if b.tag == BranchTag::NonDegenerate && !b.admissible {
            return Ok(Some(format!("branch {} (mod {}) is not admissible", b.residue, b.step)));
        }
    }
    Ok(None)
}

/// Lists `n <= n_max` with `||u_n xi|| < |u_n|^(-1/(d-1) - epsilon)`.
///
/// A record is `Violates` when the inequality is certified, `Holds` when its
/// negation is, and `Undecided` when `cap_bits` does not separate them.
pub fn approx_violation_scan(
    xi: &AlgebraicReal,
    rec: &LinearRecurrence,
    epsilon: &BigRational,
    n_max: usize,
    cap_bits: u64,
) -> Result<ScanReport> {
    let d = xi.degree();
    if d < 2 {
        return Err(Error::InvalidInput("xi must have degree at least 2".into()));
    }
    if !epsilon.is_positive() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let exponent = BigRational::new(BigInt::one(), BigInt::from(d - 1)) + epsilon;
    let mut report = ScanReport::new(NAME);
    report.set_config("degree", d);
    report.set_config("epsilon", fmt_rational(epsilon));
    report.set_config("exponent", fmt_rational(&exponent));
    report.set_config("n_max", n_max);
    report.set_config("precision_cap", cap_bits);
    if let Some(why) = gate(rec)? {
        report.records.push(ExperimentRecord::new(NAME, 0, Verdict::Skipped, 0).reason(why));
        report.tally();
        return Ok(report);
    }
    let u = rec.eval_range(1, n_max)?;
    report.records = u
        .par_iter()
        .enumerate()
        .map(|(i, un)| scan_one(xi, (i + 1) as u64, un, &exponent, cap_bits))
        .collect::<Result<Vec<_>>>()?;
    report.tally();
    let violations = report.indices(Verdict::Violates);
    report.set_summary(
        "violation_set",
        violations.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    );
    if let Some(last) = violations.last() {
        report.set_summary("last_violation", last);
    }
    Ok(report)
}

fn scan_one(
    xi: &AlgebraicReal,
    n: u64,
    un: &BigInt,
    exponent: &BigRational,
    cap_bits: u64,
) -> Result<ExperimentRecord> {
    if un.is_zero() {
        return Ok(ExperimentRecord::new(NAME, n, Verdict::Skipped, 0)
            .value("u_n", un)
            .reason("u_n = 0"));
    }
    let threshold = Threshold::NegPower {
        base: un.magnitude().clone(),
        exponent: exponent.clone(),
    };
    let cd = nearest_distance(un, xi, &threshold, cap_bits)?;
    let verdict = match cd.verdict {
        DistanceVerdict::Less => Verdict::Violates,
        DistanceVerdict::Greater => Verdict::Holds,
        DistanceVerdict::Undecided => Verdict::Undecided,
    };
    let mut rec = ExperimentRecord::new(NAME, n, verdict, cd.precision_bits).value("u_n", un);
    // -log||u_n xi|| / log|u_n|, from the distance enclosure
    if un.magnitude() > &One::one() && cd.enclosure.lo().is_positive() {
        let lu = log2_bounds(&BigRational::from_integer(un.abs()));
        let (_, hi_log) = log2_bounds(cd.enclosure.hi());
        let (lo_log, _) = log2_bounds(cd.enclosure.lo());
        let lo = -hi_log / &lu.1;
        let hi = -lo_log / &lu.0;
        rec = with_bounds(rec, "exponent", (lo, hi));
    }
    Ok(rec)
}
