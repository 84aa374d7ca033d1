use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use convlab_core::cfrac::ContinuedFractionExpansion;
use convlab_core::numeric::{fmt_rational, rational_lt_power};
use convlab_core::smooth::{s_part, PrimeSet};
use convlab_core::{Error, Result};

use super::{check_window, log_ratio_bounds, precision_at, with_bounds};
use crate::record::{ExperimentRecord, ScanReport, Verdict};

const NAME: &str = "spart";

#[derive(Clone, Debug)]
pub struct SpartParams {
    pub primes: PrimeSet,
    /// Irrationality exponent; `None` runs in report-only mode.
    pub mu: Option<BigRational>,
    pub epsilon: BigRational,
    pub k_max: usize,
}

impl SpartParams {
    /// `mu / (mu + 1) + epsilon`.
    pub fn exponent(&self) -> Option<BigRational> {
        self.mu
            .as_ref()
            .map(|mu| mu / (mu + BigRational::one()) + &self.epsilon)
    }
}

/// `[Q_k]_S` with `Q_k = q_(k-1) q_k q_(k+1)` for `1 <= k <= k_max`, its
/// exponent `log [Q_k]_S / log Q_k` and the verdict of
/// `[Q_k]_S < Q_k^(mu/(mu+1) + epsilon)`.
///
/// Every record also carries `d_k = gcd(q_(k-1), q_(k+1))` with exact checks
/// of `d_k | a_(k+1)` and `gcd(q_(k-1), q_k) = 1`; failures are flagged.
pub fn spart_scan(cfe: &ContinuedFractionExpansion, params: &SpartParams) -> Result<ScanReport> {
    if params.primes.is_empty() {
        return Err(Error::InvalidInput("S must not be empty".into()));
    }
    if params.k_max < 1 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    if !params.epsilon.is_positive() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    check_window(cfe, params.k_max + 1)?;
    let exponent = params.exponent();
    let mut report = ScanReport::new(NAME);
    report.set_config("S", &params.primes);
    report.set_config("epsilon", fmt_rational(&params.epsilon));
    report.set_config("k_max", params.k_max);
    match (&params.mu, &exponent) {
        (Some(mu), Some(e)) => {
            report.set_config("mu", fmt_rational(mu));
            report.set_config("exponent", fmt_rational(e));
        }
        _ => report.set_config("mu", "unknown"),
    }
    report.records = (1..=params.k_max)
        .into_par_iter()
        .map(|k| scan_one(cfe, k, &params.primes, exponent.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    report.tally();
    let flagged = |f: &str| report.records.iter().filter(|r| r.flags.iter().any(|x| x == f)).count();
    let (dk_fail, gcd_fail) = (flagged("dk_not_dividing_a"), flagged("consecutive_not_coprime"));
    report.set_summary("dk_divides_a_failures", dk_fail);
    report.set_summary("coprime_failures", gcd_fail);
    let violations = report.indices(Verdict::Violates);
    report.set_summary(
        "violation_set",
        violations.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    );
    Ok(report)
}

fn scan_one(
    cfe: &ContinuedFractionExpansion,
    k: usize,
    primes: &PrimeSet,
    exponent: Option<&BigRational>,
) -> Result<ExperimentRecord> {
    let (q, a) = (cfe.q(), cfe.a());
    let big_q: BigInt = &q[k - 1] * &q[k] * &q[k + 1];
    let sp = s_part(&big_q, primes);
    let qmag = big_q.magnitude();
    let verdict = match exponent {
        None => Verdict::Skipped,
        Some(_) if qmag.is_one() => Verdict::Skipped,
        Some(e) => {
            if rational_lt_power(&BigRational::from_integer(BigInt::from(sp.s_part.clone())), qmag, e)? {
                Verdict::Holds
            } else {
                Verdict::Violates
            }
        }
    };
    let d_k = q[k - 1].gcd(&q[k + 1]);
    let divides = (&a[k + 1] % &d_k).is_zero();
    let coprime = q[k - 1].gcd(&q[k]).is_one();
    let mut rec = ExperimentRecord::new(NAME, k as u64, verdict, precision_at(cfe, k + 1))
        .value("Q_k", &big_q)
        .value("s_part", &sp.s_part)
        .value("d_k", &d_k)
        .value("a_k1", &a[k + 1]);
    if qmag > &One::one() {
        rec = with_bounds(rec, "exponent", log_ratio_bounds(&sp.s_part, qmag));
    }
    if exponent.is_none() {
        rec = rec.reason("irrationality exponent unknown; report only");
    } else if qmag.is_one() {
        rec = rec.reason("Q_k = 1");
    }
    if !divides {
        rec = rec.flag("dk_not_dividing_a");
    }
    if !coprime {
        rec = rec.flag("consecutive_not_coprime");
    }
    Ok(rec)
}
