use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use convlab_core::cfrac::ContinuedFractionExpansion;
use convlab_core::digits::{lowdc_divisor_max, sparse_divisor_max};
use convlab_core::numeric::{fmt_rational, rational_lt_power};
use convlab_core::{Error, Result};

use super::{check_window, log_ratio_bounds, precision_at, with_bounds};
use crate::record::{ExperimentRecord, ScanReport, Verdict};

const NAME: &str = "divisor";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorVariant {
    /// At most one nonzero digit.
    Sparse1,
    /// Repdigits, that is no digit changes.
    Lowdc0,
}

impl DivisorVariant {
    /// Bound exponent: `(1 - lambda) + epsilon` for one nonzero digit,
    /// `(2 - lambda) / 2 + epsilon` for zero digit changes.
    pub fn exponent(self, lambda: &BigRational, epsilon: &BigRational) -> BigRational {
        let one = BigRational::one();
        match self {
            DivisorVariant::Sparse1 => &one - lambda + epsilon,
            DivisorVariant::Lowdc0 => (&one + &one - lambda) / (&one + &one) + epsilon,
        }
    }
}

impl fmt::Display for DivisorVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisorVariant::Sparse1 => "sparse1",
            DivisorVariant::Lowdc0 => "lowdc0",
        })
    }
}

impl FromStr for DivisorVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sparse1" => Ok(DivisorVariant::Sparse1),
            "lowdc0" => Ok(DivisorVariant::Lowdc0),
            other => Err(Error::InvalidInput(format!("unknown variant {other:?}; use sparse1 or lowdc0"))),
        }
    }
}

/// Largest qualifying divisor `delta` of each `q_k`, `0 <= k <= k_max`, with
/// the verdict of `delta < q_k^e` for the variant's bound exponent `e`.
pub fn divisor_bound_scan(
    cfe: &ContinuedFractionExpansion,
    base: u32,
    variant: DivisorVariant,
    lambda: &BigRational,
    epsilon: &BigRational,
    k_max: usize,
) -> Result<ScanReport> {
    let exponent = variant.exponent(lambda, epsilon);
    if !exponent.is_positive() {
        return Err(Error::InvalidInput(format!(
            "bound exponent {} must be positive",
            fmt_rational(&exponent)
        )));
    }
    check_window(cfe, k_max)?;
    let mut report = ScanReport::new(NAME);
    report.set_config("base", base);
    report.set_config("variant", variant);
    report.set_config("lambda", fmt_rational(lambda));
    report.set_config("epsilon", fmt_rational(epsilon));
    report.set_config("exponent", fmt_rational(&exponent));
    report.set_config("k_max", k_max);
    report.records = (0..=k_max)
        .into_par_iter()
        .map(|k| scan_one(cfe, k, base, variant, &exponent))
        .collect::<Result<Vec<_>>>()?;
    report.tally();
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
    base: u32,
    variant: DivisorVariant,
    exponent: &BigRational,
) -> Result<ExperimentRecord> {
    let q = cfe.q()[k].magnitude();
    let bits = precision_at(cfe, k);
    if q.is_one() {
        return Ok(ExperimentRecord::new(NAME, k as u64, Verdict::Skipped, bits)
            .value("q_k", q)
            .reason("q_k = 1"));
    }
    let hit = match variant {
        DivisorVariant::Sparse1 => sparse_divisor_max(q, base, 1)?,
        DivisorVariant::Lowdc0 => lowdc_divisor_max(q, base, 0)?,
    };
    let below = rational_lt_power(&BigRational::from_integer(BigInt::from(hit.divisor.clone())), q, exponent)?;
    let verdict = if below { Verdict::Holds } else { Verdict::Violates };
    let rec = ExperimentRecord::new(NAME, k as u64, verdict, bits)
        .value("q_k", q)
        .value("divisor", &hit.divisor)
        .value("L", hit.stats.length)
        .value("DC_all", hit.stats.digit_changes_all);
    Ok(with_bounds(rec, "log_ratio", log_ratio_bounds(&hit.divisor, q)))
}
