use rayon::prelude::*;

use convlab_core::cfrac::ContinuedFractionExpansion;
use convlab_core::digits::{digit_stats, zeckendorf};
use convlab_core::{Error, Result};

use super::{check_window, precision_at};
use crate::record::{ExperimentRecord, ScanReport, Verdict};

const NAME: &str = "digits";

/// First index of the Stewart fit window.
const FIT_START: usize = 10;

/// Least `C` with `L_k > ln k / (ln ln k + C) - 1` for every `(k, L_k)`
/// with `k >= 3`, that is `sup (ln k / (L_k + 1) - ln ln k)`.
pub fn stewart_constant(points: &[(usize, usize)]) -> Option<f64> {
    points
        .iter()
        .filter(|(k, _)| *k >= 3)
        .map(|&(k, l)| {
            let lk = (k as f64).ln();
            lk / (l as f64 + 1.0) - lk.ln()
        })
        .reduce(f64::max)
}

/// Digit statistics of `q_k` in base `b` for `0 <= k <= k_max`: nonzero
/// digits `L`, digit changes in both variants, Zeckendorf term counts and
/// the running minimum of `L`.
///
/// With `quadratic` set, the summary carries the empirical Stewart constant
/// over `[10, k_max]` and over the first half of that window.
pub fn digit_growth_scan(
    cfe: &ContinuedFractionExpansion,
    base: u32,
    k_max: usize,
    quadratic: bool,
) -> Result<ScanReport> {
    if k_max < FIT_START {
        return Err(Error::InvalidInput(format!("k_max must be at least {FIT_START}")));
    }
    check_window(cfe, k_max)?;
    let mut records = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let q = cfe.q()[k].magnitude();
            let stats = digit_stats(q, base)?;
            let z = zeckendorf(q)?;
            let consistent = &stats.reconstruct() == q && &z.reconstruct() == q;
            let verdict = if consistent { Verdict::Holds } else { Verdict::Violates };
            Ok(ExperimentRecord::new(NAME, k as u64, verdict, precision_at(cfe, k))
                .value("q_k", q)
                .value("digits", stats.digits.len())
                .value("L", stats.length)
                .value("DC_s1", stats.digit_changes_s1)
                .value("DC_all", stats.digit_changes_all)
                .value("zeckendorf", z.count()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut running = usize::MAX;
    for r in records.iter_mut() {
        let l: usize = r.get("L").and_then(|v| v.parse().ok()).unwrap_or(0);
        running = running.min(l);
        r.values.insert("running_min_L".into(), running.to_string());
    }
    let mut report = ScanReport::new(NAME);
    report.set_config("base", base);
    report.set_config("k_max", k_max);
    report.records = records;
    report.tally();
    let half = (FIT_START + k_max) / 2;
    report.set_summary("min_L_lower_half", window_min(&report, "L", FIT_START, half).unwrap_or(0));
    report.set_summary("min_L_upper_half", window_min(&report, "L", half + 1, k_max).unwrap_or(0));
    if quadratic {
        let pts = |hi: usize| -> Vec<(usize, usize)> {
            report
                .records
                .iter()
                .filter(|r| (FIT_START..=hi).contains(&(r.index as usize)))
                .filter_map(|r| Some((r.index as usize, r.get("L")?.parse().ok()?)))
                .collect()
        };
        let full = stewart_constant(&pts(k_max));
        let first = stewart_constant(&pts(half));
        if let (Some(full), Some(first)) = (full, first) {
            report.set_summary("stewart_C", format!("{full:.9}"));
            report.set_summary("stewart_C_half_window", format!("{first:.9}"));
        }
    }
    Ok(report)
}

/// Minimum of an integer column over `lo <= k <= hi`.
pub fn window_min(report: &ScanReport, key: &str, lo: usize, hi: usize) -> Option<usize> {
    report
        .records
        .iter()
        .filter(|r| (lo..=hi).contains(&(r.index as usize)))
        .filter_map(|r| r.get(key)?.parse().ok())
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stewart_fit_is_tight() {
        let pts = [(10, 3), (20, 5), (40, 9)];
        let c = stewart_constant(&pts).unwrap();
        for (k, l) in pts {
            let lk = (k as f64).ln();
            assert!(l as f64 >= lk / (lk.ln() + c) - 1.0 - 1e-12);
        }
        // equality at the maximising point
        let at = |k: f64, l: f64| k.ln() / (l + 1.0) - k.ln().ln();
        assert_eq!(c, at(10.0, 3.0).max(at(20.0, 5.0)).max(at(40.0, 9.0)));
        assert!(stewart_constant(&[(2, 1)]).is_none());
    }
}
