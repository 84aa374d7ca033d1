use num_bigint::BigInt;
use num_traits::Signed;

use convlab_core::recurrence::{decompose, Branch, BranchTag, LinearRecurrence};
use convlab_core::{Error, Result};

use crate::record::{ExperimentRecord, ScanReport, Verdict};

const NAME: &str = "intersect";

/// Number of convergent indices that certainly pushes `q_K` above `bound`:
/// `q_k >= F_(k+1) >= phi^(k-1)`.
pub fn terms_for_bound(bound: &BigInt) -> usize {
    (bound.bits() as usize * 14405) / 10000 + 3
}

/// All pairs `(n, k)` with `u_n = q_k <= bound`, merged per branch of the
/// decomposition of `rec`.
///
/// `q` must run past `bound`. Terms of each branch are generated until
/// `4 t + 8` consecutive branch terms exceed `bound` in absolute value or `n`
/// reaches `n_cap`. Polynomial branches are scanned and flagged.
pub fn intersect_scan(q: &[BigInt], rec: &LinearRecurrence, bound: &BigInt, n_cap: usize) -> Result<ScanReport> {
    if q.last().map_or(true, |last| last <= bound) {
        return Err(Error::InvalidInput("denominators do not run past the bound".into()));
    }
    let branches = decompose(rec)?;
    let l = branches.len();
    let patience = 4 * rec.order() + 8;
    let live: Vec<bool> = branches.iter().map(|b| b.tag == BranchTag::NonDegenerate).collect();
    let mut streak = vec![0usize; l];
    let mut values: Vec<Vec<(BigInt, usize)>> = vec![Vec::new(); l];
    let mut window: Vec<BigInt> = rec.init().to_vec();
    let t = rec.order();
    let mut n = 0usize;
    let stop_reason = loop {
        if (0..l).all(|m| !live[m] || streak[m] >= patience) {
            break "growth";
        }
        if n >= n_cap {
            break "n_cap";
        }
        n += 1;
        let un = if n <= t {
            window[n - 1].clone()
        } else {
            let next: BigInt = rec
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * &window[t - 1 - i])
                .sum();
            window.remove(0);
            window.push(next.clone());
            next
        };
        let m = n % l;
        if un.abs() > *bound {
            streak[m] += 1;
        } else {
            streak[m] = 0;
            if un.is_positive() {
                values[m].push((un, n));
            }
        }
    };
    let qs: Vec<(&BigInt, usize)> = q
        .iter()
        .enumerate()
        .filter(|(_, v)| *v <= bound)
        .map(|(k, v)| (v, k))
        .collect();

    let mut report = ScanReport::new(NAME);
    report.set_config("bound", bound);
    report.set_config("L", l);
    report.set_config("n_cap", n_cap);
    let mut records = Vec::new();
    for (m, b) in branches.iter().enumerate() {
        let hits = merge(&mut values[m], &qs);
        report.set_summary(&format!("branch_{m}_coincidences"), hits.len());
        report.set_summary(&format!("branch_{m}_kind"), branch_kind(b));
        for (n, k) in hits {
            let mut r = ExperimentRecord::new(NAME, n as u64, Verdict::Holds, 0)
                .value("k", k)
                .value("q_k", &q[k])
                .value("residue", m);
            if b.polynomial {
                r = r.flag("polynomial_branch");
            }
            records.push(r);
        }
    }
    records.sort_by_key(|r| (r.index, r.get("k").and_then(|k| k.parse::<u64>().ok())));
    report.records = records;
    report.set_summary("n_scanned", n);
    report.set_summary("stop", stop_reason);
    report.set_summary("q_below_bound", qs.len());
    report.tally();
    Ok(report)
}

fn branch_kind(b: &Branch) -> &'static str {
    match (b.tag, b.polynomial, b.admissible) {
        (BranchTag::IdenticallyZero, _, _) => "zero",
        (_, true, _) => "polynomial",
        (_, _, true) => "admissible",
        _ => "non_admissible",
    }
}

/// Two-pointer merge of branch values against sorted denominators; every
/// equal pair `(n, k)` is returned.
fn merge(values: &mut [(BigInt, usize)], qs: &[(&BigInt, usize)]) -> Vec<(usize, usize)> {
    values.sort();
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < values.len() && j < qs.len() {
        let (u, q) = (&values[i].0, qs[j].0);
        if u < q {
            i += 1;
        } else if u > q {
            j += 1;
        } else {
            let i_end = i + values[i..].iter().take_while(|(v, _)| v == u).count();
            let j_end = j + qs[j..].iter().take_while(|(v, _)| *v == u).count();
            for (_, n) in &values[i..i_end] {
                for (_, k) in &qs[j..j_end] {
                    out.push((*n, *k));
                }
            }
            i = i_end;
            j = j_end;
        }
    }
    out
}
