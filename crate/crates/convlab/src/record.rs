//! JSON-lines experiment records and the lossy CSV view.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use convlab_core::numeric::decimal_string;

/// Digits after the point in decimal renderings of ratios.
pub const RATIO_DIGITS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Violates,
    Undecided,
    Skipped,
}

/// One row of a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub index: u64,
    /// Exact integers as decimal strings.
    pub values: BTreeMap<String, String>,
    /// Exponents and ratios as decimal strings, rounded in the stated
    /// direction.
    pub ratios: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub precision_bits: u64,
}

impl ExperimentRecord {
    pub fn new(experiment: &str, index: u64, verdict: Verdict, precision_bits: u64) -> Self {
        ExperimentRecord {
            experiment: experiment.to_string(),
            index,
            values: BTreeMap::new(),
            ratios: BTreeMap::new(),
            verdict,
            flags: Vec::new(),
            reason: None,
            precision_bits,
        }
    }

    pub fn value(mut self, key: &str, v: impl ToString) -> Self {
        self.values.insert(key.to_string(), v.to_string());
        self
    }

    pub fn ratio(mut self, key: &str, v: String) -> Self {
        self.ratios.insert(key.to_string(), v);
        self
    }

    pub fn flag(mut self, f: &str) -> Self {
        self.flags.push(f.to_string());
        self
    }

    pub fn reason(mut self, r: impl Into<String>) -> Self {
        self.reason = Some(r.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

/// Records of one scan plus a closing summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub experiment: String,
    pub config: BTreeMap<String, String>,
    pub records: Vec<ExperimentRecord>,
    pub summary: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    experiment: &'a str,
    config: &'a BTreeMap<String, String>,
    summary: &'a BTreeMap<String, String>,
}

impl ScanReport {
    pub fn new(experiment: &str) -> Self {
        ScanReport {
            experiment: experiment.to_string(),
            config: BTreeMap::new(),
            records: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    pub fn set_config(&mut self, key: &str, v: impl ToString) {
        self.config.insert(key.to_string(), v.to_string());
    }

    pub fn set_summary(&mut self, key: &str, v: impl ToString) {
        self.summary.insert(key.to_string(), v.to_string());
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == verdict).count()
    }

    /// Indices of records with the given verdict, in order.
    pub fn indices(&self, verdict: Verdict) -> Vec<u64> {
        self.records
            .iter()
            .filter(|r| r.verdict == verdict)
            .map(|r| r.index)
            .collect()
    }

    /// Fills the verdict counters of the summary.
    pub fn tally(&mut self) {
        for (name, v) in [
            ("holds", Verdict::Holds),
            ("violates", Verdict::Violates),
            ("undecided", Verdict::Undecided),
            ("skipped", Verdict::Skipped),
        ] {
            let c = self.count(v);
            self.set_summary(name, c);
        }
    }

    /// One JSON object per record, then the summary line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        let line = SummaryLine {
            experiment: &self.experiment,
            config: &self.config,
            summary: &self.summary,
        };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 JSON")
    }

    /// Lossy view: integers become `log10` columns, ratios become floats.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut value_keys: Vec<&String> = Vec::new();
        let mut ratio_keys: Vec<&String> = Vec::new();
        for r in &self.records {
            for k in r.values.keys() {
                if !value_keys.contains(&k) {
                    value_keys.push(k);
                }
            }
            for k in r.ratios.keys() {
                if !ratio_keys.contains(&k) {
                    ratio_keys.push(k);
                }
            }
        }
        value_keys.sort();
        ratio_keys.sort();
        let mut header = vec!["experiment".to_string(), "index".into(), "verdict".into(), "precision_bits".into()];
        header.extend(value_keys.iter().map(|k| format!("log10_{k}")));
        header.extend(ratio_keys.iter().map(|k| k.to_string()));
        writeln!(w, "{}", header.join(","))?;
        for r in &self.records {
            let mut row = vec![
                r.experiment.clone(),
                r.index.to_string(),
                format!("{:?}", r.verdict),
                r.precision_bits.to_string(),
            ];
            for k in &value_keys {
                row.push(r.values.get(*k).map(|v| log10_column(v)).unwrap_or_default());
            }
            for k in &ratio_keys {
                row.push(
                    r.ratios
                        .get(*k)
                        .and_then(|v| v.parse::<f64>().ok())
                        .map(|x| format!("{x:.6}"))
                        .unwrap_or_default(),
                );
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// `log10 |n|` of a decimal integer string, signed by `n`; `0` stays `0`.
fn log10_column(s: &str) -> String {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, s),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return String::new();
    }
    let digits = digits.trim_start_matches('0');
    if digits.is_empty() {
        return "0".into();
    }
    let lead: f64 = digits[..digits.len().min(15)].parse().unwrap_or(1.0);
    let l = lead.log10() + (digits.len() - digits.len().min(15)) as f64;
    format!("{}{l:.6}", if neg { "-" } else { "" })
}

/// Decimal rendering rounded toward negative infinity.
pub fn decimal_down(r: &BigRational) -> String {
    decimal_string(r, RATIO_DIGITS)
}

/// Decimal rendering rounded toward positive infinity.
pub fn decimal_up(r: &BigRational) -> String {
    let neg = -r;
    let s = decimal_string(&neg, RATIO_DIGITS);
    match s.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None if s.trim_start_matches(['0', '.']).is_empty() => s,
        None => format!("-{s}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn directed_decimals() {
        assert_eq!(decimal_down(&q(1, 3)), format!("0.{}", "3".repeat(24)));
        assert_eq!(decimal_up(&q(1, 3)), format!("0.{}4", "3".repeat(23)));
        assert_eq!(decimal_up(&q(-1, 3)), format!("-0.{}", "3".repeat(24)));
        assert_eq!(decimal_up(&q(2, 1)), format!("2.{}", "0".repeat(24)));
        assert_eq!(decimal_up(&q(0, 1)), format!("0.{}", "0".repeat(24)));
    }

    #[test]
    fn jsonl_round_trip() {
        let mut rep = ScanReport::new("demo");
        rep.set_config("epsilon", "1/10");
        rep.records.push(
            ExperimentRecord::new("demo", 3, Verdict::Violates, 128)
                .value("u", "-12345678901234567890")
                .ratio("e", "0.5".into())
                .flag("polynomial_branch"),
        );
        rep.records.push(ExperimentRecord::new("demo", 4, Verdict::Skipped, 0).reason("gate"));
        rep.tally();
        let text = rep.to_jsonl();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let back: ExperimentRecord = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(back, rep.records[0]);
        assert!(!lines[1].contains("flags"));
        let last: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(last["summary"]["violates"], "1");
        assert_eq!(last["summary"]["skipped"], "1");
    }

    #[test]
    fn csv_columns() {
        let mut rep = ScanReport::new("demo");
        rep.records.push(
            ExperimentRecord::new("demo", 1, Verdict::Holds, 64)
                .value("q", "1000")
                .ratio("r", "0.25".into()),
        );
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "experiment,index,verdict,precision_bits,log10_q,r");
        assert_eq!(lines.next().unwrap(), "demo,1,Holds,64,3.000000,0.250000");
        assert_eq!(log10_column("-100"), "-2.000000");
        assert_eq!(log10_column("0"), "0");
        let big = format!("1{}", "0".repeat(40));
        assert_eq!(log10_column(&big), "40.000000");
    }
}
