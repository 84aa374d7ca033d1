//! Experiment harness over the exact kernels of `convlab-core`: scans that
//! emit JSON-lines records, input parsing and the convergent cache.

pub mod input;
pub mod record;
pub mod scan;

pub use record::{ExperimentRecord, ScanReport, Verdict};
