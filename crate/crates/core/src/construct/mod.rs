//! Explicit constructions: the smooth-numerator number built stage by stage,
//! and expansions whose denominators alternate between powers of 2 and 3.

pub mod alternating;
pub mod em;

pub use alternating::{alternating_build, AlternatingWitness};
pub use em::{em_build, em_verify, EMConfig, EMVerifyReport, EMWitness};
