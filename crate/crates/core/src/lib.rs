//! Exact arithmetic kernels for convergent denominators, linear recurrences
//! and smooth-number constructions.

pub mod algebraic;
pub mod cfrac;
pub mod construct;
pub mod digits;
pub mod error;
pub mod interval;
pub mod numeric;
pub mod poly;
pub mod recurrence;
pub mod resultant;
pub mod smooth;

pub use error::{Error, Result};
pub use interval::RationalInterval;
pub use poly::IntPolynomial;
