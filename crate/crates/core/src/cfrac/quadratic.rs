//! Exact periodic continued fractions of quadratic surds `(P + sqrt D) / Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use super::ContinuedFractionExpansion;
use crate::error::{Error, Result};

/// The real number `(P + sqrt D) / Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticSurd {
    #[serde(with = "crate::numeric::bigint_string")]
    pub p: BigInt,
    #[serde(with = "crate::numeric::bigint_string")]
    pub q: BigInt,
    #[serde(with = "crate::numeric::bigint_string")]
    pub d: BigInt,
}

impl QuadraticSurd {
    /// Validates `D > 0` not a square, `Q != 0` and `Q | D - P^2`.
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::InvalidInput(format!("D = {d} must be positive")));
        }
        let s = d.sqrt();
        if &s * &s == d {
            return Err(Error::InvalidInput(format!("D = {d} is a perfect square")));
        }
        if q.is_zero() {
            return Err(Error::InvalidInput("Q must be nonzero".into()));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            return Err(Error::InvalidInput(format!("Q = {q} does not divide D - P^2")));
        }
        Ok(QuadraticSurd { p, q, d })
    }
}

/// Ultimately periodic expansion `[a_0; ..., a_{r-1}, (a_r, ..., a_{r+s-1})]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicCF {
    /// Number of terms before the period, counting `a_0`.
    pub preperiod: usize,
    /// Period length.
    pub period: usize,
    /// `a_0, ..., a_{r+s-1}`.
    #[serde(with = "crate::numeric::bigint_vec_string")]
    pub terms: Vec<BigInt>,
    /// Trace of the product of `[[a, 1], [1, 0]]` over one period.
    #[serde(with = "crate::numeric::bigint_string")]
    pub trace: BigInt,
}

impl PeriodicCF {
    /// `a_k` for any `k`.
    pub fn term(&self, k: usize) -> &BigInt {
        if k < self.preperiod + self.period {
            &self.terms[k]
        } else {
            &self.terms[self.preperiod + (k - self.preperiod) % self.period]
        }
    }

    /// Convergents `0..=k_max` of the unrolled expansion.
    pub fn unroll(&self, k_max: usize) -> ContinuedFractionExpansion {
        let a = (0..=k_max).map(|k| self.term(k).clone()).collect();
        ContinuedFractionExpansion::from_partial_quotients(a).expect("quotients are positive")
    }
}

/// Exact `(P, Q)` iteration with cycle detection on the states.
pub fn expand_quadratic(surd: &QuadraticSurd) -> PeriodicCF {
    let d = &surd.d;
    let s = d.sqrt();
    let (mut p, mut q) = (surd.p.clone(), surd.q.clone());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = terms.len() - start;
            let mut pcf = PeriodicCF {
                preperiod: start,
                period,
                terms,
                trace: BigInt::zero(),
            };
            pcf.trace = period_trace(&pcf);
            return pcf;
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            -(&p + &s).div_floor(&-&q) - 1
        };
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        terms.push(a);
        p = p_next;
        q = q_next;
    }
}

fn period_trace(pcf: &PeriodicCF) -> BigInt {
    let (mut m00, mut m01, mut m10, mut m11) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for a in &pcf.terms[pcf.preperiod..] {
        // M <- M * [[a, 1], [1, 0]]
        let n00 = &m00 * a + &m01;
        let n10 = &m10 * a + &m11;
        m01 = m00;
        m11 = m10;
        m00 = n00;
        m10 = n10;
    }
    m00 + m11
}

/// Result of checking `q_{k+2s} = t q_{k+s} - (-1)^s q_k` over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    #[serde(with = "crate::numeric::bigint_string")]
    pub trace: BigInt,
    pub first_k: usize,
    pub last_k: usize,
    pub checked: usize,
}

/// Computes the period trace and checks the denominator identity for all
/// `k` from the start of the period up to `last_k`.
pub fn period_matrix_trace(pcf: &PeriodicCF, last_k: usize) -> Result<TraceReport> {
    let t = &pcf.trace;
    let s = pcf.period;
    let first_k = pcf.preperiod;
    let cfe = pcf.unroll(last_k.max(first_k) + 2 * s);
    let q = cfe.q();
    let sign = if s % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut checked = 0;
    for k in first_k..=last_k {
        let rhs = t * &q[k + s] - &sign * &q[k];
        if q[k + 2 * s] != rhs {
            return Err(Error::IdentityViolation {
                k,
                detail: format!("q_(k+2s) = {} but t q_(k+s) - (-1)^s q_k = {rhs}", q[k + 2 * s]),
            });
        }
        checked += 1;
    }
    Ok(TraceReport {
        trace: t.clone(),
        first_k,
        last_k,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(p: i64, q: i64, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(p.into(), q.into(), d.into()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn spec_examples() {
        let r = expand_quadratic(&surd(0, 1, 2));
        assert_eq!((r.preperiod, r.period), (1, 1));
        assert_eq!(r.terms, ints(&[1, 2]));
        let r = expand_quadratic(&surd(0, 1, 3));
        assert_eq!((r.preperiod, r.period), (1, 2));
        assert_eq!(r.terms, ints(&[1, 1, 2]));
        let r = expand_quadratic(&surd(1, 2, 5));
        assert_eq!((r.preperiod, r.period), (0, 1));
        assert_eq!(r.terms, ints(&[1]));
    }

    #[test]
    fn negative_q_and_negative_values() {
        // (-1 + sqrt 2) / (-1) = 1 - sqrt 2 = [-1; 1, 1, 2, 2, ...]
        let r = expand_quadratic(&QuadraticSurd::new((-1).into(), (-1).into(), 2.into()).unwrap());
        let first: Vec<BigInt> = (0..6).map(|k| r.term(k).clone()).collect();
        assert_eq!(first, ints(&[-1, 1, 1, 2, 2, 2]));
        // -sqrt 2 = (0 + sqrt 8) / (-2) = [-2; 1, 1, 2, 2, ...]
        let r = expand_quadratic(&surd(0, -2, 8));
        let first: Vec<BigInt> = (0..6).map(|k| r.term(k).clone()).collect();
        assert_eq!(first, ints(&[-2, 1, 1, 2, 2, 2]));
    }

    #[test]
    fn hand_iteration_twenty_steps() {
        // sqrt 7 = [2; (1, 1, 1, 4)]
        let r = expand_quadratic(&surd(0, 1, 7));
        let got: Vec<BigInt> = (0..20).map(|k| r.term(k).clone()).collect();
        let mut want = vec![2];
        for _ in 0..5 {
            want.extend([1, 1, 1, 4]);
        }
        want.truncate(20);
        assert_eq!(got, ints(&want));
    }

    #[test]
    fn traces_and_identity() {
        for (p, q, d, t) in [(0, 1, 2, 2), (0, 1, 3, 4), (1, 2, 5, 1), (0, 1, 7, 16)] {
            let r = expand_quadratic(&surd(p, q, d));
            assert_eq!(r.trace, BigInt::from(t));
            let rep = period_matrix_trace(&r, 200).unwrap();
            assert_eq!(rep.trace, BigInt::from(t));
            assert_eq!(rep.checked, 200 - r.preperiod + 1);
        }
        // sqrt 3: q_6 = 41 = 4 * 11 - 3
        let r = expand_quadratic(&surd(0, 1, 3));
        let q = r.unroll(7);
        assert_eq!(q.q(), ints(&[1, 1, 3, 4, 11, 15, 41, 56]).as_slice());
        // sqrt 2: 1, 2, 5, 12, 29
        let q = expand_quadratic(&surd(0, 1, 2)).unroll(4);
        assert_eq!(q.q(), ints(&[1, 2, 5, 12, 29]).as_slice());
    }

    #[test]
    fn identity_violation_detected() {
        let mut r = expand_quadratic(&surd(0, 1, 2));
        r.trace = BigInt::from(3);
        assert!(matches!(
            period_matrix_trace(&r, 10),
            Err(Error::IdentityViolation { .. })
        ));
    }

    #[test]
    fn invalid_surds() {
        assert!(QuadraticSurd::new(0.into(), 1.into(), 4.into()).is_err());
        assert!(QuadraticSurd::new(0.into(), 0.into(), 2.into()).is_err());
        assert!(QuadraticSurd::new(0.into(), 3.into(), 2.into()).is_err());
        assert!(QuadraticSurd::new(0.into(), 1.into(), (-2).into()).is_err());
    }
}
