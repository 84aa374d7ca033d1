//! Continued fractions of real algebraic numbers and of interval-enclosed
//! reals.
//!
//! Convergents are indexed from `k = 0` with the seeds `p_{-1} = 1`,
//! `q_{-1} = 0`, `p_0 = a_0`, `q_0 = 1`.

pub mod cache;
pub mod quadratic;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::algebraic::{AlgebraicReal, DEFAULT_CAP_BITS};
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::numeric::{cmp_q, floor_to_bits, log2_floor, LOG_FRACTION_BITS};

pub use quadratic::{expand_quadratic, period_matrix_trace, PeriodicCF, QuadraticSurd, TraceReport};

/// One rung of the precision ladder used during an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionStep {
    /// First index that was still uncertified when this precision was chosen.
    pub index: usize,
    pub bits: u64,
}

/// Partial quotients and convergents `a_k, p_k, q_k` for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFractionExpansion {
    a: Vec<BigInt>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    source: Option<AlgebraicReal>,
    precision_log: Vec<PrecisionStep>,
}

impl ContinuedFractionExpansion {
    /// Builds convergents from partial quotients (`a_k >= 1` for `k >= 1`).
    pub fn from_partial_quotients(a: Vec<BigInt>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput("no partial quotients".into()));
        }
        if let Some((k, _)) = a.iter().enumerate().skip(1).find(|(_, x)| !x.is_positive()) {
            return Err(Error::InvalidInput(format!("a_{k} must be positive")));
        }
        let mut cfe = ContinuedFractionExpansion {
            a: Vec::with_capacity(a.len()),
            p: Vec::with_capacity(a.len()),
            q: Vec::with_capacity(a.len()),
            source: None,
            precision_log: Vec::new(),
        };
        for x in a {
            cfe.push(x);
        }
        Ok(cfe)
    }

    fn empty(source: Option<AlgebraicReal>) -> Self {
        ContinuedFractionExpansion {
            a: Vec::new(),
            p: Vec::new(),
            q: Vec::new(),
            source,
            precision_log: Vec::new(),
        }
    }

    fn push(&mut self, a: BigInt) {
        let (p1, q1) = (self.p_at(self.a.len() as isize - 1), self.q_at(self.a.len() as isize - 1));
        let (p2, q2) = (self.p_at(self.a.len() as isize - 2), self.q_at(self.a.len() as isize - 2));
        self.p.push(&a * p1 + p2);
        self.q.push(&a * q1 + q2);
        self.a.push(a);
    }

    /// `p_k` including the seeds `p_{-1} = 1`, `p_{-2} = 0`.
    fn p_at(&self, k: isize) -> BigInt {
        match k {
            -2 => BigInt::zero(),
            -1 => BigInt::one(),
            _ => self.p[k as usize].clone(),
        }
    }

    fn q_at(&self, k: isize) -> BigInt {
        match k {
            -2 => BigInt::one(),
            -1 => BigInt::zero(),
            _ => self.q[k as usize].clone(),
        }
    }

    /// Index of the last term, `K`.
    pub fn last_index(&self) -> usize {
        self.a.len() - 1
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn p(&self) -> &[BigInt] {
        &self.p
    }

    pub fn q(&self) -> &[BigInt] {
        &self.q
    }

    pub fn source(&self) -> Option<&AlgebraicReal> {
        self.source.as_ref()
    }

    pub fn precision_log(&self) -> &[PrecisionStep] {
        &self.precision_log
    }

    /// Keeps the terms `0..=k`.
    pub fn truncated(&self, k: usize) -> Self {
        let n = (k + 1).min(self.a.len());
        ContinuedFractionExpansion {
            a: self.a[..n].to_vec(),
            p: self.p[..n].to_vec(),
            q: self.q[..n].to_vec(),
            source: self.source.clone(),
            precision_log: self.precision_log.iter().filter(|s| s.index <= k).cloned().collect(),
        }
    }

    /// Checks the recurrences, the determinant identity, coprimality and the
    /// growth of `q_k`.
    pub fn check_invariants(&self) -> Result<()> {
        for k in 0..self.a.len() {
            let ki = k as isize;
            if k >= 1 && !self.a[k].is_positive() {
                return Err(violation(k, "a_k is not positive"));
            }
            if self.p[k] != &self.a[k] * self.p_at(ki - 1) + self.p_at(ki - 2)
                || self.q[k] != &self.a[k] * self.q_at(ki - 1) + self.q_at(ki - 2)
            {
                return Err(violation(k, "convergent recurrence fails"));
            }
            // p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1)
            let det = &self.p[k] * self.q_at(ki - 1) - self.p_at(ki - 1) * &self.q[k];
            let expect = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            if det != expect {
                return Err(violation(k, "determinant identity fails"));
            }
            if !self.p[k].gcd(&self.q[k]).is_one() {
                return Err(violation(k, "p_k and q_k are not coprime"));
            }
            if k >= 2 && self.q[k] <= self.q[k - 1] {
                return Err(violation(k, "q_k does not increase"));
            }
        }
        Ok(())
    }
}

fn violation(k: usize, detail: &str) -> Error {
    Error::IdentityViolation {
        k,
        detail: detail.to_string(),
    }
}

/// Runs the continued fraction algorithm on two rationals in lockstep and
/// emits the quotients on which they agree; every real number between them
/// shares these quotients provided it is irrational.
fn lockstep(lo: BigRational, hi: BigRational, limit: usize) -> Vec<BigInt> {
    // Euclid on numerator/denominator pairs; denominators stay positive.
    let (mut ln, mut ld) = (lo.numer().clone(), lo.denom().clone());
    let (mut hn, mut hd) = (hi.numer().clone(), hi.denom().clone());
    let mut out = Vec::new();
    while out.len() < limit {
        let (fa, ra) = ln.div_mod_floor(&ld);
        let (fb, rb) = hn.div_mod_floor(&hd);
        if fa != fb {
            break;
        }
        out.push(fa);
        if ra.is_zero() || rb.is_zero() {
            break;
        }
        (ln, ld) = (ld, ra);
        (hn, hd) = (hd, rb);
    }
    out
}

/// Expands an irrational real algebraic number to `K + 1` certified partial
/// quotients, with the default precision cap.
pub fn expand(x: &AlgebraicReal, terms: usize) -> Result<ContinuedFractionExpansion> {
    expand_with_cap(x, terms, DEFAULT_CAP_BITS)
}

/// Like [`expand`] with an explicit precision cap in bits.
///
/// The state after `k` terms is the homographic map sending `x` to its
/// complete quotient `y = (p_{k-1} - q_{k-1} x) / (q_k x - p_k)`. Each round
/// maps a fresh enclosure of `x` through it and certifies the quotients on
/// which the images of both endpoints agree.
pub fn expand_with_cap(
    x: &AlgebraicReal,
    terms: usize,
    cap_bits: u64,
) -> Result<ContinuedFractionExpansion> {
    if x.degree() < 2 {
        return Err(Error::InvalidInput(
            "continued fraction expansion needs an irrational number".into(),
        ));
    }
    let mut cfe = ContinuedFractionExpansion::empty(Some(x.clone()));
    let mut bits: u64 = 64;
    while cfe.a.len() <= terms {
        let k = cfe.a.len() as isize - 1;
        let (pk, qk) = (cfe.p_at(k), cfe.q_at(k));
        let (pk1, qk1) = (cfe.p_at(k - 1), cfe.q_at(k - 1));
        bits = bits.max(2 * qk.bits() + 64).min(cap_bits);
        cfe.precision_log.push(PrecisionStep {
            index: cfe.a.len(),
            bits,
        });
        let enc = x.refine(bits);
        let image = |t: &BigRational| -> Option<BigRational> {
            let den = BigRational::from_integer(qk.clone()) * t - BigRational::from_integer(pk.clone());
            if den.is_zero() {
                return None;
            }
            Some((BigRational::from_integer(pk1.clone()) - BigRational::from_integer(qk1.clone()) * t) / den)
        };
        // The pole p_k / q_k must lie outside the enclosure.
        let pole_inside = qk.is_positive() && {
            let pole = BigRational::new(pk.clone(), qk.clone());
            enc.contains(&pole)
        };
        let got = if pole_inside {
            Vec::new()
        } else {
            match (image(enc.lo()), image(enc.hi())) {
                (Some(ylo), Some(yhi)) => lockstep(ylo, yhi, terms + 1 - cfe.a.len()),
                _ => Vec::new(),
            }
        };
        let progressed = !got.is_empty();
        for a in got {
            cfe.push(a);
        }
        if !progressed {
            if bits >= cap_bits {
                return Err(Error::PrecisionExhausted {
                    index: cfe.a.len(),
                    cap: cap_bits,
                });
            }
            bits *= 2;
        }
    }
    Ok(cfe)
}

/// Certified prefix of the continued fraction of an irrational number known
/// only through an enclosing interval; at most `K + 1` terms.
pub fn expand_interval(enc: &RationalInterval, terms: usize) -> ContinuedFractionExpansion {
    let mut cfe = ContinuedFractionExpansion::empty(None);
    for a in lockstep(enc.lo().clone(), enc.hi().clone(), terms + 1) {
        cfe.push(a);
    }
    cfe
}

/// Window estimate `max_{k0 <= k < K} (1 + log q_{k+1} / log q_k)` of the
/// irrationality exponent, with logarithms rounded down to 64 fractional bits.
/// Indices with `q_k <= 1` are skipped.
pub fn mu_lower_estimate(cfe: &ContinuedFractionExpansion, k0: usize) -> Result<BigRational> {
    let big_k = cfe.last_index();
    if big_k < k0 + 2 {
        return Err(Error::InsufficientTerms {
            needed: k0 + 3,
            got: cfe.len(),
        });
    }
    let mut best: Option<BigRational> = None;
    for k in k0..big_k {
        if cfe.q[k] <= BigInt::one() {
            continue;
        }
        let lk = log2_floor(cfe.q[k].magnitude());
        let lk1 = log2_floor(cfe.q[k + 1].magnitude());
        let v = BigRational::one() + floor_to_bits(&(lk1 / lk), LOG_FRACTION_BITS);
        if best.as_ref().map_or(true, |b| &v > b) {
            best = Some(v);
        }
    }
    best.ok_or(Error::InsufficientTerms {
        needed: k0 + 3,
        got: cfe.len(),
    })
}

/// Outcome of the Legendre criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Legendre {
    Yes,
    No,
    Undecided,
}

/// Target of [`is_convergent_legendre`].
pub enum LegendreTarget<'a> {
    Algebraic(&'a AlgebraicReal),
    Interval(&'a RationalInterval),
}

/// `Yes` when `|x - p/q| < 1/(2 q^2)` is certified, `No` when
/// `|x - p/q| >= 1/q^2` is certified, `Undecided` otherwise.
pub fn is_convergent_legendre(p: &BigInt, q: &BigInt, x: LegendreTarget<'_>) -> Result<Legendre> {
    if !q.is_positive() {
        return Err(Error::InvalidInput("q must be positive".into()));
    }
    let c = BigRational::new(p.clone(), q.clone());
    let q2 = BigRational::from_integer(q * q);
    let near = (BigRational::one() / (&q2 * BigInt::from(2))).clone();
    let far = BigRational::one() / &q2;
    let (near_lo, near_hi) = (&c - &near, &c + &near);
    let (far_lo, far_hi) = (&c - &far, &c + &far);
    Ok(match x {
        LegendreTarget::Algebraic(x) => {
            if x.cmp_rational(&near_lo) == Ordering::Greater && x.cmp_rational(&near_hi) == Ordering::Less {
                Legendre::Yes
            } else if x.cmp_rational(&far_lo) != Ordering::Greater
                || x.cmp_rational(&far_hi) != Ordering::Less
            {
                Legendre::No
            } else {
                Legendre::Undecided
            }
        }
        LegendreTarget::Interval(iv) => {
            if cmp_q(iv.lo(), &near_lo) == Ordering::Greater && cmp_q(iv.hi(), &near_hi) == Ordering::Less {
                Legendre::Yes
            } else if cmp_q(iv.hi(), &far_lo) != Ordering::Greater || cmp_q(iv.lo(), &far_hi) != Ordering::Less {
                Legendre::No
            } else {
                Legendre::Undecided
            }
        }
    })
}

/// Decides whether `p/q` is a convergent of `x` by expanding until the
/// denominators pass `q`.
pub fn is_convergent_by_expansion(p: &BigInt, q: &BigInt, x: &AlgebraicReal) -> Result<bool> {
    let mut terms = 16;
    loop {
        let cfe = expand(x, terms)?;
        if let Some(k) = cfe.q.iter().position(|qk| qk >= q) {
            // q_0 = q_1 = 1 is possible, so check every index with this q.
            return Ok(cfe.q[k..]
                .iter()
                .zip(&cfe.p[k..])
                .take_while(|(qk, _)| *qk == q)
                .any(|(_, pk)| pk == p));
        }
        terms *= 2;
    }
}
