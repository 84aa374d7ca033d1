//! Resultants over integral domains, used for eliminating one variable from
//! a pair of bivariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::IntPolynomial;

/// Integral domain with exact division.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; panics if `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

impl Ring for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        IntPolynomial::div_exact(self, other).expect("inexact polynomial division")
    }
}

fn trim<R: Ring>(mut v: Vec<R>) -> Vec<R> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn pseudo_rem<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.to_vec();
    }
    let delta = a.len() - b.len();
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lr.mul(bc));
        }
        steps += 1;
        r = trim(r);
    }
    let factor = lb.pow(delta + 1 - steps);
    r.into_iter().map(|c| c.mul(&factor)).collect()
}

/// Resultant of two polynomials given by coefficient vectors (constant term
/// first), computed with the subresultant pseudo-remainder sequence.
pub fn resultant<R: Ring>(a: &[R], b: &[R]) -> R {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let mut negate = false;
    if a.len() < b.len() {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if (m * n) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = R::one();
    let mut h = R::one();
    while b.len() > 1 {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return R::zero();
        }
        let denom = g.mul(&h.pow(delta));
        a = b;
        b = r.into_iter().map(|c| c.div_exact(&denom)).collect();
        g = a[a.len() - 1].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1))
        };
    }
    let da = a.len() - 1;
    let lb = &b[0];
    let res = if da == 0 {
        R::one()
    } else {
        lb.pow(da).div_exact(&h.pow(da - 1))
    };
    if negate {
        res.neg()
    } else {
        res
    }
}

/// Resultant of two integer polynomials.
pub fn resultant_int(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    resultant(a.coeffs(), b.coeffs())
}

/// Lifts `f(y)` to a polynomial in `y` with constant coefficients in `Z[x]`.
fn lift_constant(f: &IntPolynomial) -> Vec<IntPolynomial> {
    f.coeffs()
        .iter()
        .map(|c| IntPolynomial::constant(c.clone()))
        .collect()
}

/// `Res_y(f(y), f(x y))`, whose roots are the ratios of roots of `f`.
pub fn ratio_resultant(f: &IntPolynomial) -> IntPolynomial {
    let scaled: Vec<IntPolynomial> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| IntPolynomial::monomial(c.clone(), i))
        .collect();
    resultant(&lift_constant(f), &scaled)
}

/// `Res_y(f(y), y^t f(x / y))` with `t = deg f`, whose roots are the products
/// of pairs of roots of `f`.
pub fn product_resultant(f: &IntPolynomial) -> IntPolynomial {
    let t = f.degree();
    let mut coeffs = vec![IntPolynomial::zero(); t + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        coeffs[t - i] = IntPolynomial::monomial(c.clone(), i);
    }
    resultant(&lift_constant(f), &coeffs)
}

/// `Res_y(f(y), x - y^l)`, whose roots are the `l`-th powers of roots of `f`.
pub fn power_resultant(f: &IntPolynomial, l: usize) -> IntPolynomial {
    assert!(l >= 1);
    let mut coeffs = vec![IntPolynomial::zero(); l + 1];
    coeffs[0] = IntPolynomial::from_i64(&[0, 1]);
    coeffs[l] = IntPolynomial::from_i64(&[-1]);
    resultant(&lift_constant(f), &coeffs)
}
