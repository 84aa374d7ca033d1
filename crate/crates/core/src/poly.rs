//! Dense univariate polynomials over the integers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;

/// Integer polynomial, coefficients stored constant term first.
///
/// The zero polynomial has an empty coefficient vector; every other value has
/// a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `den^deg * p(num/den)` for `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let d = self.degree();
        let mut den_pows = Vec::with_capacity(d + 1);
        den_pows.push(BigInt::one());
        for i in 1..=d {
            let next = &den_pows[i - 1] * den;
            den_pows.push(next);
        }
        let mut acc = self.leading();
        for i in (0..d).rev() {
            acc = acc * num + &self.coeffs[i] * &den_pows[d - i];
        }
        acc
    }

    /// `2^(bits*deg) * p(m / 2^bits)`.
    pub fn eval_dyadic(&self, m: &BigInt, bits: u64) -> BigInt {
        let d = self.degree();
        let mut acc = self.leading();
        for i in (0..d).rev() {
            acc = acc * m + (&self.coeffs[i] << (bits * (d - i) as u64));
        }
        acc
    }

    /// Sign of `p(r)`.
    pub fn sign_at(&self, r: &BigRational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        self.eval_homogeneous(r.numer(), r.denom()).cmp(&BigInt::zero())
    }

    pub fn sign_at_dyadic(&self, m: &BigInt, bits: u64) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        self.eval_dyadic(m, bits).cmp(&BigInt::zero())
    }

    /// Sign of the leading coefficient (value at `+inf`).
    fn sign_at_pos_inf(&self) -> Ordering {
        self.leading().cmp(&BigInt::zero())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`
    pub fn inflate(&self, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut result = Self::one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPolynomial) -> Self {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return self.clone();
        }
        let delta = self.degree() - b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let db = b.degree();
        let mut steps = 0usize;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            let shift = dr - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &lr * bc;
            }
            steps += 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let missing = delta + 1 - steps;
        let factor = num_traits::pow(lb, missing);
        Self::new(r.into_iter().map(|c| c * &factor).collect())
    }

    /// Exact division over the integers, or `None` when it does not divide.
    pub fn div_exact(&self, b: &IntPolynomial) -> Option<Self> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < b.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let db = b.degree();
        let lb = b.leading();
        let mut q = vec![BigInt::zero(); self.degree() - db + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &qc * bc;
            }
            q[k] = qc;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() < 1 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides the polynomial")
            .primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() < 1 || self.gcd(&self.derivative()).is_constant()
    }

    /// Cauchy bound: every complex root has modulus below this integer.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.degree())
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        // 1 + max|c_i| / |c_d|, rounded up
        BigInt::one() + max.div_ceil(&lc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Sturm chain of a squarefree polynomial, each member scaled by a positive
/// constant to keep the coefficients integral.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree() >= 1 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let (a, b) = (&chain[n - 2], &chain[n - 1]);
                if b.is_constant() {
                    break;
                }
                let delta = a.degree() - b.degree();
                let prem = a.pseudo_rem(b);
                if prem.is_zero() {
                    break;
                }
                // rem = prem / lc(b)^(delta+1); the next member is -rem up to a
                // positive factor.
                let flip = b.leading().is_negative() && (delta + 1) % 2 == 1;
                let next = if flip { prem } else { -&prem };
                let c = next.content();
                let next = IntPolynomial::new(next.coeffs.iter().map(|x| x / &c).collect());
                chain.push(next);
            }
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_pos_inf()))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// One isolated real root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootBracket {
    /// The root is this rational.
    Exact(BigRational),
    /// The unique root in `[lo, hi]`; the polynomial is nonzero at both ends
    /// with opposite signs.
    Open(RationalInterval),
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Moves the left end of `(a, b]` just past a root at `a`, keeping the single
/// root of `(a, b]` inside.
fn nudge_left_end(
    p: &IntPolynomial,
    sturm: &SturmChain,
    a: &BigRational,
    b: &BigRational,
) -> BigRational {
    let mut step = (b - a) * half();
    loop {
        let cand = a + &step;
        if p.sign_at(&cand) != Ordering::Equal && sturm.count_in(&cand, b) == 1 {
            return cand;
        }
        step = step * half();
    }
}

fn bracket(p: &IntPolynomial, sturm: &SturmChain, a: &BigRational, b: &BigRational) -> RootBracket {
    if p.sign_at(b) == Ordering::Equal {
        return RootBracket::Exact(b.clone());
    }
    let lo = if p.sign_at(a) == Ordering::Equal {
        nudge_left_end(p, sturm, a, b)
    } else {
        a.clone()
    };
    RootBracket::Open(RationalInterval::new(lo, b.clone()).expect("ordered"))
}

/// Isolates all real roots of `p` (made squarefree first), in increasing order.
pub fn isolate_real_roots(p: &IntPolynomial) -> Vec<RootBracket> {
    let sq = p.squarefree_part();
    if sq.degree() < 1 {
        return Vec::new();
    }
    let sturm = SturmChain::new(&sq);
    let bound = BigRational::from_integer(sq.root_bound());
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match sturm.count_in(&a, &b) {
            0 => {}
            1 => out.push(bracket(&sq, &sturm, &a, &b)),
            _ => {
                let mid = (&a + &b) * half();
                // Upper half first so the stack yields increasing order.
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out
}

/// Isolates the largest real root of `p`, if any.
pub fn isolate_largest_real_root(p: &IntPolynomial) -> Option<RootBracket> {
    let sq = p.squarefree_part();
    if sq.degree() < 1 {
        return None;
    }
    let sturm = SturmChain::new(&sq);
    let bound = BigRational::from_integer(sq.root_bound());
    let mut lo = -bound.clone();
    let hi = bound;
    if sturm.count_in(&lo, &hi) == 0 {
        return None;
    }
    loop {
        let n = sturm.count_in(&lo, &hi);
        if n == 1 {
            return Some(bracket(&sq, &sturm, &lo, &hi));
        }
        let mid = (&lo + &hi) * half();
        if sturm.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            // All remaining roots sit in (lo, mid]; shrink from the top.
            return isolate_largest_in(&sq, &sturm, lo, mid);
        }
    }
}

fn isolate_largest_in(
    sq: &IntPolynomial,
    sturm: &SturmChain,
    mut lo: BigRational,
    mut hi: BigRational,
) -> Option<RootBracket> {
    loop {
        let n = sturm.count_in(&lo, &hi);
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some(bracket(sq, sturm, &lo, &hi));
        }
        let mid = (&lo + &hi) * half();
        if sturm.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Returns a rational root of `p` when one exists.
///
/// A rational root `r` of an integer polynomial with leading coefficient `c`
/// makes `c*r` an integer, so each real root is refined until its bracket
/// scaled by `c` has width below one and the single candidate is tested.
pub fn find_rational_root(p: &IntPolynomial) -> Option<BigRational> {
    if p.degree() < 1 {
        return None;
    }
    if p.coeffs[0].is_zero() {
        return Some(BigRational::zero());
    }
    let lc = BigRational::from_integer(p.leading().abs());
    let sq = p.squarefree_part();
    for b in isolate_real_roots(&sq) {
        match b {
            RootBracket::Exact(r) => return Some(r),
            RootBracket::Open(iv) => {
                let mut lo = iv.lo().clone();
                let mut hi = iv.hi().clone();
                let s_lo = sq.sign_at(&lo);
                while (&hi - &lo) * &lc >= BigRational::one() {
                    let mid = (&lo + &hi) * half();
                    match sq.sign_at(&mid) {
                        Ordering::Equal => return Some(mid),
                        s if s == s_lo => lo = mid,
                        _ => hi = mid,
                    }
                }
                // candidates n / lc with lc*lo < n < lc*hi
                let scaled_lo = &lo * &lc;
                let n = scaled_lo.floor().to_integer() + 1;
                let cand = BigRational::new(n, lc.to_integer());
                if cand < hi && sq.sign_at(&cand) == Ordering::Equal {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Discriminant sign helper for cubics `x^3 + a x^2 + b x + c` (monic).
pub fn cubic_discriminant(p: &IntPolynomial) -> Result<BigInt> {
    if p.degree() != 3 || !p.is_monic() {
        return Err(Error::InvalidInput(format!("{p} is not a monic cubic")));
    }
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let eighteen = BigInt::from(18);
    let four = BigInt::from(4);
    let tw7 = BigInt::from(27);
    Ok(&eighteen * &a * &b * &c - &four * &a * &a * &a * &c + &a * &a * &b * &b
        - &four * &b * &b * &b
        - &tw7 * &c * &c)
}

/// Sign of a big integer as an `i8`.
pub fn sign_i8(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-4, 0, 1]); // x^2 - 4
        let b = p(&[-2, 1]); // x - 2
        assert_eq!(a.div_exact(&b), Some(p(&[2, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(&b * &p(&[2, 1]), a);
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(a.eval(&BigInt::from(3)), BigInt::from(5));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = &p(&[-1, 1]).pow(2) * &p(&[-4, 0, 1]); // (x-1)^2 (x^2-4)
        assert_eq!(a.squarefree_part(), &p(&[-1, 1]) * &p(&[-4, 0, 1]));
        assert!(!a.is_squarefree());
        assert_eq!(a.gcd(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(p(&[6, 4]).primitive_part(), p(&[3, 2]));
        assert_eq!(p(&[-6, -4]).primitive_part(), p(&[3, 2]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 0, 2]);
        let r = a.pseudo_rem(&b);
        // lc(b)^2 * a - r is divisible by b
        let lhs = &a.scale(&BigInt::from(4)) - &r;
        assert!(lhs.div_exact(&b).is_some());
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn sturm_counts_roots() {
        let f = p(&[-2, 0, 0, 1]); // x^3 - 2, one real root
        let s = SturmChain::new(&f);
        let r = |n| BigRational::from_integer(BigInt::from(n));
        assert_eq!(s.count_in(&r(-10), &r(10)), 1);
        assert_eq!(s.count_in(&r(1), &r(2)), 1);
        assert_eq!(s.count_in(&r(2), &r(3)), 0);
        let g = p(&[0, -1, 0, 1]); // x^3 - x: roots -1, 0, 1
        let s = SturmChain::new(&g);
        assert_eq!(s.count_in(&r(-2), &r(2)), 3);
        assert_eq!(s.count_above(&r(0)), 1);
    }

    #[test]
    fn isolation_finds_all_roots_in_order() {
        let g = &(&p(&[-1, 1]) * &p(&[1, 1])) * &p(&[-2, 0, 1]); // (x-1)(x+1)(x^2-2)
        let roots = isolate_real_roots(&g);
        assert_eq!(roots.len(), 4);
        let approx: Vec<f64> = roots
            .iter()
            .map(|b| match b {
                RootBracket::Exact(r) => num_traits::ToPrimitive::to_f64(r).unwrap(),
                RootBracket::Open(iv) => num_traits::ToPrimitive::to_f64(&iv.midpoint()).unwrap(),
            })
            .collect();
        for w in approx.windows(2) {
            assert!(w[0] < w[1]);
        }
        for b in &roots {
            if let RootBracket::Open(iv) = b {
                assert_ne!(g.sign_at(iv.lo()), g.sign_at(iv.hi()));
                assert_ne!(g.sign_at(iv.lo()), Ordering::Equal);
            }
        }
    }

    #[test]
    fn rational_roots() {
        assert_eq!(
            find_rational_root(&p(&[-4, 0, 1])).map(|r| r.abs()),
            Some(BigRational::from_integer(2.into()))
        );
        assert_eq!(
            find_rational_root(&p(&[-1, 0, 4])).map(|r| r.abs()),
            Some(BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(find_rational_root(&p(&[-2, 0, 0, 1])), None);
        assert_eq!(find_rational_root(&p(&[-1, -1, 1])), None);
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        assert!(find_rational_root(&p(&[1, -5, 6])).is_some());
    }

    #[test]
    fn largest_root() {
        let g = &p(&[-4, 0, 1]) * &p(&[-9, 0, 1]); // roots ±2, ±3
        match isolate_largest_real_root(&g).unwrap() {
            RootBracket::Exact(r) => assert_eq!(r, BigRational::from_integer(3.into())),
            RootBracket::Open(iv) => assert!(iv.contains(&BigRational::from_integer(3.into()))),
        }
        assert!(isolate_largest_real_root(&p(&[1, 0, 1])).is_none());
    }

    #[test]
    fn discriminants() {
        assert_eq!(cubic_discriminant(&p(&[-1, -1, 0, 1])).unwrap(), BigInt::from(-23));
        assert_eq!(cubic_discriminant(&p(&[-1, 0, -1, 1])).unwrap(), BigInt::from(-31));
    }

    #[test]
    fn display_and_json() {
        let f = p(&[-1, -1, 1]);
        assert_eq!(f.to_string(), "x^2 - x - 1");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["-1","-1","1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), f);
    }
}
