//! Real algebraic numbers given by an integer polynomial and an isolating
//! interval, with exact comparisons and certified nearest-integer distances.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::numeric::{cmp_q, exponent_parts, fmt_rational, pow_u};
use crate::poly::{find_rational_root, IntPolynomial, SturmChain};

/// First rung of the precision ladder, in bits.
pub const DEFAULT_START_BITS: u64 = 128;
/// Default precision cap, in bits.
pub const DEFAULT_CAP_BITS: u64 = 1 << 20;

/// Below this many bits the floor of `x * 2^bits` is found by bisection; above
/// it by Newton steps from half the precision.
const BISECTION_BITS: u64 = 64;

/// An exact real algebraic number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    minpoly: IntPolynomial,
    isolator: RationalInterval,
    /// Sign of the polynomial at `isolator.lo` (`Equal` only in degree one).
    sign_lo: Ordering,
    trusted_irreducible: bool,
}

/// Builds an [`AlgebraicReal`] from coefficients (constant term first) and an
/// interval that must contain exactly one real root.
pub fn make_algebraic(coeffs: &[BigInt], isolator: RationalInterval) -> Result<AlgebraicReal> {
    let raw = IntPolynomial::new(coeffs.to_vec());
    if raw.is_zero() {
        return Err(Error::InvalidInput("polynomial is zero".into()));
    }
    if raw.degree() == 0 {
        return Err(Error::InvalidInput("polynomial is constant".into()));
    }
    let f = raw.primitive_part();
    if !f.is_squarefree() {
        return Err(Error::ReduciblePolynomial(format!("{f} is not squarefree")));
    }
    let d = f.degree();
    if d >= 2 {
        if let Some(r) = find_rational_root(&f) {
            return Err(Error::ReduciblePolynomial(format!(
                "{f} has the rational root {}",
                fmt_rational(&r)
            )));
        }
    }
    let sturm = SturmChain::new(&f);
    let at_lo = usize::from(f.sign_at(isolator.lo()) == Ordering::Equal);
    let count = sturm.count_in(isolator.lo(), isolator.hi()) + at_lo;
    match count {
        0 => return Err(Error::NoRootInInterval),
        1 => {}
        n => return Err(Error::MultipleRootsInInterval(n)),
    }
    let sign_lo = f.sign_at(isolator.lo());
    Ok(AlgebraicReal {
        minpoly: f,
        isolator,
        sign_lo,
        trusted_irreducible: d >= 4,
    })
}

/// Convenience wrapper over [`make_algebraic`] for small coefficients and
/// integer isolator ends.
pub fn make_algebraic_i64(coeffs: &[i64], lo: i64, hi: i64) -> Result<AlgebraicReal> {
    let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
    make_algebraic(&c, RationalInterval::from_ints(lo, hi)?)
}

/// Threshold for [`nearest_distance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Rational(BigRational),
    /// `base^(-exponent)` with `base >= 1` and a positive rational exponent.
    NegPower { base: BigUint, exponent: BigRational },
}

impl Threshold {
    /// Is `v < threshold`?
    pub fn exceeds(&self, v: &BigRational) -> Result<bool> {
        match self {
            Threshold::Rational(t) => Ok(cmp_q(v, t) == Ordering::Less),
            Threshold::NegPower { base, exponent } => {
                if !v.is_positive() {
                    return Ok(true);
                }
                // v < base^(-n/d)  <=>  num^d * base^n < den^d
                let (n, d) = exponent_parts(exponent)?;
                let num = v.numer().magnitude();
                let den = v.denom().magnitude();
                Ok(pow_u(num, d) * pow_u(base, n) < pow_u(den, d))
            }
        }
    }

    /// Is `v > threshold`?
    pub fn is_below(&self, v: &BigRational) -> Result<bool> {
        match self {
            Threshold::Rational(t) => Ok(cmp_q(v, t) == Ordering::Greater),
            Threshold::NegPower { base, exponent } => {
                if !v.is_positive() {
                    return Ok(false);
                }
                let (n, d) = exponent_parts(exponent)?;
                let num = v.numer().magnitude();
                let den = v.denom().magnitude();
                Ok(pow_u(num, d) * pow_u(base, n) > pow_u(den, d))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceVerdict {
    Less,
    Greater,
    Undecided,
}

/// Enclosure of `||M x||` and its verdict against a threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedDistance {
    pub enclosure: RationalInterval,
    pub verdict: DistanceVerdict,
    pub precision_bits: u64,
}

impl AlgebraicReal {
    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn isolator(&self) -> &RationalInterval {
        &self.isolator
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn trusted_irreducible(&self) -> bool {
        self.trusted_irreducible
    }

    /// The exact value when the degree is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.degree() == 1 {
            let c = self.minpoly.coeffs();
            Some(BigRational::new(-c[0].clone(), c[1].clone()))
        } else {
            None
        }
    }

    /// Compares `self` with a rational exactly.
    pub fn cmp_rational(&self, g: &BigRational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return cmp_q(&r, g);
        }
        if g <= self.isolator.lo() {
            return Ordering::Greater;
        }
        if g >= self.isolator.hi() {
            return Ordering::Less;
        }
        // No rational roots, so the sign at g is nonzero; the root lies on
        // the side where the sign differs from the sign at lo.
        if self.minpoly.sign_at(g) == self.sign_lo {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// `m / 2^bits <= self`
    fn dyadic_le(&self, m: &BigInt, bits: u64) -> bool {
        let r = BigRational::new(m.clone(), BigInt::one() << bits);
        if &r <= self.isolator.lo() {
            return true;
        }
        if &r >= self.isolator.hi() {
            return false;
        }
        self.minpoly.sign_at_dyadic(m, bits) == self.sign_lo
    }

    /// Largest `m` in `[a, c)` with `m / 2^bits <= self`, given that `a`
    /// satisfies the test and `c` does not.
    fn bisect(&self, mut a: BigInt, mut c: BigInt, bits: u64) -> BigInt {
        while &c - &a > BigInt::one() {
            let mid: BigInt = (&a + &c) >> 1u32;
            if self.dyadic_le(&mid, bits) {
                a = mid;
            } else {
                c = mid;
            }
        }
        a
    }

    /// Exact `floor(self * 2^bits)`.
    pub fn floor_scaled(&self, bits: u64) -> BigInt {
        if let Some(r) = self.as_rational() {
            let scaled = r * BigRational::from_integer(BigInt::one() << bits);
            return scaled.floor().to_integer();
        }
        let mut schedule = vec![bits];
        while *schedule.last().unwrap() > BISECTION_BITS {
            let b = *schedule.last().unwrap();
            schedule.push(b / 2 + 4);
        }
        schedule.reverse();

        let base = schedule[0];
        let scale = BigRational::from_integer(BigInt::one() << base);
        let a = (self.isolator.lo() * &scale).floor().to_integer();
        let c = (self.isolator.hi() * &scale).ceil().to_integer();
        let c = if c == a { a.clone() + 1 } else { c };
        let mut m = self.bisect(a, c, base);

        let deriv = self.minpoly.derivative();
        for w in schedule.windows(2) {
            let (h, b) = (w[0], w[1]);
            let shift = b - h;
            let floor_b = &m << shift;
            let ceil_b = (&m + 1) << shift;
            // Newton step from the midpoint of the known cell.
            let mut x: BigInt = ((&m << 1u32) + 1) << (shift - 1);
            let fx = self.minpoly.eval_dyadic(&x, b);
            let dfx = deriv.eval_dyadic(&x, b);
            if !dfx.is_zero() {
                x -= fx.div_floor(&dfx);
            }
            if x < floor_b {
                x = floor_b.clone();
            }
            if x >= ceil_b {
                x = &ceil_b - 1;
            }
            m = self.gallop(x, b);
        }
        m
    }

    /// Finds the exact floor near a guess by doubling steps then bisection.
    fn gallop(&self, x: BigInt, bits: u64) -> BigInt {
        let mut step = BigInt::one();
        if self.dyadic_le(&x, bits) {
            let mut a = x;
            loop {
                let c = &a + &step;
                if !self.dyadic_le(&c, bits) {
                    return self.bisect(a, c, bits);
                }
                a = c;
                step <<= 1u32;
            }
        } else {
            let mut c = x;
            loop {
                let a = &c - &step;
                if self.dyadic_le(&a, bits) {
                    return self.bisect(a, c, bits);
                }
                c = a;
                step <<= 1u32;
            }
        }
    }

    /// The cell `[m / 2^bits, (m+1) / 2^bits]` with `m = floor(self * 2^bits)`.
    ///
    /// Cells for increasing `bits` are nested, and the result depends only on
    /// the number and `bits`.
    pub fn refine(&self, bits: u64) -> RationalInterval {
        RationalInterval::dyadic_cell(&self.floor_scaled(bits), bits)
    }

    /// Exact floor.
    pub fn floor_of(&self) -> BigInt {
        self.floor_scaled(0)
    }

    /// Exact `floor(a * self + c)`.
    pub fn floor_affine(&self, a: &BigRational, c: &BigRational) -> BigInt {
        if a.is_zero() {
            return c.floor().to_integer();
        }
        let bits = a.numer().bits() + 2;
        let enc = self.refine(bits).affine(a, c);
        let mut n = enc.lo().floor().to_integer();
        let top = enc.hi().floor().to_integer();
        // n <= a x + c holds for the lowest candidate; advance while the next
        // integer still does.
        while n < top {
            let next: BigInt = &n + 1;
            let g = (BigRational::from_integer(next.clone()) - c) / a;
            let ok = match self.cmp_rational(&g) {
                Ordering::Equal => true,
                Ordering::Greater => a.is_positive(),
                Ordering::Less => a.is_negative(),
            };
            if !ok {
                break;
            }
            n = next;
        }
        n
    }

    /// Enclosure of `||m * self||` of width at most about `2^-bits`.
    pub fn distance_enclosure(&self, m: &BigInt, bits: u64) -> RationalInterval {
        let extra = m.bits();
        let cell = self.refine(bits + extra);
        let scaled = cell.affine(&BigRational::from_integer(m.clone()), &BigRational::zero());
        let nearest = scaled.midpoint().round();
        let shifted = scaled.affine(&BigRational::one(), &-nearest);
        let e = shifted.abs();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut lo = e.lo().clone();
        let mut hi = e.hi().clone();
        if hi > half {
            let wrap = BigRational::one() - &hi;
            if wrap < lo {
                lo = wrap;
            }
            hi = half;
        }
        if lo.is_negative() {
            lo = BigRational::zero();
        }
        RationalInterval::new(lo, hi).expect("ordered enclosure")
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.refine(64).midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// Certified `||m x||` against a threshold, refining along the precision
/// ladder up to `bits_cap`.
pub fn nearest_distance(
    m: &BigInt,
    x: &AlgebraicReal,
    threshold: &Threshold,
    bits_cap: u64,
) -> Result<CertifiedDistance> {
    if m.is_zero() {
        return Err(Error::InvalidInput("multiplier must be nonzero".into()));
    }
    let mut bits = DEFAULT_START_BITS.min(bits_cap);
    loop {
        let enclosure = x.distance_enclosure(m, bits);
        let verdict = if threshold.exceeds(enclosure.hi())? {
            DistanceVerdict::Less
        } else if threshold.is_below(enclosure.lo())? {
            DistanceVerdict::Greater
        } else {
            DistanceVerdict::Undecided
        };
        if verdict != DistanceVerdict::Undecided || bits >= bits_cap {
            return Ok(CertifiedDistance {
                enclosure,
                verdict,
                precision_bits: bits,
            });
        }
        bits = (bits * 2).min(bits_cap);
    }
}

/// Power sums `u_n` of the complex roots of a monic integer polynomial for
/// `n = 0..=count`, by Newton's identities.
pub fn trace_power_sums(f: &IntPolynomial, count: usize) -> Result<Vec<BigInt>> {
    if !f.is_monic() || f.degree() == 0 {
        return Err(Error::InvalidInput(format!("{f} is not a monic nonconstant polynomial")));
    }
    let t = f.degree();
    // e[j] is the coefficient of x^(t-j)
    let e: Vec<BigInt> = (0..=t).map(|j| f.coeff(t - j)).collect();
    let mut u = Vec::with_capacity(count + 1);
    u.push(BigInt::from(t));
    for k in 1..=count {
        let mut s = BigInt::zero();
        for j in 1..=k.min(t) {
            s += &e[j] * &u[k - j];
        }
        if k <= t {
            // p_k + e_1 p_{k-1} + ... + e_{k-1} p_1 + k e_k = 0, where the sum
            // above used p_0 = t for the j = k term.
            s -= &e[k] * BigInt::from(t);
            s += &e[k] * BigInt::from(k);
        }
        u.push(-s);
    }
    Ok(u)
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRepr {
    minpoly: IntPolynomial,
    isolator: RationalInterval,
    degree: usize,
    trusted_irreducible: bool,
}

impl Serialize for AlgebraicReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraicRepr {
            minpoly: self.minpoly.clone(),
            isolator: self.isolator.clone(),
            degree: self.degree(),
            trusted_irreducible: self.trusted_irreducible,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraicRepr::deserialize(d)?;
        make_algebraic(repr.minpoly.coeffs(), repr.isolator).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cbrt2() -> AlgebraicReal {
        make_algebraic_i64(&[-2, 0, 0, 1], 1, 2).unwrap()
    }

    fn sqrt2() -> AlgebraicReal {
        make_algebraic_i64(&[-2, 0, 1], 1, 2).unwrap()
    }

    fn phi() -> AlgebraicReal {
        make_algebraic_i64(&[-1, -1, 1], 1, 2).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn construction_and_errors() {
        assert_eq!(cbrt2().degree(), 3);
        assert_eq!(phi().degree(), 2);
        assert!(matches!(
            make_algebraic_i64(&[-4, 0, 1], 0, 5),
            Err(Error::ReduciblePolynomial(_))
        ));
        assert!(matches!(
            make_algebraic_i64(&[1, -2, 1], 0, 5),
            Err(Error::ReduciblePolynomial(_))
        ));
        assert_eq!(
            make_algebraic_i64(&[-2, 0, 1], 2, 3).unwrap_err(),
            Error::NoRootInInterval
        );
        assert_eq!(
            make_algebraic_i64(&[-2, 0, 1], -2, 2).unwrap_err(),
            Error::MultipleRootsInInterval(2)
        );
        // content and sign normalized
        let x = make_algebraic_i64(&[4, 0, -2], 1, 2).unwrap();
        assert_eq!(x.minpoly(), &IntPolynomial::from_i64(&[-2, 0, 1]));
        assert!(!x.trusted_irreducible());
        let quartic = make_algebraic_i64(&[-2, 0, 0, 0, 1], 1, 2).unwrap();
        assert!(quartic.trusted_irreducible());
    }

    #[test]
    fn floors() {
        assert_eq!(cbrt2().floor_of(), BigInt::from(1));
        assert_eq!(phi().floor_of(), BigInt::from(1));
        assert_eq!(sqrt2().floor_of(), BigInt::from(1));
        let neg = make_algebraic_i64(&[-2, 0, 1], -2, -1).unwrap();
        assert_eq!(neg.floor_of(), BigInt::from(-2));
        // floor(10 sqrt2 - 3) = 11
        assert_eq!(sqrt2().floor_affine(&rat(10, 1), &rat(-3, 1)), BigInt::from(11));
        // floor(-sqrt2) = -2
        assert_eq!(sqrt2().floor_affine(&rat(-1, 1), &rat(0, 1)), BigInt::from(-2));
        let half = make_algebraic_i64(&[-1, 2], 0, 1).unwrap();
        assert_eq!(half.floor_affine(&rat(2, 1), &rat(0, 1)), BigInt::from(1));
    }

    #[test]
    fn refine_matches_integer_cube_root() {
        for bits in [1u64, 10, 64, 65, 200, 1000, 4097] {
            let iv = cbrt2().refine(bits);
            assert!(iv.width_at_most_bits(bits));
            // oracle: floor(cbrt(2 * 2^(3 bits)))
            let oracle = (BigUint::from(2u32) << (3 * bits)).cbrt();
            assert_eq!(
                iv.lo(),
                &BigRational::new(BigInt::from(oracle), BigInt::one() << bits)
            );
        }
    }

    #[test]
    fn refine_200_bits_against_400_bit_newton() {
        // 400-bit Newton iteration for 2^(1/3) in fixed point, independent
        // of the dyadic search.
        let one = BigInt::one() << 400u32;
        let two = &one * 2;
        let mut y = BigInt::from(5) << 398u32; // 1.25
        for _ in 0..20 {
            // y <- (2y + 2 / y^2) / 3
            let y2 = (&y * &y) >> 400u32;
            let q = (&two << 400u32) / &y2;
            y = (&y * 2 + q) / 3;
        }
        let iv = cbrt2().refine(200);
        let mid = iv.midpoint();
        let oracle = BigRational::new(y, one);
        let err = (mid - oracle).abs();
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 199u32));
    }

    #[test]
    fn golden_ratio_ten_bits() {
        let iv = phi().refine(10);
        assert!(iv.width_at_most_bits(10));
        assert!(iv.contains(&rat(1657, 1024)));
    }

    #[test]
    fn nearest_distance_examples() {
        let d = nearest_distance(
            &BigInt::from(5),
            &sqrt2(),
            &Threshold::Rational(rat(1, 10)),
            DEFAULT_CAP_BITS,
        )
        .unwrap();
        assert_eq!(d.verdict, DistanceVerdict::Less);
        // oracle: |5 sqrt2 - 7| from a 500-bit integer square root
        let s = (BigUint::from(50u32) << 1000u32).sqrt();
        let v = BigRational::new(BigInt::from(s), BigInt::one() << 500u32) - rat(7, 1);
        assert!(d.enclosure.lo() - BigRational::new(1.into(), BigInt::one() << 400u32) <= v);
        assert!(d.enclosure.hi() + BigRational::new(1.into(), BigInt::one() << 400u32) >= v);
        assert!(d.enclosure.width_at_most_bits(d.precision_bits));

        let d = nearest_distance(
            &BigInt::one(),
            &cbrt2(),
            &Threshold::Rational(rat(1, 2)),
            DEFAULT_CAP_BITS,
        )
        .unwrap();
        assert_eq!(d.verdict, DistanceVerdict::Less);
        let c = (BigUint::from(2u32) << 1500u32).cbrt();
        let v = BigRational::new(BigInt::from(c), BigInt::one() << 500u32) - rat(1, 1);
        assert!((d.enclosure.midpoint() - v).abs() < rat(1, 1 << 40));
    }

    #[test]
    fn neg_power_threshold() {
        // ||2 * sqrt2|| = 3 - 2 sqrt2 ~ 0.1716 vs 2^(-1/2) ~ 0.707 and 2^-3
        let t = Threshold::NegPower { base: BigUint::from(2u32), exponent: rat(1, 2) };
        let d = nearest_distance(&BigInt::from(2), &sqrt2(), &t, 1 << 12).unwrap();
        assert_eq!(d.verdict, DistanceVerdict::Less);
        let t = Threshold::NegPower { base: BigUint::from(2u32), exponent: rat(3, 1) };
        let d = nearest_distance(&BigInt::from(2), &sqrt2(), &t, 1 << 12).unwrap();
        assert_eq!(d.verdict, DistanceVerdict::Greater);
    }

    #[test]
    fn distance_near_one_half() {
        let x = make_algebraic_i64(&[-1, 0, 2], 0, 1).unwrap(); // 1/sqrt2
        for m in 1..50 {
            let e = x.distance_enclosure(&BigInt::from(m), 64);
            assert!(e.hi() <= &rat(1, 2));
            assert!(!e.lo().is_negative());
        }
    }

    #[test]
    fn trace_sums_examples() {
        let f = IntPolynomial::from_i64(&[-1, -1, 0, 1]);
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(trace_power_sums(&f, 5).unwrap(), ints(&[3, 0, 2, 3, 2, 5]));
        let g = IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(trace_power_sums(&g, 3).unwrap(), ints(&[1, 1, 1, 1]));
        let h = IntPolynomial::from_i64(&[-1, -1, 1]);
        assert_eq!(trace_power_sums(&h, 4).unwrap(), ints(&[2, 1, 3, 4, 7]));
        assert!(trace_power_sums(&IntPolynomial::from_i64(&[1, 2]), 3).is_err());
    }

    #[test]
    fn trace_sums_satisfy_recurrence() {
        for coeffs in [
            vec![-1, -1, 0, 1],
            vec![-1, 0, -1, 1],
            vec![3, -2, 5, 1, 1],
            vec![-7, 1],
        ] {
            let f = IntPolynomial::from_i64(&coeffs);
            let t = f.degree();
            let u = trace_power_sums(&f, 200 + t).unwrap();
            for n in 0..=200 {
                // u_{n+t} = -(a_{t-1} u_{n+t-1} + ... + a_0 u_n)
                let mut s = BigInt::zero();
                for i in 0..t {
                    s -= f.coeff(i) * &u[n + i];
                }
                assert_eq!(u[n + t], s);
            }
        }
    }

    #[test]
    fn comparison_with_rationals() {
        let x = sqrt2();
        assert_eq!(x.cmp_rational(&rat(7, 5)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&rat(3, 2)), Ordering::Less);
        assert_eq!(x.cmp_rational(&rat(0, 1)), Ordering::Greater);
        assert_eq!(x.cmp_rational(&rat(5, 1)), Ordering::Less);
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&cbrt2()).unwrap();
        let back: AlgebraicReal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cbrt2());
        let bad = s.replace(r#""lo":"1/1""#, r#""lo":"2/1""#);
        assert!(serde_json::from_str::<AlgebraicReal>(&bad).is_err());
    }

    proptest! {
        #[test]
        fn refinement_is_nested(b in 1u64..300) {
            for x in [cbrt2(), phi(), sqrt2()] {
                let outer = x.refine(b);
                let inner = x.refine(b + 1);
                prop_assert!(outer.contains_interval(&inner));
            }
        }

        #[test]
        fn floor_certified_by_enclosure(n in 2i64..200) {
            // root of x^2 - n (n not a square) in [0, n]
            let r = (n as f64).sqrt();
            prop_assume!(r.fract() != 0.0);
            let x = make_algebraic_i64(&[-n, 0, 1], 0, n).unwrap();
            let fl = x.floor_of();
            let iv = x.refine(32);
            prop_assert!(BigRational::from_integer(fl.clone()) <= *iv.lo());
            prop_assert!(*iv.hi() <= BigRational::from_integer(fl + 1));
        }

        #[test]
        fn verdicts_stable_under_cap_doubling(m in 1i64..10_000, t in 1i64..1000) {
            let th = Threshold::Rational(rat(t, 1000));
            let a = nearest_distance(&BigInt::from(m), &cbrt2(), &th, 128).unwrap();
            let b = nearest_distance(&BigInt::from(m), &cbrt2(), &th, 256).unwrap();
            if a.verdict != DistanceVerdict::Undecided {
                prop_assert_eq!(a.verdict, b.verdict);
            }
        }
    }
}
