//! Integer linear recurrences `u_{n+t} = c_1 u_{n+t-1} + ... + c_t u_n`,
//! indexed from `n = 1`.

pub mod cyclotomic;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::numeric::sqrt_enclosure;
use crate::poly::{isolate_largest_real_root, IntPolynomial, RootBracket};
use crate::resultant::{power_resultant, product_resultant, ratio_resultant};

use cyclotomic::{candidate_orders, cyclotomic, strip_cyclotomic};

/// Companion-form integer recurrence with initial terms `u_1..u_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RecurrenceRepr", into = "RecurrenceRepr")]
pub struct LinearRecurrence {
    coeffs: Vec<BigInt>,
    init: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RecurrenceRepr {
    #[serde(with = "crate::numeric::bigint_vec_string")]
    coeffs: Vec<BigInt>,
    #[serde(with = "crate::numeric::bigint_vec_string")]
    init: Vec<BigInt>,
}

impl TryFrom<RecurrenceRepr> for LinearRecurrence {
    type Error = Error;
    fn try_from(r: RecurrenceRepr) -> Result<Self> {
        LinearRecurrence::new(r.coeffs, r.init)
    }
}

impl From<LinearRecurrence> for RecurrenceRepr {
    fn from(r: LinearRecurrence) -> Self {
        RecurrenceRepr {
            coeffs: r.coeffs,
            init: r.init,
        }
    }
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<BigInt>, init: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("recurrence order must be at least 1".into()));
        }
        if coeffs.len() != init.len() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients but {} initial terms",
                coeffs.len(),
                init.len()
            )));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidInput("trailing coefficient c_t must be nonzero".into()));
        }
        Ok(LinearRecurrence { coeffs, init })
    }

    pub fn from_i64(coeffs: &[i64], init: &[i64]) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            init.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn init(&self) -> &[BigInt] {
        &self.init
    }

    /// `x^t - c_1 x^(t-1) - ... - c_t`.
    pub fn char_poly(&self) -> IntPolynomial {
        let mut c: Vec<BigInt> = self.coeffs.iter().rev().map(|x| -x).collect();
        c.push(BigInt::one());
        IntPolynomial::new(c)
    }

    /// `u_{n0}, ..., u_{n1}` by direct iteration.
    pub fn eval_range(&self, n0: usize, n1: usize) -> Result<Vec<BigInt>> {
        if n0 < 1 || n0 > n1 {
            return Err(Error::InvalidInput(format!("bad index range {n0}..{n1}")));
        }
        let t = self.order();
        let mut u: Vec<BigInt> = self.init.clone();
        while u.len() < n1 {
            let n = u.len();
            let mut next = BigInt::zero();
            for (j, c) in self.coeffs.iter().enumerate() {
                next += c * &u[n - 1 - j];
            }
            u.push(next);
        }
        u.truncate(n1.max(t));
        Ok(u[n0 - 1..n1].to_vec())
    }

    /// `u_n` by binary powering of the companion matrix.
    pub fn term_by_matrix(&self, n: usize) -> BigInt {
        assert!(n >= 1);
        let t = self.order();
        let mut companion = vec![vec![BigInt::zero(); t]; t];
        for i in 0..t - 1 {
            companion[i][i + 1] = BigInt::one();
        }
        for j in 0..t {
            companion[t - 1][j] = self.coeffs[t - 1 - j].clone();
        }
        let power = mat_pow(&companion, n - 1);
        let mut u = BigInt::zero();
        for j in 0..t {
            u += &power[0][j] * &self.init[j];
        }
        u
    }
}

type Matrix = Vec<Vec<BigInt>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

fn mat_pow(m: &Matrix, mut e: usize) -> Matrix {
    let n = m.len();
    let mut result = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

/// Solves a square rational system, or `None` when it is singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        b.swap(piv, col);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Minimal-order integer recurrence consistent with all supplied terms
/// (taken as `u_1, u_2, ...`).
///
/// Order `r` is tried only when at least `2r + 2` terms are available, so
/// that every candidate is checked on at least two terms beyond the ones
/// used to solve for it.
pub fn minimize(terms: &[BigInt]) -> Result<LinearRecurrence> {
    let n = terms.len();
    if n < 4 {
        return Err(Error::InsufficientTerms { needed: 4, got: n });
    }
    if terms.iter().all(Zero::is_zero) {
        return LinearRecurrence::new(vec![BigInt::one()], vec![BigInt::zero()]);
    }
    let max_order = (n - 2) / 2;
    let rat = |x: &BigInt| BigRational::from_integer(x.clone());
    for r in 1..=max_order {
        // sum_j c_j u[i + r - j] = u[i + r] for i = 0..r
        let a: Vec<Vec<BigRational>> = (0..r)
            .map(|i| (1..=r).map(|j| rat(&terms[i + r - j])).collect())
            .collect();
        let b: Vec<BigRational> = (0..r).map(|i| rat(&terms[i + r])).collect();
        let Some(c) = solve(a, b) else { continue };
        if !c.iter().all(|x| x.is_integer()) {
            continue;
        }
        let c: Vec<BigInt> = c.into_iter().map(|x| x.to_integer()).collect();
        if c[r - 1].is_zero() {
            continue;
        }
        let consistent = (r..n).all(|i| {
            let mut s = BigInt::zero();
            for j in 1..=r {
                s += &c[j - 1] * &terms[i - j];
            }
            s == terms[i]
        });
        if consistent {
            return LinearRecurrence::new(c, terms[..r].to_vec());
        }
    }
    Err(Error::NotARecurrence { max_order })
}

/// Minimal recurrence of the sequence generated by `rec`.
pub fn minimal_recurrence(rec: &LinearRecurrence) -> Result<LinearRecurrence> {
    let t = rec.order();
    let terms = rec.eval_range(1, 4 * t + 8)?;
    minimize(&terms)
}

/// `lcm` of the orders of all roots of unity among the ratios of distinct
/// roots of `f`.
pub fn unity_ratio_lcm(f: &IntPolynomial) -> Result<u64> {
    if f.coeff(0).is_zero() {
        return Err(Error::InvalidInput(format!("{f} has the root 0")));
    }
    let sq = f.squarefree_part();
    let d = sq.degree();
    if d <= 1 {
        return Ok(1);
    }
    let g = ratio_resultant(&sq);
    // the d diagonal ratios equal 1
    let h = g
        .div_exact(&IntPolynomial::from_i64(&[-1, 1]).pow(d))
        .expect("the diagonal ratios give (x - 1)^d");
    let mut l: u64 = 1;
    for m in candidate_orders(h.degree()) {
        if m == 1 {
            continue;
        }
        if !h.gcd(&cyclotomic(m)).is_constant() {
            l = l.lcm(&m);
        }
    }
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchTag {
    IdenticallyZero,
    NonDegenerate,
}

/// The subsequence `w_j = u_{start + (j-1) L}`, `j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// Residue of the indices modulo `L`.
    pub residue: usize,
    pub start: usize,
    pub step: usize,
    pub recurrence: LinearRecurrence,
    pub tag: BranchTag,
    /// Minimal characteristic polynomial is a power of `x - 1`.
    pub polynomial: bool,
    /// Non-degenerate with a characteristic root that is not a root of unity.
    pub admissible: bool,
}

/// Splits `rec` into the `L` arithmetic-progression subsequences.
pub fn decompose(rec: &LinearRecurrence) -> Result<Vec<Branch>> {
    let minimal = minimal_recurrence(rec)?;
    let f = minimal.char_poly();
    let l = unity_ratio_lcm(&f)? as usize;
    let f_l = power_resultant(&f, l).squarefree_part();
    let t = minimal.order();
    let count = 2 * t + 4;
    let values = rec.eval_range(1, l * (count + 1))?;
    let mut branches = Vec::with_capacity(l);
    for m in 0..l {
        let start = if m >= 1 { m } else { l };
        let w: Vec<BigInt> = (0..count).map(|j| values[start + j * l - 1].clone()).collect();
        let sub = minimize(&w)?;
        let zero = w.iter().all(Zero::is_zero);
        let (tag, polynomial, admissible) = if zero {
            (BranchTag::IdenticallyZero, false, false)
        } else {
            let g = sub.char_poly();
            if f_l.div_exact(&g.squarefree_part()).is_none() {
                return Err(Error::IdentityViolation {
                    k: m,
                    detail: format!("branch polynomial {g} does not divide {f_l}"),
                });
            }
            if unity_ratio_lcm(&g)? != 1 {
                return Err(Error::IdentityViolation {
                    k: m,
                    detail: format!("branch polynomial {g} is degenerate"),
                });
            }
            let polynomial = is_power_of_x_minus_one(&g);
            let (rest, _) = strip_cyclotomic(&g);
            (BranchTag::NonDegenerate, polynomial, !rest.is_constant())
        };
        branches.push(Branch {
            residue: m,
            start,
            step: l,
            recurrence: sub,
            tag,
            polynomial,
            admissible,
        });
    }
    Ok(branches)
}

/// Reassembles `u_1..u_{n_max}` from the branches.
pub fn interleave(branches: &[Branch], n_max: usize) -> Result<Vec<BigInt>> {
    let l = branches.len();
    let mut out = vec![BigInt::zero(); n_max];
    for b in branches {
        let count = if b.start > n_max {
            0
        } else {
            (n_max - b.start) / l + 1
        };
        if count == 0 {
            continue;
        }
        let w = b.recurrence.eval_range(1, count)?;
        for (j, v) in w.into_iter().enumerate() {
            out[b.start + j * l - 1] = v;
        }
    }
    Ok(out)
}

fn is_power_of_x_minus_one(f: &IntPolynomial) -> bool {
    let e = f.degree();
    e >= 1 && f.primitive_part() == IntPolynomial::from_i64(&[-1, 1]).pow(e)
}

/// Degeneracy, admissibility and dominant root modulus of a recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceClassification {
    pub degenerate: bool,
    #[serde(rename = "L")]
    pub l: u64,
    pub polynomial_sequence: bool,
    /// Some characteristic root of the minimal recurrence is not a root of
    /// unity.
    pub admissible: bool,
    /// Per-branch admissibility from [`decompose`].
    pub branch_admissible: Vec<bool>,
    pub minimal_order: usize,
    pub dominant_modulus: RationalInterval,
}

/// Bisects the unique root of squarefree `f` in `iv` to width `2^-bits`.
fn narrow_root(f: &IntPolynomial, iv: &RationalInterval, bits: u64) -> RationalInterval {
    let mut lo = iv.lo().clone();
    let mut hi = iv.hi().clone();
    let s_lo = f.sign_at(&lo);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while !RationalInterval::new(lo.clone(), hi.clone())
        .expect("ordered")
        .width_at_most_bits(bits)
    {
        let mid = (&lo + &hi) * &half;
        match f.sign_at(&mid) {
            Ordering::Equal => return RationalInterval::point(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    RationalInterval::new(lo, hi).expect("ordered")
}

/// Enclosure of `max |alpha|` over the complex roots of `f`, of width at
/// most `2^-32`.
///
/// `M^2` is the largest real root of `Res_y(f(y), y^t f(x/y))`, whose roots
/// are the products of pairs of roots: `|alpha|^2 = alpha * conj(alpha)` is
/// among them and no product is larger.
pub fn dominant_modulus(f: &IntPolynomial) -> RationalInterval {
    let h = product_resultant(f).squarefree_part();
    let m2 = match isolate_largest_real_root(&h).expect("|alpha|^2 is a real root") {
        RootBracket::Exact(r) => RationalInterval::point(r),
        RootBracket::Open(iv) => narrow_root(&h, &iv, 80),
    };
    let (lo, _) = sqrt_enclosure(m2.lo(), 48);
    let (_, hi) = sqrt_enclosure(m2.hi(), 48);
    RationalInterval::new(lo, hi).expect("ordered")
}

pub fn classify(rec: &LinearRecurrence) -> Result<RecurrenceClassification> {
    let minimal = minimal_recurrence(rec)?;
    let f = minimal.char_poly();
    let l = unity_ratio_lcm(&f)?;
    let polynomial_sequence = is_power_of_x_minus_one(&f);
    let (rest, _) = strip_cyclotomic(&f);
    let admissible = !rest.is_constant();
    let branches = decompose(rec)?;
    Ok(RecurrenceClassification {
        degenerate: l > 1,
        l,
        polynomial_sequence,
        admissible,
        branch_admissible: branches.iter().map(|b| b.admissible).collect(),
        minimal_order: minimal.order(),
        dominant_modulus: dominant_modulus(&f),
    })
}

/// Sign-aware absolute value helper used by scans.
pub fn abs_terms(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::trace_power_sums;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fib() -> LinearRecurrence {
        LinearRecurrence::from_i64(&[1, 1], &[1, 1]).unwrap()
    }

    /// v_n = 2^n + (-2)^n + n
    fn v_rec() -> LinearRecurrence {
        LinearRecurrence::from_i64(&[2, 3, -8, 4], &[1, 10, 3, 36]).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(fib().eval_range(1, 6).unwrap(), ints(&[1, 1, 2, 3, 5, 8]));
        let perrin = LinearRecurrence::from_i64(&[0, 1, 1], &[0, 2, 3]).unwrap();
        let oracle = trace_power_sums(&IntPolynomial::from_i64(&[-1, -1, 0, 1]), 8).unwrap();
        assert_eq!(perrin.eval_range(1, 8).unwrap(), oracle[1..].to_vec());
        assert_eq!(perrin.eval_range(1, 8).unwrap(), ints(&[0, 2, 3, 2, 5, 5, 7, 10]));
        let v = v_rec().eval_range(1, 10).unwrap();
        for (i, x) in v.iter().enumerate() {
            let n = i as u32 + 1;
            let direct = BigInt::from(2).pow(n) + BigInt::from(-2).pow(n) + BigInt::from(n);
            assert_eq!(x, &direct);
        }
        assert_eq!(
            v_rec().char_poly(),
            IntPolynomial::from_i64(&[-4, 8, -3, -2, 1])
        );
        assert_eq!(v_rec().eval_range(3, 4).unwrap(), ints(&[3, 36]));
        assert!(v_rec().eval_range(0, 4).is_err());
    }

    #[test]
    fn matrix_powering_agrees() {
        for rec in [fib(), v_rec(), LinearRecurrence::from_i64(&[0, 1, 1], &[0, 2, 3]).unwrap()] {
            let all = rec.eval_range(1, 500).unwrap();
            for n in [1, 2, 3, 7, 50, 123, 256, 499, 500] {
                assert_eq!(rec.term_by_matrix(n), all[n - 1]);
            }
        }
    }

    #[test]
    fn validation() {
        assert!(LinearRecurrence::from_i64(&[1, 0], &[1, 1]).is_err());
        assert!(LinearRecurrence::from_i64(&[], &[]).is_err());
        assert!(LinearRecurrence::from_i64(&[1], &[1, 2]).is_err());
        let json = r#"{"coeffs":["1","1"],"init":["1","1"]}"#;
        let r: LinearRecurrence = serde_json::from_str(json).unwrap();
        assert_eq!(r, fib());
        assert_eq!(serde_json::to_string(&r).unwrap(), json);
        assert!(serde_json::from_str::<LinearRecurrence>(r#"{"coeffs":["1","0"],"init":["1","1"]}"#).is_err());
    }

    #[test]
    fn minimize_examples() {
        let r = minimize(&ints(&[1, 1, 2, 3, 5, 8, 13, 21])).unwrap();
        assert_eq!(r.coeffs(), ints(&[1, 1]).as_slice());
        let r = minimize(&ints(&[1, 2, 3, 4, 5, 6, 7, 8])).unwrap();
        assert_eq!(r.coeffs(), ints(&[2, -1]).as_slice());
        assert_eq!(
            minimize(&ints(&[1, 2, 4, 8, 17])).unwrap_err(),
            Error::NotARecurrence { max_order: 1 }
        );
        assert!(matches!(
            minimize(&ints(&[1, 2, 3])),
            Err(Error::InsufficientTerms { .. })
        ));
        let r = minimize(&ints(&[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(r.coeffs(), ints(&[1]).as_slice());
        // v_n has minimal order 4
        let r = minimize(&v_rec().eval_range(1, 12).unwrap()).unwrap();
        assert_eq!(r.order(), 4);
    }

    #[test]
    fn unity_ratios() {
        assert_eq!(unity_ratio_lcm(&IntPolynomial::from_i64(&[-1, -1, 1])).unwrap(), 1);
        let f = &IntPolynomial::from_i64(&[-4, 0, 1]) * &IntPolynomial::from_i64(&[-1, 1]).pow(2);
        assert_eq!(unity_ratio_lcm(&f).unwrap(), 2);
        assert_eq!(unity_ratio_lcm(&IntPolynomial::from_i64(&[1, 0, 1])).unwrap(), 2);
        // x^3 - 2: ratios are primitive cube roots of unity
        assert_eq!(unity_ratio_lcm(&IntPolynomial::from_i64(&[-2, 0, 0, 1])).unwrap(), 3);
        // x^4 + 1: ratios are i, -1, -i
        assert_eq!(unity_ratio_lcm(&IntPolynomial::from_i64(&[1, 0, 0, 0, 1])).unwrap(), 4);
        assert!(unity_ratio_lcm(&IntPolynomial::from_i64(&[0, 1])).is_err());
    }

    #[test]
    fn decompose_mixed_sign_example() {
        let branches = decompose(&v_rec()).unwrap();
        assert_eq!(branches.len(), 2);
        let even = &branches[0];
        let odd = &branches[1];
        assert_eq!((even.residue, even.start), (0, 2));
        assert_eq!((odd.residue, odd.start), (1, 1));
        // v_{2n} = 2 * 4^n + 2n, v_{2n+1} = 2n + 1
        let ev = even.recurrence.eval_range(1, 50).unwrap();
        for (j, x) in ev.iter().enumerate() {
            let n = j as u32 + 1;
            assert_eq!(x, &(BigInt::from(2) * BigInt::from(4).pow(n) + BigInt::from(2 * n)));
        }
        let ov = odd.recurrence.eval_range(1, 50).unwrap();
        for (j, x) in ov.iter().enumerate() {
            assert_eq!(x, &BigInt::from(2 * j + 1));
        }
        assert_eq!(even.tag, BranchTag::NonDegenerate);
        assert_eq!(odd.tag, BranchTag::NonDegenerate);
        assert!(odd.polynomial && !odd.admissible);
        assert!(!even.polynomial && even.admissible);
        assert_eq!(interleave(&branches, 40).unwrap(), v_rec().eval_range(1, 40).unwrap());
    }

    #[test]
    fn decompose_other_examples() {
        let b = decompose(&fib()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].recurrence.eval_range(1, 10).unwrap(), fib().eval_range(1, 10).unwrap());
        // u_n = 1 + (-1)^n: 0, 2, 0, 2, ...
        let r = LinearRecurrence::from_i64(&[0, 1], &[0, 2]).unwrap();
        let b = decompose(&r).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].recurrence.eval_range(1, 5).unwrap(), ints(&[2, 2, 2, 2, 2]));
        assert_eq!(b[0].tag, BranchTag::NonDegenerate);
        assert_eq!(b[1].tag, BranchTag::IdenticallyZero);
        assert_eq!(b[1].recurrence.eval_range(1, 5).unwrap(), ints(&[0, 0, 0, 0, 0]));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&fib()).unwrap();
        assert!(!c.degenerate && c.l == 1 && !c.polynomial_sequence && c.admissible);
        // oracle: (1 + sqrt 5) / 2 from a 100-bit integer square root
        let root = (BigInt::from(5) << 200u32).sqrt();
        let phi = BigRational::new((BigInt::one() << 100u32) + root, BigInt::one() << 101u32);
        assert!(c.dominant_modulus.lo() - rat(1, 1 << 40) <= phi);
        assert!(c.dominant_modulus.hi() + rat(1, 1 << 40) >= phi);
        assert!(c.dominant_modulus.width_at_most_bits(32));

        let n = LinearRecurrence::from_i64(&[2, -1], &[1, 2]).unwrap();
        let c = classify(&n).unwrap();
        assert!(c.polynomial_sequence && !c.admissible);
        assert_eq!(c.dominant_modulus, RationalInterval::point(rat(1, 1)));

        let c = classify(&v_rec()).unwrap();
        assert!(c.degenerate);
        assert_eq!(c.l, 2);
        assert_eq!(c.branch_admissible, vec![true, false]);
        assert!(c.dominant_modulus.contains(&rat(2, 1)));
    }

    #[test]
    fn complex_dominant_root() {
        // x^2 - 2x + 5: roots 1 +- 2i, modulus sqrt 5
        let r = LinearRecurrence::from_i64(&[2, -5], &[1, 3]).unwrap();
        let c = classify(&r).unwrap();
        let m = &c.dominant_modulus;
        assert!(m.lo() * m.lo() <= rat(5, 1) && m.hi() * m.hi() >= rat(5, 1));
        assert!(m.width_at_most_bits(32));
        // x^3 - x - 1: plastic number ~1.3247 dominates the complex pair
        let p = LinearRecurrence::from_i64(&[0, 1, 1], &[0, 2, 3]).unwrap();
        let m = classify(&p).unwrap().dominant_modulus;
        assert!(m.lo() > &rat(13247, 10000) && m.hi() < &rat(13248, 10000));
    }

    #[test]
    fn json_classification_shape() {
        let c = classify(&fib()).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["L"], 1);
        assert!(v["dominant_modulus"]["lo"].as_str().unwrap().contains('/'));
    }

    fn arb_rec() -> impl Strategy<Value = LinearRecurrence> {
        (1usize..=4).prop_flat_map(|t| {
            (
                proptest::collection::vec(-4i64..=4, t),
                proptest::collection::vec(-5i64..=5, t),
            )
                .prop_filter_map("c_t must be nonzero", |(c, u)| {
                    LinearRecurrence::from_i64(&c, &u).ok()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn minimize_recovers_order(rec in arb_rec()) {
            let t = rec.order();
            let terms = rec.eval_range(1, 4 * t).unwrap();
            let m = minimize(&terms).unwrap();
            prop_assert!(m.order() <= t);
            prop_assert_eq!(m.eval_range(1, 6 * t).unwrap(), rec.eval_range(1, 6 * t).unwrap());
        }

        #[test]
        fn decompose_interleaves_back(rec in arb_rec()) {
            let branches = decompose(&rec).unwrap();
            let l = branches.len();
            let n = 4 * l * rec.order();
            prop_assert_eq!(interleave(&branches, n).unwrap(), rec.eval_range(1, n).unwrap());
        }

        #[test]
        fn classification_consistency(rec in arb_rec()) {
            let c = classify(&rec).unwrap();
            let l = unity_ratio_lcm(&minimal_recurrence(&rec).unwrap().char_poly()).unwrap();
            prop_assert_eq!(c.degenerate, l > 1);
            if c.polynomial_sequence {
                prop_assert!(!c.admissible);
            }
            if c.admissible {
                prop_assert!(c.dominant_modulus.lo() > &BigRational::one());
            }
            prop_assert!(c.dominant_modulus.width_at_most_bits(32));
        }

        #[test]
        fn matrix_agrees_at_random_indices(rec in arb_rec(), idx in proptest::collection::vec(1usize..=500, 20)) {
            let all = rec.eval_range(1, 500).unwrap();
            for n in idx {
                prop_assert_eq!(rec.term_by_matrix(n), all[n - 1].clone());
            }
        }
    }
}
