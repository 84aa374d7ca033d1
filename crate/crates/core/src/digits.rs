//! Base-`b` digit statistics, Zeckendorf representations and sparse divisor
//! searches.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Digits `d_0..d_k` of `N` in base `b`, least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitStats {
    pub base: u32,
    pub digits: Vec<u32>,
    /// Number of nonzero digits.
    pub length: usize,
    /// `#{2 <= j <= k : d_j != d_(j-1)}`.
    pub digit_changes_s1: usize,
    /// `#{1 <= j <= k : d_j != d_(j-1)}`.
    pub digit_changes_all: usize,
}

impl DigitStats {
    pub fn reconstruct(&self) -> BigUint {
        let d: Vec<u8> = self.digits.iter().map(|&x| x as u8).collect();
        BigUint::from_radix_le(&d, self.base).expect("digits below base")
    }
}

pub fn digit_stats(n: &BigUint, base: u32) -> Result<DigitStats> {
    check_args(n, base)?;
    let digits: Vec<u32> = n.to_radix_le(base).into_iter().map(u32::from).collect();
    let length = digits.iter().filter(|&&d| d != 0).count();
    let change = |j: &usize| digits[*j] != digits[*j - 1];
    let digit_changes_all = (1..digits.len()).filter(change).count();
    let digit_changes_s1 = (2..digits.len()).filter(change).count();
    Ok(DigitStats {
        base,
        digits,
        length,
        digit_changes_s1,
        digit_changes_all,
    })
}

/// `N = sum F_j` over `indices` (descending), with `F_0 = 0, F_1 = F_2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeckendorfRep {
    pub indices: Vec<usize>,
}

impl ZeckendorfRep {
    pub fn count(&self) -> usize {
        self.indices.len()
    }

    pub fn reconstruct(&self) -> BigUint {
        let top = self.indices.first().copied().unwrap_or(0);
        let f = fibonacci_upto_index(top);
        self.indices.iter().map(|&j| &f[j]).sum()
    }
}

fn fibonacci_upto_index(j: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::zero(), BigUint::one()];
    while f.len() <= j {
        let next = &f[f.len() - 1] + &f[f.len() - 2];
        f.push(next);
    }
    f
}

/// Greedy Zeckendorf representation; the value 1 is emitted as `F_2`.
pub fn zeckendorf(n: &BigUint) -> Result<ZeckendorfRep> {
    if n.is_zero() {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    let mut f = vec![BigUint::zero(), BigUint::one()];
    while f.last().unwrap() <= n {
        let next = &f[f.len() - 1] + &f[f.len() - 2];
        f.push(next);
    }
    let mut rest = n.clone();
    let mut indices = Vec::new();
    let mut j = f.len() - 1;
    while !rest.is_zero() {
        while f[j] > rest {
            j -= 1;
        }
        rest -= &f[j];
        indices.push(j);
        // F_(j-1) > rest now, so the next index is at most j - 2
        j = j.saturating_sub(2).max(2);
    }
    Ok(ZeckendorfRep { indices })
}

/// A qualifying divisor with its digit statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorHit {
    #[serde(with = "crate::numeric::biguint_string")]
    pub divisor: BigUint,
    pub stats: DigitStats,
}

/// Largest `delta | N` with at most `kmax` nonzero base-`b` digits
/// (`kmax` is 1 or 2).
pub fn sparse_divisor_max(n: &BigUint, base: u32, kmax: u32) -> Result<DivisorHit> {
    if !(1..=2).contains(&kmax) {
        return Err(Error::UnsupportedSparsity(kmax));
    }
    check_args(n, base)?;
    let b = BigUint::from(base);
    let mut powers = vec![BigUint::one()];
    while powers.last().unwrap() * &b <= *n {
        let next = powers.last().unwrap() * &b;
        powers.push(next);
    }
    let mut best = BigUint::one();
    let mut consider = |c: &BigUint| {
        if c > &best && c <= n && (n % c).is_zero() {
            best = c.clone();
        }
    };
    for (j, pj) in powers.iter().enumerate() {
        for d in 1..base {
            let x = pj * d;
            if &x > n {
                break;
            }
            consider(&x);
            if kmax == 2 {
                for pl in &powers[..j] {
                    for e in 1..base {
                        consider(&(&x + pl * e));
                    }
                }
            }
        }
    }
    let stats = digit_stats(&best, base)?;
    Ok(DivisorHit {
        divisor: best,
        stats,
    })
}

/// Largest repdigit `d (b^(m+1) - 1) / (b - 1)` dividing `N` (`kmax` = 0).
pub fn lowdc_divisor_max(n: &BigUint, base: u32, kmax: u32) -> Result<DivisorHit> {
    if kmax != 0 {
        return Err(Error::UnsupportedSparsity(kmax));
    }
    check_args(n, base)?;
    let b = BigUint::from(base);
    let mut best = BigUint::one();
    let mut repunit = BigUint::one();
    while repunit <= *n {
        for d in 1..base {
            let x = &repunit * d;
            if &x > n {
                break;
            }
            if x > best && (n % &x).is_zero() {
                best = x;
            }
        }
        repunit = repunit * &b + 1u32;
    }
    let stats = digit_stats(&best, base)?;
    Ok(DivisorHit {
        divisor: best,
        stats,
    })
}

fn check_args(n: &BigUint, base: u32) -> Result<()> {
    if n.is_zero() {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    if !(2..=256).contains(&base) {
        return Err(Error::InvalidInput(format!("base {base} must lie in 2..=256")));
    }
    Ok(())
}

/// All divisors of `n` by trial division, for oracle use on small inputs.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Digits by repeated division, most significant first, as an oracle.
    fn digits_oracle(mut n: u64, b: u64) -> Vec<u64> {
        let mut d = Vec::new();
        while n > 0 {
            d.push(n % b);
            n /= b;
        }
        d.reverse();
        d
    }

    fn nonzero_count(n: u64, b: u64) -> usize {
        digits_oracle(n, b).iter().filter(|&&d| d != 0).count()
    }

    fn is_repdigit(n: u64, b: u64) -> bool {
        let d = digits_oracle(n, b);
        d.iter().all(|&x| x == d[0])
    }

    #[test]
    fn digit_stat_examples() {
        let s = digit_stats(&big(1000), 10).unwrap();
        assert_eq!((s.length, s.digit_changes_s1, s.digit_changes_all), (1, 1, 1));
        assert_eq!(s.digits, vec![0, 0, 0, 1]);
        let s = digit_stats(&big(5), 2).unwrap();
        assert_eq!((s.length, s.digit_changes_s1, s.digit_changes_all), (2, 1, 2));
        let s = digit_stats(&big(7), 2).unwrap();
        assert_eq!((s.length, s.digit_changes_s1, s.digit_changes_all), (3, 0, 0));
        assert!(digit_stats(&big(0), 10).is_err());
        assert!(digit_stats(&big(5), 1).is_err());
    }

    #[test]
    fn zeckendorf_examples() {
        assert_eq!(zeckendorf(&big(34)).unwrap().indices, vec![9]);
        assert_eq!(zeckendorf(&big(10)).unwrap().indices, vec![6, 3]);
        assert_eq!(zeckendorf(&big(100)).unwrap().indices, vec![11, 6, 4]);
        assert_eq!(zeckendorf(&big(1)).unwrap().indices, vec![2]);
        assert_eq!(zeckendorf(&big(4)).unwrap().indices, vec![4, 2]);
    }

    #[test]
    fn zeckendorf_exhaustive() {
        for n in 1..=100_000u64 {
            let z = zeckendorf(&big(n)).unwrap();
            assert_eq!(z.reconstruct(), big(n), "N = {n}");
            assert!(z.indices.iter().all(|&j| j >= 2));
            assert!(z.indices.windows(2).all(|w| w[0] >= w[1] + 2), "N = {n}");
        }
    }

    #[test]
    fn divisor_examples() {
        let hit = |n, b, k| sparse_divisor_max(&big(n), b, k).unwrap().divisor;
        assert_eq!(hit(96, 10, 1), big(8));
        assert_eq!(hit(1024, 2, 1), big(1024));
        assert_eq!(hit(1024, 10, 1), big(8));
        let rep = |n, b| lowdc_divisor_max(&big(n), b, 0).unwrap().divisor;
        assert_eq!(rep(777, 10), big(777));
        assert_eq!(rep(24, 10), big(8));
        assert_eq!(rep(3, 2), big(3));
        assert_eq!(sparse_divisor_max(&big(10), 10, 3).unwrap_err(), Error::UnsupportedSparsity(3));
        assert_eq!(sparse_divisor_max(&big(10), 10, 0).unwrap_err(), Error::UnsupportedSparsity(0));
        assert_eq!(lowdc_divisor_max(&big(10), 10, 1).unwrap_err(), Error::UnsupportedSparsity(1));
    }

    #[test]
    fn sparse_divisors_match_brute_force() {
        for b in [2u32, 10] {
            for n in 1..=100_000u64 {
                let divs = divisors_u64(n);
                let want1 = *divs.iter().filter(|&&d| nonzero_count(d, b as u64) <= 1).max().unwrap();
                assert_eq!(sparse_divisor_max(&big(n), b, 1).unwrap().divisor, big(want1), "N = {n}, b = {b}");
                if n % 97 == 0 || n < 2000 {
                    let want2 = *divs.iter().filter(|&&d| nonzero_count(d, b as u64) <= 2).max().unwrap();
                    assert_eq!(sparse_divisor_max(&big(n), b, 2).unwrap().divisor, big(want2));
                }
                if n % 13 == 0 || n < 2000 {
                    let want0 = *divs.iter().filter(|&&d| is_repdigit(d, b as u64)).max().unwrap();
                    assert_eq!(lowdc_divisor_max(&big(n), b, 0).unwrap().divisor, big(want0));
                }
            }
        }
    }

    #[test]
    fn json_shapes() {
        let h = sparse_divisor_max(&big(96), 10, 1).unwrap();
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["divisor"], "8");
        assert_eq!(v["stats"]["length"], 1);
        let back: DivisorHit = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
    }

    proptest! {
        #[test]
        fn stats_invariants(n in 1u64.., b in 2u32..40) {
            let s = digit_stats(&big(n), b).unwrap();
            prop_assert_eq!(s.reconstruct(), big(n));
            prop_assert!(*s.digits.last().unwrap() != 0);
            prop_assert!(s.digit_changes_s1 <= s.digit_changes_all);
            prop_assert!(s.digit_changes_all < s.digits.len());
            let oracle = digits_oracle(n, b as u64);
            prop_assert_eq!(s.length, oracle.iter().filter(|&&d| d != 0).count());
        }

        #[test]
        fn kmax_monotone(n in 1u64..10_000_000, b in 2u32..12) {
            let one = sparse_divisor_max(&big(n), b, 1).unwrap().divisor;
            let two = sparse_divisor_max(&big(n), b, 2).unwrap().divisor;
            prop_assert!(two >= one);
            prop_assert!((big(n) % &two).is_zero());
        }
    }
}
