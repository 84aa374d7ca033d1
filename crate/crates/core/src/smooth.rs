//! S-parts, greatest prime factors below a bound, and the next S-smooth
//! number above `m`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Default number of lattice steps before [`smooth_next`] gives up.
pub const DEFAULT_GAMMA_STEPS: u64 = 10_000_000;

/// Below this bound [`smooth_next`] enumerates the smooth numbers in order.
const MERGE_LIMIT: u64 = 1 << 20;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin with the first 13 prime bases, exact for all
/// `n < 3.3 * 10^24` and hence for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sorted distinct primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Self {
        s.primes
    }
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        if let Some(&p) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return Err(Error::NotPrime(p.to_string()));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    /// Parses `"2,3,5"`; values beyond `u64` are refused.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let p: u64 = t.parse().map_err(|_| match t.parse::<BigUint>() {
                Ok(_) => Error::NotPrime(t.to_string()),
                Err(_) => Error::InvalidInput(format!("cannot parse prime from {t:?}")),
            })?;
            v.push(p);
        }
        Self::new(v)
    }

    /// The `n` smallest primes.
    pub fn first_n(n: usize) -> Self {
        let primes = (2u64..).filter(|&p| is_prime_u64(p)).take(n).collect();
        PrimeSet { primes }
    }

    /// All primes `<= bound`.
    pub fn up_to(bound: u64) -> Self {
        PrimeSet {
            primes: primes_up_to(bound),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_disjoint(&self, other: &PrimeSet) -> bool {
        self.primes.iter().all(|&p| !other.contains(p))
    }

    /// Product of the primes.
    pub fn product(&self) -> BigUint {
        self.primes.iter().map(|&p| BigUint::from(p)).product()
    }

    pub fn is_smooth(&self, n: &BigUint) -> bool {
        !n.is_zero() && s_part_unsigned(n, self).cofactor.is_one()
    }
}

impl std::fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// `[N]_S` and the remaining cofactor, with exponents per prime of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPartResult {
    #[serde(with = "crate::numeric::biguint_string")]
    pub s_part: BigUint,
    #[serde(with = "crate::numeric::biguint_string")]
    pub cofactor: BigUint,
    pub exponents: Vec<u64>,
}

/// Removes every factor `p` from `n`, dividing by `p^(2^j)` while it divides.
fn strip_prime(n: &mut BigUint, p: u64) -> u64 {
    let mut e = 0u64;
    let mut powers = vec![BigUint::from(p)];
    loop {
        let last = powers.last().unwrap();
        if !(&*n % last).is_zero() {
            break;
        }
        *n /= last;
        e += 1 << (powers.len() - 1);
        let sq = last * last;
        powers.push(sq);
    }
    for j in (0..powers.len()).rev() {
        if (&*n % &powers[j]).is_zero() {
            *n /= &powers[j];
            e += 1 << j;
        }
    }
    e
}

fn s_part_unsigned(n: &BigUint, s: &PrimeSet) -> SPartResult {
    if n.is_zero() {
        return SPartResult {
            s_part: BigUint::zero(),
            cofactor: BigUint::zero(),
            exponents: vec![0; s.len()],
        };
    }
    let mut rest = n.clone();
    let exponents: Vec<u64> = s.primes.iter().map(|&p| strip_prime(&mut rest, p)).collect();
    SPartResult {
        s_part: n / &rest,
        cofactor: rest,
        exponents,
    }
}

/// `[N]_S`, with `[0]_S = 0` and cofactor 0.
pub fn s_part(n: &BigInt, s: &PrimeSet) -> SPartResult {
    s_part_unsigned(&n.abs().to_biguint().expect("nonnegative"), s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GpfResult {
    GreatestPrimeFactor {
        #[serde(with = "crate::numeric::biguint_string")]
        p: BigUint,
    },
    CompositeCofactorExceeds {
        #[serde(with = "crate::numeric::biguint_string")]
        c: BigUint,
    },
}

/// Greatest prime factor of `n >= 2` by trial division up to `bound`,
/// when that suffices to decide it.
pub fn gpf_bounded(n: &BigUint, bound: u64) -> Result<GpfResult> {
    if n < &BigUint::from(2u32) || bound < 2 {
        return Err(Error::InvalidInput("need N >= 2 and B >= 2".into()));
    }
    let mut rest = n.clone();
    let mut largest = 1u64;
    for p in primes_up_to(bound) {
        if strip_prime(&mut rest, p) > 0 {
            largest = p;
        }
        if rest.is_one() {
            break;
        }
    }
    if rest.is_one() {
        return Ok(GpfResult::GreatestPrimeFactor {
            p: BigUint::from(largest),
        });
    }
    let b = BigUint::from(bound);
    if rest <= &b * &b {
        return Ok(GpfResult::GreatestPrimeFactor { p: rest });
    }
    Ok(GpfResult::CompositeCofactorExceeds { c: rest })
}

/// S-smooth numbers in increasing order, starting from 1.
#[derive(Clone, Debug)]
pub struct SmoothMerge {
    primes: Vec<u64>,
    seen: Vec<BigUint>,
    heads: Vec<usize>,
    emitted: usize,
}

impl SmoothMerge {
    pub fn new(s: &PrimeSet) -> Self {
        SmoothMerge {
            primes: s.primes.clone(),
            seen: vec![BigUint::one()],
            heads: vec![0; s.len()],
            emitted: 0,
        }
    }
}

impl Iterator for SmoothMerge {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        if self.emitted < self.seen.len() {
            self.emitted += 1;
            return Some(self.seen[self.emitted - 1].clone());
        }
        let next = self
            .primes
            .iter()
            .zip(&self.heads)
            .map(|(&p, &h)| &self.seen[h] * p)
            .min()?;
        for (i, &p) in self.primes.iter().enumerate() {
            if self.seen[self.heads[i]].clone() * p == next {
                self.heads[i] += 1;
            }
        }
        self.seen.push(next.clone());
        self.emitted += 1;
        Some(next)
    }
}

/// `gamma(m)` and `f(m) = (gamma(m) - m) / m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothNext {
    #[serde(with = "crate::numeric::biguint_string")]
    pub gamma: BigUint,
    #[serde(with = "crate::numeric::rational_string")]
    pub f: BigRational,
}

pub fn smooth_next(m: &BigUint, s: &PrimeSet) -> Result<SmoothNext> {
    smooth_next_with_cap(m, s, DEFAULT_GAMMA_STEPS)
}

pub fn smooth_next_with_cap(m: &BigUint, s: &PrimeSet, max_steps: u64) -> Result<SmoothNext> {
    if m.is_zero() {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    if s.is_empty() {
        return Err(Error::InvalidInput("S must be nonempty".into()));
    }
    let gamma = if m.to_u64().is_some_and(|v| v < MERGE_LIMIT) {
        SmoothMerge::new(s).find(|x| x > m).expect("smooth numbers are unbounded")
    } else {
        lattice_next(m, s.primes(), max_steps)?
    };
    let mi = BigInt::from(m.clone());
    let f = BigRational::new(BigInt::from(gamma.clone()) - &mi, mi);
    Ok(SmoothNext { gamma, f })
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            return Err(Error::GammaSearchExhausted { steps: self.max });
        }
        Ok(())
    }
}

/// Least `p^e > t`.
fn least_power_above(t: &BigUint, p: u64, budget: &mut Budget) -> Result<BigUint> {
    let mut x = BigUint::one();
    while &x <= t {
        budget.tick()?;
        x *= p;
    }
    Ok(x)
}

/// Least `p^a q^b > t`: sweeps `a` upwards while keeping `b` minimal.
fn two_prime_next(t: &BigUint, p: u64, q: u64, budget: &mut Budget) -> Result<BigUint> {
    let mut x = least_power_above(t, q, budget)?;
    let mut b = 0u64;
    {
        let mut y = x.clone();
        while y > BigUint::one() {
            y /= q;
            b += 1;
        }
    }
    let mut best = x.clone();
    while b > 0 {
        budget.tick()?;
        x *= p;
        while b > 0 {
            let smaller = &x / q;
            if &smaller > t {
                x = smaller;
                b -= 1;
            } else {
                break;
            }
        }
        if x < best {
            best = x.clone();
        }
    }
    Ok(best)
}

fn lattice_next(m: &BigUint, primes: &[u64], max_steps: u64) -> Result<BigUint> {
    let mut budget = Budget { used: 0, max: max_steps };
    if primes.len() == 1 {
        return least_power_above(m, primes[0], &mut budget);
    }
    let k = primes.len();
    let mut best: Option<BigUint> = None;
    // depth-first over the exponents of all but the last two primes
    let mut stack: Vec<(usize, BigUint)> = vec![(0, BigUint::one())];
    while let Some((i, prod)) = stack.pop() {
        budget.tick()?;
        if i == k - 2 {
            let t = m / &prod;
            let cand = &prod * two_prime_next(&t, primes[k - 2], primes[k - 1], &mut budget)?;
            if best.as_ref().map_or(true, |b| &cand < b) {
                best = Some(cand);
            }
            continue;
        }
        let mut p_pow = prod;
        loop {
            if &p_pow > m {
                if best.as_ref().map_or(true, |b| &p_pow < b) {
                    best = Some(p_pow);
                }
                break;
            }
            stack.push((i + 1, p_pow.clone()));
            p_pow *= primes[i];
        }
    }
    Ok(best.expect("at least one candidate"))
}
