//! Continued fractions whose convergent denominators alternate between pure
//! powers of 2 and of 3.
//!
//! With `q_(k-1) = P^x` and `q_k = Q^y`, let `o` be the multiplicative order
//! of `P` modulo `Q^y` and put `a_(k+1) = P^x (P^o - 1) / Q^y`. Then
//! `q_(k+1) = a_(k+1) Q^y + P^x = P^(x+o)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cfrac::ContinuedFractionExpansion;
use crate::error::{Error, Result};

/// Largest modulus (in bits) for which a multiplicative order is computed.
pub const DEFAULT_MAX_MODULUS_BITS: u64 = 1 << 16;
/// Largest exponent of a denominator that is materialised.
pub const DEFAULT_MAX_EXPONENT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingLimits {
    pub max_modulus_bits: u64,
    pub max_exponent: u64,
}

impl Default for AlternatingLimits {
    fn default() -> Self {
        AlternatingLimits {
            max_modulus_bits: DEFAULT_MAX_MODULUS_BITS,
            max_exponent: DEFAULT_MAX_EXPONENT,
        }
    }
}

/// `prime^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u32,
    pub exponent: u64,
}

impl PrimePower {
    pub fn value(&self) -> BigUint {
        BigUint::from(self.prime).pow(self.exponent as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingStep {
    /// Index of the new partial quotient and denominator.
    pub k: usize,
    #[serde(with = "crate::numeric::biguint_string")]
    pub a: BigUint,
    /// The new denominator `q_k`.
    pub q: PrimePower,
    /// Multiplicative order used for the exponent increment.
    pub order: u64,
    /// The quotient `(P^o - 1) / Q^y` without the factor `P^x`.
    #[serde(with = "crate::numeric::biguint_string")]
    pub uncorrected_a: BigUint,
    /// Whether `uncorrected_a * q_(k-1) + q_(k-2)` happens to be a pure power.
    pub uncorrected_is_power: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingWitness {
    pub c0: u64,
    pub d0: u64,
    pub requested_steps: usize,
    /// `a_0, ..., a_k` reaching the initial pair of denominators.
    #[serde(with = "crate::numeric::bigint_vec_string")]
    pub prefix: Vec<BigInt>,
    /// Denominators `q_(k-1), q_k` of the initial pair followed by one per step.
    pub denominators: Vec<PrimePower>,
    pub steps: Vec<AlternatingStep>,
    /// Why the construction stopped before `requested_steps`, if it did.
    pub stop_reason: Option<String>,
}

impl AlternatingWitness {
    pub fn completed_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn is_complete(&self) -> bool {
        self.steps.len() == self.requested_steps
    }

    /// All partial quotients `a_0, a_1, ...`.
    pub fn partial_quotients(&self) -> Vec<BigInt> {
        let mut a = self.prefix.clone();
        a.extend(self.steps.iter().map(|s| BigInt::from(s.a.clone())));
        a
    }

    /// Convergents of the constructed expansion.
    pub fn expansion(&self) -> Result<ContinuedFractionExpansion> {
        ContinuedFractionExpansion::from_partial_quotients(self.partial_quotients())
    }
}

/// Order of `g` modulo `p^k` for a prime `p` not dividing `g`.
pub fn order_mod_prime_power(g: u64, p: u64, k: u64) -> BigUint {
    let modulus = BigUint::from(p).pow(k as u32);
    let g = BigUint::from(g);
    let mut order = BigUint::from(p - 1) * BigUint::from(p).pow(k as u32 - 1);
    let mut primes = vec![p];
    let mut r = p - 1;
    let mut d = 2;
    while d * d <= r {
        if r % d == 0 {
            primes.push(d);
            while r % d == 0 {
                r /= d;
            }
        }
        d += 1;
    }
    if r > 1 {
        primes.push(r);
    }
    for r in primes {
        let rb = BigUint::from(r);
        while (&order % &rb).is_zero() {
            let smaller = &order / &rb;
            if g.modpow(&smaller, &modulus).is_one() {
                order = smaller;
            } else {
                break;
            }
        }
    }
    order
}

/// `q_k / q_(k-1) = [a_k; a_(k-1), ..., a_1]`, so the reversed expansion of
/// the ratio gives quotients whose last two denominators are the pair.
fn prefix_for(lower: &BigUint, upper: &BigUint) -> Vec<BigInt> {
    let mut quotients = Vec::new();
    let (mut n, mut d) = (upper.clone(), lower.clone());
    while !d.is_zero() {
        let (q, r) = n.div_rem(&d);
        quotients.push(BigInt::from(q));
        n = d;
        d = r;
    }
    let mut a = vec![BigInt::zero()];
    a.extend(quotients.into_iter().rev());
    a
}

fn is_pure_power(mut n: BigUint, p: u32) -> bool {
    if n.is_zero() {
        return false;
    }
    while (&n % p).is_zero() {
        n /= p;
    }
    n.is_one()
}

pub fn alternating_build(c0: u64, d0: u64, steps: usize) -> Result<AlternatingWitness> {
    alternating_build_with_limits(c0, d0, steps, AlternatingLimits::default())
}

pub fn alternating_build_with_limits(
    c0: u64,
    d0: u64,
    steps: usize,
    limits: AlternatingLimits,
) -> Result<AlternatingWitness> {
    if c0 == 0 || d0 == 0 || steps == 0 {
        return Err(Error::InvalidInput("c0, d0 and steps must be positive".into()));
    }
    let two = PrimePower { prime: 2, exponent: c0 };
    let three = PrimePower { prime: 3, exponent: d0 };
    let (mut prev, mut cur) = if two.value() < three.value() {
        (two, three)
    } else {
        (three, two)
    };
    let mut prev_v = prev.value();
    let mut cur_v = cur.value();
    let prefix = prefix_for(&prev_v, &cur_v);
    let mut witness = AlternatingWitness {
        c0,
        d0,
        requested_steps: steps,
        denominators: vec![prev, cur],
        prefix,
        steps: Vec::new(),
        stop_reason: None,
    };
    let mut k = witness.prefix.len() - 1;
    for _ in 0..steps {
        if cur_v.bits() > limits.max_modulus_bits {
            witness.stop_reason = Some(format!(
                "order of {} modulo {}^{} needs a {}-bit modulus, limit {}",
                prev.prime,
                cur.prime,
                cur.exponent,
                cur_v.bits(),
                limits.max_modulus_bits
            ));
            break;
        }
        let order = order_mod_prime_power(prev.prime as u64, cur.prime as u64, cur.exponent);
        let next_exp = Some(&order + prev.exponent).filter(|e| e <= &BigUint::from(limits.max_exponent));
        let Some(next_exp) = next_exp else {
            witness.stop_reason = Some(format!(
                "next denominator {}^({} + {order}) exceeds exponent limit {}",
                prev.prime, prev.exponent, limits.max_exponent
            ));
            break;
        };
        let order = u64::try_from(&order).expect("below exponent limit");
        let next = PrimePower {
            prime: prev.prime,
            exponent: u64::try_from(&next_exp).expect("below exponent limit"),
        };
        let p_o = BigUint::from(prev.prime).pow(order as u32);
        let (uncorrected_a, rem) = (&p_o - 1u32).div_rem(&cur_v);
        debug_assert!(rem.is_zero());
        let a = &prev_v * &uncorrected_a;
        let next_v = &a * &cur_v + &prev_v;
        if next_v != next.value() {
            return Err(Error::IdentityViolation {
                k: k + 1,
                detail: "a_(k+1) q_k + q_(k-1) is not the expected power".into(),
            });
        }
        let uncorrected_is_power = is_pure_power(&uncorrected_a * &cur_v + &prev_v, prev.prime);
        k += 1;
        witness.steps.push(AlternatingStep {
            k,
            a,
            q: next,
            order,
            uncorrected_a,
            uncorrected_is_power,
        });
        witness.denominators.push(next);
        prev = cur;
        prev_v = cur_v;
        cur = next;
        cur_v = next_v;
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Order by direct iteration, as an oracle.
    fn naive_order(g: u64, m: u64) -> u64 {
        let mut x = g % m;
        let mut o = 1;
        while x != 1 {
            x = x * g % m;
            o += 1;
        }
        o
    }

    #[test]
    fn orders() {
        assert_eq!(order_mod_prime_power(2, 3, 1), big(2));
        assert_eq!(order_mod_prime_power(3, 2, 3), big(2));
        assert_eq!(order_mod_prime_power(2, 3, 3), big(18));
        assert_eq!(order_mod_prime_power(3, 2, 21), big(1 << 19));
        for k in 1..12 {
            assert_eq!(order_mod_prime_power(2, 3, k), big(naive_order(2, 3u64.pow(k as u32))));
            assert_eq!(order_mod_prime_power(3, 2, k), big(naive_order(3, 1 << k)));
            assert_eq!(order_mod_prime_power(10, 7, k.min(6)), big(naive_order(10, 7u64.pow(k.min(6) as u32))));
        }
    }

    #[test]
    fn first_steps() {
        let w = alternating_build(1, 1, 1).unwrap();
        assert_eq!(w.steps[0].a, big(2));
        assert_eq!(w.steps[0].q, PrimePower { prime: 2, exponent: 3 });
        // the printed quotient (2^2 - 1) / 3 = 1 gives 1 * 3 + 2 = 5
        assert_eq!(w.steps[0].uncorrected_a, big(1));
        assert!(!w.steps[0].uncorrected_is_power);

        let w = alternating_build(1, 1, 4).unwrap();
        assert!(w.is_complete());
        let values: Vec<BigUint> = w.denominators.iter().map(PrimePower::value).collect();
        assert_eq!(values[..4], [big(2), big(3), big(8), big(27)]);
        assert_eq!(w.steps[1].a, big(3));
        assert_eq!(w.denominators[4], PrimePower { prime: 2, exponent: 21 });
        assert_eq!(w.denominators[5], PrimePower { prime: 3, exponent: 524_291 });

        let cfe = w.expansion().unwrap();
        cfe.check_invariants().unwrap();
        let n = cfe.q().len();
        for (j, d) in w.denominators.iter().enumerate() {
            let q = cfe.q()[n - w.denominators.len() + j].to_biguint().unwrap();
            assert!(is_pure_power(q.clone(), d.prime));
            assert_eq!(q, d.value());
        }
        for (j, s) in w.steps.iter().enumerate() {
            assert_eq!(s.k, n - w.steps.len() + j);
        }
    }

    #[test]
    fn stops_at_the_resource_guard() {
        let w = alternating_build(1, 1, 8).unwrap();
        assert_eq!(w.completed_steps(), 4);
        assert!(!w.is_complete());
        assert!(w.stop_reason.as_ref().unwrap().contains("3^524291"));
    }

    #[test]
    fn order_adjusted_when_two_power_is_larger() {
        let w = alternating_build(5, 2, 3).unwrap();
        assert_eq!(w.denominators[0], PrimePower { prime: 3, exponent: 2 });
        assert_eq!(w.denominators[1], PrimePower { prime: 2, exponent: 5 });
        w.expansion().unwrap().check_invariants().unwrap();
        let cfe = w.expansion().unwrap();
        assert_eq!(cfe.q().last().unwrap().to_biguint().unwrap(), w.denominators.last().unwrap().value());
    }

    #[test]
    fn witness_json_round_trip() {
        let w = alternating_build(1, 1, 3).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        let back: AlternatingWitness = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["steps"][0]["a"], "2");
        assert_eq!(v["prefix"], serde_json::json!(["0", "2", "1"]));
    }
}
