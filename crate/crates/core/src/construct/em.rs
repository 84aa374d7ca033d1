//! The number `theta = sum a_i / t^(3^i)` whose truncations at the stage
//! indices `s(1) < s(2) < ...` have S-smooth numerators over pure T-power
//! denominators.
//!
//! `t` is the product of the primes of `T`. Stage `s(1) = 1` has `a_1 = 1`.
//! Later stages set `a_s = gamma(m) - m` with `m = u * t^(2 * 3^(s-1))` and
//! `u / t^(3^(s-1))` the truncation before `s`. A candidate stage is accepted
//! when `a_s / t^(3^s) < 1 / t^(3^(s(k) + 1))` holds exactly; otherwise the
//! next index is tried.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smooth::{s_part, smooth_next_with_cap, PrimeSet, DEFAULT_GAMMA_STEPS};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_STAGE_ATTEMPTS: usize = 32;
/// Candidate stages whose numbers would exceed this many bits are not tried.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 18;

const LCG_MUL: u64 = 6364136223846793005;
const LCG_ADD: u64 = 1442695040888963407;

fn default_attempts() -> usize {
    DEFAULT_STAGE_ATTEMPTS
}

fn default_budget() -> u64 {
    DEFAULT_BIT_BUDGET
}

fn default_gamma_steps() -> u64 {
    DEFAULT_GAMMA_STEPS
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EMConfig {
    #[serde(rename = "S")]
    pub s: PrimeSet,
    #[serde(rename = "T")]
    pub t: PrimeSet,
    pub depth: usize,
    pub free_digit_seed: u64,
    #[serde(default = "default_attempts")]
    pub max_stage_attempts: usize,
    #[serde(default = "default_budget")]
    pub bit_budget: u64,
    #[serde(default = "default_gamma_steps")]
    pub gamma_steps: u64,
}

impl EMConfig {
    pub fn new(s: PrimeSet, t: PrimeSet, depth: usize, free_digit_seed: u64) -> Result<Self> {
        let cfg = EMConfig {
            s,
            t,
            depth,
            free_digit_seed,
            max_stage_attempts: DEFAULT_STAGE_ATTEMPTS,
            bit_budget: DEFAULT_BIT_BUDGET,
            gamma_steps: DEFAULT_GAMMA_STEPS,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s.len() < 2 {
            return Err(Error::InvalidInput("S needs at least two primes".into()));
        }
        if self.t.is_empty() {
            return Err(Error::InvalidInput("T must be nonempty".into()));
        }
        if !self.s.is_disjoint(&self.t) {
            return Err(Error::InvalidInput(format!("S = {} and T = {} intersect", self.s, self.t)));
        }
        if self.depth == 0 {
            return Err(Error::InvalidInput("depth must be at least 1".into()));
        }
        Ok(())
    }

    /// `t`, the product of the primes of `T`.
    pub fn base(&self) -> BigUint {
        self.t.product()
    }
}

/// The free digit `a_i in {1, 2}` for index `i >= 2`: the generator is
/// advanced once per index, so each digit depends only on the seed and `i`.
pub fn free_digit(seed: u64, i: usize) -> u32 {
    let mut state = seed;
    for _ in 1..i {
        state = state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
    }
    1 + (state >> 63) as u32
}

struct FreeDigits {
    state: u64,
    next_index: usize,
}

impl FreeDigits {
    fn new(seed: u64) -> Self {
        FreeDigits {
            state: seed,
            next_index: 2,
        }
    }

    fn digit(&mut self, i: usize) -> u32 {
        assert!(i >= self.next_index, "digits are drawn in index order");
        let mut d = 0;
        while self.next_index <= i {
            self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
            d = 1 + (self.state >> 63) as u32;
            self.next_index += 1;
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCertificate {
    /// The stage index `s(j)`.
    pub index: usize,
    #[serde(with = "crate::numeric::biguint_string")]
    pub u: BigUint,
    #[serde(with = "crate::numeric::biguint_string")]
    pub v: BigUint,
    /// Exponents of the primes of `S` in `u`.
    pub smooth_exponents: Vec<u64>,
    /// Absent for the first stage.
    pub property_ii: Option<bool>,
    pub tail_bound: bool,
    pub legendre: bool,
    /// Candidate stage indices rejected before this one.
    pub rejected: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EMWitness {
    pub format_version: u32,
    pub config: EMConfig,
    pub stages: Vec<usize>,
    /// `a_1, ..., a_(s(depth))`.
    #[serde(with = "biguint_vec_string")]
    pub digits: Vec<BigUint>,
    pub certificates: Vec<StageCertificate>,
}

impl EMWitness {
    /// `a_i` for `1 <= i <= s(depth)`.
    pub fn digit(&self, i: usize) -> &BigUint {
        &self.digits[i - 1]
    }
}

fn pow3(i: usize) -> Result<usize> {
    3usize
        .checked_pow(i as u32)
        .ok_or_else(|| Error::ResourceLimit(format!("3^{i} overflows")))
}

fn tpow(t: &BigUint, e: usize) -> BigUint {
    t.pow(e as u32)
}

/// Bits of `t^(3^s)`, rounded up.
fn stage_bits(t: &BigUint, s: usize) -> f64 {
    3f64.powi(s as i32) * t.to_f64().expect("small base").log2()
}

/// Certified tail and Legendre checks for the stage at `s_k`, using the
/// digits up to `s_last` and the majorant `3 t^(-3^I) / (1 - t^(-2 * 3^I))`,
/// which is below `4 t^(-3^I)`, for everything beyond `I = s_last + 1`.
fn build_tail_checks(
    t: &BigUint,
    u_k: &BigUint,
    s_k: usize,
    u_last: &BigUint,
    s_last: usize,
) -> Result<(bool, bool)> {
    let e_last = pow3(s_last)?;
    let e_i = pow3(s_last + 1)?;
    // theta_(s_last) - u_k / v_k = known / t^(3^s_last)
    let known = u_last - u_k * tpow(t, e_last - pow3(s_k)?);
    let scaled = known * tpow(t, e_i - e_last) + 4u32;
    let tail = scaled <= tpow(t, e_i - pow3(s_k + 1)?) * 4u32;
    let legendre = scaled * 2u32 <= tpow(t, e_i - 2 * pow3(s_k)?);
    Ok((tail, legendre))
}

pub fn em_build(cfg: &EMConfig) -> Result<EMWitness> {
    cfg.validate()?;
    let t = cfg.base();
    let mut free = FreeDigits::new(cfg.free_digit_seed);
    let mut digits: Vec<BigUint> = vec![BigUint::one()];
    let mut stages = vec![1usize];
    let mut us = vec![BigUint::one()];
    let mut rejected_per_stage: Vec<Vec<usize>> = vec![Vec::new()];
    // u_n for n = digits.len(): theta_n = u_n / t^(3^n)
    let mut u_cur = BigUint::one();
    while stages.len() < cfg.depth {
        let s_k = *stages.last().unwrap();
        let gate = pow3(s_k + 1)?;
        let mut rejected = Vec::new();
        let mut accepted = None;
        for attempt in 0..cfg.max_stage_attempts {
            let s = s_k + 2 + attempt;
            let bits = stage_bits(&t, s);
            if bits > cfg.bit_budget as f64 {
                return Err(Error::StageSelectionExhausted {
                    stage: stages.len() + 1,
                    reason: format!(
                        "candidate index {s} needs about {bits:.0} bits, budget {} (rejected {rejected:?})",
                        cfg.bit_budget
                    ),
                });
            }
            while digits.len() < s - 1 {
                let i = digits.len() + 1;
                let d = free.digit(i);
                u_cur = u_cur * tpow(&t, 2 * pow3(i - 1)?) + d;
                digits.push(BigUint::from(d));
            }
            let m = &u_cur * tpow(&t, 2 * pow3(s - 1)?);
            let gamma = smooth_next_with_cap(&m, &cfg.s, cfg.gamma_steps)?.gamma;
            let a = &gamma - &m;
            let e = pow3(s)?;
            if a < tpow(&t, e - gate) {
                accepted = Some((s, a, gamma));
                break;
            }
            rejected.push(s);
            // the index becomes a free digit and the search moves on
            let d = free.digit(s);
            u_cur = u_cur * tpow(&t, 2 * pow3(s - 1)?) + d;
            digits.push(BigUint::from(d));
        }
        let Some((s, a, gamma)) = accepted else {
            return Err(Error::StageSelectionExhausted {
                stage: stages.len() + 1,
                reason: format!("property (ii) failed at indices {rejected:?}"),
            });
        };
        free.digit(s);
        digits.push(a);
        u_cur = gamma.clone();
        stages.push(s);
        us.push(gamma);
        rejected_per_stage.push(rejected);
    }
    let s_last = *stages.last().unwrap();
    let u_last = us.last().unwrap().clone();
    let mut certificates = Vec::with_capacity(stages.len());
    for (j, (&s, u)) in stages.iter().zip(&us).enumerate() {
        let sp = s_part(&u.clone().into(), &cfg.s);
        if !sp.cofactor.is_one() {
            return Err(Error::IdentityViolation {
                k: s,
                detail: "stage numerator is not S-smooth".into(),
            });
        }
        let property_ii = if j == 0 {
            None
        } else {
            let gate = pow3(stages[j - 1] + 1)?;
            Some(digits[s - 1] < tpow(&t, pow3(s)? - gate))
        };
        let (tail_bound, legendre) = build_tail_checks(&t, u, s, &u_last, s_last)?;
        certificates.push(StageCertificate {
            index: s,
            u: u.clone(),
            v: tpow(&t, pow3(s)?),
            smooth_exponents: sp.exponents,
            property_ii,
            tail_bound,
            legendre,
            rejected: rejected_per_stage[j].clone(),
        });
    }
    Ok(EMWitness {
        format_version: FORMAT_VERSION,
        config: cfg.clone(),
        stages,
        digits,
        certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub stage: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EMVerifyReport {
    pub checks: Vec<CheckEntry>,
    pub passed: bool,
}

impl EMVerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str, stage: Option<usize>) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name && c.stage == stage)
    }
}

/// Trial division by the primes of `S`, one division at a time.
fn trial_divide(n: &BigUint, primes: &[u64]) -> (Vec<u64>, BigUint) {
    let mut rest = n.clone();
    let mut exps = Vec::with_capacity(primes.len());
    for &p in primes {
        let mut e = 0;
        if rest.is_zero() {
            exps.push(0);
            continue;
        }
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        exps.push(e);
    }
    (exps, rest)
}

fn push(checks: &mut Vec<CheckEntry>, name: &str, stage: Option<usize>, passed: bool, detail: String) {
    checks.push(CheckEntry {
        name: name.to_string(),
        stage,
        passed,
        detail,
    });
}

/// Re-derives every certificate of `w` from its digits, without any
/// smooth-number search.
pub fn em_verify(w: &EMWitness, cfg: &EMConfig) -> EMVerifyReport {
    let mut checks = Vec::new();
    push(
        &mut checks,
        "config",
        None,
        cfg.validate().is_ok() && &w.config == cfg && w.format_version == FORMAT_VERSION,
        format!("format version {}", w.format_version),
    );
    let stages_ok = w.stages.len() == cfg.depth
        && w.stages.first() == Some(&1)
        && w.stages.windows(2).all(|p| p[1] > p[0] + 1)
        && w.certificates.len() == w.stages.len()
        && w.certificates.iter().zip(&w.stages).all(|(c, &s)| c.index == s)
        && w.stages.last().is_some_and(|&s| w.digits.len() == s);
    push(&mut checks, "stage_indices", None, stages_ok, format!("{:?}", w.stages));
    if !stages_ok {
        let passed = false;
        return EMVerifyReport { checks, passed };
    }
    let t = cfg.t.product();
    let t_f = t.to_f64().unwrap_or(f64::INFINITY).log2();
    let s_last = *w.stages.last().unwrap();
    if 3f64.powi(s_last as i32 + 1) * t_f > 4.0 * cfg.bit_budget as f64 {
        push(&mut checks, "size", None, false, "witness exceeds four times the bit budget".into());
        return EMVerifyReport { checks, passed: false };
    }
    let e = |i: usize| 3usize.pow(i as u32);
    let one = BigUint::one();
    push(&mut checks, "a_1", None, w.digits[0] == one, w.digits[0].to_string());
    let two = BigUint::from(2u32);
    let mut free_ok = true;
    let mut seed_ok = true;
    for i in 2..=s_last {
        if w.stages.contains(&i) {
            continue;
        }
        let d = &w.digits[i - 1];
        free_ok &= d == &one || d == &two;
        seed_ok &= d == &BigUint::from(free_digit(cfg.free_digit_seed, i));
    }
    push(&mut checks, "free_digits_in_1_2", None, free_ok, String::new());
    push(&mut checks, "free_digits_match_seed", None, seed_ok, format!("seed {}", cfg.free_digit_seed));
    for (j, cert) in w.certificates.iter().enumerate() {
        let s = cert.index;
        let stage = Some(s);
        let u: BigUint = (1..=s).map(|i| &w.digits[i - 1] * t.pow((e(s) - e(i)) as u32)).sum();
        push(&mut checks, "u_matches_digits", stage, u == cert.u, String::new());
        push(&mut checks, "v_is_t_power", stage, cert.v == t.pow(e(s) as u32), String::new());
        let (exps, cofactor) = trial_divide(&cert.u, cfg.s.primes());
        push(
        &mut checks,
            "smoothness",
            stage,
            cofactor.is_one() && exps == cert.smooth_exponents,
            format!("exponents {exps:?}"),
        );
        let coprime = cfg.t.primes().iter().all(|&p| !(&cert.u % p).is_zero());
        push(&mut checks, "coprime_to_T", stage, coprime, String::new());
        if j >= 1 {
            let prev = w.stages[j - 1];
            let a = &w.digits[s - 1];
            // a / t^(3^s) < 1 / t^(3^(prev + 1))
            let ok = a * t.pow(e(prev + 1) as u32) < t.pow(e(s) as u32);
            push(&mut checks, "property_ii", stage, ok, String::new());
        }
        // |theta - u/v| <= sum_(s < i <= s_last) a_i t^(-3^i) + rest, with
        // rest <= 3 t^(-3^I) (1 + 2 t^(-2 * 3^I)) for I = s_last + 1
        let big_i = s_last + 1;
        let known: BigUint = (s + 1..=s_last)
            .map(|i| &w.digits[i - 1] * t.pow((e(big_i) - e(i)) as u32))
            .sum();
        // twice the distance in units of t^(-3^I): 2 rest <= 6 + 12 t^(-2 * 3^I) < 7
        let upper = known * 2u32 + 7u32;
        let tail = upper.clone() < t.pow((e(big_i) - e(s + 1)) as u32) * 8u32;
        push(&mut checks, "tail_bound", stage, tail, String::new());
        let legendre = upper < t.pow((e(big_i) - 2 * e(s)) as u32);
        push(&mut checks, "legendre", stage, legendre, String::new());
    }
    let passed = checks.iter().all(|c| c.passed);
    EMVerifyReport { checks, passed }
}

mod biguint_vec_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &[u64], t: &[u64], depth: usize, seed: u64) -> EMConfig {
        EMConfig::new(
            PrimeSet::new(s.to_vec()).unwrap(),
            PrimeSet::new(t.to_vec()).unwrap(),
            depth,
            seed,
        )
        .unwrap()
    }

    #[test]
    fn config_validation() {
        let p = |v: &[u64]| PrimeSet::new(v.to_vec()).unwrap();
        assert!(EMConfig::new(p(&[2]), p(&[5]), 1, 0).is_err());
        assert!(EMConfig::new(p(&[2, 5]), p(&[5]), 1, 0).is_err());
        assert!(EMConfig::new(p(&[2, 3]), p(&[]), 1, 0).is_err());
        assert!(EMConfig::new(p(&[2, 3]), p(&[5]), 0, 0).is_err());
    }

    #[test]
    fn free_digits() {
        // seed 0: the first state is the increment, whose top bit is clear
        assert_eq!(free_digit(0, 2), 1);
        let mut g = FreeDigits::new(77);
        for i in 2..40 {
            assert_eq!(g.digit(i), free_digit(77, i));
        }
    }

    #[test]
    fn depth_one() {
        let c = cfg(&[2, 3], &[5], 1, 9);
        let w = em_build(&c).unwrap();
        assert_eq!(w.stages, vec![1]);
        assert_eq!(w.digits, vec![BigUint::one()]);
        assert_eq!(w.certificates[0].u, BigUint::one());
        assert_eq!(w.certificates[0].v, BigUint::from(125u32));
        assert!(w.certificates[0].tail_bound && w.certificates[0].legendre);
        assert!(em_verify(&w, &c).passed);
    }

    #[test]
    fn depth_two_default_sets() {
        let c = cfg(&[2, 3], &[5], 2, 0);
        assert_eq!(free_digit(0, 2), 1);
        let w = em_build(&c).unwrap();
        let s2 = w.stages[1];
        assert!(s2 >= 3);
        // every smaller candidate index was tried and rejected
        assert_eq!(w.certificates[1].rejected, (3..s2).collect::<Vec<_>>());
        let report = em_verify(&w, &c);
        assert!(report.passed, "{:?}", report.failures().collect::<Vec<_>>());
        for cert in &w.certificates {
            assert!(cert.tail_bound && cert.legendre);
        }
        assert_eq!(w.certificates[1].property_ii, Some(true));

        // the witness survives a JSON round trip and still verifies
        let text = serde_json::to_string(&w).unwrap();
        let back: EMWitness = serde_json::from_str(&text).unwrap();
        assert!(em_verify(&back, &c).passed);

        let mut bad = w.clone();
        bad.certificates[1].u += 1u32;
        let r = em_verify(&bad, &c);
        assert!(!r.passed);
        assert!(!r.check("smoothness", Some(s2)).unwrap().passed);

        let mut bad = w.clone();
        bad.digits[s2 - 1] = BigUint::from(5u32).pow(3u32.pow(s2 as u32));
        let r = em_verify(&bad, &c);
        assert!(!r.check("property_ii", Some(s2)).unwrap().passed);

        let mut bad = w.clone();
        bad.digits[1] = BigUint::from(3u32);
        assert!(!em_verify(&bad, &c).passed);

        let mut bad = w.clone();
        bad.certificates[0].v += 1u32;
        assert!(!em_verify(&bad, &c).passed);
    }

    #[test]
    fn other_prime_sets() {
        let c = cfg(&[2, 7], &[3], 2, 5);
        let w = em_build(&c).unwrap();
        let r = em_verify(&w, &c);
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn deeper_stages_exhaust_the_budget() {
        let mut c = cfg(&[2, 3], &[5], 3, 0);
        c.bit_budget = 1 << 16;
        assert!(matches!(em_build(&c), Err(Error::StageSelectionExhausted { stage: 3, .. })));
    }
}
