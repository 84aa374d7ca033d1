use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use convlab_core::cfrac::{expand_interval, ContinuedFractionExpansion};
use convlab_core::construct::{alternating_build, em_build, em_verify, EMConfig, EMWitness};
use convlab_core::smooth::PrimeSet;
use convlab_core::RationalInterval;

fn cfg(s: &str, t: &str, depth: usize, seed: u64) -> EMConfig {
    EMConfig::new(PrimeSet::parse(s).unwrap(), PrimeSet::parse(t).unwrap(), depth, seed).unwrap()
}

/// Free digits of a witness: `a_i` for non-stage indices.
fn free_digits(w: &EMWitness) -> Vec<BigUint> {
    (1..=w.digits.len())
        .filter(|i| !w.stages.contains(i))
        .map(|i| w.digit(i).clone())
        .collect()
}

/// `theta` lies in `[(U + 1) / V, (U + 4) / V]` with `V = t^(3^(s+1))` and
/// `U / V = u / v` for the last stage `s`; digit `s + 1` is free, hence >= 1.
fn enclosure(w: &EMWitness) -> RationalInterval {
    let last = w.certificates.last().unwrap();
    let t = BigInt::from(w.config.base());
    let s = last.index as u32;
    let (e_s, e_i) = (3u32.pow(s), 3u32.pow(s + 1));
    let lo = num_rational::BigRational::new(
        BigInt::from(last.u.clone()) * t.pow(e_i - e_s) + 1,
        t.pow(e_i),
    );
    let hi = num_rational::BigRational::new(
        BigInt::from(last.u.clone()) * t.pow(e_i - e_s) + 4,
        t.pow(e_i),
    );
    RationalInterval::new(lo, hi).unwrap()
}

fn is_convergent(cfe: &ContinuedFractionExpansion, u: &BigUint, v: &BigUint) -> bool {
    let g = num_integer::Integer::gcd(u, v);
    let (p, q) = (BigInt::from(u / &g), BigInt::from(v / &g));
    cfe.p().iter().zip(cfe.q()).any(|(pk, qk)| *pk == p && *qk == q)
}

#[test]
fn depth_two_verifies_for_ten_seeds() {
    for seed in 0..10 {
        let c = cfg("2,3", "5", 2, seed);
        let w = em_build(&c).unwrap();
        let report = em_verify(&w, &c);
        assert!(report.passed, "seed {seed}: {:?}", report.failures().collect::<Vec<_>>());
        assert!(free_digits(&w).iter().all(|d| *d == BigUint::one() || *d == BigUint::from(2u32)));
    }
}

#[test]
fn ten_seeds_give_ten_distinct_digit_vectors() {
    let vectors: BTreeSet<Vec<BigUint>> = (0..10u64)
        .map(|seed| em_build(&cfg("2,3", "5", 2, seed)).unwrap().digits)
        .collect();
    assert_eq!(vectors.len(), 10, "seeds 0..9 give {} distinct digit vectors", vectors.len());
}

/// `theta_n * t^(3^n)` for `n = digits.len()`, by Horner over the digits.
fn partial_numerator(t: &BigUint, digits: &[BigUint]) -> BigUint {
    let mut u = BigUint::zero();
    for (i, d) in digits.iter().enumerate() {
        let e = 3u32.pow(i as u32 + 1) - if i == 0 { 0 } else { 3u32.pow(i as u32) };
        u = u * t.pow(e) + d;
    }
    u
}

#[test]
fn distinct_free_digits_give_distinct_partial_sums() {
    let t = BigUint::from(5u32);
    let mut seen: Vec<(Vec<BigUint>, usize, BigUint)> = Vec::new();
    for seed in 0..24u64 {
        let w = em_build(&cfg("2,3", "5", 2, seed)).unwrap();
        let s = w.stages[1];
        let before = &w.digits[..s - 1];
        seen.push((free_digits(&w), s, partial_numerator(&t, before)));
    }
    for (i, (fa, sa, ua)) in seen.iter().enumerate() {
        for (fb, sb, ub) in &seen[i + 1..] {
            if sa == sb {
                assert_eq!(fa == fb, ua == ub);
            }
        }
    }
}

#[test]
fn stage_truncations_are_convergents() {
    for (s, t) in [("2,3", "5"), ("2,7", "3")] {
        let w = em_build(&cfg(s, t, 2, 0)).unwrap();
        let cfe = expand_interval(&enclosure(&w), 1 << 16);
        assert!(cfe.len() > 3);
        for c in &w.certificates {
            assert!(is_convergent(&cfe, &c.u, &c.v), "stage {} of S={s}, T={t}", c.index);
        }
    }
}

#[test]
fn tampered_witness_json_fails_verification() {
    let c = cfg("2,3", "5", 2, 3);
    let w = em_build(&c).unwrap();
    let text = serde_json::to_string(&w).unwrap();
    let back: EMWitness = serde_json::from_str(&text).unwrap();
    assert!(em_verify(&back, &c).passed);
    let mut bad = back.clone();
    let s = bad.stages[1];
    bad.digits[s - 1] += 1u32;
    assert!(!em_verify(&bad, &c).passed);
    let mut bad = back.clone();
    bad.certificates[1].smooth_exponents[0] += 1;
    assert!(!em_verify(&bad, &c).passed);
    let mut bad = back;
    bad.digits[1] = BigUint::from(3u32);
    assert!(!em_verify(&bad, &c).passed);
}

#[test]
fn alternating_denominators_satisfy_the_convergent_recurrence() {
    let w = alternating_build(1, 1, 4).unwrap();
    assert!(w.is_complete());
    let cfe = w.expansion().unwrap();
    let (a, q) = (cfe.a(), cfe.q());
    for k in 1..cfe.last_index() {
        assert_eq!(q[k + 1], &a[k + 1] * &q[k] + &q[k - 1]);
    }
    let powers: Vec<BigInt> = w.denominators.iter().map(|d| BigInt::from(d.value())).collect();
    for p in &powers {
        assert!(q.contains(p), "{p} is not a denominator");
    }
    let primes: Vec<u32> = w.denominators.iter().map(|d| d.prime).collect();
    assert!(primes.windows(2).all(|x| x[0] != x[1]));
    assert!(!q.iter().any(Zero::is_zero));
}
