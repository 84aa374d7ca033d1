//! Cyclotomic polynomials and root-of-unity detection.

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::IntPolynomial;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Phi_m(x)`, from `x^m - 1 = prod_{d | m} Phi_d(x)`.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1);
    let mut p = IntPolynomial::monomial(BigInt::one(), m as usize);
    p = &p - &IntPolynomial::one();
    for d in 1..m {
        if m % d == 0 {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic factor divides");
        }
    }
    p
}

/// Orders `m >= 1` whose `Phi_m` may divide a polynomial of degree `deg`:
/// `phi(m) <= deg`, which forces `m <= 2 deg^2`.
pub fn candidate_orders(deg: usize) -> impl Iterator<Item = u64> {
    let deg = deg as u64;
    (1..=2 * deg * deg).filter(move |&m| euler_phi(m) <= deg)
}

/// Splits the squarefree part of `f` into its cyclotomic factors and the rest.
/// Returns the rest and the orders `m` with `Phi_m | f`.
pub fn strip_cyclotomic(f: &IntPolynomial) -> (IntPolynomial, Vec<u64>) {
    let mut rest = f.squarefree_part();
    let mut orders = Vec::new();
    for m in candidate_orders(rest.degree()) {
        if rest.degree() == 0 {
            break;
        }
        let phi = cyclotomic(m);
        if phi.degree() > rest.degree() {
            continue;
        }
        if let Some(q) = rest.div_exact(&phi) {
            rest = q;
            orders.push(m);
        }
    }
    (rest, orders)
}
