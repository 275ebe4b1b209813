//! Divisors, Möbius, Jordan totients and the two gcd gadgets `frak_m` and
//! `frak_n` that route twisted zeta functions and eigenvalue orders through
//! the suspension and k-LYS formulas.
//!
//! Arguments are arbitrary precision. Positivity preconditions are checked
//! with assertions; user input is validated before it reaches this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

fn assert_pos(n: &BigInt, what: &str) {
    assert!(n.is_positive(), "{what} must be a positive integer, got {n}");
}

/// Prime factorization by trial division, primes ascending.
fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut e = 0;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, strictly increasing.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert_pos(n, "n");
    let mut ds = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                ds.push(&ds[i] * &pk);
            }
        }
    }
    ds.sort();
    ds
}

/// Möbius function.
pub fn mobius(n: &BigInt) -> i32 {
    assert_pos(n, "n");
    let f = factor(n);
    if f.iter().any(|(_, e)| *e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Jordan totient `J_m(n) = n^m ∏_{p|n} (1 - p^{-m})`.
pub fn jordan_totient(m: u32, n: &BigInt) -> BigInt {
    assert!(m >= 1, "m must be positive");
    assert_pos(n, "n");
    factor(n).into_iter().fold(BigInt::one(), |acc, (p, e)| {
        let pm = num_traits::pow(p, m as usize);
        acc * num_traits::pow(pm.clone(), (e - 1) as usize) * (pm - 1)
    })
}

/// Euler's totient, `J_1`.
pub fn euler_phi(n: &BigInt) -> BigInt {
    jordan_totient(1, n)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Generator of `{M : l·gcd(k, M) | q·M}`: `l₁·gcd(k, l₁^∞)` with
/// `l₁ = l / gcd(l, q)`.
pub fn frak_m(k: &BigInt, l: &BigInt, q: &BigInt) -> BigInt {
    assert_pos(k, "k");
    assert_pos(l, "l");
    assert_pos(q, "q");
    let l1 = l / l.gcd(q);
    let mut g = k.gcd(&l1);
    loop {
        let next = k.gcd(&(&g * &l1));
        if next == g {
            break;
        }
        g = next;
    }
    l1 * g
}

/// `(m + k)·n / gcd(n, k)`. `m = 0` is admitted (plain suspensions).
pub fn frak_n(n: &BigInt, m: &BigInt, k: &BigInt) -> BigInt {
    assert_pos(n, "n");
    assert_pos(k, "k");
    assert!(!m.is_negative(), "m must be non-negative");
    (m + k) * n / n.gcd(k)
}

/// Membership in `D(k, l, q) = {M : l·gcd(k, M) | q·M}`.
pub fn in_frak_m_set(k: &BigInt, l: &BigInt, q: &BigInt, big_m: &BigInt) -> bool {
    (q * big_m).is_multiple_of(&(l * k.gcd(big_m)))
}
