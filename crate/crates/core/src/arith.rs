//! Arbitrary-precision integer helpers used throughout the algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub use num_rational::BigRational;

pub fn big(i: i64) -> BigInt {
    BigInt::from(i)
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g` and `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Prime factorization by trial division; `n` must be >= 1.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    assert!(n.is_positive() || n.is_one(), "factorize needs n >= 1");
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    let mut p = big(2);
    while &p * &p <= m {
        while (&m % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0u32) += 1;
            m = &m / &p;
        }
        p += 1;
    }
    if !m.is_one() {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

pub fn prime_factors(n: &BigInt) -> BTreeSet<BigInt> {
    factorize(n).into_keys().collect()
}

pub fn is_prime(n: &BigInt) -> bool {
    if *n < big(2) {
        return false;
    }
    let f = factorize(n);
    f.len() == 1 && f.values().all(|&e| e == 1)
}

/// Largest divisor of `d` coprime to every prime in `primes`; `d >= 1`.
pub fn coprime_part(d: &BigInt, primes: &BTreeSet<BigInt>) -> BigInt {
    let mut m = d.clone();
    for p in primes {
        while (&m % p).is_zero() {
            m = &m / p;
        }
    }
    m
}

/// Largest divisor of `d` supported on `primes` (the complementary part).
pub fn smooth_part(d: &BigInt, primes: &BTreeSet<BigInt>) -> BigInt {
    d / coprime_part(d, primes)
}

/// Canonical residue of `a` modulo `m > 0`, in `[0, m)`.
pub fn reduce_mod(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m > 0`; `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, s, _) = ext_gcd(a, m);
    if g.is_one() {
        Some(reduce_mod(&s, m))
    } else {
        None
    }
}
