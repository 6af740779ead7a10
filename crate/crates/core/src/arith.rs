//! Exact integer primitives: gcd, primality, factorization, modular
//! exponentiation, the Legendre symbol, and primes in arithmetic progressions.
//!
//! Primality and factorization are deterministic and exact for all inputs
//! below 2^64; larger inputs are rejected rather than answered probabilistically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Greatest common divisor; gcd(0, 0) = 0.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Prime factorization of a positive integer below 2^64, with the distinct
/// prime count tau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: BigInt,
    /// (prime, exponent) pairs, primes strictly increasing.
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Number of distinct prime divisors.
    pub fn tau(&self) -> usize {
        self.factors.len()
    }

    /// Recomputes the product of prime powers.
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Strong-probable-prime test to the given base.
fn sprp(n: u64, base: u64) -> bool {
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = pow_mod_u64(base % n, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for all n < 2^64.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// have no strong pseudoprime below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .all(|&b| sprp(n, b))
}

fn to_u64_checked(n: &BigInt, what: &str) -> Result<u64> {
    n.to_u64().ok_or_else(|| {
        Error::UnsupportedRange(format!(
            "{what} = {n} exceeds 2^64; exact answers are only guaranteed below that bound"
        ))
    })
}

/// Exact primality test; inputs at or above 2^64 are rejected.
pub fn is_prime(n: &BigInt) -> Result<bool> {
    if n < &BigInt::one() {
        return Err(Error::InvalidInput(format!("is_prime requires n >= 1, got {n}")));
    }
    Ok(is_prime_u64(to_u64_checked(n, "n")?))
}

// Brent's cycle-finding variant of Pollard rho. n must be composite and odd.
fn brent_rho(n: u64) -> u64 {
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    // Unreachable for composite odd n in practice; fall back to trial division.
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

/// Factors a positive integer below 2^64 into (prime, exponent) pairs,
/// primes strictly increasing. Returns an empty list for n = 1.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    // Small primes first; rho only sees rough cofactors.
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut found: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            found.push(m);
            continue;
        }
        let d = brent_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    found.sort_unstable();
    for p in found {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

/// Factorization with exact primality certification of every factor.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n < &BigInt::one() {
        return Err(Error::InvalidInput(format!("factorize requires n >= 1, got {n}")));
    }
    let small = to_u64_checked(n, "n")?;
    let factors = factorize_u64(small)
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e))
        .collect();
    Ok(Factorization { n: n.clone(), factors })
}

/// base^exp mod modulus, exact; result is in [0, modulus).
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if modulus < &BigInt::one() {
        return Err(Error::InvalidInput(format!("modulus must be >= 1, got {modulus}")));
    }
    if exp.is_negative() {
        return Err(Error::InvalidInput(format!("exponent must be >= 0, got {exp}")));
    }
    let b = base.mod_floor(modulus);
    Ok(b.modpow(exp, modulus))
}

/// Legendre symbol (a/p) for an odd prime p: 0 if p | a, +1 if a is a nonzero
/// quadratic residue mod p, -1 otherwise. Computed by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i32> {
    let two = BigInt::from(2);
    if p < &BigInt::from(3) || p.is_even() || !is_prime(p)? {
        return Err(Error::InvalidModulus(p.to_string()));
    }
    let r = a.mod_floor(p);
    if r.is_zero() {
        return Ok(0);
    }
    let e = (p - BigInt::one()) / &two;
    let v = r.modpow(&e, p);
    if v.is_one() {
        Ok(1)
    } else if v == p - BigInt::one() {
        Ok(-1)
    } else {
        // Euler's criterion yields only ±1 mod p when p is prime.
        unreachable!("Euler criterion returned {v} for prime modulus {p}")
    }
}

/// The `count` smallest primes congruent to s mod t, in increasing order.
/// Requires gcd(s, t) = 1.
pub fn primes_in_progression(s: &BigInt, t: &BigInt, count: usize) -> Result<Vec<u64>> {
    if t < &BigInt::one() {
        return Err(Error::InvalidInput(format!("modulus t must be >= 1, got {t}")));
    }
    let g = s.gcd(t);
    if !g.is_one() {
        return Err(Error::NotCoprime {
            s: s.to_string(),
            t: t.to_string(),
            g: g.to_string(),
        });
    }
    let t = to_u64_checked(t, "t")?;
    let s = to_u64_checked(&s.mod_floor(&BigInt::from(t)), "s mod t")?;
    let mut out = Vec::with_capacity(count);
    let mut candidate = if s == 0 { t } else { s };
    while out.len() < count {
        if is_prime_u64(candidate) {
            out.push(candidate);
        }
        candidate = candidate.checked_add(t).ok_or_else(|| {
            Error::UnsupportedRange("prime search exceeded 2^64".into())
        })?;
    }
    Ok(out)
}
