//! Proper representations of integers by positive-definite forms: exhaustive
//! enumeration over the ellipse f(x, y) = m, and the closed-form counts
//! (Gauss's aggregate count over a discriminant class, the 2^(tau(m)+1) count
//! for 3x^2 + 4y^2, and the 2^(tau(N)) count for N = p^2 + 12q^2 with 4 | p).
//!
//! Counts follow the signed convention: (x, y) and (-x, -y) are separate
//! entries. Positive-quadrant counts are signed / 4 for diagonal forms with
//! x, y both nonzero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::forms::Bqf;
use crate::{Error, Result};

/// All integer solutions of form(x, y) = m, optionally restricted to
/// gcd(x, y) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationSet {
    pub m: BigInt,
    pub form: Bqf,
    /// Lexicographically sorted, distinct signed pairs.
    pub reps: Vec<(BigInt, BigInt)>,
    pub proper_only: bool,
}

impl RepresentationSet {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Exhaustive enumeration of f(x, y) = m over the bounding ellipse.
///
/// For fixed y the equation is quadratic in x with discriminant
/// D y^2 + 4 a m, which is nonnegative only for |y| <= sqrt(4am / -D);
/// every solution is found by testing whether that discriminant is a
/// perfect square.
pub fn enumerate_representations(f: &Bqf, m: &BigInt, proper_only: bool) -> Result<RepresentationSet> {
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite {
            a: f.a.to_string(),
            b: f.b.to_string(),
            c: f.c.to_string(),
        });
    }
    if !m.is_positive() {
        return Err(Error::InvalidInput(format!("m must be positive, got {m}")));
    }
    let disc = f.discriminant();
    let four_am = BigInt::from(4) * &f.a * m;
    let y_bound = (&four_am / -&disc).sqrt();
    let two_a = BigInt::from(2) * &f.a;
    let mut reps = Vec::new();
    let mut y = -&y_bound;
    while y <= y_bound {
        let dx = &disc * &y * &y + &four_am;
        if !dx.is_negative() {
            let s = dx.sqrt();
            if &s * &s == dx {
                for root in [&s, &(-&s)] {
                    let num = -(&f.b) * &y + root;
                    if (&num % &two_a).is_zero() {
                        let x = num / &two_a;
                        if !proper_only || x.gcd(&y).is_one() {
                            reps.push((x, y.clone()));
                        }
                    }
                    if s.is_zero() {
                        break;
                    }
                }
            }
        }
        y += 1;
    }
    reps.sort();
    reps.dedup();
    Ok(RepresentationSet { m: m.clone(), form: f.clone(), reps, proper_only })
}

/// Gauss's count: the number of proper representations of odd m, coprime to
/// k > 1, summed over all reduced forms of discriminant -4k. Equals
/// 2 * prod over distinct primes p | m of (1 + legendre(-k, p)).
pub fn gauss_count(m: &BigInt, k: &BigInt) -> Result<BigInt> {
    if !m.is_positive() || m.is_even() {
        return Err(Error::PreconditionViolated(format!("m must be positive and odd, got {m}")));
    }
    if k <= &BigInt::one() {
        return Err(Error::PreconditionViolated(format!("k must be > 1, got {k}")));
    }
    let g = m.gcd(k);
    if !g.is_one() {
        return Err(Error::PreconditionViolated(format!("gcd(m, k) = {g} != 1")));
    }
    let fact = arith::factorize(m)?;
    let mut acc = BigInt::from(2);
    for (p, _) in &fact.factors {
        let sym = arith::legendre(&-k.clone(), p)?;
        acc *= BigInt::from(1 + i64::from(sym));
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn check_m_hypotheses(m: &BigInt) -> Result<arith::Factorization> {
    let twelve = BigInt::from(12);
    if m.mod_floor(&twelve) != BigInt::from(7) {
        return Err(Error::HypothesisViolated(format!(
            "m = {m} is congruent to {} mod 12, required 7",
            m.mod_floor(&twelve)
        )));
    }
    let fact = arith::factorize(m)?;
    for (p, _) in &fact.factors {
        let r = p.mod_floor(&twelve);
        if !(r.is_one() || r == BigInt::from(7)) {
            return Err(Error::HypothesisViolated(format!(
                "prime divisor {p} of {m} is congruent to {r} mod 12, required 1 or 7"
            )));
        }
    }
    Ok(fact)
}

/// The number of proper representations of m by 3x^2 + 4y^2, namely
/// 2^(tau(m)+1), for m congruent to 7 mod 12 with every prime divisor
/// congruent to 1 or 7 mod 12.
pub fn count_by_3_4_form(m: &BigInt) -> Result<BigInt> {
    let fact = check_m_hypotheses(m)?;
    Ok(BigInt::one() << (fact.tau() + 1))
}

/// The number of proper representations N = p^2 + 12 q^2 with 4 | p and
/// 3 not dividing p, namely 2^(tau(N)), for N = 4m with m as in
/// [`count_by_3_4_form`]. The bijection is p = 4r against m = 3q^2 + 4r^2.
pub fn count_n_representations(n: &BigInt) -> Result<BigInt> {
    let four = BigInt::from(4);
    if !(n % &four).is_zero() {
        return Err(Error::HypothesisViolated(format!("N = {n} is not divisible by 4")));
    }
    let m = n / &four;
    let fact = check_m_hypotheses(&m)?;
    // tau(N) = tau(m) + 1 since m is odd.
    Ok(BigInt::one() << (fact.tau() + 1))
}
