//! Boundary-slope arithmetic: reduced fractions p/q with infinity = 1/0,
//! the intersection distance |ps - qr|, and the admissibility predicate
//! (4 | p, 3 does not divide p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// A slope p/q in lowest terms with q > 0, or 1/0 for infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    /// Canonicalize (p, q): divide out the gcd, then normalize so q > 0
    /// (or p = 1 when q = 0).
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroPair);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn infinity() -> Self {
        Slope { p: BigInt::from(1), q: BigInt::zero() }
    }

    /// Distance |p s - q r| to the slope r/s.
    pub fn distance(&self, other: &Slope) -> BigInt {
        (&self.p * &other.q - &self.q * &other.p).abs()
    }

    /// 4 | p and 3 does not divide p.
    pub fn is_admissible(&self) -> bool {
        (&self.p % BigInt::from(4)).is_zero() && !(&self.p % BigInt::from(3)).is_zero()
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}
