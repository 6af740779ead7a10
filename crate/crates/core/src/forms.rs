//! Positive-definite binary quadratic forms: discriminant, primitivity,
//! reducedness, Lagrange reduction with a unimodular witness, proper
//! equivalence, and enumeration of all reduced forms of a negative
//! discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The form a x^2 + b x y + c y^2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bqf {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Bqf {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Bqf { a: a.into(), b: b.into(), c: c.into() }
    }

    /// b^2 - 4ac.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// gcd(a, b, c) = 1.
    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// a > 0 and negative discriminant.
    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    /// Evaluate the form at (x, y).
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    /// Requires a primitive positive-definite form.
    pub fn is_reduced(&self) -> Result<bool> {
        self.check_pos_def()?;
        let babs = self.b.abs();
        if !(babs <= self.a && self.a <= self.c) {
            return Ok(false);
        }
        if (babs == self.a || self.a == self.c) && self.b.is_negative() {
            return Ok(false);
        }
        Ok(true)
    }

    fn check_pos_def(&self) -> Result<()> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite {
                a: self.a.to_string(),
                b: self.b.to_string(),
                c: self.c.to_string(),
            });
        }
        Ok(())
    }

    fn check_primitive(&self) -> Result<()> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive {
                gcd: self.a.gcd(&self.b).gcd(&self.c).to_string(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for Bqf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// The substitution x -> p x + q y, y -> r x + s y with ps - rq = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularChange {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl UnimodularChange {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, r: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        UnimodularChange { p: p.into(), q: q.into(), r: r.into(), s: s.into() }
    }

    pub fn identity() -> Self {
        UnimodularChange::new(1, 0, 0, 1)
    }

    pub fn determinant(&self) -> BigInt {
        &self.p * &self.s - &self.r * &self.q
    }

    /// Matrix product: applying `self` then `other`.
    pub fn compose(&self, other: &UnimodularChange) -> UnimodularChange {
        UnimodularChange {
            p: &self.p * &other.p + &self.q * &other.r,
            q: &self.p * &other.q + &self.q * &other.s,
            r: &self.r * &other.p + &self.s * &other.r,
            s: &self.r * &other.q + &self.s * &other.s,
        }
    }
}

/// The form g with g(x, y) = f(p x + q y, r x + s y). Preserves the
/// discriminant since the determinant is 1.
pub fn apply_change(f: &Bqf, u: &UnimodularChange) -> Result<Bqf> {
    if !u.determinant().is_one() {
        return Err(Error::BadDeterminant(u.determinant().to_string()));
    }
    let a = f.eval(&u.p, &u.r);
    let c = f.eval(&u.q, &u.s);
    let b = BigInt::from(2) * (&f.a * &u.p * &u.q + &f.c * &u.r * &u.s)
        + &f.b * (&u.p * &u.s + &u.q * &u.r);
    Ok(Bqf { a, b, c })
}

/// Lagrange reduction: the unique reduced form properly equivalent to f,
/// plus the witnessing change u with apply_change(f, u) = reduced.
pub fn reduce(f: &Bqf) -> Result<(Bqf, UnimodularChange)> {
    f.check_pos_def()?;
    f.check_primitive()?;
    let mut g = f.clone();
    let mut u = UnimodularChange::identity();
    loop {
        // Normalize b into (-a, a] by x -> x + t y.
        let two_a = BigInt::from(2) * &g.a;
        let t = (-(&g.b) + &g.a).div_floor(&two_a);
        if !t.is_zero() {
            let step = UnimodularChange::new(1, t, 0, 1);
            g = apply_change(&g, &step)?;
            u = u.compose(&step);
        }
        if g.a > g.c {
            // Swap outer coefficients by (x, y) -> (-y, x).
            let step = UnimodularChange::new(0, -1, 1, 0);
            g = apply_change(&g, &step)?;
            u = u.compose(&step);
            continue;
        }
        break;
    }
    // Boundary tie-break: |b| = a or a = c forces b >= 0.
    if g.b.is_negative() {
        if g.b.abs() == g.a {
            let step = UnimodularChange::new(1, BigInt::one(), 0, 1);
            g = apply_change(&g, &step)?;
            u = u.compose(&step);
        } else if g.a == g.c {
            let step = UnimodularChange::new(0, -1, 1, 0);
            g = apply_change(&g, &step)?;
            u = u.compose(&step);
        }
    }
    debug_assert!(g.is_reduced()?);
    Ok((g, u))
}

/// All primitive positive-definite reduced forms of the given negative
/// discriminant, sorted lexicographically by (a, b, c). The class number is
/// the list length.
pub fn enumerate_reduced(disc: &BigInt) -> Result<Vec<Bqf>> {
    let residue = disc.mod_floor(&BigInt::from(4));
    if !disc.is_negative() || !(residue.is_zero() || residue.is_one()) {
        return Err(Error::InvalidDiscriminant(disc.to_string()));
    }
    // 0 < a <= sqrt(-D/3), b in [-a, a], c = (b^2 - D) / 4a.
    let bound = (-disc / BigInt::from(3)).sqrt();
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while a <= bound {
        let mut b = -(&a);
        while b <= a {
            let num = &b * &b - disc;
            let den = BigInt::from(4) * &a;
            if (&num % &den).is_zero() {
                let c = num / den;
                let f = Bqf { a: a.clone(), b: b.clone(), c };
                if f.is_primitive() && f.is_positive_definite() && f.is_reduced()? {
                    out.push(f);
                }
            }
            b += 1;
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// True iff f and g reduce to the same reduced form.
pub fn properly_equivalent(f: &Bqf, g: &Bqf) -> Result<bool> {
    Ok(reduce(f)?.0 == reduce(g)?.0)
}
