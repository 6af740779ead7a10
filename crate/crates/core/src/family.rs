//! Construction of slope families: targets N = 4m built from Dirichlet primes
//! congruent to 7 mod 12, enumeration of all admissible representations
//! N = p^2 + 12 q^2, and the invariant sequences
//!
//!   n_k = -3 A (2 + 3k) + 9,
//!   D_k = A n_k^2 + 2 + 3k,      A = p^2 + 12 q^2,
//!
//! together with the certificate that D_k agrees across the family, is
//! congruent to 2 mod 3, and is strictly increasing in k.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, Factorization};
use crate::slopes::Slope;
use crate::{Error, Result};

/// A target N with its admissible positive-quadrant slopes p/q, each
/// satisfying p^2 + 12 q^2 = N, 4 | p, 3 not dividing p, gcd(p, q) = 1.
#[derive(Debug, Clone)]
pub struct SlopeFamily {
    pub n: BigInt,
    /// Sorted by p, pairwise distinct.
    pub slopes: Vec<Slope>,
    pub provenance: Factorization,
}

impl SlopeFamily {
    /// Assemble a family without re-deriving the slopes; used by the
    /// certificate fault-injection path and by deserialization.
    pub fn from_parts(n: BigInt, slopes: Vec<Slope>, provenance: Factorization) -> Self {
        SlopeFamily { n, slopes, provenance }
    }

    /// Signed representation count: each positive-quadrant pair stands for
    /// the four sign combinations.
    pub fn signed_count(&self) -> usize {
        self.slopes.len() * 4
    }
}

/// One row of the invariant table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariant {
    pub k: u64,
    pub n_k: BigInt,
    pub d_k: BigInt,
}

/// Smallest tau with 2^(tau - 1) >= n: the number of distinct primes the
/// constructed m needs for n positive-quadrant pairs.
fn tau_for(n: u64) -> u32 {
    let mut t = 1u32;
    while (1u128 << (t - 1)) < n as u128 {
        t += 1;
    }
    t
}

/// Builds N = 4m with m a product of distinct primes, m congruent to 7 mod
/// 12, all prime divisors congruent to 1 or 7 mod 12, and the number of
/// primes congruent to 7 mod 12 odd, such that N has at least n
/// positive-quadrant admissible representations.
///
/// The menu is the smallest primes congruent to 7 mod 12; when an even
/// prime count is needed, the smallest prime congruent to 1 mod 12 fills
/// the last spot so the 7-class count stays odd.
pub fn construct_n(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let tau = tau_for(n);
    let mut primes: Vec<u64> = if tau % 2 == 1 {
        arith::primes_in_progression(&BigInt::from(7), &BigInt::from(12), tau as usize)?
    } else {
        let mut v = arith::primes_in_progression(&BigInt::from(7), &BigInt::from(12), tau as usize - 1)?;
        v.extend(arith::primes_in_progression(&BigInt::from(1), &BigInt::from(12), 1)?);
        v
    };
    primes.sort_unstable();
    construct_n_from_primes(&primes)
}

/// Builds N = 4 * product(primes) from an explicit prime menu, validating
/// the hypotheses the representation count depends on.
pub fn construct_n_from_primes(primes: &[u64]) -> Result<BigInt> {
    if primes.is_empty() {
        return Err(Error::InvalidInput("prime menu must be nonempty".into()));
    }
    let mut seen = primes.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != primes.len() {
        return Err(Error::InvalidInput("prime menu contains duplicates".into()));
    }
    let mut odd_class_count = 0u32;
    let mut m = BigInt::one();
    for &p in primes {
        if !arith::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        match p % 12 {
            7 => odd_class_count += 1,
            1 => {}
            r => {
                return Err(Error::InvalidInput(format!(
                    "prime {p} is congruent to {r} mod 12, required 1 or 7"
                )))
            }
        }
        m *= BigInt::from(p);
    }
    if odd_class_count % 2 == 0 {
        return Err(Error::InvalidInput(
            "the count of primes congruent to 7 mod 12 must be odd".into(),
        ));
    }
    Ok(BigInt::from(4) * m)
}

/// All positive-quadrant admissible representations N = p^2 + 12 q^2,
/// sorted by p. The list length equals 2^(tau(N) - 2).
pub fn find_family(n: &BigInt) -> Result<SlopeFamily> {
    let expected = crate::reps::count_n_representations(n)?;
    let provenance = arith::factorize(n)?;
    let n_u64 = n
        .to_u64()
        .ok_or_else(|| Error::UnsupportedRange(format!("N = {n} exceeds 2^64")))?;
    let mut slopes = Vec::new();
    let q_max = (n_u64 / 12).sqrt();
    for q in 1..=q_max {
        let rest = n_u64 as u128 - 12 * q as u128 * q as u128;
        let p = (rest as u64).sqrt();
        if p as u128 * p as u128 != rest || p == 0 || p % 4 != 0 {
            continue;
        }
        // Proper representations only; improper ones exist when N/4 is not
        // squarefree, e.g. (28, 7) for N = 1372.
        if num_integer::gcd(p, q) != 1 {
            continue;
        }
        // 3 does not divide p is automatic for proper representations of a
        // valid N; assert rather than filter.
        debug_assert!(p % 3 != 0);
        slopes.push(Slope::new(BigInt::from(p), BigInt::from(q))?);
    }
    slopes.sort_by(|a, b| a.p().cmp(b.p()));
    let fam = SlopeFamily { n: n.clone(), slopes, provenance };
    let positive = BigInt::from(fam.slopes.len());
    if BigInt::from(4) * &positive != expected {
        return Err(Error::CertificateFailure {
            clause: "count".into(),
            detail: format!(
                "found {positive} positive-quadrant pairs for N = {n}, formula predicts {} signed",
                expected
            ),
        });
    }
    Ok(fam)
}

/// The invariant rows (k, n_k, D_k) for k = 1..=k_max, exact.
pub fn surface_invariants(a: &BigInt, k_max: u64) -> Vec<SurfaceInvariant> {
    (1..=k_max)
        .map(|k| {
            let stretch = BigInt::from(2 + 3 * i128::from(k));
            let n_k = BigInt::from(-3) * a * &stretch + 9;
            let d_k = a * &n_k * &n_k + &stretch;
            SurfaceInvariant { k, n_k, d_k }
        })
        .collect()
}

/// Certificate over a family: per-pair agreement of D_k, congruence
/// D_k = 2 mod 3, strict monotonicity in k, and slope admissibility and
/// distinctness. Any failed check is an error naming the clause.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub n: BigInt,
    pub k_max: u64,
    pub pair_count: usize,
    pub invariants: Vec<SurfaceInvariant>,
    /// Minimum pairwise slope distance, when the family has at least two slopes.
    pub min_distance: Option<BigInt>,
}

pub fn certify_family(fam: &SlopeFamily, k_max: u64) -> Result<Certificate> {
    if fam.slopes.is_empty() {
        return Err(Error::CertificateFailure {
            clause: "iv".into(),
            detail: "family has no slopes".into(),
        });
    }
    // Clause (i): D_k recomputed from each pair individually must agree.
    // Since D_k depends only on A = p^2 + 12 q^2, per-pair A values must
    // all equal N.
    let twelve = BigInt::from(12);
    for s in &fam.slopes {
        let a = s.p() * s.p() + &twelve * s.q() * s.q();
        if a != fam.n {
            return Err(Error::CertificateFailure {
                clause: "i".into(),
                detail: format!("pair ({}, {}) has p^2 + 12 q^2 = {a}, family N = {}", s.p(), s.q(), fam.n),
            });
        }
    }
    let reference = surface_invariants(&fam.n, k_max);
    for s in &fam.slopes {
        let a = s.p() * s.p() + &twelve * s.q() * s.q();
        let rows = surface_invariants(&a, k_max);
        if rows != reference {
            return Err(Error::CertificateFailure {
                clause: "i".into(),
                detail: format!("invariants from pair ({}, {}) disagree", s.p(), s.q()),
            });
        }
    }
    // Clause (ii): D_k = 2 mod 3 (n_k is divisible by 3).
    let three = BigInt::from(3);
    for row in &reference {
        if row.d_k.mod_floor(&three) != BigInt::from(2) {
            return Err(Error::CertificateFailure {
                clause: "ii".into(),
                detail: format!("D_{} = {} is {} mod 3", row.k, row.d_k, row.d_k.mod_floor(&three)),
            });
        }
    }
    // Clause (iii): strict monotonicity.
    for w in reference.windows(2) {
        if w[1].d_k <= w[0].d_k {
            return Err(Error::CertificateFailure {
                clause: "iii".into(),
                detail: format!("D_{} = {} does not exceed D_{} = {}", w[1].k, w[1].d_k, w[0].k, w[0].d_k),
            });
        }
    }
    // Clause (iv): admissibility and pairwise distinctness.
    let mut min_distance: Option<BigInt> = None;
    for (i, s) in fam.slopes.iter().enumerate() {
        if !s.is_admissible() {
            return Err(Error::CertificateFailure {
                clause: "iv".into(),
                detail: format!("slope {s} is not admissible"),
            });
        }
        for t in &fam.slopes[i + 1..] {
            let d = s.distance(t);
            if d.is_zero() {
                return Err(Error::CertificateFailure {
                    clause: "iv".into(),
                    detail: format!("slopes {s} and {t} coincide"),
                });
            }
            if min_distance.as_ref().map_or(true, |m| &d < m) {
                min_distance = Some(d);
            }
        }
    }
    Ok(Certificate {
        n: fam.n.clone(),
        k_max,
        pair_count: fam.slopes.len(),
        invariants: reference,
        min_distance,
    })
}

/// The 16-pair family the construction yields for N = 7,932,652.
pub const EXAMPLE_N: u64 = 7_932_652;

/// The expected pairs for [`EXAMPLE_N`], sorted by p.
pub const EXAMPLE_PAIRS: [(u64, u64); 16] = [
    (32, 813),
    (200, 811),
    (680, 789),
    (1112, 747),
    (1328, 717),
    (1528, 683),
    (1640, 661),
    (1912, 597),
    (2032, 563),
    (2320, 461),
    (2560, 339),
    (2608, 307),
    (2648, 277),
    (2720, 211),
    (2752, 173),
    (2792, 107),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn construct_small() {
        assert_eq!(construct_n(1).unwrap(), big(28));
        assert_eq!(construct_n(4).unwrap(), big(16492));
        // n = 2 needs tau = 2: one prime from each class.
        assert_eq!(construct_n(2).unwrap(), big(4 * 7 * 13));
    }

    #[test]
    fn construct_from_explicit_menu() {
        let n = construct_n_from_primes(&[7, 13, 19, 31, 37]).unwrap();
        assert_eq!(n, big(7_932_652));
        assert!(construct_n_from_primes(&[7, 19]).is_err()); // even 7-class count
        assert!(construct_n_from_primes(&[5, 7]).is_err()); // 5 = 5 mod 12
        assert!(construct_n_from_primes(&[7, 7]).is_err()); // duplicate
    }

    #[test]
    fn family_for_28() {
        let fam = find_family(&big(28)).unwrap();
        assert_eq!(fam.slopes.len(), 1);
        assert_eq!(fam.slopes[0].p(), &big(4));
        assert_eq!(fam.slopes[0].q(), &big(1));
    }

    #[test]
    fn family_for_16492() {
        let fam = find_family(&big(16492)).unwrap();
        assert_eq!(fam.slopes.len(), 4);
        assert_eq!(fam.signed_count(), 16);
    }

    #[test]
    fn family_rejects_bad_n() {
        assert!(find_family(&big(30)).is_err());
        assert!(find_family(&big(20)).is_err()); // m = 5
    }

    #[test]
    fn invariants_for_28() {
        let rows = surface_invariants(&big(28), 2);
        assert_eq!(rows[0].n_k, big(-411));
        assert_eq!(rows[0].d_k, big(4_729_793));
        assert_eq!(rows[0].d_k.mod_floor(&big(3)), big(2));
        assert!(rows[1].d_k > rows[0].d_k);
    }

    #[test]
    fn invariants_exceed_machine_range() {
        let rows = surface_invariants(&BigInt::from(EXAMPLE_N), 3);
        for w in rows.windows(2) {
            assert!(w[1].d_k > w[0].d_k);
        }
        let bound = BigInt::from(u64::MAX);
        assert!(rows[0].d_k > bound);
        // Round-trip through the decimal encoding.
        let s = rows[0].d_k.to_string();
        assert_eq!(s.parse::<BigInt>().unwrap(), rows[0].d_k);
    }

    #[test]
    fn certificate_passes_for_small_families() {
        for n in [28i64, 16492] {
            let fam = find_family(&big(n)).unwrap();
            let cert = certify_family(&fam, 10).unwrap();
            assert_eq!(cert.invariants.len(), 10);
        }
    }

    #[test]
    fn certificate_detects_corrupted_pair() {
        let mut fam = find_family(&BigInt::from(EXAMPLE_N)).unwrap();
        let last = fam.slopes.len() - 1;
        fam.slopes[last] = Slope::new(32, 814).unwrap();
        let err = certify_family(&fam, 5).unwrap_err();
        match err {
            Error::CertificateFailure { clause, .. } => assert_eq!(clause, "i"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn certificate_detects_duplicate_slope() {
        let fam = find_family(&big(28)).unwrap();
        let doubled = SlopeFamily::from_parts(
            fam.n.clone(),
            vec![fam.slopes[0].clone(), fam.slopes[0].clone()],
            fam.provenance.clone(),
        );
        let err = certify_family(&doubled, 3).unwrap_err();
        match err {
            Error::CertificateFailure { clause, .. } => assert_eq!(clause, "iv"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
