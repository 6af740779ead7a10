//! Property-based invariants across the library.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qfslopes::forms::{apply_change, enumerate_reduced, properly_equivalent, reduce, Bqf, UnimodularChange};
use qfslopes::slopes::Slope;
use qfslopes::{arith, family, reps};

fn primitive_pos_def_form() -> impl Strategy<Value = Bqf> {
    (1i64..=30, -30i64..=30, 1i64..=60)
        .prop_map(|(a, b, c)| Bqf::new(a, b, c))
        .prop_filter("positive definite and primitive", |f| {
            f.is_positive_definite() && f.is_primitive()
        })
}

fn unimodular_change() -> impl Strategy<Value = UnimodularChange> {
    (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5)
        .prop_map(|(p, q, r, s)| UnimodularChange::new(p, q, r, s))
        .prop_filter("determinant 1", |u| u.determinant().is_one())
}

proptest! {
    #[test]
    fn bigint_decimal_round_trip(digits in "[1-9][0-9]{0,40}", negate in any::<bool>()) {
        let text = if negate { format!("-{digits}") } else { digits };
        let n: BigInt = text.parse().unwrap();
        prop_assert_eq!(n.to_string(), text);
    }

    #[test]
    fn discriminant_invariant_under_change(f in primitive_pos_def_form(), u in unimodular_change()) {
        let g = apply_change(&f, &u).unwrap();
        prop_assert_eq!(g.discriminant(), f.discriminant());
    }

    #[test]
    fn reduction_sound_and_witnessed(f in primitive_pos_def_form()) {
        let (g, u) = reduce(&f).unwrap();
        prop_assert!(g.is_reduced().unwrap());
        prop_assert!(u.determinant().is_one());
        prop_assert_eq!(apply_change(&f, &u).unwrap(), g.clone());
        prop_assert!(properly_equivalent(&f, &g).unwrap());
        // Idempotence.
        let (g2, _) = reduce(&g).unwrap();
        prop_assert_eq!(g2, g);
    }

    #[test]
    fn reduced_forms_respect_class_bound(k in 1i64..=100) {
        let disc = BigInt::from(-4 * k);
        for f in enumerate_reduced(&disc).unwrap() {
            // -D = 4ac - b^2 >= 3a^2.
            prop_assert!(BigInt::from(3) * &f.a * &f.a <= -f.discriminant());
            prop_assert_eq!(f.discriminant(), disc.clone());
        }
    }

    #[test]
    fn slope_distance_scale_invariant(p in -50i64..=50, q in -50i64..=50,
                                      r in -50i64..=50, s in -50i64..=50,
                                      scale in prop_oneof![-9i64..=-1, 1i64..=9]) {
        prop_assume!((p, q) != (0, 0) && (r, s) != (0, 0));
        let a = Slope::new(p, q).unwrap();
        let b = Slope::new(r, s).unwrap();
        let scaled = Slope::new(p * scale, q * scale).unwrap();
        prop_assert_eq!(scaled.clone(), a.clone());
        prop_assert_eq!(a.distance(&b), b.distance(&a));
        prop_assert_eq!(a.distance(&b) == BigInt::zero(), a == b);
    }

    #[test]
    fn mod_pow_matches_repeated_multiplication(base in -40i64..=40, exp in 0u32..=12, modulus in 1i64..=200) {
        let m = BigInt::from(modulus);
        let fast = arith::mod_pow(&BigInt::from(base), &BigInt::from(exp), &m).unwrap();
        let mut slow = BigInt::one();
        for _ in 0..exp {
            slow = (slow * base).mod_floor(&m);
        }
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn factorization_reconstructs_random_64bit(n in 2u64..) {
        let f = arith::factorize(&BigInt::from(n)).unwrap();
        prop_assert_eq!(f.product(), BigInt::from(n));
        for (p, _) in &f.factors {
            prop_assert!(arith::is_prime(p).unwrap());
        }
    }

    #[test]
    fn invariant_sequences_well_defined(a in 1i64..=100_000, k in 1u64..=50) {
        let a = BigInt::from(a);
        let rows = family::surface_invariants(&a, k);
        let last = rows.last().unwrap();
        // n_k is divisible by 3, hence D_k = A n_k^2 + 2 + 3k = 2 mod 3.
        prop_assert!(last.n_k.mod_floor(&BigInt::from(3)).is_zero());
        prop_assert_eq!(last.d_k.mod_floor(&BigInt::from(3)), BigInt::from(2));
        for w in rows.windows(2) {
            prop_assert!(w[1].d_k > w[0].d_k);
        }
    }

    #[test]
    fn representation_sets_closed_under_negation(f in primitive_pos_def_form(), m in 1i64..=500) {
        let set = reps::enumerate_representations(&f, &BigInt::from(m), true).unwrap();
        for (x, y) in &set.reps {
            prop_assert_eq!(f.eval(x, y), BigInt::from(m));
            prop_assert!(x.gcd(y).is_one());
            prop_assert!(set.reps.contains(&(-x, -y)));
        }
        // Diagonal forms admit independent sign flips.
        if f.b.is_zero() {
            for (x, y) in &set.reps {
                prop_assert!(set.reps.contains(&(-x, y.clone())));
                prop_assert!(set.reps.contains(&(x.clone(), -y)));
            }
            let both_nonzero = set.reps.iter().filter(|(x, y)| !x.is_zero() && !y.is_zero()).count();
            prop_assert_eq!(both_nonzero % 4, 0);
        }
    }
}
