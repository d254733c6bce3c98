//! Field axioms, projection homomorphism, and CRT recovery properties.

use kerndet_core::{crt_combine, project_mod_p, BigInt, PrimeField, PrimeSampler, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i32>(), 1u32..10_000).prop_map(|(num, den)| {
        Rational::normalize(BigInt::from(num), BigInt::from(den)).unwrap()
    })
}

const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn fp() -> impl Strategy<Value = kerndet_core::Fp> {
    (0..P).prop_map(|r| PrimeField::new(P).unwrap().element(r))
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.sub(&a), Rational::from_i64(0));
    }

    #[test]
    fn prime_field_axioms(a in fp(), b in fp(), c in fp()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn projection_is_a_homomorphism(a in rational(), b in rational()) {
        let field = PrimeField::new(P).unwrap();
        let (pa, pb) = (
            project_mod_p(&a, &field).unwrap(),
            project_mod_p(&b, &field).unwrap(),
        );
        prop_assert_eq!(project_mod_p(&a.add(&b), &field).unwrap(), pa.add(&pb));
        prop_assert_eq!(project_mod_p(&a.sub(&b), &field).unwrap(), pa.sub(&pb));
        prop_assert_eq!(project_mod_p(&a.mul(&b), &field).unwrap(), pa.mul(&pb));
    }

    #[test]
    fn crt_recovers_signed_integers(x in any::<i64>(), seed in any::<u64>()) {
        let mut sampler = PrimeSampler::new(seed);
        let target = BigInt::from(x.unsigned_abs()) * 2;
        let mut residues = Vec::new();
        let mut product = BigInt::from(1);
        // Enough primes that the product exceeds 2|x|, and at least one.
        while product <= target || residues.is_empty() {
            let p = sampler.next_prime();
            residues.push(((x as i128).rem_euclid(p as i128) as u64, p));
            product *= BigInt::from(p);
        }
        prop_assert_eq!(crt_combine(&residues).unwrap(), BigInt::from(x));
    }
}
