use exlie_field::{AnyField, Field, FieldDescriptor, FiniteField, Rationals};
use proptest::prelude::*;

fn small_fields() -> Vec<FiniteField> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        out.push(FiniteField::prime(p).unwrap());
        out.push(FiniteField::quadratic(p).unwrap());
    }
    out.push(FiniteField::prime(11).unwrap());
    out.push(FiniteField::prime(13).unwrap());
    out
}

#[test]
fn exhaustive_axioms_up_to_49_elements() {
    for f in small_fields() {
        let all = f.elements().unwrap();
        assert_eq!(all.len() as u64, f.order().unwrap());
        for a in &all {
            assert_eq!(f.add(a, &f.neg(a)), 0);
            if *a != 0 {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), 1, "{:?}: inverse of {a}", f);
            }
            for b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if *a != 0 && *b != 0 {
                    assert_ne!(f.mul(a, b), 0, "zero divisor in {:?}", f);
                }
                for c in &all {
                    assert_eq!(f.mul(a, &f.mul(b, c)), f.mul(&f.mul(a, b), c));
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn conjugation_is_frobenius_with_prime_fixed_field() {
    for p in [2u64, 3, 5] {
        let f = FiniteField::quadratic(p).unwrap();
        let all = f.elements().unwrap();
        for a in &all {
            assert_eq!(f.conjugate(a), f.pow(a, p), "σ(a) = a^p in {:?}", f);
            assert_eq!(f.conjugate(&f.conjugate(a)), *a);
            for b in &all {
                assert_eq!(f.conjugate(&f.mul(a, b)), f.mul(&f.conjugate(a), &f.conjugate(b)));
                assert_eq!(f.conjugate(&f.add(a, b)), f.add(&f.conjugate(a), &f.conjugate(b)));
            }
        }
        let fixed: Vec<u32> = all.iter().copied().filter(|a| f.conjugate(a) == *a).collect();
        assert_eq!(fixed.len() as u64, p);
        assert!(fixed.iter().all(|a| f.in_prime_field(*a)));
    }
}

#[test]
fn invalid_descriptors_are_rejected() {
    assert!(AnyField::make(&FieldDescriptor::prime(4)).is_err());
    assert!(AnyField::make(&FieldDescriptor::quadratic(3, 0, 2)).is_err());
    assert!(AnyField::make(&FieldDescriptor { kind: exlie_field::FieldKind::Prime, characteristic: 0, modulus: None })
        .is_err());
    assert!("gf(27)".parse::<FieldDescriptor>().is_err());
}

proptest! {
    #[test]
    fn rational_field_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
        let q = Rationals;
        let x = q.div(&q.from_i64(a), &q.from_i64(b)).unwrap();
        let y = q.div(&q.from_i64(c), &q.from_i64(d)).unwrap();
        prop_assert_eq!(q.mul(&x, &q.add(&x, &y)), q.add(&q.mul(&x, &x), &q.mul(&x, &y)));
        if !q.is_zero(&y) {
            prop_assert_eq!(q.mul(&q.div(&x, &y).unwrap(), &y), x.clone());
        }
        prop_assert_eq!(q.parse(&q.format(&x)).unwrap(), x);
    }

    #[test]
    fn gf_p2_pow_matches_repeated_product(a in 0u32..121, e in 0u64..40) {
        let f = FiniteField::quadratic(11).unwrap();
        let mut acc = 1u32;
        for _ in 0..e {
            acc = f.mul(&acc, &a);
        }
        prop_assert_eq!(f.pow(&a, e), acc);
    }

    #[test]
    fn large_prime_inverse_without_table(a in 1u64..65_521) {
        let f = FiniteField::prime(65_537).unwrap();
        let a = a as u32;
        prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }
}
