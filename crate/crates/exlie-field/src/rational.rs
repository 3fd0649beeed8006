use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::{Field, FieldDescriptor, FieldError};

/// The rational numbers with exact big-integer fractions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn conjugate(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn parse(&self, text: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadElement { text: text.to_string(), field: "q".to_string() };
        let t = text.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
        }
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::rational()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-6..=6);
        let d: i64 = rng.gen_range(1..=4);
        BigRational::new(n.into(), d.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_arithmetic() {
        let q = Rationals;
        let a = q.parse("2/3").unwrap();
        let b = q.parse("1/6").unwrap();
        assert_eq!(q.format(&q.add(&a, &b)), "5/6");
        assert_eq!(q.parse("4/-6").unwrap(), q.parse("-2/3").unwrap());
        assert_eq!(q.parse("1/0"), Err(FieldError::DivisionByZero));
        assert_eq!(q.inv(&q.zero()), None);
    }
}
