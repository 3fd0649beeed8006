use std::fmt;

use num_rational::BigRational;

use crate::{Field, FieldDescriptor, FieldError, FieldKind, FiniteField, Rationals};

/// A field chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyField {
    Finite(FiniteField),
    Rational(Rationals),
}

impl AnyField {
    /// Builds the field described by `desc`, validating its invariants.
    pub fn make(desc: &FieldDescriptor) -> Result<Self, FieldError> {
        match desc.kind {
            FieldKind::Rational => Ok(AnyField::Rational(Rationals)),
            _ => Ok(AnyField::Finite(FiniteField::from_descriptor(desc)?)),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyField::Finite(f) => f.descriptor(),
            AnyField::Rational(q) => q.descriptor(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, FieldError> {
        let value = match self {
            AnyField::Finite(f) => Value::Finite(f.parse(text)?),
            AnyField::Rational(q) => Value::Rational(q.parse(text)?),
        };
        Ok(Scalar { field: self.clone(), value })
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        let value = match self {
            AnyField::Finite(f) => Value::Finite(f.from_i64(n)),
            AnyField::Rational(q) => Value::Rational(q.from_i64(n)),
        };
        Scalar { field: self.clone(), value }
    }

    /// Every element when the field is finite.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            AnyField::Finite(f) => Some(
                f.elements()?.into_iter().map(|a| Scalar { field: self.clone(), value: Value::Finite(a) }).collect(),
            ),
            AnyField::Rational(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Finite(u32),
    Rational(BigRational),
}

/// A field element bundled with its field; mixed-field operations fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    field: AnyField,
    value: Value,
}

impl Scalar {
    pub fn field(&self) -> &AnyField {
        &self.field
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(
                self.field.descriptor().to_string(),
                other.field.descriptor().to_string(),
            ));
        }
        Ok(())
    }

    fn unary(&self, fin: impl Fn(&FiniteField, &u32) -> u32, rat: impl Fn(&BigRational) -> BigRational) -> Scalar {
        let value = match (&self.field, &self.value) {
            (AnyField::Finite(f), Value::Finite(a)) => Value::Finite(fin(f, a)),
            (AnyField::Rational(_), Value::Rational(a)) => Value::Rational(rat(a)),
            _ => unreachable!("scalar value matches its field"),
        };
        Scalar { field: self.field.clone(), value }
    }

    fn binary(
        &self,
        other: &Scalar,
        fin: impl Fn(&FiniteField, &u32, &u32) -> u32,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Scalar, FieldError> {
        self.check(other)?;
        let value = match (&self.field, &self.value, &other.value) {
            (AnyField::Finite(f), Value::Finite(a), Value::Finite(b)) => Value::Finite(fin(f, a, b)),
            (AnyField::Rational(_), Value::Rational(a), Value::Rational(b)) => Value::Rational(rat(a, b)),
            _ => unreachable!("scalar value matches its field"),
        };
        Ok(Scalar { field: self.field.clone(), value })
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Finite(a) => *a == 0,
            Value::Rational(a) => Rationals.is_zero(a),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |f, a, b| f.add(a, b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |f, a, b| f.sub(a, b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |f, a, b| f.mul(a, b), |a, b| a * b)
    }

    pub fn neg(&self) -> Scalar {
        self.unary(|f, a| f.neg(a), |a| -a)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.unary(|f, a| f.inv(a).expect("nonzero"), |a| a.recip()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(base.unary(|f, a| f.pow(a, n), |a| Rationals.pow(a, n)))
    }

    /// Galois conjugate: Frobenius on GF(p²), identity elsewhere.
    pub fn conjugate(&self) -> Scalar {
        self.unary(|f, a| f.conjugate(a), |a| a.clone())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.field, &self.value) {
            (AnyField::Finite(k), Value::Finite(a)) => f.write_str(&k.format(a)),
            (_, Value::Rational(a)) => write!(f, "{a}"),
            _ => unreachable!("scalar value matches its field"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(spec: &str) -> AnyField {
        AnyField::make(&spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn checked_operations() {
        let f5 = field("gf(5)");
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(a.mul(&b).unwrap().to_string(), "2");
        assert_eq!(f5.from_i64(2).inv().unwrap().to_string(), "3");
        assert_eq!(f5.from_i64(0).inv(), Err(FieldError::DivisionByZero));
        assert_eq!(a.pow(-1).unwrap().to_string(), "2");

        let q = field("q");
        let s = q.parse("2/3").unwrap().add(&q.parse("1/6").unwrap()).unwrap();
        assert_eq!(s.to_string(), "5/6");
        assert!(matches!(a.add(&s), Err(FieldError::FieldMismatch(..))));
    }

    #[test]
    fn conjugation() {
        let f4 = field("gf(4)");
        let t = f4.parse("t").unwrap();
        assert_eq!(t.conjugate().to_string(), "1+t");
        assert_eq!(t.conjugate().conjugate(), t);
        assert_eq!(field("gf(5)").from_i64(3).conjugate().to_string(), "3");
    }
}
