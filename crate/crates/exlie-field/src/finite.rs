use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::descriptor::default_modulus;
use crate::{Field, FieldDescriptor, FieldError, FieldKind};

/// Fields whose inverses are tabulated instead of computed by exponentiation.
const INVERSE_TABLE_LIMIT: u64 = 1 << 16;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p) or GF(p²) = GF(p)[t]/(t² + c1·t + c0).
///
/// An element `a0 + a1·t` is encoded as the integer `a0 + a1·p`, so GF(p)
/// sits inside GF(p²) with the same encoding.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    degree: u8,
    c1: u64,
    c0: u64,
    inverses: Arc<Vec<u32>>,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::from_descriptor(&FieldDescriptor::prime(p))
    }

    /// GF(p²) with the default modulus.
    pub fn quadratic(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let (c1, c0) = default_modulus(p);
        Self::from_descriptor(&FieldDescriptor::quadratic(p, c1, c0))
    }

    /// GF(p²) with modulus `t² + c1·t + c0`, rejected when reducible.
    pub fn quadratic_with_modulus(p: u64, c1: u64, c0: u64) -> Result<Self, FieldError> {
        Self::from_descriptor(&FieldDescriptor::quadratic(p, c1, c0))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self, FieldError> {
        desc.validate()?;
        let p = desc.characteristic;
        let (degree, c1, c0) = match desc.kind {
            FieldKind::Prime => (1, 0, 0),
            FieldKind::QuadraticExtension => {
                let [c0, c1] = desc.modulus.expect("quadratic descriptor has a modulus");
                (2, c1, c0)
            }
            FieldKind::Rational => return Err(FieldError::BadSpec("q is not finite".into())),
        };
        let size = if degree == 1 { p } else { p.saturating_mul(p) };
        if size > u32::MAX as u64 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        let mut field = FiniteField { p, degree, c1, c0, inverses: Arc::new(Vec::new()) };
        if size <= INVERSE_TABLE_LIMIT {
            let table: Vec<u32> = (0..size as u32).map(|a| if a == 0 { 0 } else { field.pow(&a, size - 2) }).collect();
            field.inverses = Arc::new(table);
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn size(&self) -> u64 {
        if self.degree == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }

    /// The class of `t` in GF(p²); in GF(p) there is no such element.
    pub fn generator(&self) -> Option<u32> {
        (self.degree == 2).then_some(self.p as u32)
    }

    /// Coefficients `(a0, a1)` of `a = a0 + a1·t`.
    pub fn coefficients(&self, a: u32) -> (u64, u64) {
        let a = a as u64;
        (a % self.p, a / self.p)
    }

    pub fn from_coefficients(&self, a0: u64, a1: u64) -> u32 {
        debug_assert!(self.degree == 2 || a1 == 0);
        ((a0 % self.p) + (a1 % self.p) * self.p) as u32
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        (a as u64) < self.p
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.c1 == other.c1 && self.c0 == other.c0
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.descriptor())
    }
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p;
        if self.degree == 1 {
            return ((*a as u64 + *b as u64) % p) as u32;
        }
        let (a0, a1) = self.coefficients(*a);
        let (b0, b1) = self.coefficients(*b);
        (((a0 + b0) % p) + ((a1 + b1) % p) * p) as u32
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p;
        if self.degree == 1 {
            return ((*a as u64 * *b as u64) % p) as u32;
        }
        let (a0, a1) = self.coefficients(*a);
        let (b0, b1) = self.coefficients(*b);
        let hi = a1 * b1 % p;
        // t² = -c1·t - c0
        let r0 = (a0 * b0 + (p - self.c0) * hi) % p;
        let r1 = (a0 * b1 + a1 * b0 + (p - self.c1) * hi) % p;
        (r0 + r1 * p) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.p;
        if self.degree == 1 {
            return ((p - *a as u64) % p) as u32;
        }
        let (a0, a1) = self.coefficients(*a);
        (((p - a0) % p) + ((p - a1) % p) * p) as u32
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        if let Some(&i) = self.inverses.get(*a as usize) {
            return Some(i);
        }
        Some(self.pow(a, self.size() - 2))
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.size())
    }

    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.size() as u32).collect())
    }

    fn conjugate(&self, a: &u32) -> u32 {
        if self.degree == 1 {
            return *a;
        }
        // t^p is the other root of the modulus, namely -c1 - t.
        let (a0, a1) = self.coefficients(*a);
        let p = self.p;
        let r0 = (a0 + (p - a1) * self.c1) % p;
        let r1 = (p - a1) % p;
        (r0 + r1 * p) as u32
    }

    fn format(&self, a: &u32) -> String {
        let (a0, a1) = self.coefficients(*a);
        match (a0, a1) {
            (a0, 0) => a0.to_string(),
            (0, 1) => "t".to_string(),
            (0, a1) => format!("{a1}t"),
            (a0, 1) => format!("{a0}+t"),
            (a0, a1) => format!("{a0}+{a1}t"),
        }
    }

    fn parse(&self, text: &str) -> Result<u32, FieldError> {
        let bad = || FieldError::BadElement { text: text.to_string(), field: self.descriptor().to_string() };
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut total = 0u32;
        // Split into signed terms.
        let mut terms = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);
        for term in terms {
            let (negative, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let value = if let Some(coef) = body.strip_suffix('t') {
                if self.degree != 2 {
                    return Err(bad());
                }
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
                self.mul(&self.from_i64(c), &(self.p as u32))
            } else {
                let c: i64 = body.parse().map_err(|_| bad())?;
                self.from_i64(c)
            };
            let value = if negative { self.neg(&value) } else { value };
            total = self.add(&total, &value);
        }
        Ok(total)
    }

    fn descriptor(&self) -> FieldDescriptor {
        if self.degree == 1 {
            FieldDescriptor::prime(self.p)
        } else {
            FieldDescriptor::quadratic(self.p, self.c1, self.c0)
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.size() as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_basics() {
        let f = FiniteField::prime(5).unwrap();
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.conjugate(&3), 3);
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    fn gf4_basics() {
        let f = FiniteField::quadratic(2).unwrap();
        let t = f.generator().unwrap();
        let t_plus_1 = f.add(&t, &1);
        assert_eq!(f.mul(&t, &t), t_plus_1);
        assert_eq!(f.conjugate(&t), t_plus_1);
        assert_eq!(f.conjugate(&f.conjugate(&t)), t);
        assert_eq!(f.format(&t_plus_1), "1+t");
        assert_eq!(f.parse("1+t").unwrap(), t_plus_1);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FiniteField::quadratic_with_modulus(2, 1, 1).is_ok());
        assert!(matches!(FiniteField::quadratic_with_modulus(2, 0, 1), Err(FieldError::ReducibleModulus { .. })));
    }

    #[test]
    fn parse_round_trip() {
        for f in [FiniteField::prime(7).unwrap(), FiniteField::quadratic(5).unwrap()] {
            for a in f.elements().unwrap() {
                assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
            }
        }
        let f = FiniteField::quadratic(5).unwrap();
        assert_eq!(f.parse("-t").unwrap(), f.neg(&5));
        assert_eq!(f.parse("2*t+1").unwrap(), 11);
        assert!(FiniteField::prime(5).unwrap().parse("t").is_err());
    }
}
