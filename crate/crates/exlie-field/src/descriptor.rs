use std::fmt;
use std::str::FromStr;

use crate::finite::is_prime;
use crate::FieldError;

/// Which family a field belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    QuadraticExtension,
    Rational,
}

/// Plain description of a supported field.
///
/// For a quadratic extension the modulus is the monic polynomial
/// `t² + c1·t + c0`, stored as `[c0, c1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub characteristic: u64,
    pub modulus: Option<[u64; 2]>,
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Self {
        FieldDescriptor { kind: FieldKind::Prime, characteristic: p, modulus: None }
    }

    pub fn quadratic(p: u64, c1: u64, c0: u64) -> Self {
        FieldDescriptor { kind: FieldKind::QuadraticExtension, characteristic: p, modulus: Some([c0, c1]) }
    }

    pub fn rational() -> Self {
        FieldDescriptor { kind: FieldKind::Rational, characteristic: 0, modulus: None }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime => Some(self.characteristic),
            FieldKind::QuadraticExtension => Some(self.characteristic * self.characteristic),
            FieldKind::Rational => None,
        }
    }

    /// The short spec string accepted by [`FromStr`], e.g. `gf(25)` or `q`.
    pub fn spec(&self) -> String {
        match self.order() {
            Some(q) => format!("gf({q})"),
            None => "q".to_string(),
        }
    }

    /// Human-readable modulus such as `t^2+t+1`, if any.
    pub fn modulus_string(&self) -> Option<String> {
        let [c0, c1] = self.modulus?;
        let mut s = String::from("t^2");
        match c1 {
            0 => {}
            1 => s.push_str("+t"),
            _ => s.push_str(&format!("+{c1}t")),
        }
        if c0 != 0 {
            s.push_str(&format!("+{c0}"));
        }
        Some(s)
    }

    /// Checks the descriptor invariants without building the field.
    pub fn validate(&self) -> Result<(), FieldError> {
        match self.kind {
            FieldKind::Rational => Ok(()),
            FieldKind::Prime | FieldKind::QuadraticExtension => {
                let p = self.characteristic;
                if p == 0 {
                    return Err(FieldError::ZeroCharacteristic);
                }
                if !is_prime(p) {
                    return Err(FieldError::NotPrime(p));
                }
                if let Some([c0, c1]) = self.modulus {
                    if c0 >= p || c1 >= p || has_root(p, c1, c0) {
                        return Err(FieldError::ReducibleModulus { p, c1, c0 });
                    }
                }
                Ok(())
            }
        }
    }
}

pub(crate) fn has_root(p: u64, c1: u64, c0: u64) -> bool {
    (0..p).any(|r| (r * r + c1 * r + c0) % p == 0)
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus_string() {
            Some(m) => write!(f, "{} mod {}", self.spec(), m),
            None => f.write_str(&self.spec()),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    /// Parses `q`, `gf(p)` or `gf(p^2)` given as the field order. The
    /// quadratic modulus is the first irreducible one in the default scan.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rational" || t == "rationals" {
            return Ok(FieldDescriptor::rational());
        }
        let inner = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| FieldError::BadSpec(s.to_string()))?;
        let order: u64 = inner.trim().parse().map_err(|_| FieldError::BadSpec(s.to_string()))?;
        if order < 2 {
            return Err(FieldError::UnsupportedOrder(order));
        }
        if is_prime(order) {
            return Ok(FieldDescriptor::prime(order));
        }
        let root = (order as f64).sqrt().round() as u64;
        for p in root.saturating_sub(1)..=root + 1 {
            if p * p == order && is_prime(p) {
                let (c1, c0) = default_modulus(p);
                return Ok(FieldDescriptor::quadratic(p, c1, c0));
            }
        }
        Err(FieldError::UnsupportedOrder(order))
    }
}

/// First irreducible `t² + c1·t + c0` in lexicographic order of `(c1, c0)`,
/// so binomials `t² + c0` win whenever one exists.
pub(crate) fn default_modulus(p: u64) -> (u64, u64) {
    for c1 in 0..p {
        for c0 in 1..p {
            if !has_root(p, c1, c0) {
                return (c1, c0);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}
