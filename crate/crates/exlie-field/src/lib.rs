//! Exact scalar arithmetic for the rest of the workspace.
//!
//! Two concrete fields implement [`Field`]: [`FiniteField`] covers GF(p) and
//! GF(p²), and [`Rationals`] covers ℚ with arbitrary-precision integers.
//! Algorithms elsewhere are generic over `F: Field` and pass elements around
//! by reference, so no scalar carries a pointer back to its field.
//!
//! [`AnyField`] and [`Scalar`] are the dynamically checked counterparts used
//! where the field is only known at run time (CLI arguments, JSON input).

mod descriptor;
mod finite;
mod rational;
mod scalar;

pub use descriptor::{FieldDescriptor, FieldKind};
pub use finite::FiniteField;
pub use rational::Rationals;
pub use scalar::{AnyField, Scalar};

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

/// Errors raised while constructing fields or operating on scalars.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} is not p or p^2 for a prime p")]
    UnsupportedOrder(u64),
    #[error("modulus t^2 + {c1}t + {c0} is reducible over GF({p})")]
    ReducibleModulus { p: u64, c1: u64, c0: u64 },
    #[error("characteristic 0 is only valid for the rationals")]
    ZeroCharacteristic,
    #[error("characteristic {0} is too large for this implementation")]
    CharacteristicTooLarge(u64),
    #[error("cannot parse field spec {0:?}")]
    BadSpec(String),
    #[error("cannot parse {text:?} as an element of {field}")]
    BadElement { text: String, field: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
}

/// A commutative field with exact arithmetic.
///
/// Elements are plain values; every operation takes the field as `&self` so
/// that finite-field elements can be stored as small integers.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer under the canonical ring map ℤ → k.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// 0 for ℚ, otherwise the prime p.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// All elements in a fixed order (zero first), `None` when infinite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// The nontrivial automorphism of GF(p²) (Frobenius), identity otherwise.
    fn conjugate(&self, a: &Self::Elem) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, text: &str) -> Result<Self::Elem, FieldError>;
    fn descriptor(&self) -> FieldDescriptor;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a += b`.
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `acc += a * b`.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    /// A short deterministic list of nonzero scalars for parameter sweeps:
    /// every nonzero element of a small finite field, a few small values
    /// otherwise.
    fn sample_nonzero(&self, max: usize) -> Vec<Self::Elem> {
        match self.elements() {
            Some(all) => all.into_iter().filter(|a| !self.is_zero(a)).take(max).collect(),
            None => [1, 2, -1, 3, -2, 5, 7].iter().take(max).map(|&n| self.from_i64(n)).collect(),
        }
    }
}
