//! Automorphisms kept as products of simple factors.
//!
//! A product `F_1 F_2 ⋯ F_m` is applied to a vector right to left, one factor
//! at a time. For the large algebras this is far cheaper than forming and
//! multiplying dense matrices, and the matrix is still available on demand.

use std::sync::Arc;

use exlie_field::Field;
use exlie_linalg::sparse::Accumulator;
use exlie_linalg::{Mat, SparseVec};
use rayon::prelude::*;

use crate::algebra::LieAlgebra;
use crate::{ExlieError, Result};

#[derive(Debug, Clone)]
pub enum Factor<E> {
    /// `m ↦ m + [x,m] + g(m)x` for an extremal `x` with form row `g`.
    Exp { x: SparseVec<E>, g: SparseVec<E> },
    /// The Chevalley root element `x_α(t) = Σ_k t^k ad(e_α)^k / k!`, with
    /// `powers[j][k-1]` the `k`-th divided power applied to `b_j`.
    Root { powers: Arc<Vec<Vec<SparseVec<E>>>>, t: E },
    /// A general linear map given by the images of the basis vectors.
    Linear(Arc<Vec<SparseVec<E>>>),
}

#[derive(Debug, Clone)]
pub struct Automorphism<E> {
    dim: usize,
    factors: Vec<Factor<E>>,
}

impl<E: Clone + PartialEq + Send + Sync> Automorphism<E> {
    pub fn identity(dim: usize) -> Self {
        Automorphism { dim, factors: Vec::new() }
    }

    pub fn from_factor(dim: usize, factor: Factor<E>) -> Self {
        Automorphism { dim, factors: vec![factor] }
    }

    /// `exp(x)` for an extremal `x` with form row `g`.
    pub fn exp(dim: usize, x: SparseVec<E>, g: SparseVec<E>) -> Self {
        if x.is_empty() {
            return Self::identity(dim);
        }
        Self::from_factor(dim, Factor::Exp { x, g })
    }

    pub fn from_images(images: Vec<SparseVec<E>>) -> Self {
        Self::from_factor(images.len(), Factor::Linear(Arc::new(images)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[Factor<E>] {
        &self.factors
    }

    pub fn is_identity_product(&self) -> bool {
        self.factors.is_empty()
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "composing automorphisms of different algebras");
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Automorphism { dim: self.dim, factors }
    }

    pub fn then(&self, outer: &Self) -> Self {
        outer.compose(self)
    }
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static> Automorphism<E> {
    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for factor in self.factors.iter().rev() {
            factors.push(match factor {
                Factor::Exp { x, g } => Factor::Exp { x: x.neg(f), g: g.neg(f) },
                Factor::Root { powers, t } => Factor::Root { powers: powers.clone(), t: f.neg(t) },
                Factor::Linear(images) => {
                    let n = self.dim;
                    let cols: Vec<Vec<E>> = images.iter().map(|v| v.to_dense(f, n)).collect();
                    let inv = Mat::from_columns(&cols, n).inverse(f)?;
                    let inv_images = (0..n).map(|j| SparseVec::from_dense(f, &inv.col(j))).collect();
                    Factor::Linear(Arc::new(inv_images))
                }
            });
        }
        Ok(Automorphism { dim: self.dim, factors })
    }

    pub fn apply_sparse<F: Field<Elem = E>>(&self, l: &LieAlgebra<F>, v: &SparseVec<E>) -> SparseVec<E> {
        assert_eq!(l.dim(), self.dim, "automorphism applied in the wrong algebra");
        let mut cur = v.clone();
        for factor in self.factors.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = apply_factor(l, factor, &cur);
        }
        cur
    }

    pub fn apply<F: Field<Elem = E>>(&self, l: &LieAlgebra<F>, v: &[E]) -> Vec<E> {
        let f = l.field();
        self.apply_sparse(l, &SparseVec::from_dense(f, v)).to_dense(f, self.dim)
    }

    /// Images of all basis vectors.
    pub fn images<F: Field<Elem = E>>(&self, l: &LieAlgebra<F>) -> Vec<SparseVec<E>> {
        let f = l.field();
        (0..self.dim).into_par_iter().map(|j| self.apply_sparse(l, &SparseVec::unit(f, j))).collect()
    }

    /// The matrix whose `j`-th column is the image of `b_j`.
    pub fn matrix<F: Field<Elem = E>>(&self, l: &LieAlgebra<F>) -> Mat<E> {
        let f = l.field();
        let cols: Vec<Vec<E>> = self.images(l).iter().map(|v| v.to_dense(f, self.dim)).collect();
        Mat::from_columns(&cols, self.dim)
    }

    /// Collapses the product into a single linear factor.
    pub fn flattened<F: Field<Elem = E>>(&self, l: &LieAlgebra<F>) -> Self {
        Self::from_images(self.images(l))
    }

    /// Whether the two products agree on a generating set of `L`, which for
    /// automorphisms is equivalent to equality.
    pub fn agrees_with<F: Field<Elem = E>>(&self, other: &Self, l: &LieAlgebra<F>) -> bool {
        let f = l.field();
        l.generating_set().par_iter().all(|&g| {
            let u = SparseVec::unit(f, g);
            self.apply_sparse(l, &u) == other.apply_sparse(l, &u)
        })
    }

    /// Whether the product preserves the bracket, checked on a generating set.
    pub fn is_automorphism<F: Field<Elem = E>>(&self, l: &LieAlgebra<F>) -> bool {
        l.is_homomorphism(&self.images(l))
    }
}

fn apply_factor<F: Field>(l: &LieAlgebra<F>, factor: &Factor<F::Elem>, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let f = l.field();
    match factor {
        Factor::Exp { x, g } => {
            let bracket = l.bracket_sparse(x, v);
            let gv = g.dot_sparse(f, v);
            v.add(f, &bracket).add_scaled(f, &gv, x)
        }
        Factor::Root { powers, t } => {
            let mut acc = Accumulator::new(f, l.dim());
            for (j, a) in v.iter() {
                acc.add(f, *j, a);
                let mut coef = a.clone();
                for p in &powers[*j] {
                    coef = f.mul(&coef, t);
                    for (k, c) in p.iter() {
                        acc.add_mul(f, *k, &coef, c);
                    }
                }
            }
            acc.take(f)
        }
        Factor::Linear(images) => {
            let mut acc = Accumulator::new(f, l.dim());
            for (j, a) in v.iter() {
                for (k, c) in images[*j].iter() {
                    acc.add_mul(f, *k, a, c);
                }
            }
            acc.take(f)
        }
    }
}

/// The root element `x_α(t)` of a Chevalley algebra.
pub fn root_element<F: Field>(l: &LieAlgebra<F>, root: usize, t: F::Elem) -> Result<Automorphism<F::Elem>> {
    let table = l.chevalley_table().ok_or_else(|| ExlieError::inapplicable("root elements need a Chevalley basis"))?;
    let f = l.field();
    let powers: Vec<Vec<SparseVec<F::Elem>>> = table
        .divided_powers(root)
        .into_iter()
        .map(|per_basis| {
            per_basis
                .into_iter()
                .map(|iv| SparseVec::from_unsorted(f, iv.into_iter().map(|(k, c)| (k, f.from_i64(c))).collect()))
                .collect()
        })
        .collect();
    Ok(Automorphism::from_factor(l.dim(), Factor::Root { powers: Arc::new(powers), t }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CartanType;
    use exlie_field::FiniteField;

    #[test]
    fn root_elements_are_automorphisms_in_every_characteristic() {
        for p in [2, 3, 5] {
            let f = FiniteField::prime(p).unwrap();
            let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
            for r in 0..12 {
                let a = root_element(&l, r, f.from_i64(1)).unwrap();
                assert!(a.is_automorphism(&l), "root {r} over gf({p})");
                let back = a.compose(&a.inverse(&f).unwrap());
                assert!(back.matrix(&l).is_identity(&f));
            }
        }
    }

    #[test]
    fn linear_factor_inverse() {
        let f = FiniteField::prime(7).unwrap();
        let l = LieAlgebra::chevalley(CartanType::A(1), f.clone()).unwrap();
        // torus element h ↦ h, e ↦ 2e, f ↦ 4f
        let a = Automorphism::from_images(vec![
            SparseVec::from_sorted(vec![(0, 2)]),
            SparseVec::from_sorted(vec![(1, 1)]),
            SparseVec::from_sorted(vec![(2, 4)]),
        ]);
        assert!(a.is_automorphism(&l));
        let id = a.inverse(&f).unwrap().compose(&a);
        assert!(id.matrix(&l).is_identity(&f));
        assert!(id.agrees_with(&Automorphism::identity(3), &l));
    }
}
