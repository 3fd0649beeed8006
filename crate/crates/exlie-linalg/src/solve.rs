use exlie_field::Field;

use crate::{vector, LinalgError, Mat, Subspace};

/// Reduced row-echelon form of a matrix together with the row operations
/// that produced it: `transform · original = reduced`.
#[derive(Debug, Clone)]
pub struct Rref<E> {
    pub reduced: Mat<E>,
    pub pivots: Vec<usize>,
    pub transform: Mat<E>,
}

impl<E: Clone + PartialEq> Rref<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, a: &Mat<E>) -> Self {
        let rows = a.rows();
        let mut m = a.clone();
        let mut t = Mat::identity(f, rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols() {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(p, r);
            t.swap_rows(p, r);
            let s = f.inv(m.get(r, c)).expect("nonzero pivot");
            m.scale_row(f, r, &s);
            t.scale_row(f, r, &s);
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                m.add_row_multiple(f, i, r, &neg);
                t.add_row_multiple(f, i, r, &neg);
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots, transform: t }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One solution of `A·x = b` with free variables zero, or `None`.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        let tb = self.transform.mul_vec(f, b);
        if tb[self.rank()..].iter().any(|a| !f.is_zero(a)) {
            return None;
        }
        let mut x = vector::zeros(f, self.reduced.cols());
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = tb[i].clone();
        }
        Some(x)
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let cols = self.reduced.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vector::unit(f, cols, j);
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = f.neg(self.reduced.get(i, j));
                }
                v
            })
            .collect()
    }
}

pub fn rref<F: Field>(f: &F, a: &Mat<F::Elem>) -> Rref<F::Elem> {
    Rref::new(f, a)
}

pub fn rank<F: Field>(f: &F, a: &Mat<F::Elem>) -> usize {
    Rref::new(f, a).rank()
}

/// Solves `A·x = b`, returning `Ok(None)` when inconsistent. Every returned
/// solution has been checked by substitution.
pub fn solve<F: Field>(f: &F, a: &Mat<F::Elem>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let Some(x) = Rref::new(f, a).solve(f, b) else {
        return Ok(None);
    };
    if a.mul_vec(f, &x) != b {
        return Err(LinalgError::CheckFailed);
    }
    Ok(Some(x))
}

/// Null space of `A` as a subspace of `k^cols`.
pub fn kernel<F: Field>(f: &F, a: &Mat<F::Elem>) -> Subspace<F::Elem> {
    let basis = Rref::new(f, a).kernel_basis(f);
    Subspace::span(f, a.cols(), &basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exlie_field::FiniteField;

    #[test]
    fn inconsistent_system() {
        let f = FiniteField::prime(5).unwrap();
        let a = Mat::from_rows(vec![vec![1, 1], vec![1, 1]], 2);
        assert_eq!(solve(&f, &a, &[1, 2]).unwrap(), None);
        assert!(solve(&f, &a, &[1]).is_err());
    }

    #[test]
    fn rank_one_kernel() {
        let f = FiniteField::prime(5).unwrap();
        let a = Mat::from_rows(vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]], 3);
        let k = kernel(&f, &a);
        assert_eq!(k.dim() + rank(&f, &a), 3);
        for v in k.basis() {
            assert!(vector::is_zero(&f, &a.mul_vec(&f, v)));
        }
    }
}
