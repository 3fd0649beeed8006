use exlie_field::Field;

use crate::{vector, LinalgError, Mat, Rref, SparseVec};

/// A subspace of `k^n` held by its reduced row-echelon basis. Two spans of the
/// same vectors compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vector::unit(f, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, vectors: &[Vec<E>]) -> Self {
        let useful: Vec<Vec<E>> = vectors.iter().filter(|v| !vector::is_zero(f, v)).cloned().collect();
        if useful.is_empty() {
            return Self::zero(ambient);
        }
        let r = Rref::new(f, &Mat::from_rows(useful, ambient));
        let rank = r.rank();
        Subspace { ambient, rows: r.reduced.row_vecs().into_iter().take(rank).collect(), pivots: r.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The canonical (RREF) basis.
    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its reduction against the basis; zero iff `v` lies in the span.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&r[p]) {
                let s = f.neg(&r[p]);
                vector::axpy(f, &mut r, &s, row);
            }
        }
        r
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        vector::is_zero(f, &self.reduce(f, v))
    }

    pub fn contains_all<F: Field<Elem = E>>(&self, f: &F, vs: &[Vec<E>]) -> bool {
        vs.iter().all(|v| self.contains(f, v))
    }

    /// Coordinates of `v` in [`Self::basis`], if `v` lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = vector::combine(f, self.ambient, &coords, &self.rows);
        (back == v).then_some(coords)
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        other.contains_all(f, &self.rows)
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Self::span(f, self.ambient, &all)
    }

    pub fn intersect<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // Columns u_1..u_r, -w_1..-w_s; kernel vectors give common elements.
        let mut columns = self.rows.clone();
        columns.extend(other.rows.iter().map(|w| vector::neg(f, w)));
        let m = Mat::from_columns(&columns, self.ambient);
        let r = self.dim();
        let common: Vec<Vec<E>> = Rref::new(f, &m)
            .kernel_basis(f)
            .into_iter()
            .map(|k| vector::combine(f, self.ambient, &k[..r], &self.rows))
            .collect();
        Self::span(f, self.ambient, &common)
    }

    /// A complement spanned by standard basis vectors at the non-pivot columns.
    pub fn standard_complement<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let vs: Vec<Vec<E>> =
            (0..self.ambient).filter(|&j| !is_pivot[j]).map(|j| vector::unit(f, self.ambient, j)).collect();
        Self::span(f, self.ambient, &vs)
    }

    /// Image under the linear map with matrix `m`.
    pub fn image<F: Field<Elem = E>>(&self, f: &F, m: &Mat<E>) -> Self {
        let imgs: Vec<Vec<E>> = self.rows.iter().map(|v| m.mul_vec(f, v)).collect();
        Self::span(f, m.rows(), &imgs)
    }

    /// Elements mapped to zero by `m`.
    pub fn kernel_of<F: Field<Elem = E>>(&self, f: &F, m: &Mat<E>) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let imgs: Vec<Vec<E>> = self.rows.iter().map(|v| m.mul_vec(f, v)).collect();
        let combos = Rref::new(f, &Mat::from_columns(&imgs, m.rows())).kernel_basis(f);
        let vs: Vec<Vec<E>> = combos.iter().map(|c| vector::combine(f, self.ambient, c, &self.rows)).collect();
        Self::span(f, self.ambient, &vs)
    }
}

/// A registered decomposition `k^n = W_1 ⊕ … ⊕ W_m` with component projections.
#[derive(Debug, Clone)]
pub struct DirectSum<E> {
    pieces: Vec<Subspace<E>>,
    offsets: Vec<usize>,
    basis: Mat<E>,
    inverse: Mat<E>,
}

impl<E: Clone + PartialEq> DirectSum<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, pieces: Vec<Subspace<E>>) -> Result<Self, LinalgError> {
        let n = pieces.first().map_or(0, |p| p.ambient());
        if pieces.iter().any(|p| p.ambient() != n) {
            return Err(LinalgError::ShapeMismatch("pieces in different ambient spaces".into()));
        }
        let total: usize = pieces.iter().map(Subspace::dim).sum();
        let mut columns = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(pieces.len() + 1);
        for p in &pieces {
            offsets.push(columns.len());
            columns.extend(p.basis().iter().cloned());
        }
        offsets.push(columns.len());
        let basis = Mat::from_columns(&columns, n);
        let rank = Rref::new(f, &basis).rank();
        if rank < total {
            return Err(LinalgError::Overlapping);
        }
        if total < n {
            return Err(LinalgError::NotSpanning { got: total, want: n });
        }
        let inverse = basis.inverse(f)?;
        Ok(DirectSum { pieces, offsets, basis, inverse })
    }

    pub fn pieces(&self) -> &[Subspace<E>] {
        &self.pieces
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `v` in the concatenated piece bases.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        self.inverse.mul_vec(f, v)
    }

    /// Coordinates of the `i`-th component in the basis of piece `i`.
    pub fn piece_coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E], i: usize) -> Vec<E> {
        let (lo, hi) = (self.offsets[i], self.offsets[i + 1]);
        (lo..hi).map(|r| vector::dot(f, self.inverse.row(r), v)).collect()
    }

    /// [`Self::piece_coordinates`] for a sparse vector.
    pub fn piece_coordinates_sparse<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>, i: usize) -> Vec<E> {
        let (lo, hi) = (self.offsets[i], self.offsets[i + 1]);
        (lo..hi)
            .map(|r| {
                let row = self.inverse.row(r);
                let mut acc = f.zero();
                for (k, a) in v.iter() {
                    f.mul_add_assign(&mut acc, a, &row[*k]);
                }
                acc
            })
            .collect()
    }

    /// Indices of the pieces in which `v` has a nonzero component.
    pub fn support_sparse<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> Vec<usize> {
        (0..self.pieces.len())
            .filter(|&i| self.piece_coordinates_sparse(f, v, i).iter().any(|c| !f.is_zero(c)))
            .collect()
    }

    pub fn project<F: Field<Elem = E>>(&self, f: &F, v: &[E], i: usize) -> Vec<E> {
        let c = self.piece_coordinates(f, v, i);
        vector::combine(f, self.ambient(), &c, self.pieces[i].basis())
    }

    pub fn components<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<Vec<E>> {
        (0..self.pieces.len()).map(|i| self.project(f, v, i)).collect()
    }

    /// Matrix of the projection onto piece `i` along the others.
    pub fn projector<F: Field<Elem = E>>(&self, f: &F, i: usize) -> Mat<E> {
        let n = self.ambient();
        let cols: Vec<Vec<E>> = (0..n).map(|j| self.project(f, &vector::unit(f, n, j), i)).collect();
        Mat::from_columns(&cols, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exlie_field::FiniteField;

    #[test]
    fn planes_meet_in_axis() {
        let f = FiniteField::prime(5).unwrap();
        let xy = Subspace::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let yz = Subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(xy.intersect(&f, &yz), Subspace::span(&f, 3, &[vec![0, 3, 0]]));
        assert!(Subspace::span(&f, 2, &[vec![1, 0], vec![0, 1]]).contains(&f, &[3, 4]));
    }

    #[test]
    fn direct_sum_rejects_bad_decompositions() {
        let f = FiniteField::prime(5).unwrap();
        let a = Subspace::span(&f, 2, &[vec![1, 1]]);
        let b = Subspace::span(&f, 2, &[vec![2, 2]]);
        assert_eq!(DirectSum::new(&f, vec![a.clone(), b]).unwrap_err(), LinalgError::Overlapping);
        assert!(matches!(DirectSum::new(&f, vec![a]).unwrap_err(), LinalgError::NotSpanning { .. }));
    }
}
