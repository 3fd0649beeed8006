use std::sync::{Arc, OnceLock};

use exlie_field::Field;
use exlie_linalg::sparse::Accumulator;
use exlie_linalg::{vector, Mat, SparseVec, Subspace};
use rayon::prelude::*;

use crate::chevalley::ChevalleyTable;
use crate::roots::{CartanType, RootSystem};
use crate::{ExlieError, Result};

/// A finite-dimensional Lie algebra given by structure constants on a fixed
/// basis `b_0, …, b_{n−1}`.
#[derive(Debug, Clone)]
pub struct LieAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    /// `table[i * n + j] = [b_i, b_j]`, stored for both orders.
    table: Vec<SparseVec<F::Elem>>,
    chevalley: Option<Arc<ChevalleyTable>>,
    generators: OnceLock<Vec<usize>>,
}

/// Outcome of [`LieAlgebra::verify_lie`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieCheck {
    pub antisymmetry_violation: Option<(usize, usize)>,
    pub jacobi_violation: Option<(usize, usize, usize)>,
}

impl LieCheck {
    pub fn passed(&self) -> bool {
        self.antisymmetry_violation.is_none() && self.jacobi_violation.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Subalgebra,
    Ideal,
}

impl<F: Field> LieAlgebra<F> {
    /// Builds an algebra from the brackets `[b_i, b_j]` with `i < j`; missing
    /// pairs are zero and the rest of the table follows by antisymmetry.
    /// The table is not checked here; see [`Self::verify_lie`].
    pub fn from_brackets(
        field: F,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec<F::Elem>)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut table = vec![SparseVec::new(); n * n];
        for (i, j, v) in brackets {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(ExlieError::Dimension(format!("bracket ({i},{j}) out of range for dim {n}")));
            }
            if i == j {
                if !v.is_empty() {
                    return Err(ExlieError::Invalid(format!("nonzero self-bracket of b_{i}")));
                }
                continue;
            }
            table[j * n + i] = v.neg(&field);
            table[i * n + j] = v;
        }
        Ok(LieAlgebra { field, labels, table, chevalley: None, generators: OnceLock::new() })
    }

    /// The split Chevalley algebra of the given type over `field`, with
    /// integer structure constants reduced into the field. The Jacobi
    /// identity is verified before returning.
    pub fn chevalley(ty: CartanType, field: F) -> Result<Self> {
        let table = ChevalleyTable::new(RootSystem::new(ty)?)?;
        let alg = Self::from_chevalley_table(Arc::new(table), field)?;
        let check = alg.verify_lie();
        if !check.passed() {
            return Err(ExlieError::Internal(format!("{ty} structure constants fail: {check:?}")));
        }
        Ok(alg)
    }

    pub(crate) fn from_chevalley_table(table: Arc<ChevalleyTable>, field: F) -> Result<Self> {
        let n = table.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = table.bracket(i, j);
                let entries = v.into_iter().map(|(k, c)| (k, field.from_i64(c))).collect();
                brackets.push((i, j, SparseVec::from_unsorted(&field, entries)));
            }
        }
        let mut alg = Self::from_brackets(field, table.labels(), brackets)?;
        alg.chevalley = Some(table);
        Ok(alg)
    }

    /// Reattaches root data to an algebra read back from its table, after
    /// checking that the tables agree.
    pub fn with_chevalley_type(self, ty: CartanType) -> Result<Self> {
        let fresh =
            Self::from_chevalley_table(Arc::new(ChevalleyTable::new(RootSystem::new(ty)?)?), self.field.clone())?;
        if fresh.table != self.table {
            return Err(ExlieError::Invalid(format!("table does not match the {ty} Chevalley basis")));
        }
        Ok(fresh)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn chevalley_table(&self) -> Option<&ChevalleyTable> {
        self.chevalley.as_deref()
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.chevalley.as_ref().map(|t| t.roots.cartan_type())
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i * self.dim() + j]
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vector::zeros(&self.field, self.dim())
    }

    pub fn unit(&self, i: usize) -> Vec<F::Elem> {
        vector::unit(&self.field, self.dim(), i)
    }

    fn check_len(&self, v: &[F::Elem]) {
        assert_eq!(v.len(), self.dim(), "vector length does not match the algebra dimension");
    }

    pub fn bracket_sparse(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut acc = Accumulator::new(f, n);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let entry = &self.table[i * n + j];
                if entry.is_empty() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in entry.iter() {
                    acc.add_mul(f, *k, &ab, c);
                }
            }
        }
        acc.take(f)
    }

    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.check_len(x);
        self.check_len(y);
        let f = &self.field;
        let xs = SparseVec::from_dense(f, x);
        let ys = SparseVec::from_dense(f, y);
        self.bracket_sparse(&xs, &ys).to_dense(f, self.dim())
    }

    /// `[x, b_j]` as a sparse vector.
    pub fn bracket_with_basis(&self, x: &SparseVec<F::Elem>, j: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut acc = Accumulator::new(f, n);
        for (i, a) in x.iter() {
            for (k, c) in self.table[i * n + j].iter() {
                acc.add_mul(f, *k, a, c);
            }
        }
        acc.take(f)
    }

    /// Matrix of `m ↦ [x, m]`.
    pub fn ad(&self, x: &[F::Elem]) -> Mat<F::Elem> {
        self.check_len(x);
        let f = &self.field;
        let xs = SparseVec::from_dense(f, x);
        let cols: Vec<Vec<F::Elem>> =
            (0..self.dim()).map(|j| self.bracket_with_basis(&xs, j).to_dense(f, self.dim())).collect();
        Mat::from_columns(&cols, self.dim())
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples,
    /// reporting the first violation in index order.
    pub fn verify_lie(&self) -> LieCheck {
        let n = self.dim();
        let f = &self.field;
        let mut antisymmetry_violation = None;
        'outer: for i in 0..n {
            if !self.table[i * n + i].is_empty() {
                antisymmetry_violation = Some((i, i));
                break;
            }
            for j in i + 1..n {
                if self.table[i * n + j] != self.table[j * n + i].neg(f) {
                    antisymmetry_violation = Some((i, j));
                    break 'outer;
                }
            }
        }
        let jacobi_violation = (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobiator_vanishes(i, j, k) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        LieCheck { antisymmetry_violation, jacobi_violation }
    }

    fn jacobiator_vanishes(&self, i: usize, j: usize, k: usize) -> bool {
        let f = &self.field;
        let n = self.dim();
        let mut acc = Accumulator::new(f, n);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (t, s) in self.table[a * n + b].iter() {
                for (u, v) in self.table[t * n + c].iter() {
                    acc.add_mul(f, *u, s, v);
                }
            }
        }
        acc.take(f).is_empty()
    }

    /// Least subspace containing `seeds` and closed under brackets with
    /// itself (`Subalgebra`) or with all of `L` (`Ideal`).
    pub fn generated_subspace(&self, seeds: &[Vec<F::Elem>], mode: Closure) -> Subspace<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut space = Subspace::span(f, n, seeds);
        let mut frontier: Vec<Vec<F::Elem>> = space.basis().to_vec();
        while !frontier.is_empty() {
            let partners: Vec<Vec<F::Elem>> = match mode {
                Closure::Subalgebra => space.basis().to_vec(),
                Closure::Ideal => (0..n).map(|i| self.unit(i)).collect(),
            };
            let mut fresh = Vec::new();
            for v in &frontier {
                for w in &partners {
                    let b = self.bracket(v, w);
                    if !space.contains(f, &b) {
                        space = space.sum(f, &Subspace::span(f, n, std::slice::from_ref(&b)));
                        fresh.push(b);
                    }
                }
            }
            frontier = fresh;
        }
        space
    }

    /// A set of basis indices generating `L` as a Lie algebra (or the
    /// largest subalgebra reachable from the basis greedily, which is all of
    /// `L`). Used to check homomorphism identities on generators only.
    pub fn generating_set(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let n = self.dim();
            let mut chosen: Vec<usize> = Vec::new();
            let mut reached = Subspace::zero(n);
            let order: Vec<usize> = match &self.chevalley {
                // Simple root vectors and their negatives first.
                Some(t) => {
                    let r = t.roots.rank();
                    let mut o: Vec<usize> = (0..r)
                        .flat_map(|i| {
                            let a = t.roots.simple(i);
                            [t.root_index(a), t.root_index(t.roots.negate(a))]
                        })
                        .collect();
                    let rest: Vec<usize> = (0..n).filter(|b| !o.contains(b)).collect();
                    o.extend(rest);
                    o
                }
                None => (0..n).collect(),
            };
            for b in order {
                if reached.dim() == n {
                    break;
                }
                let v = self.unit(b);
                if reached.contains(&self.field, &v) {
                    continue;
                }
                chosen.push(b);
                let seeds: Vec<Vec<F::Elem>> = chosen.iter().map(|&c| self.unit(c)).collect();
                reached = self.generated_subspace(&seeds, Closure::Subalgebra);
            }
            chosen
        })
    }

    /// Whether the linear map with images `images[j] = A(b_j)` preserves the
    /// bracket. It suffices to test `A[g, b] = [Ag, Ab]` for `g` in a
    /// generating set and all basis `b`, because the set of `g` satisfying
    /// this for every `b` is a subalgebra.
    pub fn is_homomorphism(&self, images: &[SparseVec<F::Elem>]) -> bool {
        let f = &self.field;
        let n = self.dim();
        let apply = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            let mut acc = Accumulator::new(f, n);
            for (i, a) in v.iter() {
                for (k, c) in images[*i].iter() {
                    acc.add_mul(f, *k, a, c);
                }
            }
            acc.take(f)
        };
        self.generating_set()
            .par_iter()
            .all(|&g| (0..n).all(|b| apply(self.basis_bracket(g, b)) == self.bracket_sparse(&images[g], &images[b])))
    }

    /// Matrix version of [`Self::is_homomorphism`].
    pub fn is_automorphism(&self, a: &Mat<F::Elem>) -> bool {
        let f = &self.field;
        let images: Vec<SparseVec<F::Elem>> = (0..self.dim()).map(|j| SparseVec::from_dense(f, &a.col(j))).collect();
        a.inverse(f).is_ok() && self.is_homomorphism(&images)
    }

    /// Replaces one structure constant; used to build deliberately broken
    /// tables in tests.
    pub fn with_corrupted_bracket(mut self, i: usize, j: usize, v: SparseVec<F::Elem>) -> Self {
        let n = self.dim();
        self.table[i * n + j] = v;
        self.chevalley = None;
        self.generators = OnceLock::new();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exlie_field::FiniteField;

    #[test]
    fn sl2_over_gf5() {
        let f = FiniteField::prime(5).unwrap();
        let l = LieAlgebra::chevalley(CartanType::A(1), f.clone()).unwrap();
        assert_eq!(l.labels(), &["e(1)", "h1", "e(-1)"]);
        let ad_h = l.ad(&l.unit(1));
        assert_eq!(ad_h, Mat::from_rows(vec![vec![2, 0, 0], vec![0, 0, 0], vec![0, 0, 3]], 3));
        let ad_e = l.ad(&l.unit(0));
        assert!(ad_e.pow(&f, 3).is_zero(&f));
        assert_eq!(l.bracket(&l.unit(0), &l.unit(2)), l.unit(1));
    }

    #[test]
    fn corrupted_table_is_caught() {
        let f = FiniteField::prime(5).unwrap();
        let l = LieAlgebra::chevalley(CartanType::A(2), f.clone()).unwrap();
        let bad = l.basis_bracket(0, 1).scale(&f, &2);
        let broken = l.with_corrupted_bracket(0, 1, bad.clone()).with_corrupted_bracket(1, 0, bad.neg(&f));
        assert!(broken.verify_lie().jacobi_violation.is_some());
    }
}
