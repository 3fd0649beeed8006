//! Small helpers on sparse vectors shared by the extraction pipelines.

use exlie_field::Field;
use exlie_linalg::{SparseVec, Subspace};

pub(crate) fn span_sparse<F: Field>(f: &F, n: usize, vs: &[SparseVec<F::Elem>]) -> Subspace<F::Elem> {
    let dense: Vec<Vec<F::Elem>> = vs.iter().map(|v| v.to_dense(f, n)).collect();
    Subspace::span(f, n, &dense)
}

pub(crate) fn sparse_basis<F: Field>(f: &F, s: &Subspace<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    s.basis().iter().map(|b| SparseVec::from_dense(f, b)).collect()
}

/// The scalar `μ` with `v = μ·w`, for nonzero `w`.
pub(crate) fn multiple_of<F: Field>(f: &F, v: &SparseVec<F::Elem>, w: &SparseVec<F::Elem>) -> Option<F::Elem> {
    if v.is_empty() {
        return Some(f.zero());
    }
    let (k, c) = w.entries().first()?.clone();
    let mu = f.div(&v.get(f, k), &c)?;
    (w.scale(f, &mu) == *v).then_some(mu)
}

pub(crate) fn combine<F: Field>(f: &F, coords: &[F::Elem], basis: &[SparseVec<F::Elem>]) -> SparseVec<F::Elem> {
    let mut out = SparseVec::new();
    for (a, b) in coords.iter().zip(basis) {
        if !f.is_zero(a) {
            out = out.add_scaled(f, a, b);
        }
    }
    out
}
