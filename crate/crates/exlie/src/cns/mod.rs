//! Cubic norm structures from a 5-graded Lie algebra.
//!
//! A second hyperbolic pair `(c, q)` inside the grading splits `L_{−1}`
//! as `⟨c⟩ ⊕ J ⊕ J′ ⊕ ⟨d⟩`. Extremal elements over the opposite end give
//! the norm and adjoint on `J`, brackets give the trace and cross product,
//! and a base point `z` with `N(z) = 1` identifies `J′` with `J`.

pub(crate) mod cubic;
mod frame;
mod twin;

pub use cubic::{CubicForm, CubicNormStructure};
pub use frame::{HexFrame, Split};
pub use twin::{NormAdjoint, TwinTables};

use exlie_field::Field;
use exlie_linalg::{vector, Mat};

use crate::report::{Report, Sampling};
use crate::{ExlieError, Result};

/// A frame rescaled so that `N(z) = 1`, with the maps `σ: J → J′` and
/// `σ′: J′ → J` built from `z`.
pub struct BasedTwin<'l, F: Field> {
    pub frame: HexFrame<'l, F>,
    pub tables: TwinTables<F::Elem>,
    pub z: Vec<F::Elem>,
    /// Columns are `σ(a_i)`.
    pub sigma: Mat<F::Elem>,
    /// Columns are `σ′(b_i)`.
    pub sigma_p: Mat<F::Elem>,
    pub report: Report,
}

/// The first `z ∈ J` with `N(z) ≠ 0` in the order: basis vectors, sums of
/// two basis vectors, all of `J` (when small), seeded random elements.
pub fn find_invertible<F: Field>(f: &F, tables: &TwinTables<F::Elem>, sampling: Sampling) -> Option<Vec<F::Elem>> {
    let dim = tables.dim;
    let norm = tables.norm_form(f);
    let unit = |i: usize| vector::unit(f, dim, i);
    if let Some(i) = (0..dim).find(|&i| !f.is_zero(&tables.norm[i])) {
        return Some(unit(i));
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let a = vector::add(f, &unit(i), &unit(j));
            if !f.is_zero(&norm.eval(f, &a)) {
                return Some(a);
            }
        }
    }
    let size = f.order().and_then(|q| q.checked_pow(dim as u32));
    if let (Some(s), Some(els)) = (size, f.elements()) {
        if s <= sampling.enumerate_up_to {
            return cubic::all_combinations(&els, dim).into_iter().find(|a| !f.is_zero(&norm.eval(f, a)));
        }
    }
    let mut rng = sampling.rng(0xba5e);
    (0..sampling.samples * 4)
        .map(|_| (0..dim).map(|_| f.random(&mut rng)).collect::<Vec<_>>())
        .find(|a| !f.is_zero(&norm.eval(f, a)))
}

/// Rescales the frame so that some `z ∈ J` has `N(z) = 1` and builds `σ`,
/// `σ′`. Fails as inapplicable when `N` vanishes on `J`.
pub fn base_point<'l, F: Field>(
    frame: &HexFrame<'l, F>,
    tables: &TwinTables<F::Elem>,
    sampling: Sampling,
) -> Result<BasedTwin<'l, F>> {
    let f = frame.grading().algebra().field();
    let dim = tables.dim;
    let z = find_invertible(f, tables, sampling)
        .ok_or_else(|| ExlieError::inapplicable("degenerate-twin: N vanishes on J"))?;
    let (nz, _) = frame.adjoint_norm(&z)?;
    if f.is_zero(&nz) {
        return Err(ExlieError::verification("norm tables disagree with the extremal construction at z"));
    }
    let frame = frame.rescaled(&nz)?;
    let tables = frame.twin_tables()?;
    let mut report = Report::sampled(sampling);
    report.push("N(z) = 1 after rescaling", f.is_one(&frame.adjoint_norm(&z)?.0));

    let zs = tables.sharp(f, &z);
    let unit = |i: usize| vector::unit(f, dim, i);
    let sigma_of =
        |a: &[F::Elem]| vector::sub(f, &vector::scale(f, &tables.trace(f, a, &zs), &zs), &tables.cross(f, &z, a));
    let sigma_p_of =
        |b: &[F::Elem]| vector::sub(f, &vector::scale(f, &tables.trace(f, &z, b), &z), &tables.cross_p(f, b, &zs));
    let sigma = Mat::from_columns(&(0..dim).map(|i| sigma_of(&unit(i))).collect::<Vec<_>>(), dim);
    let sigma_p = Mat::from_columns(&(0..dim).map(|i| sigma_p_of(&unit(i))).collect::<Vec<_>>(), dim);
    report.push("s's = id on J", sigma_p.mul(f, &sigma).is_identity(f));
    report.push("ss' = id on J'", sigma.mul(f, &sigma_p).is_identity(f));
    report.push("s'(z#) = z", sigma_p.mul_vec(f, &zs) == z);
    let inputs = cubic::TestInputs::new(f, dim, &z, sampling, 0x51);
    report.push(
        "s' o # = #' o s",
        inputs
            .singles
            .iter()
            .all(|a| sigma_p.mul_vec(f, &tables.sharp(f, a)) == tables.sharp_p(f, &sigma.mul_vec(f, a))),
    );
    if !report.passed() {
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        return Err(ExlieError::verification(format!("base point: {}", failed.join("; "))));
    }
    Ok(BasedTwin { frame, tables, z, sigma, sigma_p, report })
}

impl<F: Field> BasedTwin<'_, F> {
    /// `T_J(a,b) = T(a,σ(b))`, `a ×_J b = σ′(a × b)`, `a^{♯_J} = σ′(a^♯)`
    /// and `1 = z`, with the norm unchanged.
    pub fn structure(&self) -> Result<CubicNormStructure<F>> {
        let f = self.frame.grading().algebra().field();
        let t = &self.tables;
        let dim = t.dim;
        let unit = |i: usize| vector::unit(f, dim, i);
        let trace = (0..dim).map(|i| (0..dim).map(|j| t.trace(f, &unit(i), &self.sigma.col(j))).collect()).collect();
        let cross = t.cross.iter().map(|row| row.iter().map(|v| self.sigma_p.mul_vec(f, v)).collect()).collect();
        let sharp = t.sharp.iter().map(|v| self.sigma_p.mul_vec(f, v)).collect();
        CubicNormStructure::new(f.clone(), trace, cross, sharp, t.norm_form(f), self.z.clone())
    }
}
