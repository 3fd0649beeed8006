//! Automorphisms of the form `m ↦ m + [l,m] + q(m) + n(m) + v(m)` for
//! `l ∈ L_1`, where `q`, `n`, `v` raise the degree by 2, 3 and 4.
//!
//! Such an automorphism is determined by `l` up to a factor `exp(μy)`. The
//! maps `q`, `n`, `v` are never stored; they are read off the automorphism by
//! graded projection of `A(m) − m − [l,m]` whenever they are needed.
//!
//! Automorphisms for `l ∈ L_{−1}` are built on the reversed grading.

use exlie_field::{Field, FiniteField};
use exlie_linalg::{solve as linsolve, vector, Mat, SparseVec, Subspace};
use rayon::prelude::*;

use crate::auto::Automorphism;
use crate::extremal::{extremal_form, extremal_spanning_set, Extremal};
use crate::grading::{Grading5, DEGREES};
use crate::report::Report;
use crate::{ExlieError, LieAlgebra, Result};

/// An `l`-exponential automorphism.
#[derive(Debug, Clone)]
pub struct LExp<E> {
    pub l: SparseVec<E>,
    pub auto: Automorphism<E>,
    /// Extremal `e_1, …, e_m` with `l = Σ e_i` and `auto = exp(e_1)⋯exp(e_m)`,
    /// when the automorphism was built that way; empty otherwise.
    pub summands: Vec<Extremal<E>>,
}

/// The degree-raising parts of an automorphism on one vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Parts<E> {
    pub q: SparseVec<E>,
    pub n: SparseVec<E>,
    pub v: SparseVec<E>,
}

/// [`Parts`] on every basis vector of every piece of the grading.
#[derive(Debug, Clone)]
pub struct PartTable<E> {
    per_piece: Vec<Vec<Parts<E>>>,
}

fn slot(i: i32) -> usize {
    (i + 2) as usize
}

/// The parts of `image = A(m)` for `m` homogeneous of degree `i`, or `None`
/// if `image − m − [l,m]` has a component outside degrees `i+2..=i+4`.
fn split_image<F: Field>(
    gr: &Grading5<'_, F>,
    l: &SparseVec<F::Elem>,
    m: &SparseVec<F::Elem>,
    i: i32,
    image: &SparseVec<F::Elem>,
) -> Option<Parts<F::Elem>> {
    let alg = gr.algebra();
    let f = alg.field();
    let rest = image.sub(f, m).sub(f, &alg.bracket_sparse(l, m));
    if gr.support(&rest).iter().any(|&d| d < i + 2) {
        return None;
    }
    let part = |d: i32| if d <= 2 { gr.project_sparse(&rest, d) } else { SparseVec::new() };
    Some(Parts { q: part(i + 2), n: part(i + 3), v: part(i + 4) })
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static> LExp<E> {
    pub fn identity(dim: usize) -> Self {
        LExp { l: SparseVec::new(), auto: Automorphism::identity(dim), summands: Vec::new() }
    }

    /// Images of all piece basis vectors split into parts; fails if the
    /// degree constraints are violated anywhere.
    pub fn table<F: Field<Elem = E>>(&self, gr: &Grading5<'_, F>) -> Result<PartTable<E>> {
        let alg = gr.algebra();
        let mut per_piece = Vec::with_capacity(5);
        for i in DEGREES {
            let parts: Option<Vec<Parts<E>>> = gr
                .basis(i)
                .par_iter()
                .map(|m| split_image(gr, &self.l, m, i, &self.auto.apply_sparse(alg, m)))
                .collect();
            per_piece.push(
                parts.ok_or_else(|| {
                    ExlieError::verification(format!("image of L_{i} violates the degree constraints"))
                })?,
            );
        }
        Ok(PartTable { per_piece })
    }

    /// Parts of a single vector, computed directly.
    pub fn parts<F: Field<Elem = E>>(&self, gr: &Grading5<'_, F>, m: &SparseVec<E>) -> Result<Parts<E>> {
        let alg = gr.algebra();
        let f = alg.field();
        let mut out = Parts { q: SparseVec::new(), n: SparseVec::new(), v: SparseVec::new() };
        for i in DEGREES {
            let mi = gr.project_sparse(m, i);
            if mi.is_empty() {
                continue;
            }
            let p = split_image(gr, &self.l, &mi, i, &self.auto.apply_sparse(alg, &mi))
                .ok_or_else(|| ExlieError::verification("degree constraints violated"))?;
            out.q = out.q.add(f, &p.q);
            out.n = out.n.add(f, &p.n);
            out.v = out.v.add(f, &p.v);
        }
        Ok(out)
    }

    pub fn q<F: Field<Elem = E>>(&self, gr: &Grading5<'_, F>, m: &SparseVec<E>) -> Result<SparseVec<E>> {
        Ok(self.parts(gr, m)?.q)
    }
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static> PartTable<E> {
    pub fn on_basis(&self, i: i32) -> &[Parts<E>] {
        &self.per_piece[slot(i)]
    }

    /// Parts of an arbitrary vector, by linearity.
    pub fn parts<F: Field<Elem = E>>(&self, gr: &Grading5<'_, F>, m: &SparseVec<E>) -> Parts<E> {
        let f = gr.algebra().field();
        let mut out = Parts { q: SparseVec::new(), n: SparseVec::new(), v: SparseVec::new() };
        for i in DEGREES {
            for (c, p) in gr.coordinates(m, i).iter().zip(self.on_basis(i)) {
                if !f.is_zero(c) {
                    out.q = out.q.add_scaled(f, c, &p.q);
                    out.n = out.n.add_scaled(f, c, &p.n);
                    out.v = out.v.add_scaled(f, c, &p.v);
                }
            }
        }
        out
    }

    /// Matrices of `q`, `n`, `v` in the standard basis.
    pub fn matrices<F: Field<Elem = E>>(&self, gr: &Grading5<'_, F>) -> [Mat<E>; 3] {
        let alg = gr.algebra();
        let f = alg.field();
        let n = alg.dim();
        let parts: Vec<Parts<E>> = (0..n).map(|j| self.parts(gr, &SparseVec::unit(f, j))).collect();
        let mat = |pick: fn(&Parts<E>) -> &SparseVec<E>| {
            let cols: Vec<Vec<E>> = parts.iter().map(|p| pick(p).to_dense(f, n)).collect();
            Mat::from_columns(&cols, n)
        };
        [mat(|p| &p.q), mat(|p| &p.n), mat(|p| &p.v)]
    }
}

/// `exp(μy)`, the automorphisms of `L_2` that make the choice of an
/// `l`-exponential automorphism non-unique.
pub fn exp_top<F: Field>(gr: &Grading5<'_, F>, mu: &F::Elem) -> Automorphism<F::Elem> {
    let alg = gr.algebra();
    gr.y().exp_scaled(alg.field(), mu, alg.dim())
}

/// The scalar `μ` with `v = μ·[x,y]`.
fn z_multiple<F: Field>(gr: &Grading5<'_, F>, v: &SparseVec<F::Elem>) -> Option<F::Elem> {
    let f = gr.algebra().field();
    if v.is_empty() {
        return Some(f.zero());
    }
    let (k, c) = gr.z().entries().first()?.clone();
    let mu = f.div(&v.get(f, k), &c)?;
    (gr.z().scale(f, &mu) == *v).then_some(mu)
}

/// Builds `l`-exponential automorphisms from a fixed extremal basis of `L_1`.
pub struct Exponentiator<'g, 'l, F: Field> {
    gr: &'g Grading5<'l, F>,
    spanning: Vec<Extremal<F::Elem>>,
    columns: Mat<F::Elem>,
}

impl<'g, 'l, F: Field> Exponentiator<'g, 'l, F> {
    /// Fails with [`ExlieError::BudgetExhausted`] when no extremal basis of
    /// `L_1` is found, which is expected when the extremal geometry has no
    /// lines over the base field.
    pub fn new(gr: &'g Grading5<'l, F>) -> Result<Self> {
        let alg = gr.algebra();
        let f = alg.field();
        let n = alg.dim();
        let spanning = extremal_spanning_set(alg, gr.piece(1))?;
        let cols: Vec<Vec<F::Elem>> = spanning.iter().map(|c| c.vector(f, n)).collect();
        Ok(Exponentiator { gr, spanning, columns: Mat::from_columns(&cols, n) })
    }

    /// Reuses an extremal spanning set of `L_1` found earlier.
    pub fn with_spanning(gr: &'g Grading5<'l, F>, spanning: Vec<Extremal<F::Elem>>) -> Result<Self> {
        let alg = gr.algebra();
        let f = alg.field();
        let n = alg.dim();
        let cols: Vec<Vec<F::Elem>> = spanning.iter().map(|c| c.vector(f, n)).collect();
        if !gr.piece(1).contains_all(f, &cols) || Subspace::span(f, n, &cols).dim() != gr.piece(1).dim() {
            return Err(ExlieError::Invalid("the extremal elements must span L_1".into()));
        }
        Ok(Exponentiator { gr, spanning, columns: Mat::from_columns(&cols, n) })
    }

    /// [`Self::with_spanning`] without re-checking the span.
    pub(crate) fn with_spanning_unchecked(gr: &'g Grading5<'l, F>, spanning: Vec<Extremal<F::Elem>>) -> Self {
        let alg = gr.algebra();
        let cols: Vec<Vec<F::Elem>> = spanning.iter().map(|c| c.vector(alg.field(), alg.dim())).collect();
        Exponentiator { gr, columns: Mat::from_columns(&cols, alg.dim()), spanning }
    }

    pub fn grading(&self) -> &'g Grading5<'l, F> {
        self.gr
    }

    pub fn spanning_set(&self) -> &[Extremal<F::Elem>] {
        &self.spanning
    }

    fn check_in_l1(&self, l: &SparseVec<F::Elem>) -> Result<()> {
        if self.gr.support(l).iter().any(|&d| d != 1) {
            return Err(ExlieError::Invalid("l must lie in L_1".into()));
        }
        Ok(())
    }

    /// Writes `l` over the extremal basis and multiplies the exponentials
    /// of the summands. The degree constraints are checked on every basis
    /// vector, and for algebras of dimension at most 80 the recursive
    /// description of the parts is checked as well.
    pub fn l_exponential(&self, l: &SparseVec<F::Elem>) -> Result<LExp<F::Elem>> {
        let alpha = self.product_of_exponentials(l)?;
        alpha.table(self.gr)?;
        if self.gr.algebra().dim() <= 80 {
            let r = recursion_report(self.gr, &alpha);
            if !r.passed() {
                return Err(ExlieError::Verification(format!("recursive parts disagree:\n{r}")));
            }
        }
        Ok(alpha)
    }

    /// The product `exp(e_1)⋯exp(e_m)` for `l = Σ e_i` over the spanning
    /// set, without the verification done by [`Self::l_exponential`]. Meant
    /// for bulk evaluation once the checked path has been exercised.
    pub fn product_of_exponentials(&self, l: &SparseVec<F::Elem>) -> Result<LExp<F::Elem>> {
        self.check_in_l1(l)?;
        let alg = self.gr.algebra();
        let f = alg.field();
        let n = alg.dim();
        let coeffs = linsolve(f, &self.columns, &l.to_dense(f, n))?
            .ok_or_else(|| ExlieError::Internal("extremal basis does not span L_1".into()))?;
        let summands: Vec<Extremal<F::Elem>> =
            coeffs.iter().zip(&self.spanning).filter(|(c, _)| !f.is_zero(c)).map(|(c, e)| e.scaled(f, c)).collect();
        let auto = summands.iter().fold(Automorphism::identity(n), |acc, e| acc.compose(&e.exp(n)));
        Ok(LExp { l: l.clone(), auto, summands })
    }

    /// The automorphism with `q = ½ ad_l²`, available outside
    /// characteristic 2.
    pub fn canonical(&self, l: &SparseVec<F::Elem>) -> Result<LExp<F::Elem>> {
        canonical(self.gr, &self.l_exponential(l)?)
    }

    /// The unique automorphism with `l ∈ L_1` mapping `x` to the extremal
    /// element `e`, whose `L_{−2}`-component must be `x`.
    pub fn transport(&self, e: &SparseVec<F::Elem>) -> Result<LExp<F::Elem>> {
        let gr = self.gr;
        let alg = gr.algebra();
        let f = alg.field();
        let n = alg.dim();
        let x = &gr.x().x;
        let y = &gr.y().x;
        if gr.project_sparse(e, -2) != *x {
            return Err(ExlieError::Invalid("the L_-2 component must equal x".into()));
        }
        extremal_form(alg, e)?;
        let a = alg.bracket_sparse(y, &gr.project_sparse(e, -1));
        let alpha = self.l_exponential(&a)?;
        let w = alpha.auto.inverse(f)?.apply_sparse(alg, e);
        let yx = alg.bracket_sparse(y, x);
        let lambda = vector::proportion(f, &yx.to_dense(f, n), &gr.project_sparse(&w, 0).to_dense(f, n))
            .or_else(|| gr.project_sparse(&w, 0).is_empty().then(|| f.zero()))
            .ok_or_else(|| ExlieError::verification("L_0 component is not a multiple of [y,x]"))?;
        let top = exp_top(gr, &lambda);
        if top.apply_sparse(alg, x) != w {
            return Err(ExlieError::verification("inverse image is not in the exp(ky)-orbit of x"));
        }
        let phi = alpha.auto.compose(&top);
        if phi.apply_sparse(alg, x) != *e {
            return Err(ExlieError::verification("transport does not reach e"));
        }
        Ok(LExp { l: a, auto: phi, summands: Vec::new() })
    }
}

/// Checks the recursive description of the parts along the factorization
/// `α = exp(e_1) α'` with `l = e_1 + l'`:
/// `q = q' + g_e(m)e + [e,[l',m]]`, `n = n' + g_e([l',m])e + [e,q'(m)]` and
/// `v = v' + [e,n'(m)]`.
pub fn recursion_report<F: Field>(gr: &Grading5<'_, F>, alpha: &LExp<F::Elem>) -> Report {
    let alg = gr.algebra();
    let f = alg.field();
    let n = alg.dim();
    let mut report = Report::new();
    let mut ok = true;
    // Images of the piece bases under the suffix products, built from the
    // right so that each step multiplies by one more exponential on the left.
    let bases: Vec<(i32, SparseVec<F::Elem>)> =
        DEGREES.iter().flat_map(|&i| gr.basis(i).iter().map(move |b| (i, b.clone()))).collect();
    let mut images: Vec<SparseVec<F::Elem>> = bases.iter().map(|(_, b)| b.clone()).collect();
    let mut l_rest = SparseVec::new();
    for e in alpha.summands.iter().rev() {
        let ee = e.exp(n);
        let next: Vec<SparseVec<F::Elem>> = images.par_iter().map(|v| ee.apply_sparse(alg, v)).collect();
        let l_new = l_rest.add(f, &e.x);
        let step_ok = bases.par_iter().zip(images.par_iter().zip(next.par_iter())).all(|((i, m), (old, new))| {
            let (Some(p_old), Some(p_new)) =
                (split_image(gr, &l_rest, m, *i, old), split_image(gr, &l_new, m, *i, new))
            else {
                return false;
            };
            let lm = alg.bracket_sparse(&l_rest, m);
            let q = p_old.q.add_scaled(f, &e.form(f, m), &e.x).add(f, &alg.bracket_sparse(&e.x, &lm));
            let nn = p_old.n.add_scaled(f, &e.form(f, &lm), &e.x).add(f, &alg.bracket_sparse(&e.x, &p_old.q));
            let v = p_old.v.add(f, &alg.bracket_sparse(&e.x, &p_old.n));
            q == p_new.q && nn == p_new.n && v == p_new.v
        });
        ok &= step_ok;
        images = next;
        l_rest = l_new;
    }
    report.push("recursive parts", ok);
    report.push("summands add up to l", l_rest == alpha.l);
    report
}

/// Checks the closed forms `2q = ad_l²`, `6n = ad_l³`, `24v = ad_l⁴` on every
/// basis vector.
pub fn closed_form_report<F: Field>(gr: &Grading5<'_, F>, alpha: &LExp<F::Elem>) -> Result<Report> {
    let alg = gr.algebra();
    let f = alg.field();
    let table = alpha.table(gr)?;
    let mut ok = [true; 3];
    for i in DEGREES {
        for (m, p) in gr.basis(i).iter().zip(table.on_basis(i)) {
            let a1 = alg.bracket_sparse(&alpha.l, m);
            let a2 = alg.bracket_sparse(&alpha.l, &a1);
            let a3 = alg.bracket_sparse(&alpha.l, &a2);
            let a4 = alg.bracket_sparse(&alpha.l, &a3);
            ok[0] &= p.q.scale(f, &f.from_i64(2)) == a2;
            ok[1] &= p.n.scale(f, &f.from_i64(6)) == a3;
            ok[2] &= p.v.scale(f, &f.from_i64(24)) == a4;
        }
    }
    let mut r = Report::new();
    r.push("2q = ad_l^2", ok[0]);
    r.push("6n = ad_l^3", ok[1]);
    r.push("24v = ad_l^4", ok[2]);
    Ok(r)
}

/// `exp(μy) α` with `μ` chosen so that `q = ½ ad_l²`.
pub fn canonical<F: Field>(gr: &Grading5<'_, F>, alpha: &LExp<F::Elem>) -> Result<LExp<F::Elem>> {
    let alg = gr.algebra();
    let f = alg.field();
    let half = f.inv(&f.from_i64(2)).ok_or_else(|| {
        ExlieError::inapplicable("the normalization q = ad_l^2 / 2 needs characteristic other than 2")
    })?;
    let x = &gr.x().x;
    let target = alg.bracket_sparse(&alpha.l, &alg.bracket_sparse(&alpha.l, x)).scale(f, &half);
    let diff = alpha.q(gr, x)?.sub(f, &target);
    let mu = z_multiple(gr, &diff)
        .ok_or_else(|| ExlieError::verification("q(x) - ad_l^2(x)/2 is not a multiple of [x,y]"))?;
    let beta = LExp { l: alpha.l.clone(), auto: exp_top(gr, &mu).compose(&alpha.auto), summands: Vec::new() };
    let table = beta.table(gr)?;
    let ok = DEGREES.iter().all(|&i| {
        gr.basis(i)
            .iter()
            .zip(table.on_basis(i))
            .all(|(m, p)| p.q == alg.bracket_sparse(&beta.l, &alg.bracket_sparse(&beta.l, m)).scale(f, &half))
    });
    if !ok {
        return Err(ExlieError::verification("normalized automorphism does not have q = ad_l^2 / 2"));
    }
    Ok(beta)
}

/// The `(λl)`-exponential automorphism `φ_λ α φ_λ⁻¹`.
pub fn scale<F: Field>(gr: &Grading5<'_, F>, alpha: &LExp<F::Elem>, lambda: &F::Elem) -> Result<LExp<F::Elem>> {
    let alg = gr.algebra();
    let f = alg.field();
    if f.is_zero(lambda) {
        return Ok(LExp::identity(alg.dim()));
    }
    let inv = f.inv(lambda).expect("nonzero");
    let auto = gr.torus(lambda)?.compose(&alpha.auto).compose(&gr.torus(&inv)?);
    Ok(LExp {
        l: alpha.l.scale(f, lambda),
        auto,
        summands: alpha.summands.iter().map(|e| e.scaled(f, lambda)).collect(),
    })
}

/// The `(l + l′)`-exponential automorphism `αβ`.
pub fn compose<F: Field>(gr: &Grading5<'_, F>, a: &LExp<F::Elem>, b: &LExp<F::Elem>) -> LExp<F::Elem> {
    let f = gr.algebra().field();
    LExp {
        l: a.l.add(f, &b.l),
        auto: a.auto.compose(&b.auto),
        summands: a.summands.iter().chain(&b.summands).cloned().collect(),
    }
}

/// Checks the part formulas of a product `γ = αβ`:
/// `q_γ = q_α + [l,[l′,·]] + q_β`,
/// `n_γ = n_α + q_α([l′,·]) + [l, q_β] + n_β` and
/// `v_γ = v_α + n_α([l′,·]) + q_α q_β + [l, n_β] + v_β`.
pub fn product_report<F: Field>(
    gr: &Grading5<'_, F>,
    a: &LExp<F::Elem>,
    b: &LExp<F::Elem>,
    c: &LExp<F::Elem>,
) -> Result<Report> {
    let alg = gr.algebra();
    let f = alg.field();
    let (ta, tb, tc) = (a.table(gr)?, b.table(gr)?, c.table(gr)?);
    let mut ok = [true; 3];
    for i in DEGREES {
        for (k, m) in gr.basis(i).iter().enumerate() {
            let (pa, pb, pc) = (&ta.on_basis(i)[k], &tb.on_basis(i)[k], &tc.on_basis(i)[k]);
            let lpm = alg.bracket_sparse(&b.l, m);
            let pa_lpm = ta.parts(gr, &lpm);
            let q = pa.q.add(f, &alg.bracket_sparse(&a.l, &lpm)).add(f, &pb.q);
            let n = pa.n.add(f, &pa_lpm.q).add(f, &alg.bracket_sparse(&a.l, &pb.q)).add(f, &pb.n);
            let v =
                pa.v.add(f, &pa_lpm.n)
                    .add(f, &ta.parts(gr, &pb.q).q)
                    .add(f, &alg.bracket_sparse(&a.l, &pb.n))
                    .add(f, &pb.v);
            ok[0] &= q == pc.q;
            ok[1] &= n == pc.n;
            ok[2] &= v == pc.v;
        }
    }
    let mut r = Report::new();
    r.push("product formula for q", ok[0]);
    r.push("product formula for n", ok[1]);
    r.push("product formula for v", ok[2]);
    Ok(r)
}

/// The scalar `μ` with `b = exp(μy) a`, for automorphisms sharing `l`.
pub fn exp_difference<F: Field>(gr: &Grading5<'_, F>, a: &LExp<F::Elem>, b: &LExp<F::Elem>) -> Result<F::Elem> {
    let alg = gr.algebra();
    let f = alg.field();
    if a.l != b.l {
        return Err(ExlieError::Invalid("the automorphisms belong to different l".into()));
    }
    let x = &gr.x().x;
    // q_b(x) − q_a(x) = [μy, x] = −μ[x,y]
    let diff = a.q(gr, x)?.sub(f, &b.q(gr, x)?);
    let mu =
        z_multiple(gr, &diff).ok_or_else(|| ExlieError::verification("q difference is not a multiple of [x,y]"))?;
    if !exp_top(gr, &mu).compose(&a.auto).agrees_with(&b.auto, alg) {
        return Err(ExlieError::verification("automorphisms do not differ by exp(ky)"));
    }
    Ok(mu)
}

/// Whether `αβ = exp([l,l′]) βα`.
pub fn commutator_holds<F: Field>(gr: &Grading5<'_, F>, a: &LExp<F::Elem>, b: &LExp<F::Elem>) -> bool {
    let alg = gr.algebra();
    let f = alg.field();
    let c = alg.bracket_sparse(&a.l, &b.l);
    let Some(mu) = vector::proportion(f, &gr.y().vector(f, alg.dim()), &c.to_dense(f, alg.dim()))
        .or_else(|| c.is_empty().then(|| f.zero()))
    else {
        return false;
    };
    let lhs = a.auto.compose(&b.auto);
    let rhs = exp_top(gr, &mu).compose(&b.auto).compose(&a.auto);
    lhs.agrees_with(&rhs, alg)
}

/// A basis of `L_0` that starts with `[x,y]`.
fn l0_basis_through_z<F: Field>(gr: &Grading5<'_, F>) -> Vec<Vec<F::Elem>> {
    let alg = gr.algebra();
    let f = alg.field();
    let n = alg.dim();
    let mut basis = vec![gr.z().to_dense(f, n)];
    let mut span = Subspace::span(f, n, &basis);
    for b in gr.piece(0).basis() {
        if !span.contains(f, b) {
            basis.push(b.clone());
            span = Subspace::span(f, n, &basis);
        }
    }
    basis
}

/// Result of [`descend`].
pub struct Descent {
    /// The normalized automorphism over the extension field.
    pub beta: LExp<u32>,
    /// Its restriction, with images over the prime field.
    pub restricted: Automorphism<u32>,
}

/// Galois descent along GF(p²)/GF(p) for `l` with prime-field coordinates.
///
/// Over the extension, `β = exp(λy) α` where `λ` is the `[x,y]`-coefficient
/// of `q_α(x)` in a prime-field basis of `L_0` containing `[x,y]`; `β` then
/// commutes with the Frobenius and restricts to the prime field.
pub fn descend(ext: &Exponentiator<'_, '_, FiniteField>, l: &SparseVec<u32>) -> Result<Descent> {
    let gr = ext.grading();
    let alg: &LieAlgebra<FiniteField> = gr.algebra();
    let f = alg.field();
    let n = alg.dim();
    if f.degree() != 2 {
        return Err(ExlieError::Invalid("descent needs a quadratic extension field".into()));
    }
    let fixed = |a: &u32| f.conjugate(a) == *a;
    if !l.iter().all(|(_, a)| fixed(a)) {
        return Err(ExlieError::Invalid("l is not fixed by the Frobenius".into()));
    }
    let basis = l0_basis_through_z(gr);
    if !basis.iter().flatten().all(fixed) {
        return Err(ExlieError::Internal("L_0 has no prime-field basis".into()));
    }
    let alpha = ext.l_exponential(l)?;
    let qx = alpha.q(gr, &gr.x().x)?.to_dense(f, n);
    let coords = linsolve(f, &Mat::from_columns(&basis, n), &qx)?
        .ok_or_else(|| ExlieError::verification("q(x) is not in L_0"))?;
    let beta = LExp { l: l.clone(), auto: exp_top(gr, &coords[0]).compose(&alpha.auto), summands: Vec::new() };
    let images = beta.auto.images(alg);
    if !images.iter().all(|v| v.iter().all(|(_, a)| fixed(a))) {
        return Err(ExlieError::verification("normalized automorphism is not Frobenius-invariant"));
    }
    Ok(Descent { beta, restricted: Automorphism::from_images(images) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::find_hyperbolic_pair;
    use crate::CartanType;

    #[test]
    fn single_extremal_summand() {
        let f = FiniteField::prime(5).unwrap();
        let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        let ex = Exponentiator::new(&gr).unwrap();
        let e = ex.spanning_set()[0].clone();
        let alpha = ex.l_exponential(&e.x).unwrap();
        for j in 0..l.dim() {
            let m = SparseVec::unit(&f, j);
            let p = alpha.parts(&gr, &m).unwrap();
            assert_eq!(p.q, e.x.scale(&f, &e.form(&f, &m)));
            assert!(p.n.is_empty() && p.v.is_empty());
        }
        let zero = ex.l_exponential(&SparseVec::new()).unwrap();
        assert!(zero.auto.is_identity_product());
    }
}
