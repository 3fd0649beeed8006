//! Quadrangular algebras from two 5-gradings attached to a symplectic
//! quadruple `(x, y, c, d)`.
//!
//! `V = L_{−1} ∩ L′_{−1}` carries the quadratic form `Q`, read off the
//! extremal element `Q(v)x + [v,d] + d`, and `X = L_{−1} ∩ L′_0` carries the
//! maps `·`, `h` and `θ`. All automorphisms are products of exponentials of
//! extremal elements, normalized by a single factor `exp(λx)` or `exp(λc)`.

mod frame;
mod suite;

pub use frame::{QuadFrame, QuadSplit};

use exlie_field::Field;
use exlie_linalg::{vector, SparseVec};
use rayon::prelude::*;

use crate::auto::Automorphism;
use crate::cns::cubic::{bilinear, bilinear_map};
use crate::report::{Report, Sampling};
use crate::util::multiple_of;
use crate::{ExlieError, Result};

type Tensor<E> = Vec<Vec<Vec<E>>>;
/// `Q` on the basis of `V` and the Gram matrix of `T`.
type FormTables<E> = (Vec<E>, Vec<Vec<E>>);

/// The tables of `(k, V, Q, T, e, X, ·, h, θ)` on fixed bases of `V` and
/// `X`, together with the frame they were read from.
pub struct QuadAlgebra<'l, F: Field> {
    frame: QuadFrame<'l, F>,
    e: Vec<F::Elem>,
    delta: Vec<F::Elem>,
    e_p: SparseVec<F::Elem>,
    f_v: SparseVec<F::Elem>,
    f_p: SparseVec<F::Elem>,
    /// `Q(v_i)`.
    q: Vec<F::Elem>,
    /// `T(v_i, v_j)`.
    t: Vec<Vec<F::Elem>>,
    /// `a_i · v_j ∈ X`.
    dot: Tensor<F::Elem>,
    /// `h(a_i, a_j) ∈ V`.
    h: Tensor<F::Elem>,
    /// `θ(a_i, v_j) ∈ V`.
    theta: Tensor<F::Elem>,
    report: Report,
}

/// `Q(v_i)` and `T(v_i, v_j)` on the basis of `V`.
fn form_tables<F: Field>(frame: &QuadFrame<'_, F>) -> Result<FormTables<F::Elem>> {
    let f = frame.grading().algebra().field();
    let dv = frame.dim_v();
    let unit = |i: usize| vector::unit(f, dv, i);
    let q = (0..dv).into_par_iter().map(|i| frame.quadratic(&unit(i))).collect::<Result<_>>()?;
    let t = (0..dv)
        .into_par_iter()
        .map(|i| (0..dv).map(|j| frame.bilinear(&unit(i), &unit(j))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok((q, t))
}

/// The first `v` with `Q(v) ≠ 0` and `T(v, ·) ≠ 0` among basis vectors,
/// sums of two basis vectors and seeded random vectors.
fn base_vector<F: Field>(f: &F, q: &[F::Elem], t: &[Vec<F::Elem>], sampling: Sampling) -> Option<Vec<F::Elem>> {
    let dim = q.len();
    let unit = |i: usize| vector::unit(f, dim, i);
    let mut candidates: Vec<Vec<F::Elem>> = (0..dim).map(unit).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            candidates.push(vector::add(f, &unit(i), &unit(j)));
        }
    }
    let mut rng = sampling.rng(0xe0);
    candidates.extend((0..sampling.samples).map(|_| (0..dim).map(|_| f.random(&mut rng)).collect::<Vec<_>>()));
    candidates
        .into_iter()
        .find(|v| !f.is_zero(&quadratic_value(f, q, t, v)) && (0..dim).any(|i| !f.is_zero(&t_row(t, v, i, f))))
}

impl<'l, F: Field> QuadAlgebra<'l, F> {
    /// Rescales `(x, y)` so that `Q(e) = 1` for the first suitable `e`,
    /// picks `δ` and computes all tables.
    pub fn new(frame: &QuadFrame<'l, F>, sampling: Sampling) -> Result<Self> {
        let l = frame.grading().algebra();
        let f = l.field();
        let (q, t) = form_tables(frame)?;
        let e = base_vector(f, &q, &t, sampling)
            .ok_or_else(|| ExlieError::verification("no v with Q(v) != 0 outside the radical of T"))?;
        let frame = frame.rescaled(&quadratic_value(f, &q, &t, &e))?;
        let (q, t) = form_tables(&frame)?;
        let dv = frame.dim_v();
        let dx = frame.dim_x();
        let unit_v = |i: usize| vector::unit(f, dv, i);

        let te = |v: &[F::Elem]| bilinear(f, &t, &e, v);
        let delta = match f.inv(&f.from_i64(2)) {
            Some(half) => vector::scale(f, &half, &e),
            None => {
                let i = (0..dv)
                    .find(|&i| !f.is_zero(&t_row(&t, &e, i, f)))
                    .ok_or_else(|| ExlieError::verification("T(e, .) vanishes on V"))?;
                let mut delta = vector::scale(f, &f.inv(&t_row(&t, &e, i, f)).expect("nonzero"), &unit_v(i));
                if f.is_zero(&quadratic_value(f, &q, &t, &delta)) {
                    let lambda = f
                        .sample_nonzero(64)
                        .into_iter()
                        .find(|s| f.mul(s, s) != *s)
                        .ok_or_else(|| ExlieError::inapplicable("|k|>2 required"))?;
                    delta = vector::add(f, &vector::scale(f, &lambda, &e), &delta);
                }
                delta
            }
        };

        let y = &frame.y().x.clone();
        let d = &frame.d().x;
        let ev = frame.v_vector(&e);
        let e_p = l.bracket_sparse(d, &ev);
        let f_v = l.bracket_sparse(y, &ev);
        let f_p = l.bracket_sparse(y, &e_p);

        let mut report = Report::sampled(sampling);
        report.push("Q(e) = 1", f.is_one(&quadratic_value(f, &q, &t, &e)));
        report.push("T(e,delta) = 1", f.is_one(&te(&delta)));
        report.push("Q(delta) != 0", !f.is_zero(&quadratic_value(f, &q, &t, &delta)));

        let mut alg = QuadAlgebra {
            frame,
            e,
            delta,
            e_p,
            f_v,
            f_p,
            q,
            t,
            dot: Vec::new(),
            h: Vec::new(),
            theta: Vec::new(),
            report,
        };
        let xs = alg.frame.x_basis().to_vec();
        let vs = alg.frame.v_basis().to_vec();
        alg.dot = xs
            .par_iter()
            .map(|a| {
                vs.iter()
                    .map(|v| {
                        let w = l.bracket_sparse(a, &l.bracket_sparse(&alg.e_p, &l.bracket_sparse(v, y)));
                        alg.frame.x_coords(&w).ok_or_else(|| ExlieError::verification("a.v is not in X"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        alg.h = xs
            .par_iter()
            .map(|a| {
                xs.iter()
                    .map(|b| {
                        let w = l.bracket_sparse(a, &l.bracket_sparse(b, &alg.f_v));
                        alg.frame.v_coords(&w).ok_or_else(|| ExlieError::verification("h(a,b) is not in V"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        alg.theta = (0..dx)
            .into_par_iter()
            .map(|i| {
                let theta = alg.theta_auto(&vector::unit(f, dx, i))?;
                (0..dv).map(|j| alg.theta_of(&theta, &unit_v(j))).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if !alg.report.passed() {
            let failed: Vec<&str> = alg.report.failures().map(|c| c.name.as_str()).collect();
            return Err(ExlieError::verification(format!("base point: {}", failed.join("; "))));
        }
        Ok(alg)
    }

    pub fn frame(&self) -> &QuadFrame<'l, F> {
        &self.frame
    }

    pub fn field(&self) -> &F {
        self.frame.grading().algebra().field()
    }

    pub fn dim_v(&self) -> usize {
        self.frame.dim_v()
    }

    pub fn dim_x(&self) -> usize {
        self.frame.dim_x()
    }

    /// The base point, in coordinates on `V`.
    pub fn e(&self) -> &[F::Elem] {
        &self.e
    }

    pub fn delta(&self) -> &[F::Elem] {
        &self.delta
    }

    /// `e′ = [d,e]`.
    pub fn e_prime(&self) -> &SparseVec<F::Elem> {
        &self.e_p
    }

    /// `f = [y,e]`.
    pub fn f_vector(&self) -> &SparseVec<F::Elem> {
        &self.f_v
    }

    /// `f′ = [y,e′]`.
    pub fn f_prime(&self) -> &SparseVec<F::Elem> {
        &self.f_p
    }

    /// Checks made while choosing `e` and `δ`.
    pub fn report(&self) -> &Report {
        &self.report
    }

    pub fn q_table(&self) -> &[F::Elem] {
        &self.q
    }

    pub fn t_table(&self) -> &[Vec<F::Elem>] {
        &self.t
    }

    pub fn dot_table(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.dot
    }

    pub fn h_table(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.h
    }

    pub fn theta_table(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.theta
    }

    pub fn q(&self, v: &[F::Elem]) -> F::Elem {
        quadratic_value(self.field(), &self.q, &self.t, v)
    }

    pub fn t(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        bilinear(self.field(), &self.t, u, v)
    }

    /// `v^σ = T(v,e)e − v`.
    pub fn sigma(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        vector::sub(f, &vector::scale(f, &self.t(v, &self.e), &self.e), v)
    }

    pub fn dot(&self, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        bilinear_map(self.field(), self.dim_x(), &self.dot, a, v)
    }

    pub fn h(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        bilinear_map(self.field(), self.dim_v(), &self.h, a, b)
    }

    /// `γ(a,b) = T(h(a,b), δ)`.
    pub fn gamma(&self, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
        self.t(&self.h(a, b), &self.delta)
    }

    /// `θ(a,v)` from the basis values, expanded along the coordinates of
    /// `a` with `θ(a+b,v) = θ(a,v) + θ(b,v) + h(a, b·v) − γ(a,b)v` and
    /// `θ(λa,v) = λ²θ(a,v)`.
    pub fn theta(&self, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let dv = self.dim_v();
        let mut acc = vector::zeros(f, dv);
        let mut tail = vector::zeros(f, self.dim_x());
        for i in (0..a.len()).rev() {
            if f.is_zero(&a[i]) {
                continue;
            }
            let basis_theta: Vec<F::Elem> = (0..dv).fold(vector::zeros(f, dv), |mut s, k| {
                vector::axpy(f, &mut s, &v[k], &self.theta[i][k]);
                s
            });
            vector::axpy(f, &mut acc, &f.mul(&a[i], &a[i]), &basis_theta);
            if !vector::is_zero(f, &tail) {
                let ui = vector::unit(f, self.dim_x(), i);
                let cross =
                    vector::sub(f, &self.h(&ui, &self.dot(&tail, v)), &vector::scale(f, &self.gamma(&ui, &tail), v));
                vector::axpy(f, &mut acc, &a[i], &cross);
            }
            tail[i] = f.add(&tail[i], &a[i]);
        }
        acc
    }

    /// `π(a) = θ(a,e)`.
    pub fn pi(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        self.theta(a, &self.e)
    }

    /// The `a`-exponential automorphism `Θ_a` with `T(q_a(f), δ) = 0`.
    pub fn theta_auto(&self, a: &[F::Elem]) -> Result<Automorphism<F::Elem>> {
        let fr = &self.frame;
        let gr = fr.grading();
        let l = gr.algebra();
        let f = l.field();
        let alpha = fr.opposite_exponentiator().product_of_exponentials(&fr.x_vector(a))?;
        let qf = fr
            .v_coords(&gr.project_sparse(&alpha.auto.apply_sparse(l, &self.f_v), -1))
            .ok_or_else(|| ExlieError::verification("q(f) is not in V"))?;
        let lambda = self.t(&qf, &self.delta);
        Ok(fr.x().exp_scaled(f, &lambda, l.dim()).compose(&alpha.auto))
    }

    /// `θ(a,v) = q_a([y,v])`, read off `Θ_a`.
    pub fn theta_of(&self, theta_a: &Automorphism<F::Elem>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let fr = &self.frame;
        let gr = fr.grading();
        let l = gr.algebra();
        let yv = l.bracket_sparse(&fr.y().x, &fr.v_vector(v));
        fr.v_coords(&gr.project_sparse(&theta_a.apply_sparse(l, &yv), -1))
            .ok_or_else(|| ExlieError::verification("q_a([y,v]) is not in V"))
    }

    /// `α_v`: the `v`-exponential automorphism with
    /// `α_v(y) = y + [v,y] + Q(v)c`.
    pub fn alpha(&self, v: &[F::Elem]) -> Result<Automorphism<F::Elem>> {
        let fr = &self.frame;
        let gr = fr.grading();
        let l = gr.algebra();
        let f = l.field();
        let base = fr.opposite_exponentiator().product_of_exponentials(&fr.v_vector(v))?;
        let w0 = gr.project_sparse(&base.auto.apply_sparse(l, &fr.y().x), 0);
        let target = fr.c().x.scale(f, &self.q(v));
        let mu = multiple_of(f, &target.sub(f, &w0), gr.z())
            .ok_or_else(|| ExlieError::verification("L_0 part of the image of y is off the line through [x,y]"))?;
        Ok(fr.x().exp_scaled(f, &mu, l.dim()).compose(&base.auto))
    }

    /// `β_v`: the `[y,v]`-exponential automorphism for the second grading
    /// with `β_v(d) = d + [[y,v],d] + Q(v)y`.
    pub fn beta(&self, v: &[F::Elem]) -> Result<Automorphism<F::Elem>> {
        let fr = &self.frame;
        let grp = fr.second();
        let l = grp.algebra();
        let f = l.field();
        let yv = l.bracket_sparse(&fr.y().x, &fr.v_vector(v));
        let base = fr.second_opposite_exponentiator().product_of_exponentials(&yv)?;
        let w0 = grp.project_sparse(&base.auto.apply_sparse(l, &fr.d().x), 0);
        let target = fr.y().x.scale(f, &self.q(v));
        let mu = multiple_of(f, &target.sub(f, &w0), grp.z())
            .ok_or_else(|| ExlieError::verification("L'_0 part of the image of d is off the line through [c,d]"))?;
        Ok(fr.c().exp_scaled(f, &mu, l.dim()).compose(&base.auto))
    }

    /// `Θ̂_b`: the `[b,f]`-exponential automorphism for the second grading
    /// with `T(q̂_b(e′), δ) = 0`.
    pub fn theta_hat_auto(&self, b: &[F::Elem]) -> Result<Automorphism<F::Elem>> {
        let fr = &self.frame;
        let grp = fr.second();
        let l = grp.algebra();
        let f = l.field();
        let bf = l.bracket_sparse(&fr.x_vector(b), &self.f_v);
        let base = fr.second_opposite_exponentiator().product_of_exponentials(&bf)?;
        let q = fr
            .v_coords(&grp.project_sparse(&base.auto.apply_sparse(l, &self.e_p), -1))
            .ok_or_else(|| ExlieError::verification("q(e') is not in V"))?;
        let lambda = self.t(&q, &self.delta);
        Ok(fr.c().exp_scaled(f, &lambda, l.dim()).compose(&base.auto))
    }

    /// `θ̂(b,v) = q̂_b([d,v])`.
    pub fn theta_hat_of(&self, theta_hat_b: &Automorphism<F::Elem>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let fr = &self.frame;
        let grp = fr.second();
        let l = grp.algebra();
        let dv = l.bracket_sparse(&fr.d().x, &fr.v_vector(v));
        fr.v_coords(&grp.project_sparse(&theta_hat_b.apply_sparse(l, &dv), -1))
            .ok_or_else(|| ExlieError::verification("q^([d,v]) is not in V"))
    }

    /// The scalar `μ(a,v)` with
    /// `exp(−μc) Θ_a β_v = β_v Θ̂_{a·v} α_{θ(a,v)} Θ_a`.
    ///
    /// The quotient of the two sides maps `e′` to `e′ + μe`; the full
    /// equality is then checked on a generating set.
    pub fn mu(&self, a: &[F::Elem], v: &[F::Elem]) -> Result<F::Elem> {
        let fr = &self.frame;
        let l = fr.grading().algebra();
        let f = l.field();
        let theta_a = self.theta_auto(a)?;
        let beta_v = self.beta(v)?;
        let lhs = theta_a.compose(&beta_v);
        let rhs = beta_v
            .compose(&self.theta_hat_auto(&self.dot(a, v))?)
            .compose(&self.alpha(&self.theta_of(&theta_a, v)?)?)
            .compose(&theta_a);
        let w = rhs.apply_sparse(l, &lhs.inverse(f)?.apply_sparse(l, &self.e_p));
        let mu = multiple_of(f, &w.sub(f, &self.e_p), &fr.v_vector(&self.e))
            .ok_or_else(|| ExlieError::verification("the quotient does not move e' along e"))?;
        let quotient = fr.c().exp_scaled(f, &f.neg(&mu), l.dim());
        if !quotient.compose(&lhs).agrees_with(&rhs, l) {
            return Err(ExlieError::verification("the quotient is not exp of a multiple of c"));
        }
        Ok(mu)
    }

    /// `φ(a,v) = μ(a,v) − μ(a·v, e)`.
    pub fn phi(&self, a: &[F::Elem], v: &[F::Elem]) -> Result<F::Elem> {
        let f = self.field();
        Ok(f.sub(&self.mu(a, v)?, &self.mu(&self.dot(a, v), &self.e)?))
    }

    /// A copy whose `h(a_i, a_j)` is shifted by `delta`, for exercising
    /// the axiom checks on a broken structure.
    #[doc(hidden)]
    pub fn with_corrupted_h(mut self, i: usize, j: usize, delta: &[F::Elem]) -> Self {
        let f = self.field().clone();
        self.h[i][j] = vector::add(&f, &self.h[i][j], delta);
        self
    }

    /// Runs every axiom and identity check.
    pub fn verify(&self, sampling: Sampling) -> Result<Report> {
        suite::run(self, sampling)
    }
}

fn t_row<F: Field>(t: &[Vec<F::Elem>], e: &[F::Elem], i: usize, f: &F) -> F::Elem {
    e.iter().zip(t).fold(f.zero(), |acc, (ek, row)| f.add(&acc, &f.mul(ek, &row[i])))
}

/// `Σ v_i² Q(v_i) + Σ_{i<j} v_i v_j T(v_i, v_j)`.
fn quadratic_value<F: Field>(f: &F, q: &[F::Elem], t: &[Vec<F::Elem>], v: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for i in 0..v.len() {
        if f.is_zero(&v[i]) {
            continue;
        }
        f.mul_add_assign(&mut acc, &f.mul(&v[i], &v[i]), &q[i]);
        for j in i + 1..v.len() {
            if !f.is_zero(&v[j]) {
                f.mul_add_assign(&mut acc, &f.mul(&v[i], &v[j]), &t[i][j]);
            }
        }
    }
    acc
}
