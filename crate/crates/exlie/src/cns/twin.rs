//! The cubic norm pair on `(J, J′)` read off the frame.

use exlie_field::Field;
use exlie_linalg::{vector, SparseVec};
use rayon::prelude::*;

use super::cubic::{bilinear, bilinear_map, quadratic_map, CubicForm, TestInputs};
use super::frame::HexFrame;
use crate::auto::Automorphism;
use crate::report::{Report, Sampling};
use crate::{ExlieError, Result};

/// `N, ♯, T, ×` and their primed counterparts on fixed bases of `J` and `J′`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinTables<E> {
    pub dim: usize,
    /// `T(a_i, b_j)` for `a_i ∈ J`, `b_j ∈ J′`.
    pub trace: Vec<Vec<E>>,
    /// `a_i × a_j ∈ J′`.
    pub cross: Vec<Vec<Vec<E>>>,
    /// `b_i ×′ b_j ∈ J`.
    pub cross_p: Vec<Vec<Vec<E>>>,
    /// `a_i^♯ ∈ J′`.
    pub sharp: Vec<Vec<E>>,
    /// `b_i^{♯′} ∈ J`.
    pub sharp_p: Vec<Vec<E>>,
    pub norm: Vec<E>,
    pub norm_p: Vec<E>,
}

impl<E: Clone + PartialEq + Send + Sync> TwinTables<E> {
    pub fn trace<F: Field<Elem = E>>(&self, f: &F, a: &[E], b: &[E]) -> E {
        bilinear(f, &self.trace, a, b)
    }

    pub fn cross<F: Field<Elem = E>>(&self, f: &F, a: &[E], b: &[E]) -> Vec<E> {
        bilinear_map(f, self.dim, &self.cross, a, b)
    }

    pub fn cross_p<F: Field<Elem = E>>(&self, f: &F, a: &[E], b: &[E]) -> Vec<E> {
        bilinear_map(f, self.dim, &self.cross_p, a, b)
    }

    pub fn sharp<F: Field<Elem = E>>(&self, f: &F, a: &[E]) -> Vec<E> {
        quadratic_map(f, self.dim, &self.sharp, &self.cross, a)
    }

    pub fn sharp_p<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Vec<E> {
        quadratic_map(f, self.dim, &self.sharp_p, &self.cross_p, b)
    }

    /// `N` as a cubic polynomial on `J`.
    pub fn norm_form<F: Field<Elem = E>>(&self, f: &F) -> CubicForm<E> {
        let unit = |i: usize| vector::unit(f, self.dim, i);
        CubicForm::from_polarization(
            f,
            self.dim,
            |i| self.norm[i].clone(),
            |i, j| self.trace(f, &unit(j), &self.sharp[i]),
            |i, j, k| self.trace(f, &unit(i), &self.cross[j][k]),
        )
    }

    /// `N′` as a cubic polynomial on `J′`, using `T′(b,a) = T(a,b)`.
    pub fn norm_p_form<F: Field<Elem = E>>(&self, f: &F) -> CubicForm<E> {
        let unit = |i: usize| vector::unit(f, self.dim, i);
        CubicForm::from_polarization(
            f,
            self.dim,
            |i| self.norm_p[i].clone(),
            |i, j| self.trace(f, &self.sharp_p[i], &unit(j)),
            |i, j, k| self.trace(f, &self.cross_p[j][k], &unit(i)),
        )
    }
}

/// The value of a norm together with the adjoint, in coordinates.
pub type NormAdjoint<E> = (E, Vec<E>);

type Sampled<E> = Vec<(Vec<E>, NormAdjoint<E>)>;
type TripleIdentity<'a, E> = dyn Fn(&[E], &[E], &[E]) -> bool + Sync + 'a;

impl<'l, F: Field> HexFrame<'l, F> {
    /// `N(a)` and `a^♯` for `a ∈ J`, from the unique extremal element
    /// `N(a)x + a^♯ + [a,q] + q`.
    ///
    /// An `a`-exponential automorphism for the opposite end maps `q` to an
    /// extremal element with the right `L_0`, `L_1`, `L_2` components; the
    /// factor `exp(λx)` then moves its `L_{−1}` component into `J′`, with
    /// `λ` read off the `d`-coefficient since `[x,q] = d`. A second
    /// automorphism, multiplying the same summands in the opposite order,
    /// must give the same element.
    pub fn adjoint_norm(&self, a: &[F::Elem]) -> Result<NormAdjoint<F::Elem>> {
        let f = self.grading().algebra().field();
        let v = self.j_vector(a);
        let e = self.extremal_over(&v, &self.q().x, false)?;
        let n = self.x_coefficient(&self.grading().project_sparse(&e, -2)).expect("L_-2 = kx");
        let s = self.split(&self.grading().project_sparse(&e, -1)).expect("projection lies in L_-1");
        if !(f.is_zero(&s.c) && f.is_zero(&s.d) && vector::is_zero(f, &s.j)) {
            return Err(ExlieError::verification("corrected L_-1 component is not in J'"));
        }
        Ok((n, s.jp))
    }

    /// `N′(b)` and `b^{♯′}` for `b ∈ J′`, from the extremal element
    /// `N′(b)x − b^{♯′} + [b,p] + p`.
    pub fn adjoint_norm_p(&self, b: &[F::Elem]) -> Result<NormAdjoint<F::Elem>> {
        let f = self.grading().algebra().field();
        let v = self.jp_vector(b);
        let e = self.extremal_over(&v, &self.p().x, true)?;
        let n = self.x_coefficient(&self.grading().project_sparse(&e, -2)).expect("L_-2 = kx");
        let s = self.split(&self.grading().project_sparse(&e, -1)).expect("projection lies in L_-1");
        if !(f.is_zero(&s.c) && f.is_zero(&s.d) && vector::is_zero(f, &s.jp)) {
            return Err(ExlieError::verification("corrected L_-1 component is not in J"));
        }
        Ok((n, vector::neg(f, &s.j)))
    }

    fn extremal_over(
        &self,
        a: &SparseVec<F::Elem>,
        top: &SparseVec<F::Elem>,
        primed: bool,
    ) -> Result<SparseVec<F::Elem>> {
        let gr = self.grading();
        let l = gr.algebra();
        let n = l.dim();
        let alpha = self.opposite_exponentiator().product_of_exponentials(a)?;
        let reordered = alpha.summands.iter().rev().fold(Automorphism::identity(n), |acc, e| acc.compose(&e.exp(n)));
        let e1 = self.corrected(&alpha.auto.apply_sparse(l, top), top, primed)?;
        let e2 = self.corrected(&reordered.apply_sparse(l, top), top, primed)?;
        if e1 != e2 {
            return Err(ExlieError::verification("two decompositions give different extremal elements"));
        }
        let expected_upper = top.add(l.field(), &l.bracket_sparse(a, top));
        let upper = [0, 1, 2].iter().fold(SparseVec::new(), |acc, &i| acc.add(l.field(), &gr.project_sparse(&e1, i)));
        if upper != expected_upper {
            return Err(ExlieError::verification("automorphism image has the wrong L_0 + L_1 + L_2 part"));
        }
        Ok(e1)
    }

    /// Applies the `exp(λx)` that kills the `d`-coefficient (or the
    /// `c`-coefficient when `primed`) of the `L_{−1}` component.
    fn corrected(&self, w: &SparseVec<F::Elem>, top: &SparseVec<F::Elem>, primed: bool) -> Result<SparseVec<F::Elem>> {
        let gr = self.grading();
        let l = gr.algebra();
        let f = l.field();
        let pick = |v: &SparseVec<F::Elem>| {
            let s = self.split(&gr.project_sparse(v, -1)).expect("projection lies in L_-1");
            if primed {
                s.c
            } else {
                s.d
            }
        };
        let shift = pick(&l.bracket_sparse(&gr.x().x, top));
        let lambda = f
            .div(&f.neg(&pick(w)), &shift)
            .ok_or_else(|| ExlieError::verification("[x, top] has no component along the corrected line"))?;
        Ok(gr.x().exp_scaled(f, &lambda, l.dim()).apply_sparse(l, w))
    }

    /// `T(a,b)` with `T(a,b)x = [a,b]`, for `a ∈ J`, `b ∈ J′`.
    pub fn trace(&self, a: &[F::Elem], b: &[F::Elem]) -> Result<F::Elem> {
        let l = self.grading().algebra();
        let ab = l.bracket_sparse(&self.j_vector(a), &self.jp_vector(b));
        self.x_coefficient(&ab).ok_or_else(|| ExlieError::verification("[J, J'] is not in kx"))
    }

    /// `a × b = [a,[b,q]]` for `a, b ∈ J`.
    pub fn cross(&self, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let l = self.grading().algebra();
        let v = l.bracket_sparse(&self.j_vector(a), &l.bracket_sparse(&self.j_vector(b), &self.q().x));
        self.jp_coords(&v).ok_or_else(|| ExlieError::verification("[J,[J,q]] is not in J'"))
    }

    /// `a ×′ b = −[a,[b,p]]` for `a, b ∈ J′`.
    pub fn cross_p(&self, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let l = self.grading().algebra();
        let f = l.field();
        let v = l.bracket_sparse(&self.jp_vector(a), &l.bracket_sparse(&self.jp_vector(b), &self.p().x));
        self.j_coords(&v.neg(f)).ok_or_else(|| ExlieError::verification("[J',[J',p]] is not in J"))
    }

    /// All twin tables on the bases of `J` and `J′`.
    pub fn twin_tables(&self) -> Result<TwinTables<F::Elem>> {
        let f = self.grading().algebra().field();
        let dim = self.dim_j();
        let unit = |i: usize| vector::unit(f, dim, i);
        let rows = |g: &(dyn Fn(usize, usize) -> Result<Vec<F::Elem>> + Sync)| -> Result<Vec<Vec<Vec<F::Elem>>>> {
            (0..dim).into_par_iter().map(|i| (0..dim).map(|j| g(i, j)).collect()).collect()
        };
        let trace: Vec<Vec<F::Elem>> = (0..dim)
            .into_par_iter()
            .map(|i| (0..dim).map(|j| self.trace(&unit(i), &unit(j))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let cross = rows(&|i, j| self.cross(&unit(i), &unit(j)))?;
        let cross_p = rows(&|i, j| self.cross_p(&unit(i), &unit(j)))?;
        let (norm, sharp): (Vec<_>, Vec<_>) = (0..dim)
            .into_par_iter()
            .map(|i| self.adjoint_norm(&unit(i)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        let (norm_p, sharp_p): (Vec<_>, Vec<_>) = (0..dim)
            .into_par_iter()
            .map(|i| self.adjoint_norm_p(&unit(i)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        Ok(TwinTables { dim, trace, cross, cross_p, sharp, sharp_p, norm, norm_p })
    }

    /// The identities of the cubic norm pair, with `N` and `♯` computed
    /// both from the extremal construction and from the tables.
    ///
    /// The extremal construction is run on basis vectors, on basis pairs
    /// (at most `direct_pairs` of them, chosen in order) and on the seeded
    /// random elements; identities that only involve the tables run on
    /// the inputs of [`TestInputs`].
    pub fn twin_report(&self, t: &TwinTables<F::Elem>, sampling: Sampling, direct_pairs: usize) -> Result<Report> {
        let f = self.grading().algebra().field();
        let dim = t.dim;
        let mut r = Report::sampled(sampling);
        let inputs = TestInputs::new(f, dim, &[], sampling, 0x7a);
        let norm_form = t.norm_form(f);
        let norm_p_form = t.norm_p_form(f);

        let mut direct: Vec<Vec<F::Elem>> = if inputs.exhaustive {
            inputs.singles.clone()
        } else {
            let mut v: Vec<Vec<F::Elem>> = Vec::new();
            'outer: for i in 0..dim {
                for j in i + 1..dim {
                    if v.len() >= direct_pairs {
                        break 'outer;
                    }
                    v.push(vector::add(f, &vector::unit(f, dim, i), &vector::unit(f, dim, j)));
                }
            }
            let mut rng = sampling.rng(0x7b);
            v.extend((0..sampling.samples.min(12)).map(|_| (0..dim).map(|_| f.random(&mut rng)).collect::<Vec<_>>()));
            v
        };
        direct.retain(|a| !vector::is_zero(f, a));
        let values: Sampled<F::Elem> =
            direct.par_iter().map(|a| Ok((a.clone(), self.adjoint_norm(a)?))).collect::<Result<_>>()?;
        r.push_detail(
            "N and # from extremal elements match the polynomial tables",
            values.iter().all(|(a, (n, s))| *n == norm_form.eval(f, a) && *s == t.sharp(f, a)),
            format!("{} elements", values.len()),
        );
        let primed: Sampled<F::Elem> =
            direct.par_iter().map(|b| Ok((b.clone(), self.adjoint_norm_p(b)?))).collect::<Result<_>>()?;
        r.push(
            "N' and #' from extremal elements match the polynomial tables",
            primed.iter().all(|(b, (n, s))| *n == norm_p_form.eval(f, b) && *s == t.sharp_p(f, b)),
        );

        let scalars = f.sample_nonzero(4);
        let mut ok_scale = true;
        let mut ok_sharp_sharp = true;
        let mut ok_norm_sharp = true;
        for (a, (n, s)) in values.iter().take(16) {
            for lam in &scalars {
                let (n2, s2) = self.adjoint_norm(&vector::scale(f, lam, a))?;
                ok_scale &= n2 == f.mul(&f.pow(lam, 3), n) && s2 == vector::scale(f, &f.mul(lam, lam), s);
            }
            let (np, sp) = self.adjoint_norm_p(s)?;
            ok_sharp_sharp &= sp == vector::scale(f, n, a);
            ok_norm_sharp &= np == f.mul(n, n);
        }
        r.push("(la)# = l^2 a# and N(la) = l^3 N(a)", ok_scale);
        r.push("(a#)#' = N(a)a", ok_sharp_sharp);
        r.push("N'(a#) = N(a)^2", ok_norm_sharp);
        let dual_ok = primed.iter().take(16).try_fold(true, |acc, (b, (n, s))| -> Result<bool> {
            let (n2, s2) = self.adjoint_norm(s)?;
            Ok(acc && s2 == vector::scale(f, n, b) && n2 == f.mul(n, n))
        })?;
        r.push("(b#')# = N'(b)b and N(b#') = N'(b)^2", dual_ok);

        let mut ok_lin_sharp = true;
        let mut ok_lin_norm = true;
        for k in 0..values.len().min(12) {
            let (a, (na, sa)) = &values[k];
            let (b, (nb, sb)) = &values[(k + 1) % values.len()];
            let (nab, sab) = self.adjoint_norm(&vector::add(f, a, b))?;
            let cross = self.cross(a, b)?;
            ok_lin_sharp &= sab == vector::add(f, &vector::add(f, sa, &cross), sb);
            let rhs = [na.clone(), self.trace(b, sa)?, self.trace(a, sb)?, nb.clone()]
                .iter()
                .fold(f.zero(), |acc, v| f.add(&acc, v));
            ok_lin_norm &= nab == rhs;
        }
        r.push("(a+b)# = a# + a x b + b#", ok_lin_sharp);
        r.push("N(a+b) = N(a) + T(b,a#) + T(a,b#) + N(b)", ok_lin_norm);

        let three = f.from_i64(3);
        let two = f.from_i64(2);
        r.push(
            "T(a,a#) = 3N(a)",
            inputs.singles.par_iter().all(|a| t.trace(f, a, &t.sharp(f, a)) == f.mul(&three, &norm_form.eval(f, a))),
        );
        r.push(
            "a x a = 2a#",
            inputs.singles.par_iter().all(|a| t.cross(f, a, a) == vector::scale(f, &two, &t.sharp(f, a))),
        );
        r.push(
            "T(c, a x b) = T(a, b x c)",
            inputs
                .triples
                .par_iter()
                .all(|(a, b, c)| t.trace(f, c, &t.cross(f, a, b)) == t.trace(f, a, &t.cross(f, b, c))),
        );
        r.push(
            "a# x' (a x b) = N(a)b + T(b,a#)a",
            inputs.pairs.par_iter().all(|(a, b)| {
                let sa = t.sharp(f, a);
                let lhs = t.cross_p(f, &sa, &t.cross(f, a, b));
                let rhs = vector::add(
                    f,
                    &vector::scale(f, &norm_form.eval(f, a), b),
                    &vector::scale(f, &t.trace(f, b, &sa), a),
                );
                lhs == rhs
            }),
        );
        r.push(
            "a# x' b# = -(a x b)#' + T(b,a#)b + T(a,b#)a",
            inputs.pairs.par_iter().all(|(a, b)| {
                let (sa, sb) = (t.sharp(f, a), t.sharp(f, b));
                let lhs = t.cross_p(f, &sa, &sb);
                let rhs = vector::add(
                    f,
                    &vector::neg(f, &t.sharp_p(f, &t.cross(f, a, b))),
                    &vector::add(
                        f,
                        &vector::scale(f, &t.trace(f, b, &sa), b),
                        &vector::scale(f, &t.trace(f, a, &sb), a),
                    ),
                );
                lhs == rhs
            }),
        );
        Ok(r)
    }

    /// The eight expansions of `[u,[v,[y,w]]]` for `u, v, w` in `J ∪ J′`,
    /// on all basis triples.
    pub fn bracket_report(&self, t: &TwinTables<F::Elem>) -> Report {
        let l = self.grading().algebra();
        let f = l.field();
        let dim = t.dim;
        let y = &self.grading().y().x;
        let (c, d) = (&self.c().x, &self.d().x);
        let unit = |i: usize| vector::unit(f, dim, i);
        let jv = |a: &[F::Elem]| self.j_vector(a);
        let jpv = |a: &[F::Elem]| self.jp_vector(a);
        let nest = |u: &SparseVec<F::Elem>, v: &SparseVec<F::Elem>, w: &SparseVec<F::Elem>| {
            l.bracket_sparse(u, &l.bracket_sparse(v, &l.bracket_sparse(y, w)))
        };
        let triples: Vec<(usize, usize, usize)> =
            (0..dim).flat_map(|i| (0..dim).flat_map(move |j| (0..dim).map(move |k| (i, j, k)))).collect();
        let check = |name: &str, eq: &TripleIdentity<F::Elem>| {
            (name.to_string(), triples.par_iter().all(|&(i, j, k)| eq(&unit(i), &unit(j), &unit(k))))
        };
        let tr = |a: &[F::Elem], b: &[F::Elem]| t.trace(f, a, b);
        let sc = |s: &F::Elem, v: &SparseVec<F::Elem>| v.scale(f, s);
        let results = [
            check("[a,[b,[y,e]]] = T(a, b x e)c", &|a, b, e| {
                nest(&jv(a), &jv(b), &jv(e)) == sc(&tr(a, &t.cross(f, b, e)), c)
            }),
            check("[a',[b',[y,e']]] = T(b' x' e', a')d", &|a, b, e| {
                nest(&jpv(a), &jpv(b), &jpv(e)) == sc(&tr(&t.cross_p(f, b, e), a), d)
            }),
            check("[a,[b',[y,e']]] = -a x (b' x' e')", &|a, b, e| {
                nest(&jv(a), &jpv(b), &jpv(e)) == jpv(&t.cross(f, a, &t.cross_p(f, b, e))).neg(f)
            }),
            check("[a',[b,[y,e]]] = a' x' (b x e)", &|a, b, e| {
                nest(&jpv(a), &jv(b), &jv(e)) == jv(&t.cross_p(f, a, &t.cross(f, b, e)))
            }),
            check("[a,[b',[y,e]]] = b' x' (a x e) - T(a,b')e", &|a, b, e| {
                let rhs = jv(&vector::sub(f, &t.cross_p(f, b, &t.cross(f, a, e)), &vector::scale(f, &tr(a, b), e)));
                nest(&jv(a), &jpv(b), &jv(e)) == rhs
            }),
            check("[a',[b,[y,e']]] = -b x (a' x' e') + T(b,a')e'", &|a, b, e| {
                let rhs = jpv(&vector::sub(f, &vector::scale(f, &tr(b, a), e), &t.cross(f, b, &t.cross_p(f, a, e))));
                nest(&jpv(a), &jv(b), &jpv(e)) == rhs
            }),
            check("[a,[b,[y,e']]] = e' x' (a x b) - T(a,e')b - T(b,e')a", &|a, b, e| {
                let rhs = vector::sub(
                    f,
                    &t.cross_p(f, e, &t.cross(f, a, b)),
                    &vector::add(f, &vector::scale(f, &tr(a, e), b), &vector::scale(f, &tr(b, e), a)),
                );
                nest(&jv(a), &jv(b), &jpv(e)) == jv(&rhs)
            }),
            check("[a',[b',[y,e]]] = -e x (a' x' b') + T(e,a')b' + T(e,b')a'", &|a, b, e| {
                let rhs = vector::sub(
                    f,
                    &vector::add(f, &vector::scale(f, &tr(e, a), b), &vector::scale(f, &tr(e, b), a)),
                    &t.cross(f, e, &t.cross_p(f, a, b)),
                );
                nest(&jpv(a), &jpv(b), &jv(e)) == jpv(&rhs)
            }),
        ];
        let mut r = Report::new();
        for (name, ok) in results {
            r.push_detail(name, ok, format!("{} basis triples", triples.len()));
        }
        r
    }
}
