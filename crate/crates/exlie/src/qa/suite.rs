//! Axioms and auxiliary identities for [`QuadAlgebra`].
//!
//! Table-level identities run over the usual sampled inputs. Identities
//! that need the automorphisms `Θ_a`, `α_v`, `β_v` or `Θ̂_b` run on a few
//! elements only, since each one builds a product of exponentials.

use exlie_field::Field;
use exlie_linalg::{rank, vector, Mat, SparseVec};
use rayon::prelude::*;

use super::QuadAlgebra;
use crate::cns::cubic::TestInputs;
use crate::extremal::is_extremal;
use crate::report::{Report, Sampling};
use crate::Result;

/// How many elements the automorphism-level checks use.
const DIRECT_SAMPLES: usize = 3;

type Vecs<E> = Vec<Vec<E>>;

struct Inputs<E> {
    xs: TestInputs<E>,
    vs: TestInputs<E>,
}

impl<E: Clone> Inputs<E> {
    /// `(a, v)` pairs, cycling through both lists.
    fn av(&self) -> Vec<(Vec<E>, Vec<E>)> {
        let (a, v) = (&self.xs.singles, &self.vs.singles);
        let n = a.len().max(v.len()).min(256);
        (0..n).map(|k| (a[k % a.len()].clone(), v[(k * 7 + 1) % v.len()].clone())).collect()
    }

    /// `(a, b, v)` triples.
    fn abv(&self) -> Vec<(Vec<E>, Vec<E>, Vec<E>)> {
        let v = &self.vs.singles;
        self.xs
            .pairs
            .iter()
            .take(256)
            .enumerate()
            .map(|(k, (a, b))| (a.clone(), b.clone(), v[(k * 5 + 2) % v.len()].clone()))
            .collect()
    }

    /// `(a, v, w)` triples.
    fn avw(&self) -> Vec<(Vec<E>, Vec<E>, Vec<E>)> {
        let a = &self.xs.singles;
        self.vs
            .pairs
            .iter()
            .take(256)
            .enumerate()
            .map(|(k, (v, w))| (a[(k * 3 + 1) % a.len()].clone(), v.clone(), w.clone()))
            .collect()
    }
}

pub(super) fn run<F: Field>(qa: &QuadAlgebra<'_, F>, sampling: Sampling) -> Result<Report> {
    let f = qa.field();
    let inputs = Inputs {
        xs: TestInputs::new(f, qa.dim_x(), &[], sampling, 0x9a1),
        vs: TestInputs::new(f, qa.dim_v(), qa.e(), sampling, 0x9a2),
    };
    let mut report = Report::sampled(sampling);
    report.extend(qa.report().clone());
    report.extend(table_axioms(qa, &inputs));
    report.extend(forms(qa, &inputs));
    report.extend(theta_identities(qa, &inputs));
    report.extend(frame_identities(qa, &inputs));
    report.extend(direct(qa, sampling)?);
    Ok(report)
}

/// Axioms (i) to (vii) and (ix) on the tables, with `δ`-standardness.
fn table_axioms<F: Field>(qa: &QuadAlgebra<'_, F>, inputs: &Inputs<F::Elem>) -> Report {
    let f = qa.field();
    let e = qa.e();
    let mut r = Report::new();
    let av = inputs.av();
    let abv = inputs.abv();
    r.push("(i) a.e = a", inputs.xs.singles.iter().all(|a| qa.dot(a, e) == *a));
    r.push(
        "(ii) (a.v).v^s = Q(v)a",
        av.iter().all(|(a, v)| qa.dot(&qa.dot(a, v), &qa.sigma(v)) == vector::scale(f, &qa.q(v), a)),
    );
    r.push(
        "(iii) h(a,b.v) = h(b,a.v) + T(h(a,b),e)v",
        abv.iter().all(|(a, b, v)| {
            let rhs = vector::add(f, &qa.h(b, &qa.dot(a, v)), &vector::scale(f, &qa.t(&qa.h(a, b), e), v));
            qa.h(a, &qa.dot(b, v)) == rhs
        }),
    );
    r.push(
        "(iv) T(h(a.v,b),e) = T(h(a,b),v)",
        abv.iter().all(|(a, b, v)| qa.t(&qa.h(&qa.dot(a, v), b), e) == qa.t(&qa.h(a, b), v)),
    );
    r.push(
        "(v) theta(a,u + s v) = theta(a,u) + s theta(a,v)",
        inputs.avw().iter().zip(inputs.xs.scalars.iter().cycle()).all(|((a, u, v), s)| {
            let lhs = qa.theta(a, &vector::add(f, u, &vector::scale(f, s, v)));
            lhs == vector::add(f, &qa.theta(a, u), &vector::scale(f, s, &qa.theta(a, v)))
        }),
    );
    r.push(
        "(vi) theta(s a,v) = s^2 theta(a,v)",
        av.iter()
            .zip(inputs.xs.scalars.iter().cycle())
            .all(|((a, v), s)| qa.theta(&vector::scale(f, s, a), v) == vector::scale(f, &f.mul(s, s), &qa.theta(a, v))),
    );
    r.push(
        "(vii) theta(a+b,v) = theta(a,v) + theta(b,v) + h(a,b.v) - gamma(a,b)v",
        abv.iter().all(|(a, b, v)| {
            let mut rhs = vector::add(f, &qa.theta(a, v), &qa.theta(b, v));
            rhs = vector::add(f, &rhs, &qa.h(a, &qa.dot(b, v)));
            rhs = vector::sub(f, &rhs, &vector::scale(f, &qa.gamma(a, b), v));
            qa.theta(&vector::add(f, a, b), v) == rhs
        }),
    );
    r.push(
        "(ix) a.theta(a,v) = (a.theta(a,e)).v",
        av.iter().all(|(a, v)| qa.dot(a, &qa.theta(a, v)) == qa.dot(&qa.dot(a, &qa.pi(a)), v)),
    );
    r.push("T(pi(a),delta) = 0", inputs.xs.singles.iter().all(|a| f.is_zero(&qa.t(&qa.pi(a), qa.delta()))));
    r
}

/// Non-degeneracy, agreement of `Q` with the extremal construction and the
/// uniqueness of `Q(v)` in its pencil.
fn forms<F: Field>(qa: &QuadAlgebra<'_, F>, inputs: &Inputs<F::Elem>) -> Report {
    let f = qa.field();
    let fr = qa.frame();
    let l = fr.grading().algebra();
    let (dv, dx) = (qa.dim_v(), qa.dim_x());
    let mut r = Report::new();
    let t = Mat::from_rows(qa.t_table().to_vec(), dv);
    r.push_detail("T is non-degenerate", rank(f, &t) == dv, format!("rank {} of {dv}", rank(f, &t)));
    let unit_x = |i: usize| vector::unit(f, dx, i);
    let hte: Vecs<F::Elem> =
        (0..dx).map(|i| (0..dx).map(|j| qa.t(&qa.h(&unit_x(i), &unit_x(j)), qa.e())).collect()).collect();
    let r_hte = rank(f, &Mat::from_rows(hte, dx));
    r.push_detail("T(h(.,.),e) is non-degenerate", r_hte == dx, format!("rank {r_hte} of {dx}"));

    let vs: Vec<&Vec<F::Elem>> = inputs.vs.singles.iter().take(32).collect();
    r.push(
        "Q tables agree with the extremal construction",
        vs.par_iter().all(|v| fr.quadratic(v).is_ok_and(|q| q == qa.q(v))),
    );
    r.push(
        "Q(u+v) = Q(u) + Q(v) + T(u,v)",
        inputs
            .vs
            .pairs
            .iter()
            .take(256)
            .all(|(u, v)| qa.q(&vector::add(f, u, v)) == f.add(&f.add(&qa.q(u), &qa.q(v)), &qa.t(u, v))),
    );
    r.push(
        "Q(s v) = s^2 Q(v)",
        vs.iter()
            .zip(inputs.vs.scalars.iter().cycle())
            .all(|(v, s)| qa.q(&vector::scale(f, s, v)) == f.mul(&f.mul(s, s), &qa.q(v))),
    );

    // Only finite fields can enumerate the pencil `λx + [v,d] + d`.
    if let Some(els) = f.elements().filter(|e| e.len() <= 16) {
        let ok = vs.iter().take(DIRECT_SAMPLES).all(|v| {
            let vd = l.bracket_sparse(&fr.v_vector(v), &fr.d().x).add(f, &fr.d().x);
            let valid: Vec<&F::Elem> = els.iter().filter(|s| is_extremal(l, &vd.add_scaled(f, s, &fr.x().x))).collect();
            valid == [&qa.q(v)]
        });
        r.push("Q(v) is the only s with s x + [v,d] + d extremal", ok);
    }

    let isotropic = inputs.vs.singles.iter().find(|v| !vector::is_zero(f, v) && f.is_zero(&qa.q(v)));
    match isotropic {
        Some(v) => {
            let vv = fr.v_vector(v);
            let vd = l.bracket_sparse(&vv, &fr.d().x);
            let y = &fr.y().x;
            let all = [vv.clone(), vd.clone(), l.bracket_sparse(y, &vv), l.bracket_sparse(y, &vd)];
            r.push("Q(v) = 0: v, [v,d], [y,v], [y,[v,d]] are extremal", all.iter().all(|w| is_extremal(l, w)));
        }
        None => r.push_detail("Q(v) = 0: v, [v,d], [y,v], [y,[v,d]] are extremal", true, "no isotropic sample"),
    }
    r
}

/// Identities of `θ`, `π`, `γ` that only need the tables.
fn theta_identities<F: Field>(qa: &QuadAlgebra<'_, F>, inputs: &Inputs<F::Elem>) -> Report {
    let f = qa.field();
    let e = qa.e();
    let av = inputs.av();
    let avw = inputs.avw();
    let mut r = Report::new();
    r.push(
        "T(theta(a,v),v) = Q(v)T(pi(a),e)",
        av.iter().all(|(a, v)| qa.t(&qa.theta(a, v), v) == f.mul(&qa.q(v), &qa.t(&qa.pi(a), e))),
    );
    r.push(
        "T(theta(a,v),w) + T(theta(a,w),v) = T(v,w)T(pi(a),e)",
        avw.iter().all(|(a, v, w)| {
            f.add(&qa.t(&qa.theta(a, v), w), &qa.t(&qa.theta(a, w), v)) == f.mul(&qa.t(v, w), &qa.t(&qa.pi(a), e))
        }),
    );
    r.push(
        "theta(a,v^s)^s = theta(a,v) - T(e,v)pi(a) + T(pi(a),v)e",
        av.iter().all(|(a, v)| {
            let pi = qa.pi(a);
            let mut rhs = vector::sub(f, &qa.theta(a, v), &vector::scale(f, &qa.t(e, v), &pi));
            rhs = vector::add(f, &rhs, &vector::scale(f, &qa.t(&pi, v), e));
            qa.sigma(&qa.theta(a, &qa.sigma(v))) == rhs
        }),
    );
    r.push(
        "h(a,a.v) + T(pi(a),e)v = 2 theta(a,v)",
        av.iter().all(|(a, v)| {
            let lhs = vector::add(f, &qa.h(a, &qa.dot(a, v)), &vector::scale(f, &qa.t(&qa.pi(a), e), v));
            lhs == vector::scale(f, &f.from_i64(2), &qa.theta(a, v))
        }),
    );
    r.push(
        "pi(a)^s = pi(a) - h(a,a)",
        inputs.xs.singles.iter().all(|a| qa.sigma(&qa.pi(a)) == vector::sub(f, &qa.pi(a), &qa.h(a, a))),
    );
    let plus = inputs.xs.singles.iter().all(|a| qa.t(&qa.pi(a), e) == qa.gamma(a, a));
    let minus = inputs.xs.singles.iter().all(|a| qa.t(&qa.pi(a), e) == f.neg(&qa.gamma(a, a)));
    let sign = match (plus, minus) {
        (true, true) => "both signs hold",
        (true, false) => "T(pi(a),e) = gamma(a,a)",
        (false, true) => "T(pi(a),e) = -gamma(a,a)",
        (false, false) => "neither sign holds",
    };
    r.push_detail("T(pi(a),e) = +-gamma(a,a)", plus || minus, sign);
    r.push("2 gamma(a,a) = 0", inputs.xs.singles.iter().all(|a| f.is_zero(&f.add(&qa.gamma(a, a), &qa.gamma(a, a)))));
    if let Some(half) = f.inv(&f.from_i64(2)) {
        r.push(
            "theta(a,v) = h(a,a.v)/2",
            av.iter().all(|(a, v)| qa.theta(a, v) == vector::scale(f, &half, &qa.h(a, &qa.dot(a, v)))),
        );
        r.push("pi(a) = h(a,a)/2", inputs.xs.singles.iter().all(|a| qa.pi(a) == vector::scale(f, &half, &qa.h(a, a))));
    }
    r
}

/// Identities between the tables and brackets in `L`.
fn frame_identities<F: Field>(qa: &QuadAlgebra<'_, F>, inputs: &Inputs<F::Elem>) -> Report {
    let fr = qa.frame();
    let l = fr.grading().algebra();
    let f = l.field();
    let e = qa.e();
    let br = |a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>| l.bracket_sparse(a, b);
    let (x, y, c, d) = (&fr.x().x, &fr.y().x, &fr.c().x, &fr.d().x);
    let (xv, vv) = (|a: &[F::Elem]| fr.x_vector(a), |v: &[F::Elem]| fr.v_vector(v));
    let (ep, fv, fp) = (qa.e_prime(), qa.f_vector(), qa.f_prime());
    let cd = br(c, d);
    let xy = br(x, y);
    let av: Vec<_> = inputs.av().into_iter().take(64).collect();
    let abv: Vec<_> = inputs.abv().into_iter().take(64).collect();
    let vw: Vec<_> = inputs.vs.pairs.iter().take(64).collect();
    let mut r = Report::new();

    r.push("[e',f] = [c,d] - [x,y]", br(ep, fv) == cd.sub(f, &xy));
    r.push("[e,f'] = [c,d] + [x,y]", br(&vv(e), fp) == cd.add(f, &xy));
    r.push(
        "Q(v)([c,d] - [x,y]) = [[v,d],[v,y]]",
        av.iter().all(|(_, v)| {
            let w = vv(v);
            br(&br(&w, d), &br(&w, y)) == cd.sub(f, &xy).scale(f, &qa.q(v))
        }),
    );
    r.push(
        "Q(v)([c,d] + [x,y]) = [v,[y,[d,v]]]",
        av.iter().all(|(_, v)| {
            let w = vv(v);
            br(&w, &br(y, &br(d, &w))) == cd.add(f, &xy).scale(f, &qa.q(v))
        }),
    );
    r.push("[[y,v],w] = T(v,w)c", vw.iter().all(|(v, w)| br(&br(y, &vv(v)), &vv(w)) == c.scale(f, &qa.t(v, w))));
    r.push("[a.v,f] = [a,[y,v]]", av.iter().all(|(a, v)| br(&xv(&qa.dot(a, v)), fv) == br(&xv(a), &br(y, &vv(v)))));
    r.push(
        "h(a,b.v) = [a,[b,[y,v]]]",
        abv.iter().all(|(a, b, v)| vv(&qa.h(a, &qa.dot(b, v))) == br(&xv(a), &br(&xv(b), &br(y, &vv(v))))),
    );
    r.push(
        "[d,h(a,b)] = [a,[b,f']]",
        abv.iter().all(|(a, b, _)| br(d, &vv(&qa.h(a, b))) == br(&xv(a), &br(&xv(b), fp))),
    );
    r.push("a.v^s = [a,[v,f']]", av.iter().all(|(a, v)| xv(&qa.dot(a, &qa.sigma(v))) == br(&xv(a), &br(&vv(v), fp))));
    r.push(
        "[a,b] = -T(h(a,b),e)x",
        abv.iter().all(|(a, b, _)| br(&xv(a), &xv(b)) == x.scale(f, &f.neg(&qa.t(&qa.h(a, b), e)))),
    );
    r.push("h(a,b)^s = -h(b,a)", abv.iter().all(|(a, b, _)| qa.sigma(&qa.h(a, b)) == vector::neg(f, &qa.h(b, a))));
    r.push(
        "T(h(a,b),v) = T(h(a.v,b),e) = T(h(a,b.v^s),e)",
        abv.iter().all(|(a, b, v)| {
            let t0 = qa.t(&qa.h(a, b), v);
            t0 == qa.t(&qa.h(&qa.dot(a, v), b), e) && t0 == qa.t(&qa.h(a, &qa.dot(b, &qa.sigma(v))), e)
        }),
    );
    r.push(
        "ad e' inverts ad f from X to X'",
        inputs.xs.singles.iter().take(64).all(|a| {
            let image = br(fv, &xv(a));
            fr.grading().support(&image).iter().all(|&i| i == 0)
                && fr.second().support(&image).iter().all(|&i| i == -1)
                && br(ep, &image) == xv(a)
        }),
    );
    r.push(
        "[[a,[y,b]],c'] = a.h(b,c') + b.h(a,c') + c'.h(b,a)",
        abv.iter().zip(inputs.xs.singles.iter().cycle().skip(3)).all(|((a, b, _), c2)| {
            let lhs = br(&br(&xv(a), &br(y, &xv(b))), &xv(c2));
            let mut rhs = vector::add(f, &qa.dot(a, &qa.h(b, c2)), &qa.dot(b, &qa.h(a, c2)));
            rhs = vector::add(f, &rhs, &qa.dot(c2, &qa.h(b, a)));
            lhs == xv(&rhs)
        }),
    );
    r
}

/// Checks built on the automorphisms themselves, including axiom (viii).
fn direct<F: Field>(qa: &QuadAlgebra<'_, F>, sampling: Sampling) -> Result<Report> {
    let fr = qa.frame();
    let gr = fr.grading();
    let l = gr.algebra();
    let f = l.field();
    let n = l.dim();
    let (dv, dx) = (qa.dim_v(), qa.dim_x());
    let e = qa.e().to_vec();
    let mut rng = sampling.rng(0x9a3);
    let mut random = |dim: usize| -> Vec<F::Elem> { (0..dim).map(|_| f.random(&mut rng)).collect() };
    let mut a_samples = vec![vector::unit(f, dx, 0)];
    let mut v_samples = vec![e.clone(), vector::unit(f, dv, dv - 1)];
    while a_samples.len() < DIRECT_SAMPLES {
        a_samples.push(random(dx));
    }
    while v_samples.len() < DIRECT_SAMPLES + 1 {
        v_samples.push(random(dv));
    }
    let b_sample = random(dx);
    let scalar = f.sample_nonzero(3).pop().unwrap_or_else(|| f.one());
    let br = |a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>| l.bracket_sparse(a, b);
    let (x, y, c, d) = (&fr.x().x, &fr.y().x, &fr.c().x, &fr.d().x);
    let (xv, vv) = (|a: &[F::Elem]| fr.x_vector(a), |v: &[F::Elem]| fr.v_vector(v));
    let fv = qa.f_vector();
    let unit_v = |i: usize| vector::unit(f, dv, i);

    let mut r = Report::new();
    let all = |r: &mut Report, name: &str, ok: bool| {
        if let Some(check) = r.checks.iter_mut().find(|ch| ch.name == name) {
            check.passed &= ok;
        } else {
            r.push(name, ok);
        }
    };

    for a in &a_samples {
        let theta_a = qa.theta_auto(a)?;
        let pi = qa.pi(a);
        let tpe = qa.t(&pi, &e);
        let direct_theta: Vecs<F::Elem> = (0..dv).map(|j| qa.theta_of(&theta_a, &unit_v(j))).collect::<Result<_>>()?;
        let theta_direct = |v: &[F::Elem]| vector::combine(f, dv, v, &direct_theta);
        all(
            &mut r,
            "theta tables reconstitute theta(a,.) from the automorphism",
            (0..dv).all(|j| direct_theta[j] == qa.theta(a, &unit_v(j))),
        );
        for v in &v_samples {
            let image = theta_a.apply_sparse(l, &br(y, &vv(v)));
            let expected = br(y, &vv(v)).add(f, &br(&xv(&qa.dot(a, v)), fv)).add(f, &vv(&qa.theta(a, v)));
            all(&mut r, "Theta_a([y,v]) = [y,v] + [a.v,f] + theta(a,v)", image == expected);
            let sum = vector::add(f, v, &v_samples[0]);
            let sum_direct = qa.theta_of(&theta_a, &sum)?;
            all(
                &mut r,
                "(v) Theta_a gives theta(a,.) linear",
                sum_direct == vector::add(f, &theta_direct(v), &theta_direct(&v_samples[0])),
            );
        }
        all(&mut r, "Theta_a fixes c and d", theta_a.apply_sparse(l, c) == *c && theta_a.apply_sparse(l, d) == *d);
        let scaled = qa.theta_auto(&vector::scale(f, &scalar, a))?;
        all(
            &mut r,
            "(vi) Theta_{sa} gives s^2 theta(a,.)",
            v_samples.iter().all(|v| {
                qa.theta_of(&scaled, v).is_ok_and(|t| t == vector::scale(f, &f.mul(&scalar, &scalar), &theta_direct(v)))
            }),
        );

        // Θ_a(y) = y + [a,y] + ℓ_a + ã + λ_a x.
        let ty = theta_a.apply_sparse(l, y);
        let ell = gr.project_sparse(&ty, 0);
        let tilde = fr.x_coords(&gr.project_sparse(&ty, -1));
        let lambda = fr.x_coefficient(&gr.project_sparse(&ty, -2));
        all(&mut r, "Theta_a(y) = y + [a,y] + l_a + a~ + lambda_a x", {
            gr.project_sparse(&ty, 2) == *y
                && gr.project_sparse(&ty, 1) == br(&xv(a), y)
                && tilde.is_some()
                && lambda.is_some()
        });
        let (Some(tilde), Some(lambda)) = (tilde, lambda) else { continue };
        let pis = qa.sigma(&pi);
        all(&mut r, "[l_a,c] = [l_a,d] = 0", br(&ell, c).is_empty() && br(&ell, d).is_empty());
        all(
            &mut r,
            "[l_a,x] = T(pi,e)x and [l_a,y] = -T(pi,e)y",
            br(&ell, x) == x.scale(f, &tpe) && br(&ell, y) == y.scale(f, &f.neg(&tpe)),
        );
        all(
            &mut r,
            "[l_a,v] = theta(a,v) and [l_a,[d,v]] = [d,theta(a,v)]",
            v_samples.iter().all(|v| {
                let t = vv(&qa.theta(a, v));
                br(&ell, &vv(v)) == t && br(&ell, &br(d, &vv(v))) == br(d, &t)
            }),
        );
        all(
            &mut r,
            "[l_a,[y,v]] = [y,theta(a,v) - T(pi,e)v]",
            v_samples.iter().all(|v| {
                let w = vector::sub(f, &qa.theta(a, v), &vector::scale(f, &tpe, v));
                br(&ell, &br(y, &vv(v))) == br(y, &vv(&w))
            }),
        );
        all(&mut r, "[l_a,[b,f]] = -[a.h(a,b),f] and theta(a,h(a,b)) + h(a~,b) = 0", {
            let b = &b_sample;
            let hab = qa.h(a, b);
            br(&ell, &br(&xv(b), fv)) == br(&xv(&qa.dot(a, &hab)), fv).neg(f)
                && vector::is_zero(f, &vector::add(f, &qa.theta(a, &hab), &qa.h(&tilde, b)))
        });
        all(
            &mut r,
            "[l_a,b] = b.pi^s - a.h(a,b)",
            br(&ell, &xv(&b_sample)) == xv(&vector::sub(f, &qa.dot(&b_sample, &pis), &qa.dot(a, &qa.h(a, &b_sample)))),
        );
        all(&mut r, "a~ = -a.pi^s", tilde == vector::neg(f, &qa.dot(a, &pis)));
        all(
            &mut r,
            "a.theta(a,v) = (a.pi).v",
            v_samples.iter().all(|v| qa.dot(a, &qa.theta(a, v)) == qa.dot(&qa.dot(a, &pi), v)),
        );
        all(&mut r, "lambda_a = Q(pi(a))", lambda == qa.q(&pi));
        all(
            &mut r,
            "lambda_a v = theta(a,theta(a,v)) - h(a.pi^s,a.v)",
            v_samples.iter().all(|v| {
                vector::scale(f, &lambda, v)
                    == vector::sub(f, &qa.theta(a, &qa.theta(a, v)), &qa.h(&qa.dot(a, &pis), &qa.dot(a, v)))
            }),
        );

        let theta_b = qa.theta_auto(&b_sample)?;
        let theta_ab = qa.theta_auto(&vector::add(f, a, &b_sample))?;
        let gamma = qa.gamma(a, &b_sample);
        all(
            &mut r,
            "Theta_a Theta_b = exp(-gamma(a,b)x) Theta_{a+b}",
            theta_a.compose(&theta_b).agrees_with(&fr.x().exp_scaled(f, &f.neg(&gamma), n).compose(&theta_ab), l),
        );
    }

    for v in &v_samples {
        let q = qa.q(v);
        let w = vv(v);
        let alpha = qa.alpha(v)?;
        all(
            &mut r,
            "alpha_v(y) = y + [v,y] + Q(v)c and alpha_v(d) = d + [v,d] + Q(v)x",
            alpha.apply_sparse(l, y) == y.add(f, &br(&w, y)).add_scaled(f, &q, c)
                && alpha.apply_sparse(l, d) == d.add(f, &br(&w, d)).add_scaled(f, &q, x),
        );
        let grp = fr.second();
        all(
            &mut r,
            "alpha_v is v-exponential for the second grading",
            (-2..=2).all(|j| {
                grp.basis(j).iter().all(|m| {
                    let rest = alpha.apply_sparse(l, m).sub(f, m).sub(f, &br(&w, m));
                    grp.support(&rest).iter().all(|&i| i <= j - 2)
                })
            }),
        );
        let beta = qa.beta(v)?;
        all(&mut r, "beta_v(x) = x + v + Q(v)c", beta.apply_sparse(l, x) == x.add(f, &w).add_scaled(f, &q, c));
    }

    for a in a_samples.iter().take(2) {
        let theta_hat = qa.theta_hat_auto(a)?;
        let mu_ae = qa.mu(a, &e)?;
        for v in &v_samples {
            let image = theta_hat.apply_sparse(l, &br(d, &vv(v)));
            let th = qa.theta_hat_of(&theta_hat, v)?;
            all(
                &mut r,
                "Theta^_b([d,v]) = [d,v] + b.v^s + theta^(b,v)",
                image == br(d, &vv(v)).add(f, &xv(&qa.dot(a, &qa.sigma(v)))).add(f, &vv(&th)),
            );
            let expected = vector::add(f, &qa.sigma(&qa.theta(a, &qa.sigma(v))), &vector::scale(f, &mu_ae, v));
            all(&mut r, "theta^(a,v) = theta(a,v^s)^s + mu(a,e)v", th == expected);
        }
        for v in v_samples.iter().skip(1) {
            let phi = qa.phi(a, v)?;
            let av = qa.dot(a, v);
            let tav = qa.theta(a, v);
            for w in &v_samples {
                let ws = qa.sigma(w);
                let vs = qa.sigma(v);
                let mut rhs = vector::scale(f, &qa.q(v), &qa.sigma(&qa.theta(a, &ws)));
                rhs = vector::sub(f, &rhs, &vector::scale(f, &qa.t(w, &vs), &qa.sigma(&tav)));
                rhs = vector::add(f, &rhs, &vector::scale(f, &qa.t(&tav, &ws), &vs));
                rhs = vector::add(f, &rhs, &vector::scale(f, &phi, w));
                all(
                    &mut r,
                    "(viii) theta(a.v,w) = theta(a,w^s)^s Q(v) - T(w,v^s)theta(a,v)^s + T(theta(a,v),w^s)v^s + phi(a,v)w",
                    qa.theta(&av, w) == rhs,
                );
                let mut rhs2 = vector::scale(f, &qa.q(v), &qa.theta(a, w));
                rhs2 = vector::sub(f, &rhs2, &vector::scale(f, &qa.t(v, w), &tav));
                rhs2 = vector::add(f, &rhs2, &vector::scale(f, &qa.t(&tav, w), v));
                rhs2 = vector::add(f, &rhs2, &vector::scale(f, &phi, w));
                all(
                    &mut r,
                    "theta(a.v,w^s)^s = Q(v)theta(a,w) - T(v,w)theta(a,v) + T(theta(a,v),w)v + phi(a,v)w",
                    qa.sigma(&qa.theta(&av, &ws)) == rhs2,
                );
            }
        }
    }
    Ok(r)
}
