//! Cubic norm structures given by tables on a basis of `J`.

use exlie_field::Field;
use exlie_linalg::{kernel, vector, Mat};
use rand::Rng;
use rayon::prelude::*;

use crate::report::{Report, Sampling};
use crate::{ExlieError, Result};

/// A homogeneous cubic polynomial `Σ c_{ijk} a_i a_j a_k` over `i ≤ j ≤ k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicForm<E> {
    pub dim: usize,
    pub terms: Vec<([usize; 3], E)>,
}

impl<E: Clone + PartialEq + Send + Sync> CubicForm<E> {
    pub fn eval<F: Field<Elem = E>>(&self, f: &F, a: &[E]) -> E {
        let mut acc = f.zero();
        for ([i, j, k], c) in &self.terms {
            if f.is_zero(&a[*i]) || f.is_zero(&a[*j]) || f.is_zero(&a[*k]) {
                continue;
            }
            let m = f.mul(&f.mul(&a[*i], &a[*j]), &a[*k]);
            f.mul_add_assign(&mut acc, c, &m);
        }
        acc
    }

    pub fn scaled<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, f.mul(c, s))).filter(|(_, c)| !f.is_zero(c)).collect();
        CubicForm { dim: self.dim, terms }
    }

    /// The form determined by its values `N(e_i)`, the mixed terms
    /// `T(e_j, e_i^♯)` of `a_i² a_j` and the fully mixed terms
    /// `T(e_i, e_j × e_k)`, following the linearization of the norm.
    pub fn from_polarization<F: Field<Elem = E>>(
        f: &F,
        dim: usize,
        diagonal: impl Fn(usize) -> E,
        square_times: impl Fn(usize, usize) -> E,
        mixed: impl Fn(usize, usize, usize) -> E,
    ) -> Self {
        let mut terms = Vec::new();
        let mut push = |m: [usize; 3], c: E| {
            if !f.is_zero(&c) {
                terms.push((m, c));
            }
        };
        for i in 0..dim {
            for j in i..dim {
                for k in j..dim {
                    let c = match (i == j, j == k) {
                        (true, true) => diagonal(i),
                        // a_i² a_k
                        (true, false) => square_times(i, k),
                        // a_i a_j²
                        (false, true) => square_times(j, i),
                        (false, false) => mixed(i, j, k),
                    };
                    push([i, j, k], c);
                }
            }
        }
        CubicForm { dim, terms }
    }
}

/// `(J, k, N, ♯, T, ×, 1)` in coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicNormStructure<F: Field> {
    field: F,
    dim: usize,
    /// `T(e_i, e_j)`.
    trace: Vec<Vec<F::Elem>>,
    /// `e_i × e_j`.
    cross: Vec<Vec<Vec<F::Elem>>>,
    /// `e_i^♯`.
    sharp: Vec<Vec<F::Elem>>,
    norm: CubicForm<F::Elem>,
    unit: Vec<F::Elem>,
}

impl<F: Field> CubicNormStructure<F> {
    pub fn new(
        field: F,
        trace: Vec<Vec<F::Elem>>,
        cross: Vec<Vec<Vec<F::Elem>>>,
        sharp: Vec<Vec<F::Elem>>,
        norm: CubicForm<F::Elem>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let dim = unit.len();
        let square = |m: &Vec<Vec<F::Elem>>| m.len() == dim && m.iter().all(|r| r.len() == dim);
        let shapes_ok = square(&trace)
            && square(&sharp)
            && cross.len() == dim
            && cross.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim))
            && norm.dim == dim;
        if !shapes_ok {
            return Err(ExlieError::Dimension(format!("cubic norm tables for dim {dim}")));
        }
        Ok(CubicNormStructure { field, dim, trace, cross, sharp, norm, unit })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn trace_table(&self) -> &[Vec<F::Elem>] {
        &self.trace
    }

    pub fn cross_table(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.cross
    }

    pub fn sharp_table(&self) -> &[Vec<F::Elem>] {
        &self.sharp
    }

    pub fn norm_form(&self) -> &CubicForm<F::Elem> {
        &self.norm
    }

    pub fn trace(&self, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
        bilinear(&self.field, &self.trace, a, b)
    }

    pub fn cross(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        bilinear_map(&self.field, self.dim, &self.cross, a, b)
    }

    pub fn sharp(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        quadratic_map(&self.field, self.dim, &self.sharp, &self.cross, a)
    }

    pub fn norm(&self, a: &[F::Elem]) -> F::Elem {
        self.norm.eval(&self.field, a)
    }

    /// `U_x(y) = T(y,x)x − y × x^♯`.
    pub fn u_op(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        vector::sub(f, &vector::scale(f, &self.trace(y, x), x), &self.cross(y, &self.sharp(x)))
    }

    /// The isotope with respect to an invertible `d`.
    pub fn isotope(&self, d: &[F::Elem]) -> Result<Self> {
        let f = &self.field;
        let nd_inv = f
            .inv(&self.norm(d))
            .ok_or_else(|| ExlieError::Invalid("isotopes need an element of nonzero norm".into()))?;
        let unit_vec = |i: usize| vector::unit(f, self.dim, i);
        let u_d = |v: &[F::Elem]| vector::scale(f, &nd_inv, &self.u_op(d, v));
        let sharp: Vec<Vec<F::Elem>> = self.sharp.iter().map(|s| u_d(s)).collect();
        let cross: Vec<Vec<Vec<F::Elem>>> = self.cross.iter().map(|row| row.iter().map(|v| u_d(v)).collect()).collect();
        let w = vector::scale(f, &nd_inv, &self.sharp(d));
        let trace: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|i| {
                let ui = self.u_op(&w, &unit_vec(i));
                (0..self.dim).map(|j| self.trace(&ui, &unit_vec(j))).collect()
            })
            .collect();
        let norm = self.norm.scaled(f, &nd_inv);
        CubicNormStructure::new(f.clone(), trace, cross, sharp, norm, d.to_vec())
    }

    /// A copy whose cross product is changed by `delta` on the pair
    /// `(e_i, e_j)`, kept symmetric.
    #[doc(hidden)]
    pub fn with_corrupted_cross(&self, i: usize, j: usize, delta: &[F::Elem]) -> Self {
        let f = &self.field;
        let mut out = self.clone();
        out.cross[i][j] = vector::add(f, &out.cross[i][j], delta);
        if i != j {
            out.cross[j][i] = vector::add(f, &out.cross[j][i], delta);
        }
        out
    }

    /// The eleven defining identities, symmetry of `T` and non-degeneracy.
    ///
    /// Multilinear identities run over all basis tuples. The others run over
    /// basis vectors, basis pairs and seeded random elements, or over all
    /// of `J` when it has at most `sampling.enumerate_up_to` elements.
    pub fn axioms(&self, sampling: Sampling) -> Report {
        let f = &self.field;
        let dim = self.dim;
        let inputs = TestInputs::new(f, dim, &self.unit, sampling, 0xc5);
        let mut r = Report::sampled(sampling);
        let eq = |a: &[F::Elem], b: &[F::Elem]| a == b;
        let scalars = inputs.scalars.clone();

        r.push("T is symmetric", (0..dim).all(|i| (0..dim).all(|j| self.trace[i][j] == self.trace[j][i])));
        r.push("x is symmetric", (0..dim).all(|i| (0..dim).all(|j| self.cross[i][j] == self.cross[j][i])));
        r.push(
            "(i) (la)# = l^2 a#",
            inputs.singles.par_iter().all(|a| {
                scalars
                    .iter()
                    .all(|s| eq(&self.sharp(&vector::scale(f, s, a)), &vector::scale(f, &f.mul(s, s), &self.sharp(a))))
            }),
        );
        r.push(
            "(ii) N(la) = l^3 N(a)",
            inputs.singles.par_iter().all(|a| {
                scalars.iter().all(|s| self.norm(&vector::scale(f, s, a)) == f.mul(&f.pow(s, 3), &self.norm(a)))
            }),
        );
        r.push(
            "(iii) T(a, b x c) = T(a x b, c)",
            inputs
                .triples
                .par_iter()
                .all(|(a, b, c)| self.trace(a, &self.cross(b, c)) == self.trace(&self.cross(a, b), c)),
        );
        r.push(
            "(iv) (a+b)# = a# + a x b + b#",
            inputs.pairs.par_iter().all(|(a, b)| {
                let rhs = vector::add(f, &vector::add(f, &self.sharp(a), &self.cross(a, b)), &self.sharp(b));
                eq(&self.sharp(&vector::add(f, a, b)), &rhs)
            }),
        );
        r.push(
            "(v) N(a+b) = N(a) + T(a#,b) + T(a,b#) + N(b)",
            inputs.pairs.par_iter().all(|(a, b)| {
                let rhs = [self.norm(a), self.trace(&self.sharp(a), b), self.trace(a, &self.sharp(b)), self.norm(b)]
                    .iter()
                    .fold(f.zero(), |acc, t| f.add(&acc, t));
                self.norm(&vector::add(f, a, b)) == rhs
            }),
        );
        r.push(
            "(vi) T(a,a#) = 3N(a)",
            inputs.singles.par_iter().all(|a| self.trace(a, &self.sharp(a)) == f.mul(&f.from_i64(3), &self.norm(a))),
        );
        r.push(
            "(vii) (a#)# = N(a)a",
            inputs.singles.par_iter().all(|a| eq(&self.sharp(&self.sharp(a)), &vector::scale(f, &self.norm(a), a))),
        );
        r.push(
            "(viii) a# x (a x b) = N(a)b + T(a#,b)a",
            inputs.pairs.par_iter().all(|(a, b)| {
                let sa = self.sharp(a);
                let lhs = self.cross(&sa, &self.cross(a, b));
                let rhs =
                    vector::add(f, &vector::scale(f, &self.norm(a), b), &vector::scale(f, &self.trace(&sa, b), a));
                eq(&lhs, &rhs)
            }),
        );
        r.push(
            "(ix) a# x b# + (a x b)# = T(a#,b)b + T(a,b#)a",
            inputs.pairs.par_iter().all(|(a, b)| {
                let (sa, sb) = (self.sharp(a), self.sharp(b));
                let lhs = vector::add(f, &self.cross(&sa, &sb), &self.sharp(&self.cross(a, b)));
                let rhs = vector::add(
                    f,
                    &vector::scale(f, &self.trace(&sa, b), b),
                    &vector::scale(f, &self.trace(a, &sb), a),
                );
                eq(&lhs, &rhs)
            }),
        );
        r.push("(x) 1# = 1", eq(&self.sharp(&self.unit), &self.unit));
        r.push(
            "(xi) a = T(a,1)1 - 1 x a",
            inputs.singles.par_iter().all(|a| {
                let rhs = vector::sub(
                    f,
                    &vector::scale(f, &self.trace(a, &self.unit), &self.unit),
                    &self.cross(&self.unit, a),
                );
                eq(a, &rhs)
            }),
        );
        r.push("N(1) = 1", f.is_one(&self.norm(&self.unit)));
        let (ok, detail) = self.non_degeneracy(sampling);
        r.push_detail("non-degenerate", ok, detail);
        r
    }

    /// Whether `{a : N(a) = 0 = T(a,J) = T(a^♯,J)} = 0`. The radical of
    /// `T` is enumerated when small and sampled otherwise.
    fn non_degeneracy(&self, sampling: Sampling) -> (bool, String) {
        let f = &self.field;
        let dim = self.dim;
        if dim == 0 {
            return (true, "J = 0".into());
        }
        let rad = kernel(f, &Mat::from_rows(self.trace.clone(), dim));
        if rad.dim() == 0 {
            return (true, "T non-degenerate".into());
        }
        let bad = |a: &[F::Elem]| {
            !vector::is_zero(f, a) && f.is_zero(&self.norm(a)) && {
                let s = self.sharp(a);
                (0..dim).all(|j| f.is_zero(&self.trace(&s, &vector::unit(f, dim, j))))
            }
        };
        let basis = rad.basis();
        let count = f.order().and_then(|q| q.checked_pow(rad.dim() as u32));
        match (f.elements(), count) {
            (Some(els), Some(c)) if c <= 4096.max(sampling.enumerate_up_to) => {
                let ok = all_combinations(&els, rad.dim())
                    .par_iter()
                    .all(|coef| !bad(&vector::combine(f, dim, coef, basis)));
                (ok, format!("radical of T has dim {}, enumerated", rad.dim()))
            }
            _ => {
                let mut rng = sampling.rng(0x4ad);
                let ok = (0..sampling.samples * 8).all(|_| {
                    let coef: Vec<F::Elem> = (0..rad.dim()).map(|_| f.random(&mut rng)).collect();
                    !bad(&vector::combine(f, dim, &coef, basis))
                });
                (ok, format!("radical of T has dim {}, sampled", rad.dim()))
            }
        }
    }
}

pub(crate) fn bilinear<F: Field>(f: &F, table: &[Vec<F::Elem>], a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !f.is_zero(bj) {
                f.mul_add_assign(&mut acc, &f.mul(ai, bj), &table[i][j]);
            }
        }
    }
    acc
}

pub(crate) fn bilinear_map<F: Field>(
    f: &F,
    out_dim: usize,
    table: &[Vec<Vec<F::Elem>>],
    a: &[F::Elem],
    b: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = vector::zeros(f, out_dim);
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !f.is_zero(bj) {
                vector::axpy(f, &mut acc, &f.mul(ai, bj), &table[i][j]);
            }
        }
    }
    acc
}

/// `Σ a_i² s_i + Σ_{i<j} a_i a_j c_{ij}`, the quadratic map with values
/// `s_i` on the basis and polarization `c`.
pub(crate) fn quadratic_map<F: Field>(
    f: &F,
    out_dim: usize,
    diag: &[Vec<F::Elem>],
    polar: &[Vec<Vec<F::Elem>>],
    a: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = vector::zeros(f, out_dim);
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        vector::axpy(f, &mut acc, &f.mul(ai, ai), &diag[i]);
        for (j, aj) in a.iter().enumerate().skip(i + 1) {
            if !f.is_zero(aj) {
                vector::axpy(f, &mut acc, &f.mul(ai, aj), &polar[i][j]);
            }
        }
    }
    acc
}

/// All coefficient vectors of length `len` over `els`.
pub(crate) fn all_combinations<E: Clone>(els: &[E], len: usize) -> Vec<Vec<E>> {
    let mut out: Vec<Vec<E>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Inputs for identity checks on a `dim`-dimensional coordinate space.
pub(crate) struct TestInputs<E> {
    pub singles: Vec<Vec<E>>,
    pub pairs: Vec<(Vec<E>, Vec<E>)>,
    pub triples: Vec<(Vec<E>, Vec<E>, Vec<E>)>,
    pub scalars: Vec<E>,
    pub exhaustive: bool,
}

impl<E: Clone + PartialEq> TestInputs<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, dim: usize, extra: &[E], sampling: Sampling, stream: u64) -> Self {
        let mut rng = sampling.rng(stream);
        let basis: Vec<Vec<E>> = (0..dim).map(|i| vector::unit(f, dim, i)).collect();
        let random: Vec<Vec<E>> =
            (0..sampling.samples).map(|_| (0..dim).map(|_| f.random(&mut rng)).collect()).collect();
        let size = f.order().and_then(|q| q.checked_pow(dim as u32));
        let exhaustive = size.is_some_and(|s| s <= sampling.enumerate_up_to);
        let singles = match (exhaustive, f.elements()) {
            (true, Some(els)) => all_combinations(&els, dim),
            _ => {
                let mut v = basis.clone();
                if extra.len() == dim {
                    v.push(extra.to_vec());
                }
                for i in 0..dim {
                    for j in i + 1..dim {
                        v.push(vector::add(f, &basis[i], &basis[j]));
                    }
                }
                v.extend(random.iter().cloned());
                v
            }
        };
        let mut pairs: Vec<(Vec<E>, Vec<E>)> = Vec::new();
        if exhaustive && singles.len() * singles.len() <= 160_000 {
            for a in &singles {
                for b in &singles {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        } else {
            for a in &basis {
                for b in &basis {
                    pairs.push((a.clone(), b.clone()));
                }
            }
            if dim > 0 {
                for (k, a) in random.iter().enumerate() {
                    pairs.push((a.clone(), random[(k + 1) % random.len()].clone()));
                    pairs.push((a.clone(), basis[k % dim].clone()));
                    pairs.push((basis[k % dim].clone(), a.clone()));
                }
            }
        }
        let mut triples = Vec::new();
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    triples.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        for k in 0..random.len().min(8) {
            let n = random.len();
            triples.push((random[k].clone(), random[(k + 1) % n].clone(), random[(k + 2) % n].clone()));
        }
        let mut scalars = f.sample_nonzero(6);
        if f.order().is_none() {
            scalars.push(f.div(&f.from_i64(rng.gen_range(2..50)), &f.from_i64(7)).expect("nonzero"));
        }
        TestInputs { singles, pairs, triples, scalars, exhaustive }
    }
}
