use exlie_field::Field;
use exlie_linalg::{Mat, SparseVec, Subspace};
use rayon::prelude::*;

use crate::expauto::Exponentiator;
use crate::extremal::{find_symplectic_quad, Extremal, SymplecticQuad};
use crate::grading::{Grading5, DEGREES};
use crate::report::Report;
use crate::util::{combine, multiple_of, span_sparse};
use crate::{ExlieError, LieAlgebra, Result};

/// Components of an `L_{−1}`-vector along `V ⊕ X ⊕ V′`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadSplit<E> {
    pub v: Vec<E>,
    pub x: Vec<E>,
    pub vp: Vec<E>,
}

/// Two 5-gradings from a symplectic quadruple `(x, y, c, d)`: `gr` from
/// `(x, y)` and `gr′` from `(c, d)`. Their intersections give
/// `V = L_{−1} ∩ L′_{−1}`, `X = L_{−1} ∩ L′_0`, `V′ = L_{−1} ∩ L′_1` and
/// `X′ = L_0 ∩ L′_{−1}`.
pub struct QuadFrame<'l, F: Field> {
    gr: Grading5<'l, F>,
    rev: Grading5<'l, F>,
    rev_spanning: Vec<Extremal<F::Elem>>,
    grp: Grading5<'l, F>,
    grp_rev: Grading5<'l, F>,
    grp_rev_spanning: Vec<Extremal<F::Elem>>,
    v: Vec<SparseVec<F::Elem>>,
    xs: Vec<SparseVec<F::Elem>>,
    vp: Vec<SparseVec<F::Elem>>,
    xp: Vec<SparseVec<F::Elem>>,
    /// Inverse of the matrix expressing the bases of `V, X, V′` in the
    /// basis of `L_{−1}`.
    split_inv: Mat<F::Elem>,
    /// `dim(L_i ∩ L′_j)`, indexed by `[i+2][j+2]`.
    cell_dims: [[usize; 5]; 5],
    report: Report,
}

fn no_lines(e: ExlieError) -> ExlieError {
    match e {
        ExlieError::BudgetExhausted(m) => ExlieError::inapplicable(format!("no-lines: {m}")),
        other => other,
    }
}

impl<'l, F: Field> QuadFrame<'l, F> {
    /// Finds a symplectic quadruple and builds the frame. Inapplicable over
    /// fields with two elements and for algebras without symplectic pairs.
    pub fn search(l: &'l LieAlgebra<F>) -> Result<Self> {
        if l.field().order().is_some_and(|q| q <= 2) {
            return Err(ExlieError::inapplicable("|k|>2 required"));
        }
        let quad = find_symplectic_quad(l)?;
        Self::from_quad(l, &quad)
    }

    pub fn from_quad(l: &'l LieAlgebra<F>, quad: &SymplecticQuad<F::Elem>) -> Result<Self> {
        let gr = Grading5::new(l, &quad.x, &quad.y)?;
        let rev = gr.reversed()?;
        let grp = Grading5::new(l, &quad.c, &quad.d)?;
        let grp_rev = grp.reversed()?;
        let rev_spanning = Exponentiator::new(&rev).map_err(no_lines)?.spanning_set().to_vec();
        let grp_rev_spanning = Exponentiator::new(&grp_rev).map_err(no_lines)?.spanning_set().to_vec();
        Self::build(gr, rev, rev_spanning, grp, grp_rev, grp_rev_spanning)
    }

    /// The frame for `(λx, λ⁻¹y, c, d)`.
    pub fn rescaled(&self, lambda: &F::Elem) -> Result<Self> {
        let f = self.gr.algebra().field();
        let inv = f.inv(lambda).ok_or_else(|| ExlieError::Invalid("rescaling by zero".into()))?;
        Self::build(
            self.gr.rescaled(lambda)?,
            self.rev.rescaled(&inv)?,
            self.rev_spanning.clone(),
            self.grp.clone(),
            self.grp_rev.clone(),
            self.grp_rev_spanning.clone(),
        )
    }

    fn build(
        gr: Grading5<'l, F>,
        rev: Grading5<'l, F>,
        rev_spanning: Vec<Extremal<F::Elem>>,
        grp: Grading5<'l, F>,
        grp_rev: Grading5<'l, F>,
        grp_rev_spanning: Vec<Extremal<F::Elem>>,
    ) -> Result<Self> {
        let l = gr.algebra();
        let f = l.field();
        let cell = |i: i32, j: i32| gr.piece(i).intersect(f, grp.piece(j));
        let basis = |s: &Subspace<F::Elem>| -> Vec<SparseVec<F::Elem>> {
            s.basis().iter().map(|b| SparseVec::from_dense(f, b)).collect()
        };
        let v = basis(&cell(-1, -1));
        let xs = basis(&cell(-1, 0));
        let vp = basis(&cell(-1, 1));
        let xp = basis(&cell(0, -1));

        let cols: Vec<Vec<F::Elem>> = v.iter().chain(&xs).chain(&vp).map(|b| gr.coordinates(b, -1)).collect();
        let split_inv = Mat::from_columns(&cols, gr.piece(-1).dim())
            .inverse(f)
            .map_err(|_| ExlieError::verification("L_-1 is not V + X + V'"))?;

        let mut cell_dims = [[0usize; 5]; 5];
        let mut cells = Vec::with_capacity(5);
        for i in DEGREES {
            let row: Vec<Subspace<F::Elem>> = DEGREES.iter().map(|&j| cell(i, j)).collect();
            for (k, s) in row.iter().enumerate() {
                cell_dims[(i + 2) as usize][k] = s.dim();
            }
            cells.push(row);
        }
        let mut frame = QuadFrame {
            gr,
            rev,
            rev_spanning,
            grp,
            grp_rev,
            grp_rev_spanning,
            v,
            xs,
            vp,
            xp,
            split_inv,
            cell_dims,
            report: Report::new(),
        };
        frame.report = frame.invariants(&cells);
        if !frame.report.passed() {
            let failed: Vec<&str> = frame.report.failures().map(|c| c.name.as_str()).collect();
            return Err(ExlieError::verification(format!("quadrangle frame invariants: {}", failed.join("; "))));
        }
        Ok(frame)
    }

    fn invariants(&self, cells: &[Vec<Subspace<F::Elem>>]) -> Report {
        let l = self.gr.algebra();
        let f = l.field();
        let n = l.dim();
        let (x, y) = (&self.gr.x().x, &self.gr.y().x);
        let (c, d) = (&self.grp.x().x, &self.grp.y().x);
        let span = |vs: &[SparseVec<F::Elem>]| span_sparse(f, n, vs);
        let one = |v: &SparseVec<F::Elem>| span(std::slice::from_ref(v));
        let br = |a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>| l.bracket_sparse(a, b);
        let brs = |a: &SparseVec<F::Elem>, bs: &[SparseVec<F::Elem>]| bs.iter().map(|b| br(a, b)).collect::<Vec<_>>();
        let at = |i: i32, j: i32| &cells[(i + 2) as usize][(j + 2) as usize];
        let (v, xs, vp, xp) = (&self.v[..], &self.xs[..], &self.vp[..], &self.xp[..]);
        let mut r = Report::new();

        let yv = brs(y, v);
        let yvp = brs(y, vp);
        let expected: [(i32, i32, Subspace<F::Elem>); 13] = [
            (-2, 0, one(x)),
            (-1, -1, span(v)),
            (-1, 0, span(xs)),
            (-1, 1, span(vp)),
            (0, -2, one(c)),
            (0, -1, span(xp)),
            (0, 0, at(0, 0).clone()),
            (0, 1, span(&brs(d, xp))),
            (0, 2, one(d)),
            (1, -1, span(&yv)),
            (1, 0, span(&brs(y, xs))),
            (1, 1, span(&yvp)),
            (2, 0, one(y)),
        ];
        let total: usize = self.cell_dims.iter().flatten().sum();
        r.push_detail("the cells L_i ∩ L'_j add up to L", total == n, format!("{total} of {n}"));
        r.push("cells match the frame description", expected.iter().all(|(i, j, s)| at(*i, *j) == s));
        r.push(
            "all other cells vanish",
            DEGREES.iter().all(|&i| {
                DEGREES.iter().all(|&j| expected.iter().any(|(a, b, _)| (*a, *b) == (i, j)) || at(i, j).is_zero())
            }),
        );
        r.push("dim V = dim V'", v.len() == vp.len());
        r.push("dim X = dim X'", xs.len() == xp.len());

        let outer: Vec<Vec<F::Elem>> =
            [-2, -1, 1, 2].iter().flat_map(|&i| self.gr.piece(i).basis().iter().cloned()).collect();
        let form_vanishes = |e: &Extremal<F::Elem>| outer.iter().all(|b| f.is_zero(&e.form_dense(f, b)));
        r.push(
            "g_c and g_d vanish on L_-2 + L_-1 + L_1 + L_2",
            form_vanishes(self.grp.x()) && form_vanishes(self.grp.y()),
        );
        r.push(
            "c, d lie in L_0 and x, y lie in L'_0",
            self.gr.support(c) == [0]
                && self.gr.support(d) == [0]
                && self.grp.support(x) == [0]
                && self.grp.support(y) == [0],
        );

        let zero = |vs: &[SparseVec<F::Elem>]| vs.iter().all(SparseVec::is_empty);
        let pairs = |a: &[SparseVec<F::Elem>], b: &[SparseVec<F::Elem>]| {
            a.par_iter().flat_map_iter(|u| b.iter().map(move |w| br(u, w))).collect::<Vec<_>>()
        };
        r.push("[c,V'] = V and [d,V] = V'", span(&brs(c, vp)) == span(v) && span(&brs(d, v)) == span(vp));
        r.push("[c,V] = [d,V'] = 0", zero(&brs(c, v)) && zero(&brs(d, vp)));
        r.push("[c,X] = [d,X] = 0", zero(&brs(c, xs)) && zero(&brs(d, xs)));
        r.push(
            "[V,V] = [V',V'] = [V,X] = [V',X] = 0",
            zero(&pairs(v, v)) && zero(&pairs(vp, vp)) && zero(&pairs(v, xs)) && zero(&pairs(vp, xs)),
        );
        let inside =
            |vs: Vec<SparseVec<F::Elem>>, s: &Subspace<F::Elem>| vs.iter().all(|w| s.contains(f, &w.to_dense(f, n)));
        let (vs, vps, xss) = (span(v), span(vp), span(xs));
        r.push("[X,[X,[y,V]]] lies in V", inside(pairs(xs, &pairs(xs, &yv)), &vs));
        r.push("[X,[X,[y,V']]] lies in V'", inside(pairs(xs, &pairs(xs, &yvp)), &vps));
        r.push("[X,[V,[y,V']]] lies in X", inside(pairs(xs, &pairs(v, &yvp)), &xss));
        r.push("[X,[V',[y,V]]] lies in X", inside(pairs(xs, &pairs(vp, &yv)), &xss));
        r
    }

    pub fn grading(&self) -> &Grading5<'l, F> {
        &self.gr
    }

    /// The grading of `(c, d)`.
    pub fn second(&self) -> &Grading5<'l, F> {
        &self.grp
    }

    /// Builds `l`-exponential automorphisms for `l ∈ L_{−1}`.
    pub fn opposite_exponentiator(&self) -> Exponentiator<'_, 'l, F> {
        Exponentiator::with_spanning_unchecked(&self.rev, self.rev_spanning.clone())
    }

    /// Builds `l`-exponential automorphisms for `l ∈ L′_{−1}` with respect
    /// to the second grading.
    pub fn second_opposite_exponentiator(&self) -> Exponentiator<'_, 'l, F> {
        Exponentiator::with_spanning_unchecked(&self.grp_rev, self.grp_rev_spanning.clone())
    }

    pub fn x(&self) -> &Extremal<F::Elem> {
        self.gr.x()
    }

    pub fn y(&self) -> &Extremal<F::Elem> {
        self.gr.y()
    }

    pub fn c(&self) -> &Extremal<F::Elem> {
        self.grp.x()
    }

    pub fn d(&self) -> &Extremal<F::Elem> {
        self.grp.y()
    }

    pub fn v_basis(&self) -> &[SparseVec<F::Elem>] {
        &self.v
    }

    pub fn x_basis(&self) -> &[SparseVec<F::Elem>] {
        &self.xs
    }

    pub fn vp_basis(&self) -> &[SparseVec<F::Elem>] {
        &self.vp
    }

    pub fn xp_basis(&self) -> &[SparseVec<F::Elem>] {
        &self.xp
    }

    pub fn dim_v(&self) -> usize {
        self.v.len()
    }

    pub fn dim_x(&self) -> usize {
        self.xs.len()
    }

    /// `dim(L_0 ∩ L′_0)`.
    pub fn dim_center(&self) -> usize {
        self.cell_dims[2][2]
    }

    pub fn cell_dims(&self) -> [[usize; 5]; 5] {
        self.cell_dims
    }

    pub fn report(&self) -> &Report {
        &self.report
    }

    /// Components of `w ∈ L_{−1}` along `V ⊕ X ⊕ V′`, or `None` if `w` has
    /// components outside `L_{−1}`.
    pub fn split(&self, w: &SparseVec<F::Elem>) -> Option<QuadSplit<F::Elem>> {
        if self.gr.support(w).iter().any(|&i| i != -1) {
            return None;
        }
        let f = self.gr.algebra().field();
        let coords = self.split_inv.mul_vec(f, &self.gr.coordinates(w, -1));
        let (a, b) = (self.v.len(), self.xs.len());
        Some(QuadSplit { v: coords[..a].to_vec(), x: coords[a..a + b].to_vec(), vp: coords[a + b..].to_vec() })
    }

    /// Coordinates of `w` in the basis of `V`, if `w ∈ V`.
    pub fn v_coords(&self, w: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = self.gr.algebra().field();
        let s = self.split(w)?;
        (s.x.iter().chain(&s.vp).all(|a| f.is_zero(a))).then_some(s.v)
    }

    /// Coordinates of `w` in the basis of `X`, if `w ∈ X`.
    pub fn x_coords(&self, w: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = self.gr.algebra().field();
        let s = self.split(w)?;
        (s.v.iter().chain(&s.vp).all(|a| f.is_zero(a))).then_some(s.x)
    }

    pub fn v_vector(&self, coords: &[F::Elem]) -> SparseVec<F::Elem> {
        combine(self.gr.algebra().field(), coords, &self.v)
    }

    pub fn x_vector(&self, coords: &[F::Elem]) -> SparseVec<F::Elem> {
        combine(self.gr.algebra().field(), coords, &self.xs)
    }

    /// The scalar `μ` with `w = μx`.
    pub fn x_coefficient(&self, w: &SparseVec<F::Elem>) -> Option<F::Elem> {
        multiple_of(self.gr.algebra().field(), w, &self.gr.x().x)
    }

    /// `Q(v)`: the `x`-coefficient of `α(d) = Q(v)x + [v,d] + d` for any
    /// `v`-exponential `α`. The factor `exp(λx)` that makes `α` non-unique
    /// fixes `d`, so the value does not depend on the choice.
    pub fn quadratic(&self, v: &[F::Elem]) -> Result<F::Elem> {
        let l = self.gr.algebra();
        let f = l.field();
        let vv = self.v_vector(v);
        let d = &self.d().x;
        let alpha = self.opposite_exponentiator().product_of_exponentials(&vv)?;
        let image = alpha.auto.apply_sparse(l, d);
        let q = self
            .x_coefficient(&self.gr.project_sparse(&image, -2))
            .ok_or_else(|| ExlieError::verification("L_-2 is not spanned by x"))?;
        let expected = d.add(f, &l.bracket_sparse(&vv, d)).add_scaled(f, &q, &self.gr.x().x);
        if image != expected {
            return Err(ExlieError::verification("the image of d is not Q(v)x + [v,d] + d"));
        }
        Ok(q)
    }

    /// `T(u,v)` with `T(u,v)x = [u,[v,d]]`.
    pub fn bilinear(&self, u: &[F::Elem], v: &[F::Elem]) -> Result<F::Elem> {
        let l = self.gr.algebra();
        let w = l.bracket_sparse(&self.v_vector(u), &l.bracket_sparse(&self.v_vector(v), &self.d().x));
        self.x_coefficient(&w).ok_or_else(|| ExlieError::verification("[V,[V,d]] is not in kx"))
    }
}
