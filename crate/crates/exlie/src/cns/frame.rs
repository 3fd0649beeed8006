use exlie_field::Field;
use exlie_linalg::{Mat, SparseVec, Subspace};
use rayon::prelude::*;

use crate::expauto::Exponentiator;
use crate::extremal::{extremal_form, Extremal};
use crate::grading::{Grading5, DEGREES};
use crate::report::Report;
use crate::util::{combine, multiple_of, span_sparse, sparse_basis};
use crate::{ExlieError, Result};

/// Coordinates of an `L_{−1}`-vector along `⟨c⟩ ⊕ J ⊕ J′ ⊕ ⟨d⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Split<E> {
    pub c: E,
    pub j: Vec<E>,
    pub jp: Vec<E>,
    pub d: E,
}

/// The frame `(x, y, c, d, p, q)` with its three gradings.
///
/// `gr` comes from `(x, y)`, `gr′` from `(c, q)` and `gr″` from `(d, p)`,
/// where `c, d ∈ L_{−1}` are extremal with `[c,d] = x`, `p = [y,c]` and
/// `q = −[y,d]`. The spaces `J = L_{−1} ∩ L′_{−1}` and `J′ = L_{−1} ∩ L′_0`
/// carry the cubic norm pair.
pub struct HexFrame<'l, F: Field> {
    gr: Grading5<'l, F>,
    rev: Grading5<'l, F>,
    rev_spanning: Vec<Extremal<F::Elem>>,
    c: Extremal<F::Elem>,
    d: Extremal<F::Elem>,
    p: Extremal<F::Elem>,
    q: Extremal<F::Elem>,
    gr1: Grading5<'l, F>,
    gr2: Grading5<'l, F>,
    j: Vec<SparseVec<F::Elem>>,
    jp: Vec<SparseVec<F::Elem>>,
    /// Inverse of the matrix expressing `c, J, J′, d` in the basis of `L_{−1}`.
    split_inv: Mat<F::Elem>,
    /// `dim(L_i ∩ L′_j)`, indexed by `[i+2][j+2]`.
    cell_dims: [[usize; 5]; 5],
    report: Report,
}

impl<'l, F: Field> HexFrame<'l, F> {
    /// Finds extremal `a, b ∈ L_{−1}` with `[a,b] ∈ kx ∖ 0` among an
    /// extremal spanning set of `L_{−1}` and builds the frame from
    /// `c = a` and `d = μ⁻¹b`, where `[a,b] = μx`.
    pub fn search(gr: &Grading5<'l, F>) -> Result<Self> {
        let l = gr.algebra();
        let f = l.field();
        if f.order().is_some_and(|q| q < 4) {
            return Err(ExlieError::inapplicable("|k|≥4 required"));
        }
        if gr.piece(-1).is_zero() {
            return Err(ExlieError::inapplicable("no-lines: L_-1 = 0"));
        }
        let rev = gr.reversed()?;
        let rev_spanning = Exponentiator::new(&rev)
            .map_err(|e| match e {
                ExlieError::BudgetExhausted(m) => ExlieError::inapplicable(format!("no-lines: {m}")),
                other => other,
            })?
            .spanning_set()
            .to_vec();
        let x = &gr.x().x;
        for (i, a) in rev_spanning.iter().enumerate() {
            for b in &rev_spanning[i + 1..] {
                let ab = l.bracket_sparse(&a.x, &b.x);
                if ab.is_empty() {
                    continue;
                }
                let mu =
                    multiple_of(f, &ab, x).ok_or_else(|| ExlieError::verification("[L_-1, L_-1] is not inside kx"))?;
                let inv = f.inv(&mu).expect("nonzero bracket");
                return Self::build(gr.clone(), rev, rev_spanning.clone(), a.clone(), b.scaled(f, &inv));
            }
        }
        Err(ExlieError::inapplicable("no-lines: [L_-1, L_-1] = 0"))
    }

    /// The frame for a rescaled pair `(λc, λ⁻¹d)`, reusing the searches.
    pub fn rescaled(&self, lambda: &F::Elem) -> Result<Self> {
        let f = self.gr.algebra().field();
        let inv = f.inv(lambda).ok_or_else(|| ExlieError::Invalid("rescaling by zero".into()))?;
        Self::build(
            self.gr.clone(),
            self.rev.clone(),
            self.rev_spanning.clone(),
            self.c.scaled(f, lambda),
            self.d.scaled(f, &inv),
        )
    }

    fn build(
        gr: Grading5<'l, F>,
        rev: Grading5<'l, F>,
        rev_spanning: Vec<Extremal<F::Elem>>,
        c: Extremal<F::Elem>,
        d: Extremal<F::Elem>,
    ) -> Result<Self> {
        let l = gr.algebra();
        let f = l.field();
        let x = gr.x().x.clone();
        let y = gr.y().x.clone();
        if l.bracket_sparse(&c.x, &d.x) != x {
            return Err(ExlieError::Invalid("the pair must satisfy [c,d] = x".into()));
        }
        let p = extremal_form(l, &l.bracket_sparse(&y, &c.x))?;
        let q = extremal_form(l, &l.bracket_sparse(&y, &d.x).neg(f))?;
        let mut report = Report::new();
        report.push("g(p,d) = 1", f.is_one(&p.form(f, &d.x)));
        report.push("g(q,c) = 1", f.is_one(&q.form(f, &c.x)));
        if !report.passed() {
            return Err(ExlieError::verification(format!("frame forms:\n{report}")));
        }
        let gr1 = Grading5::new(l, &c, &q)?;
        let gr2 = Grading5::new(l, &d, &p)?;

        let cell = |a: &Grading5<'l, F>, i: i32, b: &Grading5<'l, F>, j: i32| a.piece(i).intersect(f, b.piece(j));
        let jspace = cell(&gr, -1, &gr1, -1);
        let jpspace = cell(&gr, -1, &gr1, 0);
        let j = sparse_basis(f, &jspace);
        let jp = sparse_basis(f, &jpspace);

        let mut split_cols: Vec<Vec<F::Elem>> = Vec::new();
        for v in std::iter::once(&c.x).chain(&j).chain(&jp).chain(std::iter::once(&d.x)) {
            split_cols.push(gr.coordinates(v, -1));
        }
        let m = gr.piece(-1).dim();
        let split_inv = Mat::from_columns(&split_cols, m)
            .inverse(f)
            .map_err(|_| ExlieError::verification("L_-1 is not <c> + J + J' + <d>"))?;

        let mut cell_dims = [[0usize; 5]; 5];
        let mut cells: Vec<Vec<Subspace<F::Elem>>> = Vec::with_capacity(5);
        for i in DEGREES {
            let row: Vec<Subspace<F::Elem>> = DEGREES.iter().map(|&jj| cell(&gr, i, &gr1, jj)).collect();
            for (k, s) in row.iter().enumerate() {
                cell_dims[(i + 2) as usize][k] = s.dim();
            }
            cells.push(row);
        }
        let mut frame = HexFrame { gr, rev, rev_spanning, c, d, p, q, gr1, gr2, j, jp, split_inv, cell_dims, report };
        let checks = frame.invariants(&cells);
        frame.report.extend(checks);
        if !frame.report.passed() {
            let failed: Vec<&str> = frame.report.failures().map(|c| c.name.as_str()).collect();
            return Err(ExlieError::verification(format!("frame invariants: {}", failed.join("; "))));
        }
        Ok(frame)
    }

    fn invariants(&self, cells: &[Vec<Subspace<F::Elem>>]) -> Report {
        let l = self.gr.algebra();
        let f = l.field();
        let n = l.dim();
        let (x, y) = (&self.gr.x().x, &self.gr.y().x);
        let (c, d, p, q) = (&self.c.x, &self.d.x, &self.p.x, &self.q.x);
        let span = |vs: &[SparseVec<F::Elem>]| span_sparse(f, n, vs);
        let one = |v: &SparseVec<F::Elem>| span(std::slice::from_ref(v));
        let br = |a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>| l.bracket_sparse(a, b);
        let brs = |a: &SparseVec<F::Elem>, bs: &[SparseVec<F::Elem>]| bs.iter().map(|b| br(a, b)).collect::<Vec<_>>();
        let at = |i: i32, j: i32| &cells[(i + 2) as usize][(j + 2) as usize];
        let mut r = Report::new();

        let expected: [(i32, i32, Subspace<F::Elem>); 13] = [
            (-2, -1, one(x)),
            (-1, -2, one(c)),
            (-1, -1, span(&self.j)),
            (-1, 0, span(&self.jp)),
            (-1, 1, one(d)),
            (0, -1, span(&brs(p, &self.jp))),
            (0, 1, span(&brs(q, &self.j))),
            (1, -1, one(p)),
            (1, 0, span(&brs(y, &self.j))),
            (1, 1, span(&brs(y, &self.jp))),
            (1, 2, one(q)),
            (2, 1, one(y)),
            (0, 0, at(0, 0).clone()),
        ];
        let total: usize = self.cell_dims.iter().flatten().sum();
        r.push_detail("the cells L_i ∩ L'_j add up to L", total == n, format!("{total} of {n}"));
        let listed_ok = expected.iter().all(|(i, j, s)| at(*i, *j) == s);
        r.push("cells match the frame description", listed_ok);
        let others_zero = DEGREES.iter().all(|&i| {
            DEGREES.iter().all(|&j| expected.iter().any(|(a, b, _)| (*a, *b) == (i, j)) || at(i, j).is_zero())
        });
        r.push("all other cells vanish", others_zero);
        r.push("dim J = dim J'", self.j.len() == self.jp.len());

        let zero = |vs: Vec<SparseVec<F::Elem>>| vs.iter().all(SparseVec::is_empty);
        let pairs = |a: &[SparseVec<F::Elem>], b: &[SparseVec<F::Elem>]| {
            a.par_iter().flat_map_iter(|u| b.iter().map(move |v| br(u, v))).collect::<Vec<_>>()
        };
        let (j, jp) = (&self.j[..], &self.jp[..]);
        r.push("[J,J] = 0", zero(pairs(j, j)));
        r.push("[J,c] = [J,d] = [J,p] = 0", zero(brs(c, j)) && zero(brs(d, j)) && zero(brs(p, j)));
        r.push("[J',J'] = 0", zero(pairs(jp, jp)));
        r.push("[J',c] = [J',d] = [J',q] = 0", zero(brs(c, jp)) && zero(brs(d, jp)) && zero(brs(q, jp)));
        let jq = brs(q, j);
        let jpp = brs(p, jp);
        let jp_space = span(jp);
        let j_space = span(j);
        r.push("[J,[J,q]] lies in J'", pairs(j, &jq).iter().all(|v| jp_space.contains(f, &v.to_dense(f, n))));
        r.push("[J',[J',p]] lies in J", pairs(jp, &jpp).iter().all(|v| j_space.contains(f, &v.to_dense(f, n))));

        let third = |i: i32, j: i32| self.gr.piece(i).intersect(f, self.gr2.piece(j));
        r.push(
            "L_-1 meets the third grading in J', J, <c>",
            third(-1, -1) == jp_space && third(-1, 0) == j_space && third(-1, 1) == one(c),
        );
        r.push(
            "L_0 meets the third grading in [q,J], L_0 ∩ L'_0, [p,J']",
            third(0, -1) == span(&jq) && third(0, 0) == *at(0, 0) && third(0, 1) == span(&jpp),
        );

        let placed = |v: &SparseVec<F::Elem>, degs: [i32; 3]| {
            self.gr.support(v) == [degs[0]] && self.gr1.support(v) == [degs[1]] && self.gr2.support(v) == [degs[2]]
        };
        r.push(
            "degrees of x, y, c, d, p, q in the three gradings",
            placed(x, [-2, -1, -1])
                && placed(y, [2, 1, 1])
                && placed(c, [-1, -2, 1])
                && placed(d, [-1, 1, -2])
                && placed(p, [1, -1, 2])
                && placed(q, [1, 2, -1]),
        );
        r
    }

    pub fn grading(&self) -> &Grading5<'l, F> {
        &self.gr
    }

    /// The grading of `(c, q)`.
    pub fn second(&self) -> &Grading5<'l, F> {
        &self.gr1
    }

    /// The grading of `(d, p)`.
    pub fn third(&self) -> &Grading5<'l, F> {
        &self.gr2
    }

    pub fn reversed(&self) -> &Grading5<'l, F> {
        &self.rev
    }

    /// Builds `a`-exponential automorphisms for `a ∈ L_{−1}`.
    pub fn opposite_exponentiator(&self) -> Exponentiator<'_, 'l, F> {
        Exponentiator::with_spanning_unchecked(&self.rev, self.rev_spanning.clone())
    }

    pub fn c(&self) -> &Extremal<F::Elem> {
        &self.c
    }

    pub fn d(&self) -> &Extremal<F::Elem> {
        &self.d
    }

    pub fn p(&self) -> &Extremal<F::Elem> {
        &self.p
    }

    pub fn q(&self) -> &Extremal<F::Elem> {
        &self.q
    }

    pub fn j_basis(&self) -> &[SparseVec<F::Elem>] {
        &self.j
    }

    pub fn jp_basis(&self) -> &[SparseVec<F::Elem>] {
        &self.jp
    }

    pub fn dim_j(&self) -> usize {
        self.j.len()
    }

    pub fn cell_dims(&self) -> [[usize; 5]; 5] {
        self.cell_dims
    }

    /// `dim(L_0 ∩ L′_0)`.
    pub fn dim_center(&self) -> usize {
        self.cell_dims[2][2]
    }

    /// Invariants asserted during construction.
    pub fn report(&self) -> &Report {
        &self.report
    }

    /// Components of `v ∈ L_{−1}` along `⟨c⟩ ⊕ J ⊕ J′ ⊕ ⟨d⟩`, or `None`
    /// if `v` has components outside `L_{−1}`.
    pub fn split(&self, v: &SparseVec<F::Elem>) -> Option<Split<F::Elem>> {
        if self.gr.support(v).iter().any(|&i| i != -1) {
            return None;
        }
        let f = self.gr.algebra().field();
        let coords = self.split_inv.mul_vec(f, &self.gr.coordinates(v, -1));
        let k = self.j.len();
        Some(Split {
            c: coords[0].clone(),
            j: coords[1..1 + k].to_vec(),
            jp: coords[1 + k..1 + 2 * k].to_vec(),
            d: coords[1 + 2 * k].clone(),
        })
    }

    /// Coordinates of `v` in the basis of `J`, if `v ∈ J`.
    pub fn j_coords(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = self.gr.algebra().field();
        let s = self.split(v)?;
        (f.is_zero(&s.c) && f.is_zero(&s.d) && s.jp.iter().all(|a| f.is_zero(a))).then_some(s.j)
    }

    /// Coordinates of `v` in the basis of `J′`, if `v ∈ J′`.
    pub fn jp_coords(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = self.gr.algebra().field();
        let s = self.split(v)?;
        (f.is_zero(&s.c) && f.is_zero(&s.d) && s.j.iter().all(|a| f.is_zero(a))).then_some(s.jp)
    }

    pub fn j_vector(&self, coords: &[F::Elem]) -> SparseVec<F::Elem> {
        combine(self.gr.algebra().field(), coords, &self.j)
    }

    pub fn jp_vector(&self, coords: &[F::Elem]) -> SparseVec<F::Elem> {
        combine(self.gr.algebra().field(), coords, &self.jp)
    }

    /// The scalar `μ` with `v = μx`.
    pub fn x_coefficient(&self, v: &SparseVec<F::Elem>) -> Option<F::Elem> {
        multiple_of(self.gr.algebra().field(), v, &self.gr.x().x)
    }
}
