//! Extremal elements: the form `g_x`, exponential maps, pair relations and
//! the deterministic searches that later stages rely on.

use exlie_field::Field;
use exlie_linalg::{kernel, rank, solve as linsolve, vector, Mat, SparseVec, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::LieAlgebra;
use crate::auto::{root_element, Automorphism};
use crate::{ExlieError, Result};

/// Identities on all basis pairs are affordable up to this dimension, or for
/// elements with at most [`SPARSE_LIMIT`] nonzero coordinates.
const EXHAUSTIVE_DIM: usize = 80;
const SPARSE_LIMIT: usize = 12;
const SAMPLED_PAIRS: usize = 3000;
const SAMPLE_SEED: u64 = 0x5eed_e11e;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckScope {
    Exhaustive,
    /// Seeded random basis pairs.
    Sampled {
        pairs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalFlags {
    pub extr: bool,
    pub p1: bool,
    pub p2: bool,
    pub sandwich: bool,
    pub scope: CheckScope,
}

impl ExtremalFlags {
    pub fn passed(&self) -> bool {
        self.extr && self.p1 && self.p2
    }

    pub fn pure(&self) -> bool {
        self.passed() && !self.sandwich
    }
}

/// An extremal element `x` with its form row `g_x(b_j)`.
type Point<E> = (E, E);

/// A hyperbolic pair `(x, y)`.
pub type ExtremalPair<E> = (Extremal<E>, Extremal<E>);

#[derive(Debug, Clone, PartialEq)]
pub struct Extremal<E> {
    pub x: SparseVec<E>,
    pub g: SparseVec<E>,
    pub flags: ExtremalFlags,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static> Extremal<E> {
    pub fn vector<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Vec<E> {
        self.x.to_dense(f, n)
    }

    pub fn form_row<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Vec<E> {
        self.g.to_dense(f, n)
    }

    /// `g_x(v)`.
    pub fn form<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> E {
        self.g.dot_sparse(f, v)
    }

    pub fn form_dense<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> E {
        self.g.dot_dense(f, v)
    }

    /// `λx`, whose form row is `λ g_x`.
    pub fn scaled<F: Field<Elem = E>>(&self, f: &F, lambda: &E) -> Self {
        Extremal { x: self.x.scale(f, lambda), g: self.g.scale(f, lambda), flags: self.flags }
    }

    pub fn exp(&self, n: usize) -> Automorphism<E> {
        Automorphism::exp(n, self.x.clone(), self.g.clone())
    }

    /// `exp(λx)`: `m ↦ m + λ[x,m] + λ² g_x(m) x`.
    pub fn exp_scaled<F: Field<Elem = E>>(&self, f: &F, lambda: &E, n: usize) -> Automorphism<E> {
        self.scaled(f, lambda).exp(n)
    }
}

/// Computes `g_x` and checks the defining identities.
///
/// Outside characteristic 2 the row is read off `[x,[x,b_j]] = 2g_x(b_j)x`.
/// In characteristic 2 that identity carries no information about `g_x`,
/// which is then solved from the first Premet identity, with a full linear
/// system over both identities as a fallback.
pub fn extremal_form<F: Field>(l: &LieAlgebra<F>, x: &SparseVec<F::Elem>) -> Result<Extremal<F::Elem>> {
    let f = l.field();
    let n = l.dim();
    let Some((lead, lead_val)) = x.entries().first().cloned() else {
        return Err(ExlieError::Invalid("the zero vector is never extremal".into()));
    };
    let inv_lead = f.inv(&lead_val).expect("stored entries are nonzero");
    let ad: Vec<SparseVec<F::Elem>> = (0..n).map(|j| l.bracket_with_basis(x, j)).collect();
    let mut s = Vec::with_capacity(n);
    for a in &ad {
        let w = l.bracket_sparse(x, a);
        let c = f.mul(&w.get(f, lead), &inv_lead);
        if w != x.scale(f, &c) {
            return Err(ExlieError::NotExtremal);
        }
        s.push(c);
    }
    let g = if f.characteristic() == 2 {
        if s.iter().any(|c| !f.is_zero(c)) {
            return Err(ExlieError::NotExtremal);
        }
        solve_form_char2(l, x, &ad)?
    } else {
        let half = f.inv(&f.from_i64(2)).expect("characteristic is not 2");
        s.iter().map(|c| f.mul(c, &half)).collect()
    };
    let g = SparseVec::from_dense(f, &g);
    let flags = check_identities(l, x, &ad, &g);
    if !flags.passed() {
        return Err(ExlieError::NotExtremal);
    }
    Ok(Extremal { x: x.clone(), g, flags })
}

pub fn extremal_form_dense<F: Field>(l: &LieAlgebra<F>, x: &[F::Elem]) -> Result<Extremal<F::Elem>> {
    extremal_form(l, &SparseVec::from_dense(l.field(), x))
}

/// Solves `a x + b u + c w = t` for `(a, b, c)` when `x, u, w` are
/// independent; `None` if they are dependent, `Some(None)` if `t` is not in
/// their span.
#[allow(clippy::type_complexity)]
fn expand3<F: Field>(
    f: &F,
    n: usize,
    x: &SparseVec<F::Elem>,
    u: &SparseVec<F::Elem>,
    w: &SparseVec<F::Elem>,
    t: &SparseVec<F::Elem>,
) -> Option<Option<Vec<F::Elem>>> {
    let cols = [x.to_dense(f, n), u.to_dense(f, n), w.to_dense(f, n)];
    let m = Mat::from_columns(&cols, n);
    if rank(f, &m) < 3 {
        return None;
    }
    Some(linsolve(f, &m, &t.to_dense(f, n)).expect("shapes agree"))
}

fn solve_form_char2<F: Field>(
    l: &LieAlgebra<F>,
    x: &SparseVec<F::Elem>,
    ad: &[SparseVec<F::Elem>],
) -> Result<Vec<F::Elem>> {
    let f = l.field();
    let n = l.dim();
    let xline = Subspace::span(f, n, &[x.to_dense(f, n)]);
    let off_line: Vec<usize> = (0..n).filter(|&z| !xline.contains(f, &ad[z].to_dense(f, n))).collect();
    if off_line.is_empty() {
        // ad_x maps L into kx; the identities force g_x = 0.
        return joint_form_system(l, x, ad);
    }
    let mut g = vector::zeros(f, n);
    for j in 0..n {
        if xline.contains(f, &ad[j].to_dense(f, n)) {
            // [[x,b_j],[x,z]] = c[x,[x,z]] = 0, so g(b_j)[x,z] ∈ kx.
            continue;
        }
        let mut solved = false;
        for &z in &off_line {
            let lhs = l.bracket_sparse(&ad[j], &ad[z]);
            match expand3(f, n, x, &ad[j], &ad[z], &lhs) {
                None => continue,
                Some(None) => return Err(ExlieError::NotExtremal),
                Some(Some(coef)) => {
                    g[j] = f.neg(&coef[2]);
                    solved = true;
                    break;
                }
            }
        }
        if !solved {
            return joint_form_system(l, x, ad);
        }
    }
    Ok(g)
}

/// Both Premet identities over all basis pairs as one linear system in the
/// unknown row `g`. Free variables, if any, are set to zero.
fn joint_form_system<F: Field>(
    l: &LieAlgebra<F>,
    x: &SparseVec<F::Elem>,
    ad: &[SparseVec<F::Elem>],
) -> Result<Vec<F::Elem>> {
    let f = l.field();
    let n = l.dim();
    if n > EXHAUSTIVE_DIM {
        return Err(ExlieError::NotExtremal);
    }
    let xd = x.to_dense(f, n);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let mut rhs: Vec<F::Elem> = Vec::new();
    let minus = |v: &F::Elem| f.neg(v);
    for i in 0..n {
        for j in 0..n {
            let bij = l.basis_bracket(i, j);
            let xi = ad[i].to_dense(f, n);
            let xj = ad[j].to_dense(f, n);
            // P1: [X_i, X_j] = g([b_i,b_j]) x + g_j X_i − g_i X_j
            let p1 = l.bracket_sparse(&ad[i], &ad[j]).to_dense(f, n);
            // P2: [x,[b_i,X_j]] = g([b_i,b_j]) x − g_j X_i − g_i X_j
            let inner = l.bracket_with_basis(&ad[j], i).neg(f);
            let p2 = l.bracket_sparse(x, &inner).to_dense(f, n);
            for k in 0..n {
                let mut row1 = vector::zeros(f, n);
                let mut row2 = vector::zeros(f, n);
                for (t, c) in bij.iter() {
                    let v = f.mul(c, &xd[k]);
                    row1[*t] = f.add(&row1[*t], &v);
                    row2[*t] = f.add(&row2[*t], &v);
                }
                row1[j] = f.add(&row1[j], &xi[k]);
                row1[i] = f.add(&row1[i], &minus(&xj[k]));
                row2[j] = f.add(&row2[j], &minus(&xi[k]));
                row2[i] = f.add(&row2[i], &minus(&xj[k]));
                for (row, value) in [(row1, &p1[k]), (row2, &p2[k])] {
                    if !vector::is_zero(f, &row) || !f.is_zero(value) {
                        rows.push(row);
                        rhs.push(value.clone());
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(vector::zeros(f, n));
    }
    let m = Mat::from_rows(rows, n);
    linsolve(f, &m, &rhs)?.ok_or(ExlieError::NotExtremal)
}

fn check_identities<F: Field>(
    l: &LieAlgebra<F>,
    x: &SparseVec<F::Elem>,
    ad: &[SparseVec<F::Elem>],
    g: &SparseVec<F::Elem>,
) -> ExtremalFlags {
    let f = l.field();
    let n = l.dim();
    let gd = g.to_dense(f, n);
    let two = f.from_i64(2);
    let extr = ad.iter().enumerate().all(|(j, a)| l.bracket_sparse(x, a) == x.scale(f, &f.mul(&two, &gd[j])));

    let p1_at = |i: usize, j: usize| -> bool {
        let gb = l.basis_bracket(i, j).dot_dense(f, &gd);
        let lhs = l.bracket_sparse(&ad[i], &ad[j]);
        let rhs = x.scale(f, &gb).add_scaled(f, &gd[j], &ad[i]).add_scaled(f, &f.neg(&gd[i]), &ad[j]);
        lhs == rhs
    };
    let p2_at = |i: usize, j: usize| -> bool {
        let gb = l.basis_bracket(i, j).dot_dense(f, &gd);
        let inner = l.bracket_with_basis(&ad[j], i).neg(f);
        let lhs = l.bracket_sparse(x, &inner);
        let rhs = x.scale(f, &gb).add_scaled(f, &f.neg(&gd[j]), &ad[i]).add_scaled(f, &f.neg(&gd[i]), &ad[j]);
        lhs == rhs
    };

    let exhaustive = n <= EXHAUSTIVE_DIM || x.nnz() <= SPARSE_LIMIT;
    let (p1, p2, scope) = if exhaustive {
        let p1 = (0..n).into_par_iter().all(|i| (i + 1..n).all(|j| p1_at(i, j)));
        let p2 = (0..n).into_par_iter().all(|i| (0..n).all(|j| p2_at(i, j)));
        (p1, p2, CheckScope::Exhaustive)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let pairs: Vec<(usize, usize)> =
            (0..SAMPLED_PAIRS).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let p1 = pairs.par_iter().all(|&(i, j)| p1_at(i, j));
        let p2 = pairs.par_iter().all(|&(i, j)| p2_at(i, j));
        (p1, p2, CheckScope::Sampled { pairs: SAMPLED_PAIRS })
    };
    ExtremalFlags { extr, p1, p2, sandwich: g.is_empty(), scope }
}

/// Quick necessary condition: `[v,[v,b_j]] ∈ kv` for every basis vector.
fn double_bracket_proportional<F: Field>(l: &LieAlgebra<F>, v: &SparseVec<F::Elem>) -> bool {
    let f = l.field();
    let Some((lead, lead_val)) = v.entries().first().cloned() else {
        return false;
    };
    let inv = f.inv(&lead_val).expect("nonzero");
    (0..l.dim()).all(|j| {
        let w = l.bracket_sparse(v, &l.bracket_with_basis(v, j));
        w == v.scale(f, &f.mul(&w.get(f, lead), &inv))
    })
}

pub fn is_extremal<F: Field>(l: &LieAlgebra<F>, v: &SparseVec<F::Elem>) -> bool {
    !v.is_empty() && double_bracket_proportional(l, v) && extremal_form(l, v).is_ok()
}

/// The five relations between extremal points, indexed `−2..=2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairRelation {
    /// Proportional elements (`E_{−2}`).
    Equal,
    /// `E_{−1}`.
    Collinear,
    /// `E_0`.
    Symplectic,
    /// `E_1`.
    Special,
    /// `E_2`.
    Hyperbolic,
}

impl PairRelation {
    pub fn index(self) -> i32 {
        match self {
            PairRelation::Equal => -2,
            PairRelation::Collinear => -1,
            PairRelation::Symplectic => 0,
            PairRelation::Special => 1,
            PairRelation::Hyperbolic => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairRelation::Equal => "E-2",
            PairRelation::Collinear => "E-1",
            PairRelation::Symplectic => "E0",
            PairRelation::Special => "E1",
            PairRelation::Hyperbolic => "E2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClass {
    pub relation: PairRelation,
    /// Over an infinite field the collinearity test only samples the pencil.
    pub pencil_sampled: bool,
}

/// Decides the relation between two pure extremal elements.
pub fn classify_pair<F: Field>(l: &LieAlgebra<F>, x: &Extremal<F::Elem>, y: &Extremal<F::Elem>) -> Result<PairClass> {
    let f = l.field();
    let n = l.dim();
    if !x.flags.pure() || !y.flags.pure() {
        return Err(ExlieError::NotExtremal);
    }
    let exact = |relation| Ok(PairClass { relation, pencil_sampled: false });
    if vector::proportion(f, &y.vector(f, n), &x.vector(f, n)).is_some() {
        return exact(PairRelation::Equal);
    }
    let xy = l.bracket_sparse(&x.x, &y.x);
    if !xy.is_empty() {
        return if f.is_zero(&x.form(f, &y.x)) {
            exact(PairRelation::Special)
        } else {
            exact(PairRelation::Hyperbolic)
        };
    }
    let (points, sampled): (Vec<Point<F::Elem>>, bool) = match f.elements() {
        Some(all) => (all.into_iter().filter(|m| !f.is_zero(m)).map(|m| (f.one(), m)).collect(), false),
        None => {
            let (one, two) = (f.one(), f.from_i64(2));
            (vec![(one.clone(), one.clone()), (one.clone(), two.clone()), (two, one)], true)
        }
    };
    let collinear = points.iter().all(|(lam, mu)| {
        let v = x.x.scale(f, lam).add_scaled(f, mu, &y.x);
        is_extremal(l, &v)
    });
    let relation = if collinear { PairRelation::Collinear } else { PairRelation::Symplectic };
    Ok(PairClass { relation, pencil_sampled: collinear && sampled })
}

/// Basis vectors that may be extremal (long-root vectors for Chevalley
/// algebras, every basis vector otherwise), certified on first use.
struct BasisCandidates<'a, F: Field> {
    l: &'a LieAlgebra<F>,
    indices: Vec<usize>,
    memo: Vec<Option<Option<Extremal<F::Elem>>>>,
}

impl<'a, F: Field> BasisCandidates<'a, F> {
    fn new(l: &'a LieAlgebra<F>) -> Self {
        let indices = match l.chevalley_table() {
            Some(t) => (0..l.dim()).filter(|&b| t.root_of(b).is_some_and(|r| t.roots.is_long(r))).collect(),
            None => (0..l.dim()).collect(),
        };
        BasisCandidates { l, indices, memo: vec![None; l.dim()] }
    }

    fn cert(&mut self, b: usize) -> Option<Extremal<F::Elem>> {
        let l = self.l;
        self.memo[b]
            .get_or_insert_with(|| {
                let v = SparseVec::unit(l.field(), b);
                if !double_bracket_proportional(l, &v) {
                    return None;
                }
                extremal_form(l, &v).ok().filter(|c| c.flags.pure())
            })
            .clone()
    }
}

/// A pure extremal `y` scaled so that `g_x(y) = 1`.
fn normalized_partner<F: Field>(
    l: &LieAlgebra<F>,
    x: &Extremal<F::Elem>,
    y: &Extremal<F::Elem>,
) -> Option<Extremal<F::Elem>> {
    let f = l.field();
    let gxy = x.form(f, &y.x);
    f.inv(&gxy).map(|s| y.scaled(f, &s))
}

/// A hyperbolic pair with `g(x,y) = 1`: the highest-root vector and the
/// rescaled opposite root vector for Chevalley algebras, otherwise the first
/// such pair among extremal basis vectors.
pub fn find_hyperbolic_pair<F: Field>(l: &LieAlgebra<F>) -> Result<ExtremalPair<F::Elem>> {
    let f = l.field();
    if let Some(t) = l.chevalley_table() {
        let theta = t.roots.highest_root();
        let x = extremal_form(l, &SparseVec::unit(f, t.root_index(theta)))?;
        let y0 = extremal_form(l, &SparseVec::unit(f, t.root_index(t.roots.negate(theta))))?;
        if let Some(y) = normalized_partner(l, &x, &y0) {
            if x.flags.pure() && y.flags.pure() {
                return Ok((x, y));
            }
        }
    }
    let mut candidates = BasisCandidates::new(l);
    let indices = candidates.indices.clone();
    for &i in &indices {
        let Some(x) = candidates.cert(i) else { continue };
        for &j in &indices {
            if f.is_zero(&x.g.get(f, j)) {
                continue;
            }
            if let Some(y) = candidates.cert(j).and_then(|y| normalized_partner(l, &x, &y)) {
                return Ok((x, y));
            }
        }
    }
    Err(ExlieError::NoExtremal)
}

/// Extremal elements spanning the subspace `w`: extremal basis vectors in
/// `w` first, then their images under Chevalley root elements that
/// stabilize `w`, until the span is reached.
pub fn extremal_spanning_set<F: Field>(l: &LieAlgebra<F>, w: &Subspace<F::Elem>) -> Result<Vec<Extremal<F::Elem>>> {
    let f = l.field();
    let n = l.dim();
    let mut certs: Vec<Extremal<F::Elem>> = Vec::new();
    let mut span = Subspace::zero(n);
    let push = |c: Extremal<F::Elem>, certs: &mut Vec<Extremal<F::Elem>>, span: &mut Subspace<F::Elem>| {
        let v = c.vector(f, n);
        if !span.contains(f, &v) {
            *span = span.sum(f, &Subspace::span(f, n, &[v]));
            certs.push(c);
        }
    };
    for b in 0..n {
        if span.dim() == w.dim() {
            break;
        }
        let v = SparseVec::unit(f, b);
        if w.contains(f, &v.to_dense(f, n)) && double_bracket_proportional(l, &v) {
            if let Ok(c) = extremal_form(l, &v) {
                push(c, &mut certs, &mut span);
            }
        }
    }
    for row in w.basis() {
        if span.dim() == w.dim() {
            break;
        }
        let v = SparseVec::from_dense(f, row);
        if double_bracket_proportional(l, &v) {
            if let Ok(c) = extremal_form(l, &v) {
                push(c, &mut certs, &mut span);
            }
        }
    }
    if span.dim() == w.dim() {
        return Ok(certs);
    }
    if certs.is_empty() {
        return Err(ExlieError::BudgetExhausted("no extremal elements in the subspace".into()));
    }
    let Some(table) = l.chevalley_table() else {
        return Err(ExlieError::BudgetExhausted(format!(
            "extremal basis vectors span {} of {} dimensions",
            span.dim(),
            w.dim()
        )));
    };
    let params = f.sample_nonzero(3);
    let mut moves: Vec<Automorphism<F::Elem>> = Vec::new();
    for r in 0..table.roots.len() {
        let a = root_element(l, r, f.one())?;
        let stabilizes = w.basis().iter().all(|b| w.contains(f, &a.apply(l, b)));
        if stabilizes {
            for t in &params {
                moves.push(root_element(l, r, t.clone())?);
            }
        }
    }
    for _round in 0..4 {
        let before = span.dim();
        let current = certs.clone();
        for a in &moves {
            for c in &current {
                if span.dim() == w.dim() {
                    return Ok(certs);
                }
                let v = a.apply_sparse(l, &c.x);
                if span.contains(f, &v.to_dense(f, n)) {
                    continue;
                }
                if let Ok(c) = extremal_form(l, &v) {
                    push(c, &mut certs, &mut span);
                }
            }
        }
        if span.dim() == w.dim() {
            return Ok(certs);
        }
        if span.dim() == before {
            break;
        }
    }
    Err(ExlieError::BudgetExhausted(format!("extremal elements found span {} of {} dimensions", span.dim(), w.dim())))
}

/// A quadruple `(x, y, c, d)` with `g(x,y) = g(c,d) = 1` and the pairs
/// `(x,c), (c,y), (y,d), (d,x)` symplectic.
#[derive(Debug, Clone)]
pub struct SymplecticQuad<E> {
    pub x: Extremal<E>,
    pub y: Extremal<E>,
    pub c: Extremal<E>,
    pub d: Extremal<E>,
}

pub fn find_symplectic_quad<F: Field>(l: &LieAlgebra<F>) -> Result<SymplecticQuad<F::Elem>> {
    let f = l.field();
    let (x, y) = find_hyperbolic_pair(l)?;
    let symplectic = |a: &Extremal<F::Elem>, b: &Extremal<F::Elem>| -> Result<bool> {
        Ok(classify_pair(l, a, b)?.relation == PairRelation::Symplectic)
    };
    // Symplectic pairs commute, which rules out most candidates cheaply.
    let commutes_with_pair =
        |b: usize| l.bracket_with_basis(&x.x, b).is_empty() && l.bracket_with_basis(&y.x, b).is_empty();
    let mut candidates = BasisCandidates::new(l);
    let indices = candidates.indices.clone();
    for &i in &indices {
        if !commutes_with_pair(i) {
            continue;
        }
        let Some(c) = candidates.cert(i) else { continue };
        if !symplectic(&x, &c)? || !symplectic(&c, &y)? {
            continue;
        }
        for &j in &indices {
            if f.is_zero(&c.g.get(f, j)) || !commutes_with_pair(j) {
                continue;
            }
            let Some(d) = candidates.cert(j).and_then(|d| normalized_partner(l, &c, &d)) else { continue };
            if symplectic(&y, &d)? && symplectic(&d, &x)? {
                return Ok(SymplecticQuad { x, y, c, d });
            }
        }
    }
    Err(ExlieError::inapplicable("no-symplectic-pairs"))
}

/// The symmetric associative form `g` with `g(x,·) = g_x` for every
/// extremal `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalForm<E> {
    pub matrix: Mat<E>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync + 'static> GlobalForm<E> {
    pub fn eval<F: Field<Elem = E>>(&self, f: &F, u: &[E], v: &[E]) -> E {
        vector::dot(f, u, &self.matrix.mul_vec(f, v))
    }

    pub fn radical<F: Field<Elem = E>>(&self, f: &F) -> Subspace<E> {
        kernel(f, &self.matrix)
    }
}

pub fn global_form<F: Field>(l: &LieAlgebra<F>, certs: &[Extremal<F::Elem>]) -> Result<GlobalForm<F::Elem>> {
    let f = l.field();
    let n = l.dim();
    let mut span = Subspace::zero(n);
    let mut chosen = Vec::new();
    for c in certs {
        let v = c.vector(f, n);
        if !span.contains(f, &v) {
            span = span.sum(f, &Subspace::span(f, n, &[v]));
            chosen.push(c);
        }
    }
    if span.dim() < n {
        return Err(ExlieError::Verification(format!("extremal elements span {} of {n} dimensions", span.dim())));
    }
    // Rows: x_i^T G = g_i^T, so G = X^{-1} R with X, R stacked row-wise.
    let xs = Mat::from_rows(chosen.iter().map(|c| c.vector(f, n)).collect(), n);
    let rs = Mat::from_rows(chosen.iter().map(|c| c.form_row(f, n)).collect(), n);
    let g = xs.inverse(f)?.mul(f, &rs);
    if g != g.transpose() {
        return Err(ExlieError::verification("global form is not symmetric"));
    }
    for c in certs {
        if g.transpose().mul_vec(f, &c.vector(f, n)) != c.form_row(f, n) {
            return Err(ExlieError::verification("global form disagrees with an extremal form row"));
        }
    }
    let form = GlobalForm { matrix: g };
    let assoc = |i: usize, j: usize, k: usize| {
        let lhs = form.eval(f, &l.basis_bracket(i, j).to_dense(f, n), &l.unit(k));
        let rhs = form.eval(f, &l.unit(i), &l.basis_bracket(j, k).to_dense(f, n));
        lhs == rhs
    };
    let ok = if n <= 52 {
        (0..n).into_par_iter().all(|i| (0..n).all(|j| (0..n).all(|k| assoc(i, j, k))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..SAMPLED_PAIRS).all(|_| assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
    };
    if !ok {
        return Err(ExlieError::verification("global form does not associate with the bracket"));
    }
    Ok(form)
}

/// The matrix of `exp(λx)`.
pub fn exp_map<F: Field>(l: &LieAlgebra<F>, cert: &Extremal<F::Elem>, lambda: &F::Elem) -> Mat<F::Elem> {
    cert.exp_scaled(l.field(), lambda, l.dim()).matrix(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CartanType;
    use exlie_field::FiniteField;

    fn sl2(p: u64) -> (FiniteField, LieAlgebra<FiniteField>) {
        let f = FiniteField::prime(p).unwrap();
        let l = LieAlgebra::chevalley(CartanType::A(1), f.clone()).unwrap();
        (f, l)
    }

    #[test]
    fn root_vector_form_in_sl2() {
        let (f, l) = sl2(5);
        let e = extremal_form_dense(&l, &l.unit(0)).unwrap();
        assert_eq!(e.form_row(&f, 3), vec![0, 0, 4]);
        assert!(e.flags.pure());
        assert_eq!(e.flags.scope, CheckScope::Exhaustive);
        assert!(matches!(extremal_form_dense(&l, &l.unit(1)), Err(ExlieError::NotExtremal)));
    }

    #[test]
    fn exp_of_e_on_f() {
        let (f, l) = sl2(5);
        let e = extremal_form_dense(&l, &l.unit(0)).unwrap();
        let m = exp_map(&l, &e, &1);
        // f + h − e
        assert_eq!(m.col(2), vec![4, 1, 1]);
        assert!(exp_map(&l, &e, &0).is_identity(&f));
    }

    #[test]
    fn hyperbolic_pair_in_sl2() {
        let (f, l) = sl2(5);
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        assert_eq!(x.vector(&f, 3), vec![1, 0, 0]);
        assert_eq!(y.vector(&f, 3), vec![0, 0, 4]);
        assert_eq!(x.form(&f, &y.x), 1);
    }

    #[test]
    fn abelian_algebra_has_no_pairs() {
        let f = FiniteField::prime(5).unwrap();
        let l = LieAlgebra::from_brackets(f, vec!["a".into(), "b".into()], Vec::new()).unwrap();
        assert!(find_hyperbolic_pair(&l).is_err());
    }
}
