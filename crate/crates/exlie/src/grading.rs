//! The 5-grading `L = L_{−2} ⊕ L_{−1} ⊕ L_0 ⊕ L_1 ⊕ L_2` attached to a
//! hyperbolic pair `(x, y)` with `g(x,y) = 1`.
//!
//! The pieces are built without eigenvalues, which collide in small
//! characteristic: `L_{∓2}` are the lines through `x` and `y`, `L_{−1}` and
//! `L_1` are `[x,U]` and `[y,U]` with `U` the orthogonal complement of
//! `⟨x, y, [x,y]⟩`, and `L_0` is the intersection of the normalizers of the
//! two lines. Eigenvalues of `ad_{[x,y]}` serve only as a cross-check.

use exlie_field::Field;
use exlie_linalg::{kernel, vector, DirectSum, Mat, SparseVec, Subspace};
use rayon::prelude::*;

use crate::algebra::LieAlgebra;
use crate::auto::Automorphism;
use crate::extremal::Extremal;
use crate::report::Report;
use crate::{ExlieError, Result};

pub const DEGREES: [i32; 5] = [-2, -1, 0, 1, 2];

fn slot(i: i32) -> usize {
    assert!((-2..=2).contains(&i), "degree {i} outside -2..=2");
    (i + 2) as usize
}

pub struct Grading5<'l, F: Field> {
    l: &'l LieAlgebra<F>,
    x: Extremal<F::Elem>,
    y: Extremal<F::Elem>,
    z: SparseVec<F::Elem>,
    u: Subspace<F::Elem>,
    sum: DirectSum<F::Elem>,
    sparse_bases: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<'l, F: Field> Clone for Grading5<'l, F> {
    fn clone(&self) -> Self {
        Grading5 {
            l: self.l,
            x: self.x.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
            u: self.u.clone(),
            sum: self.sum.clone(),
            sparse_bases: self.sparse_bases.clone(),
        }
    }
}

/// `{m : [v,m] ∈ kv}`.
pub fn normalizer<F: Field>(l: &LieAlgebra<F>, v: &SparseVec<F::Elem>) -> Subspace<F::Elem> {
    let f = l.field();
    let n = l.dim();
    let mut cols: Vec<Vec<F::Elem>> = (0..n).map(|j| l.bracket_with_basis(v, j).to_dense(f, n)).collect();
    cols.push(v.to_dense(f, n));
    let k = kernel(f, &Mat::from_columns(&cols, n));
    let projected: Vec<Vec<F::Elem>> = k.basis().iter().map(|w| w[..n].to_vec()).collect();
    Subspace::span(f, n, &projected)
}

fn span_sparse<F: Field>(f: &F, n: usize, vs: &[SparseVec<F::Elem>]) -> Subspace<F::Elem> {
    let dense: Vec<Vec<F::Elem>> = vs.iter().map(|v| v.to_dense(f, n)).collect();
    Subspace::span(f, n, &dense)
}

impl<'l, F: Field> Grading5<'l, F> {
    /// Builds the grading and asserts its structural invariants: direct sum,
    /// eigenvalues of `ad_{[x,y]}`, bracket degrees and the filtration by
    /// `x^⊥` and `N(x)`.
    pub fn new(l: &'l LieAlgebra<F>, x: &Extremal<F::Elem>, y: &Extremal<F::Elem>) -> Result<Self> {
        let f = l.field();
        let n = l.dim();
        if !f.is_one(&x.form(f, &y.x)) {
            return Err(ExlieError::Invalid("the pair must satisfy g(x,y) = 1".into()));
        }
        let z = l.bracket_sparse(&x.x, &y.x);
        let gz: Vec<F::Elem> = (0..n).map(|j| x.g.dot_sparse(f, &l.bracket_with_basis(&y.x, j))).collect();
        let rows = vec![x.form_row(f, n), y.form_row(f, n), gz];
        let u = kernel(f, &Mat::from_rows(rows, n));
        let u_sparse: Vec<SparseVec<F::Elem>> = u.basis().iter().map(|b| SparseVec::from_dense(f, b)).collect();
        let lm1: Vec<SparseVec<F::Elem>> = u_sparse.iter().map(|b| l.bracket_sparse(&x.x, b)).collect();
        let lp1: Vec<SparseVec<F::Elem>> = u_sparse.iter().map(|b| l.bracket_sparse(&y.x, b)).collect();
        let l0 = normalizer(l, &x.x).intersect(f, &normalizer(l, &y.x));
        let pieces = vec![
            span_sparse(f, n, std::slice::from_ref(&x.x)),
            span_sparse(f, n, &lm1),
            l0,
            span_sparse(f, n, &lp1),
            span_sparse(f, n, std::slice::from_ref(&y.x)),
        ];
        let sum = DirectSum::new(f, pieces).map_err(|e| ExlieError::Verification(format!("pieces: {e}")))?;
        let sparse_bases =
            sum.pieces().iter().map(|p| p.basis().iter().map(|b| SparseVec::from_dense(f, b)).collect()).collect();
        let gr = Grading5 { l, x: x.clone(), y: y.clone(), z, u, sum, sparse_bases };
        gr.assert_structure()?;
        Ok(gr)
    }

    fn assert_structure(&self) -> Result<()> {
        let f = self.l.field();
        for i in DEGREES {
            let scalar = f.from_i64(i as i64);
            for b in self.basis(i) {
                if self.l.bracket_sparse(&self.z, b) != b.scale(f, &scalar) {
                    return Err(ExlieError::verification(format!("L_{i} is not in the {i}-eigenspace of ad_[x,y]")));
                }
            }
        }
        if let Some((i, j)) = self.bracket_degree_violation() {
            return Err(ExlieError::verification(format!("[L_{i}, L_{j}] has the wrong degree")));
        }
        let n = self.l.dim();
        let xperp = kernel(f, &Mat::from_rows(vec![self.x.form_row(f, n)], n));
        if self.filtration(1) != xperp {
            return Err(ExlieError::verification("L_{<=1} differs from x^perp"));
        }
        if self.filtration(0) != normalizer(self.l, &self.x.x) {
            return Err(ExlieError::verification("L_{<=0} differs from N(x)"));
        }
        let mut low: Vec<Vec<F::Elem>> = vec![self.x.vector(f, n)];
        for b in xperp.basis() {
            low.push(self.l.bracket_sparse(&self.x.x, &SparseVec::from_dense(f, b)).to_dense(f, n));
        }
        if self.filtration(-1) != Subspace::span(f, n, &low) {
            return Err(ExlieError::verification("L_{<=-1} differs from kx + [x, x^perp]"));
        }
        Ok(())
    }

    fn bracket_degree_violation(&self) -> Option<(i32, i32)> {
        let f = self.l.field();
        let pairs: Vec<(i32, i32)> =
            DEGREES.iter().flat_map(|&i| DEGREES.iter().filter(move |&&j| j >= i).map(move |&j| (i, j))).collect();
        pairs.into_par_iter().find_first(|&(i, j)| {
            let target = i + j;
            self.basis(i).iter().any(|a| {
                self.basis(j).iter().any(|b| {
                    let c = self.l.bracket_sparse(a, b);
                    if c.is_empty() {
                        return false;
                    }
                    let support = self.sum.support_sparse(f, &c);
                    !(-2..=2).contains(&target) || support.iter().any(|&s| s != slot(target))
                })
            })
        })
    }

    pub fn algebra(&self) -> &'l LieAlgebra<F> {
        self.l
    }

    pub fn x(&self) -> &Extremal<F::Elem> {
        &self.x
    }

    pub fn y(&self) -> &Extremal<F::Elem> {
        &self.y
    }

    /// The grading element `[x,y]`.
    pub fn z(&self) -> &SparseVec<F::Elem> {
        &self.z
    }

    pub fn u(&self) -> &Subspace<F::Elem> {
        &self.u
    }

    pub fn piece(&self, i: i32) -> &Subspace<F::Elem> {
        &self.sum.pieces()[slot(i)]
    }

    /// Sparse basis of `L_i`, in the reduced row-echelon order of the piece.
    pub fn basis(&self, i: i32) -> &[SparseVec<F::Elem>] {
        &self.sparse_bases[slot(i)]
    }

    pub fn dims(&self) -> [usize; 5] {
        DEGREES.map(|i| self.piece(i).dim())
    }

    /// Coordinates of the `L_i`-component of `v` in [`Self::basis`]`(i)`.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>, i: i32) -> Vec<F::Elem> {
        self.sum.piece_coordinates_sparse(self.l.field(), v, slot(i))
    }

    pub fn combine(&self, coords: &[F::Elem], i: i32) -> SparseVec<F::Elem> {
        let f = self.l.field();
        let mut out = SparseVec::new();
        for (c, b) in coords.iter().zip(self.basis(i)) {
            if !f.is_zero(c) {
                out = out.add_scaled(f, c, b);
            }
        }
        out
    }

    pub fn project_sparse(&self, v: &SparseVec<F::Elem>, i: i32) -> SparseVec<F::Elem> {
        self.combine(&self.coordinates(v, i), i)
    }

    pub fn project(&self, v: &[F::Elem], i: i32) -> Vec<F::Elem> {
        self.sum.project(self.l.field(), v, slot(i))
    }

    /// Degrees in which `v` has a nonzero component.
    pub fn support(&self, v: &SparseVec<F::Elem>) -> Vec<i32> {
        self.sum.support_sparse(self.l.field(), v).into_iter().map(|s| s as i32 - 2).collect()
    }

    /// `L_{≤i}`.
    pub fn filtration(&self, i: i32) -> Subspace<F::Elem> {
        let vs: Vec<Vec<F::Elem>> =
            DEGREES.iter().filter(|&&j| j <= i).flat_map(|&j| self.piece(j).basis().iter().cloned()).collect();
        Subspace::span(self.l.field(), self.l.dim(), &vs)
    }

    /// The grading of the pair `(y, x)`, whose `i`-th piece is `L_{−i}`.
    pub fn reversed(&self) -> Result<Self> {
        let r = Grading5::new(self.l, &self.y, &self.x)?;
        if DEGREES.iter().any(|&i| r.piece(i) != self.piece(-i)) {
            return Err(ExlieError::verification("reversed pair does not reverse the grading"));
        }
        Ok(r)
    }

    /// The grading of `(λx, λ⁻¹y)`, which has the same pieces.
    pub fn rescaled(&self, lambda: &F::Elem) -> Result<Self> {
        let f = self.l.field();
        let inv = f.inv(lambda).ok_or_else(|| ExlieError::Invalid("rescaling by zero".into()))?;
        Ok(Grading5 { x: self.x.scaled(f, lambda), y: self.y.scaled(f, &inv), ..self.clone() })
    }

    /// `φ = exp(y) exp(x) exp(y)`, which swaps `x` and `y`.
    pub fn reversal(&self) -> Automorphism<F::Elem> {
        let n = self.l.dim();
        let ey = self.y.exp(n);
        ey.compose(&self.x.exp(n)).compose(&ey)
    }

    /// Checks the action of [`Self::reversal`] piece by piece.
    pub fn reversal_report(&self) -> Report {
        let f = self.l.field();
        let phi = self.reversal();
        let l = self.l;
        let mut r = Report::new();
        r.push("reversal maps x to y", phi.apply_sparse(l, &self.x.x) == self.y.x);
        r.push("reversal maps y to x", phi.apply_sparse(l, &self.y.x) == self.x.x);
        r.push(
            "reversal on L_-1 is ad_y",
            self.basis(-1).par_iter().all(|a| phi.apply_sparse(l, a) == l.bracket_sparse(&self.y.x, a)),
        );
        r.push(
            "reversal on L_1 is ad_x",
            self.basis(1).par_iter().all(|a| phi.apply_sparse(l, a) == l.bracket_sparse(&self.x.x, a)),
        );
        r.push(
            "reversal on L_0 is 1 + ad_x ad_y",
            self.basis(0).par_iter().all(|a| {
                let expected = a.add(f, &l.bracket_sparse(&self.x.x, &l.bracket_sparse(&self.y.x, a)));
                phi.apply_sparse(l, a) == expected
            }),
        );
        r
    }

    /// `φ_λ`, acting as `λ^i` on `L_i`.
    pub fn torus(&self, lambda: &F::Elem) -> Result<Automorphism<F::Elem>> {
        let f = self.l.field();
        let n = self.l.dim();
        let inv = f.inv(lambda).ok_or_else(|| ExlieError::Invalid("torus parameter must be nonzero".into()))?;
        let powers: Vec<F::Elem> =
            DEGREES.iter().map(|&i| if i >= 0 { f.pow(lambda, i as u64) } else { f.pow(&inv, (-i) as u64) }).collect();
        let images = (0..n)
            .map(|j| {
                let e = SparseVec::unit(f, j);
                let mut out = SparseVec::new();
                for i in DEGREES {
                    out = out.add_scaled(f, &powers[slot(i)], &self.project_sparse(&e, i));
                }
                out
            })
            .collect();
        Ok(Automorphism::from_images(images))
    }

    /// The numerical facts about the grading that later constructions use.
    pub fn verify(&self) -> Report {
        let f = self.l.field();
        let l = self.l;
        let n = l.dim();
        let (x, y) = (&self.x.x, &self.y.x);
        let mut r = Report::new();
        let minus = |v: SparseVec<F::Elem>| v.neg(f);
        r.push(
            "ad_x: L_1 -> L_-1 has inverse -ad_y",
            self.basis(1).par_iter().all(|b| minus(l.bracket_sparse(y, &l.bracket_sparse(x, b))) == *b)
                && self.basis(-1).par_iter().all(|a| minus(l.bracket_sparse(x, &l.bracket_sparse(y, a))) == *a),
        );
        let gx = self.x.form_row(f, n);
        let gy = self.y.form_row(f, n);
        r.push("g_x vanishes on L_<=1", self.filtration(1).basis().iter().all(|b| f.is_zero(&vector::dot(f, &gx, b))));
        let upper: Vec<Vec<F::Elem>> =
            [-1, 0, 1, 2].iter().flat_map(|&i| self.piece(i).basis().iter().cloned()).collect();
        r.push("g_y vanishes on L_>=-1", upper.iter().all(|b| f.is_zero(&vector::dot(f, &gy, b))));
        r.push(
            "[a,[y,b]] = g(a,b)y on L_1 x L_-1",
            self.basis(1).par_iter().all(|a| {
                self.basis(-1).iter().all(|b| {
                    let gab = self.y.form(f, &l.bracket_sparse(&l.bracket_sparse(a, b), x));
                    l.bracket_sparse(a, &l.bracket_sparse(y, b)) == y.scale(f, &gab)
                })
            }),
        );
        for i in [-1, 1] {
            let d = self.piece(i).dim();
            let top = slot(2 * i);
            let rows: Vec<Vec<F::Elem>> = self
                .basis(i)
                .iter()
                .map(|a| {
                    self.basis(i)
                        .iter()
                        .map(|b| self.sum.piece_coordinates_sparse(f, &l.bracket_sparse(a, b), top)[0].clone())
                        .collect()
                })
                .collect();
            let zi = if d == 0 { 0 } else { kernel(f, &Mat::from_rows(rows, d)).dim() };
            r.push_detail(format!("Z_{i} = 0"), zi == 0, format!("dim {zi}"));
        }
        r.push(
            "L_0 lies in the 0-eigenspace of ad_[x,y]",
            self.basis(0).iter().all(|b| l.bracket_sparse(&self.z, b).is_empty()),
        );
        r
    }

    /// A copy with the labels of `L_1` and `L_{−1}` exchanged, for
    /// exercising the verification on a broken grading.
    #[doc(hidden)]
    pub fn with_swapped_odd_pieces(&self) -> Self {
        let f = self.l.field();
        let mut pieces = self.sum.pieces().to_vec();
        pieces.swap(1, 3);
        let sum = DirectSum::new(f, pieces).expect("same pieces, new order");
        let mut sparse_bases = self.sparse_bases.clone();
        sparse_bases.swap(1, 3);
        Grading5 { sum, sparse_bases, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::find_hyperbolic_pair;
    use crate::CartanType;
    use exlie_field::FiniteField;

    #[test]
    fn sl3_piece_dimensions() {
        let f = FiniteField::prime(5).unwrap();
        let l = LieAlgebra::chevalley(CartanType::A(2), f).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        assert_eq!(gr.dims(), [1, 2, 2, 2, 1]);
        assert!(gr.verify().passed(), "{}", gr.verify());
        assert!(gr.reversal_report().passed());
    }

    #[test]
    fn swapped_labels_fail_bijectivity() {
        let f = FiniteField::prime(5).unwrap();
        let l = LieAlgebra::chevalley(CartanType::G2, f).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap().with_swapped_odd_pieces();
        assert!(!gr.verify().get("ad_x: L_1 -> L_-1 has inverse -ad_y").unwrap().passed);
    }
}
