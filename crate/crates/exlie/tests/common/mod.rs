#![allow(dead_code)]

use exlie::expauto::{canonical, commutator_holds, compose, exp_difference, product_report, Exponentiator, LExp};
use exlie::extremal::find_hyperbolic_pair;
use exlie::grading::{Grading5, DEGREES};
use exlie::{CartanType, LieAlgebra};
use exlie_field::{Field, FieldDescriptor, FiniteField};
use exlie_linalg::{Mat, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gf(q: u64) -> FiniteField {
    let d: FieldDescriptor = format!("gf({q})").parse().unwrap();
    FiniteField::from_descriptor(&d).unwrap()
}

/// A random element of `L_i` with coordinates drawn from `rng`.
pub fn random_in<F: Field>(gr: &Grading5<'_, F>, i: i32, rng: &mut impl Rng) -> SparseVec<F::Elem> {
    let f = gr.algebra().field();
    let coords: Vec<F::Elem> = (0..gr.dims()[(i + 2) as usize]).map(|_| f.random(rng)).collect();
    gr.combine(&coords, i)
}

/// `Σ_{k≤4} ad_l^k / k!` as a matrix, computed straight from the bracket.
/// Needs 2, 3 invertible.
pub fn truncated_exp_ad<F: Field>(gr: &Grading5<'_, F>, l: &SparseVec<F::Elem>) -> Mat<F::Elem> {
    let alg = gr.algebra();
    let f = alg.field();
    let n = alg.dim();
    let ad = alg.ad(&l.to_dense(f, n));
    let mut term = Mat::identity(f, n);
    let mut sum = Mat::identity(f, n);
    for k in 1..=4 {
        let inv_k = f.inv(&f.from_i64(k)).expect("k invertible");
        term = ad.mul(f, &term).scale(f, &inv_k);
        sum = sum.add(f, &term);
    }
    sum
}

/// Checks `α(m) ∈ m + [l,m] + L_{i+2} + L_{i+3} + L_{i+4}` for every basis
/// vector `m` of every `L_i`, by projecting the image onto the pieces.
pub fn degree_constraints_hold<F: Field>(gr: &Grading5<'_, F>, alpha: &LExp<F::Elem>) -> bool {
    let alg = gr.algebra();
    DEGREES.iter().all(|&i| {
        gr.basis(i).iter().all(|m| {
            let image = alpha.auto.apply_sparse(alg, m);
            let lm = alg.bracket_sparse(&alpha.l, m);
            DEGREES.iter().all(|&j| {
                let part = gr.project_sparse(&image, j);
                match j - i {
                    0 => part == *m,
                    1 => part == lm,
                    d if d < 0 => part.is_empty(),
                    _ => true,
                }
            })
        })
    })
}

/// The spanning set reversed and rescaled, so the product of exponentials
/// runs over a different decomposition of `l`.
pub fn second_decomposition<'g, 'l, F: Field>(ex: &Exponentiator<'g, 'l, F>) -> Exponentiator<'g, 'l, F> {
    let f = ex.grading().algebra().field();
    let s = f.from_i64(2);
    let s = if f.is_zero(&s) { f.one() } else { s };
    let spanning = ex.spanning_set().iter().rev().map(|e| e.scaled(f, &s)).collect();
    Exponentiator::with_spanning(ex.grading(), spanning).unwrap()
}

/// Draws `count` seeded `l ∈ L_1` and checks, for each: the degree
/// constraints, agreement of two decompositions up to `exp(ky)` (and
/// exactly after normalization outside characteristic 2), the commutator
/// and group laws against the previous sample, and in characteristic 7
/// the closed forms through the truncated `exp(ad_l)`.
/// Returns the number of samples checked.
pub fn check_seeded(ty: CartanType, f: FiniteField, count: usize, seed: u64) -> Result<usize, String> {
    let l = LieAlgebra::chevalley(ty, f.clone()).map_err(|e| e.to_string())?;
    let (x, y) = find_hyperbolic_pair(&l).map_err(|e| e.to_string())?;
    let gr = Grading5::new(&l, &x, &y).map_err(|e| e.to_string())?;
    let ex = Exponentiator::new(&gr).map_err(|e| e.to_string())?;
    let ex2 = second_decomposition(&ex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut previous: Option<LExp<u32>> = None;
    let tag = format!("{ty} over {}", f.descriptor());
    let fail = |what: &str| Err(format!("{what}, {tag}"));
    for _ in 0..count {
        let lv = random_in(&gr, 1, &mut rng);
        let a = ex.l_exponential(&lv).map_err(|e| format!("{tag}: {e}"))?;
        if !degree_constraints_hold(&gr, &a) || !a.auto.is_automorphism(&l) {
            return fail("degree constraints");
        }
        let b = ex2.l_exponential(&lv).map_err(|e| format!("{tag}: {e}"))?;
        if !degree_constraints_hold(&gr, &b) || exp_difference(&gr, &a, &b).is_err() {
            return fail("decompositions differ beyond exp(ky)");
        }
        if f.characteristic() != 2 {
            let (ca, cb) = (canonical(&gr, &a), canonical(&gr, &b));
            match (ca, cb) {
                (Ok(ca), Ok(cb)) if ca.auto.agrees_with(&cb.auto, &l) => {}
                _ => return fail("normalized automorphism not unique"),
            }
        }
        if let Some(p) = previous.take() {
            if !commutator_holds(&gr, &a, &p) {
                return fail("commutator law");
            }
            let c = compose(&gr, &a, &p);
            if !product_report(&gr, &a, &p, &c).is_ok_and(|r| r.passed()) {
                return fail("product formulas");
            }
            let direct = ex.l_exponential(&c.l).map_err(|e| format!("{tag}: {e}"))?;
            if exp_difference(&gr, &direct, &c).is_err() {
                return fail("group law");
            }
        }
        if f.characteristic() == 7 {
            let canon = ex.canonical(&lv).map_err(|e| format!("{tag}: {e}"))?;
            if canon.auto.matrix(&l) != truncated_exp_ad(&gr, &lv) {
                return fail("closed forms");
            }
        }
        previous = Some(a);
    }
    Ok(count)
}
