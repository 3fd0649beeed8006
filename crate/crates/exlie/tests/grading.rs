mod common;

use common::{gf, random_in};
use exlie::extremal::{classify_pair, extremal_form, find_hyperbolic_pair, is_extremal, PairRelation};
use exlie::grading::{Grading5, DEGREES};
use exlie::{CartanType, LieAlgebra};
use exlie_field::{Field, FiniteField};
use exlie_linalg::SparseVec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Dual Coxeter numbers; `dim L_{±1} = 2h - 4` for the grading of a
/// highest-root pair.
const DUAL_COXETER: [(&str, usize); 7] =
    [("A2", 3), ("G2", 4), ("D4", 6), ("F4", 9), ("E6", 12), ("E7", 18), ("E8", 30)];

fn graded(ty: &str, q: u64) -> (LieAlgebra<FiniteField>, usize) {
    let l = LieAlgebra::chevalley(ty.parse().unwrap(), gf(q)).unwrap();
    let h = DUAL_COXETER.iter().find(|(t, _)| *t == ty).unwrap().1;
    (l, h)
}

#[test]
fn piece_dimensions_follow_the_dual_coxeter_number() {
    for (ty, _) in DUAL_COXETER {
        let (l, h) = graded(ty, 5);
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        let d1 = 2 * h - 4;
        assert_eq!(gr.dims(), [1, d1, l.dim() - 2 - 2 * d1, d1, 1], "{ty}");
        let report = gr.verify();
        assert!(report.passed(), "{ty}:\n{report}");
    }
}

#[test]
fn z_acts_by_the_degree() {
    let f = gf(7);
    let l = LieAlgebra::chevalley(CartanType::F4, f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    // [x,y] acts on L_i as a fixed multiple of i.
    let m = gr.basis(1)[0].clone();
    let c = l.bracket_sparse(gr.z(), &m).get(&f, m.entries()[0].0);
    let c = f.div(&c, &m.entries()[0].1).unwrap();
    for i in DEGREES {
        let scalar = f.mul(&c, &f.from_i64(i as i64));
        for b in gr.basis(i) {
            assert_eq!(l.bracket_sparse(gr.z(), b), b.scale(&f, &scalar), "degree {i}");
        }
    }
}

#[test]
fn extremal_form_matches_the_double_bracket() {
    for q in [5, 7, 9] {
        let f = gf(q);
        let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
        let (x, _) = find_hyperbolic_pair(&l).unwrap();
        let two = f.from_i64(2);
        for j in 0..l.dim() {
            let m = SparseVec::unit(&f, j);
            let lhs = l.bracket_sparse(&x.x, &l.bracket_sparse(&x.x, &m));
            assert_eq!(lhs, x.x.scale(&f, &f.mul(&two, &x.form(&f, &m))), "gf({q}), b_{j}");
        }
    }
}

#[test]
fn characteristic_two_forms_satisfy_the_premet_identity() {
    let f = gf(4);
    let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    assert!(f.is_one(&x.form(&f, &y.x)));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let a: Vec<u32> = (0..l.dim()).map(|_| f.random(&mut rng)).collect();
        let b: Vec<u32> = (0..l.dim()).map(|_| f.random(&mut rng)).collect();
        let (a, b) = (SparseVec::from_dense(&f, &a), SparseVec::from_dense(&f, &b));
        // [x,[a,[x,b]]] = g_x([a,b])x + g_x(b)[x,a] - g_x(a)[x,b]
        let lhs = l.bracket_sparse(&x.x, &l.bracket_sparse(&a, &l.bracket_sparse(&x.x, &b)));
        let rhs =
            x.x.scale(&f, &x.form(&f, &l.bracket_sparse(&a, &b)))
                .add_scaled(&f, &x.form(&f, &b), &l.bracket_sparse(&x.x, &a))
                .sub(&f, &l.bracket_sparse(&x.x, &b).scale(&f, &x.form(&f, &a)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn pair_relations_of_root_vectors() {
    let f = gf(5);
    let l = LieAlgebra::chevalley(CartanType::D(4), f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    assert_eq!(classify_pair(&l, &x, &y).unwrap().relation, PairRelation::Hyperbolic);
    assert_eq!(classify_pair(&l, &x, &x.scaled(&f, &3)).unwrap().relation, PairRelation::Equal);
    let gr = Grading5::new(&l, &x, &y).unwrap();
    // x spans L_-2, so a homogeneous extremal element of degree i stands in
    // relation E_i to x.
    let mut seen = std::collections::BTreeSet::new();
    for b in (0..l.dim()).map(|j| SparseVec::unit(&f, j)) {
        if !is_extremal(&l, &b) {
            continue;
        }
        let e = extremal_form(&l, &b).unwrap();
        if !e.flags.pure() {
            continue;
        }
        let rel = classify_pair(&l, &x, &e).unwrap().relation;
        let deg = gr.support(&b);
        if let [d] = deg[..] {
            assert_eq!(rel.index(), d, "b has degree {d}");
        }
        seen.insert(rel);
    }
    assert_eq!(seen.len(), 5, "{seen:?}");
}

#[test]
fn reversal_swaps_the_pair() {
    for q in [4, 5] {
        let f = gf(q);
        let l = LieAlgebra::chevalley(CartanType::F4, f.clone()).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        assert!(gr.reversal_report().passed());
        let r = gr.reversed().unwrap();
        assert_eq!(r.dims(), gr.dims());
    }
}

#[test]
fn broken_grading_fails_verification() {
    let f = gf(5);
    let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    assert!(!gr.with_swapped_odd_pieces().verify().passed());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn brackets_respect_degrees(seed in any::<u64>(), i in -2i32..=2, j in -2i32..=2) {
        let f = gf(5);
        let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_in(&gr, i, &mut rng), random_in(&gr, j, &mut rng));
        let c = l.bracket_sparse(&a, &b);
        if (i + j).abs() > 2 {
            prop_assert!(c.is_empty());
        } else {
            prop_assert_eq!(gr.project_sparse(&c, i + j), c);
        }
    }

    #[test]
    fn torus_scales_each_piece(seed in any::<u64>(), s in 1u32..7) {
        let f = gf(7);
        let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        let t = gr.torus(&s).unwrap();
        prop_assert!(t.is_automorphism(&l));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in DEGREES {
            let a = random_in(&gr, i, &mut rng);
            let p = if i >= 0 { f.pow(&s, i as u64) } else { f.pow(&f.inv(&s).unwrap(), (-i) as u64) };
            prop_assert_eq!(t.apply_sparse(&l, &a), a.scale(&f, &p));
        }
    }
}
