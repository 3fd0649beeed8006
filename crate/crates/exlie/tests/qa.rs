mod common;

use std::sync::OnceLock;

use common::gf;
use exlie::qa::{QuadAlgebra, QuadFrame};
use exlie::{CartanType, ExlieError, LieAlgebra, Sampling};
use exlie_field::{Field, FiniteField};
use exlie_linalg::{rank, vector, Mat};
use proptest::prelude::*;

const AXIOM_III: &str = "(iii) h(a,b.v) = h(b,a.v) + T(h(a,b),e)v";

fn f4_gf5() -> &'static QuadAlgebra<'static, FiniteField> {
    static L: OnceLock<LieAlgebra<FiniteField>> = OnceLock::new();
    static QA: OnceLock<QuadAlgebra<'static, FiniteField>> = OnceLock::new();
    QA.get_or_init(|| {
        let l = L.get_or_init(|| LieAlgebra::chevalley(CartanType::F4, gf(5)).unwrap());
        let frame = QuadFrame::search(l).unwrap();
        QuadAlgebra::new(&frame, Sampling::default()).unwrap()
    })
}

#[test]
fn f4_suite_passes() {
    let qa = f4_gf5();
    let report = qa.verify(Sampling::default()).unwrap();
    assert!(report.passed(), "{report}");
    for name in [
        "(i) a.e = a",
        "(ii) (a.v).v^s = Q(v)a",
        AXIOM_III,
        "(ix) a.theta(a,v) = (a.theta(a,e)).v",
        "T is non-degenerate",
        "T(h(.,.),e) is non-degenerate",
    ] {
        assert!(report.get(name).is_some_and(|c| c.passed), "{name}");
    }
}

#[test]
fn base_vectors_are_normalized() {
    let qa = f4_gf5();
    let f = qa.field();
    assert!(f.is_one(&qa.q(qa.e())));
    assert!(f.is_one(&qa.t(qa.e(), qa.delta())));
    assert!(!f.is_zero(&qa.q(qa.delta())));
}

#[test]
fn forms_are_non_degenerate() {
    let qa = f4_gf5();
    let f = qa.field();
    let (dv, dx) = (qa.dim_v(), qa.dim_x());
    assert_eq!(rank(f, &Mat::from_rows(qa.t_table().to_vec(), dv)), dv);
    let hte: Vec<Vec<u32>> = (0..dx)
        .map(|i| (0..dx).map(|j| qa.t(&qa.h(&vector::unit(f, dx, i), &vector::unit(f, dx, j)), qa.e())).collect())
        .collect();
    assert_eq!(rank(f, &Mat::from_rows(hte, dx)), dx);
}

#[test]
fn corrupted_h_fails_axiom_iii() {
    let l = LieAlgebra::chevalley(CartanType::F4, gf(5)).unwrap();
    let frame = QuadFrame::search(&l).unwrap();
    let qa = QuadAlgebra::new(&frame, Sampling::default()).unwrap();
    assert!(qa.dim_x() >= 2);
    let f = qa.field().clone();
    let delta = vector::unit(&f, qa.dim_v(), 0);
    let bad = qa.with_corrupted_h(0, 1, &delta);
    let report = bad.verify(Sampling::default()).unwrap();
    assert!(!report.get(AXIOM_III).unwrap().passed);
}

#[test]
fn frame_dimensions_split_l_minus_one() {
    for (ty, expected) in [("E6", [6, 8, 18]), ("E7", [8, 16, 33])] {
        let l = LieAlgebra::chevalley(ty.parse().unwrap(), gf(5)).unwrap();
        let frame = QuadFrame::search(&l).unwrap();
        assert_eq!([frame.dim_v(), frame.dim_x(), frame.dim_center()], expected, "{ty}");
    }
    // F4: 2 dim V + dim X must equal dim L_-1 = 14.
    let l = LieAlgebra::chevalley(CartanType::F4, gf(5)).unwrap();
    let frame = QuadFrame::search(&l).unwrap();
    assert_eq!(2 * frame.dim_v() + frame.dim_x(), 14);
    assert_eq!([frame.dim_v(), frame.dim_x(), frame.dim_center()], [5, 4, 12]);
}

#[test]
fn g2_has_no_symplectic_pairs() {
    let l = LieAlgebra::chevalley(CartanType::G2, gf(5)).unwrap();
    match QuadFrame::search(&l) {
        Err(ExlieError::Inapplicable { reason }) => assert!(reason.contains("no-symplectic-pairs"), "{reason}"),
        other => panic!("expected no symplectic pairs, got {:?}", other.err()),
    }
}

#[test]
fn two_element_field_is_gated() {
    let l = LieAlgebra::chevalley(CartanType::F4, gf(2)).unwrap();
    assert!(matches!(QuadFrame::search(&l), Err(ExlieError::Inapplicable { .. })));
}

#[test]
fn seventh_characteristic_suite_passes() {
    let l = LieAlgebra::chevalley(CartanType::F4, gf(7)).unwrap();
    let frame = QuadFrame::search(&l).unwrap();
    let qa = QuadAlgebra::new(&frame, Sampling::with_seed(7)).unwrap();
    let report = qa.verify(Sampling::with_seed(7)).unwrap();
    assert!(report.passed(), "{report}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn quadratic_form_polarizes_to_t(u in proptest::collection::vec(0u32..5, 5), v in proptest::collection::vec(0u32..5, 5), s in 0u32..5) {
        let qa = f4_gf5();
        let f = qa.field();
        prop_assume!(qa.dim_v() == 5);
        let lhs = qa.q(&vector::add(f, &u, &v));
        let rhs = f.add(&f.add(&qa.q(&u), &qa.q(&v)), &qa.t(&u, &v));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(qa.q(&vector::scale(f, &s, &v)), f.mul(&f.mul(&s, &s), &qa.q(&v)));
    }

    #[test]
    fn dot_action_squares_to_q(a in proptest::collection::vec(0u32..5, 4), v in proptest::collection::vec(0u32..5, 5)) {
        let qa = f4_gf5();
        let f = qa.field();
        prop_assume!(qa.dim_v() == 5 && qa.dim_x() == 4);
        let av = qa.dot(&a, &v);
        prop_assert_eq!(qa.dot(&av, &qa.sigma(&v)), vector::scale(f, &qa.q(&v), &a));
    }

    #[test]
    fn h_satisfies_axiom_iii(
        a in proptest::collection::vec(0u32..5, 4),
        b in proptest::collection::vec(0u32..5, 4),
        v in proptest::collection::vec(0u32..5, 5),
    ) {
        let qa = f4_gf5();
        let f = qa.field();
        prop_assume!(qa.dim_v() == 5 && qa.dim_x() == 4);
        let lhs = qa.h(&a, &qa.dot(&b, &v));
        let hab = qa.h(&a, &b);
        let rhs = vector::add(f, &qa.h(&b, &qa.dot(&a, &v)), &vector::scale(f, &qa.t(&hab, qa.e()), &v));
        prop_assert_eq!(lhs, rhs);
    }
}
