mod common;

use std::sync::OnceLock;

use common::gf;
use exlie::cns::{base_point, CubicNormStructure, HexFrame};
use exlie::extremal::find_hyperbolic_pair;
use exlie::grading::Grading5;
use exlie::{CartanType, ExlieError, LieAlgebra, Sampling};
use exlie_field::{Field, FiniteField};
use exlie_linalg::{vector, SparseVec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cns_of(ty: CartanType, q: u64) -> CubicNormStructure<FiniteField> {
    let l = LieAlgebra::chevalley(ty, gf(q)).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    let frame = HexFrame::search(&gr).unwrap();
    let tables = frame.twin_tables().unwrap();
    base_point(&frame, &tables, Sampling::default()).unwrap().structure().unwrap()
}

fn all_vectors(f: &FiniteField, dim: usize) -> Vec<Vec<u32>> {
    let els = f.elements().unwrap();
    (0..dim).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(*e);
                    w
                })
            })
            .collect()
    })
}

/// The sharp and norm identities that do not involve a second element,
/// and the adjoint identity, over every element or pair of `J`.
fn exhaustive_identities(c: &CubicNormStructure<FiniteField>) {
    let f = c.field();
    let all = all_vectors(f, c.dim());
    let three = f.from_i64(3);
    for a in &all {
        let sa = c.sharp(a);
        assert_eq!(c.sharp(&sa), vector::scale(f, &c.norm(a), a), "(a#)# at {a:?}");
        assert_eq!(c.trace(a, &sa), f.mul(&three, &c.norm(a)), "T(a,a#) at {a:?}");
        let u = c.unit();
        let expected = vector::sub(f, &vector::scale(f, &c.trace(a, u), u), &c.cross(u, a));
        assert_eq!(*a, expected, "unit identity at {a:?}");
        for b in &all {
            let lhs = c.cross(&sa, &c.cross(a, b));
            let rhs = vector::add(f, &vector::scale(f, &c.norm(a), b), &vector::scale(f, &c.trace(&sa, b), a));
            assert_eq!(lhs, rhs, "a# x (a x b) at {a:?}, {b:?}");
            let sum = vector::add(f, a, b);
            let expand = vector::add(f, &vector::add(f, &sa, &c.cross(a, b)), &c.sharp(b));
            assert_eq!(c.sharp(&sum), expand, "(a+b)# at {a:?}, {b:?}");
        }
    }
}

#[test]
fn small_structures_satisfy_every_axiom_exhaustively() {
    for (ty, q, dim) in [(CartanType::G2, 5, 1), (CartanType::D(4), 4, 3), (CartanType::D(4), 5, 3)] {
        let c = cns_of(ty, q);
        assert_eq!(c.dim(), dim);
        let report = c.axioms(Sampling::default());
        assert!(report.passed(), "{ty} over gf({q}):\n{report}");
        exhaustive_identities(&c);
    }
}

#[test]
fn f4_and_e6_structures_pass_the_axiom_suite() {
    for (ty, dim) in [(CartanType::F4, 6), (CartanType::E(6), 9)] {
        let c = cns_of(ty, 5);
        assert_eq!(c.dim(), dim);
        let report = c.axioms(Sampling::default());
        assert!(report.passed(), "{ty}:\n{report}");
        assert!(c.field().is_one(&c.norm(c.unit())), "{ty}: N(1) = 1");
    }
}

#[test]
fn corrupted_cross_product_fails_the_adjoint_identity() {
    let c = cns_of(CartanType::F4, 5);
    let f = c.field();
    let delta = vector::unit(f, c.dim(), 1);
    let bad = c.with_corrupted_cross(0, 2, &delta);
    let report = bad.axioms(Sampling::default());
    let check = report.get("(viii) a# x (a x b) = N(a)b + T(a#,b)a").unwrap();
    assert!(!check.passed);
}

#[test]
fn bracket_identities_hold_on_random_f4_elements() {
    let l = LieAlgebra::chevalley(CartanType::F4, gf(5)).unwrap();
    let f = l.field().clone();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    let frame = HexFrame::search(&gr).unwrap();
    let t = frame.twin_tables().unwrap();
    let report = frame.bracket_report(&t);
    assert_eq!(report.checks.len(), 8);
    assert!(report.passed(), "{report}");

    // The same expansions on random elements rather than basis triples.
    let dim = t.dim;
    let yv = &gr.y().x;
    let (c, d) = (&frame.c().x, &frame.d().x);
    let nest = |u: &SparseVec<u32>, v: &SparseVec<u32>, w: &SparseVec<u32>| {
        l.bracket_sparse(u, &l.bracket_sparse(v, &l.bracket_sparse(yv, w)))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..12 {
        let mut draw = || (0..dim).map(|_| f.random(&mut rng)).collect::<Vec<u32>>();
        let (a, b, e) = (draw(), draw(), draw());
        let (ja, jb, je) = (frame.j_vector(&a), frame.j_vector(&b), frame.j_vector(&e));
        let (pa, pb, pe) = (frame.jp_vector(&a), frame.jp_vector(&b), frame.jp_vector(&e));
        let tr = |u: &[u32], v: &[u32]| t.trace(&f, u, v);
        assert_eq!(nest(&ja, &jb, &je), c.scale(&f, &tr(&a, &t.cross(&f, &b, &e))));
        assert_eq!(nest(&pa, &pb, &pe), d.scale(&f, &tr(&t.cross_p(&f, &b, &e), &a)));
        assert_eq!(nest(&ja, &pb, &pe), frame.jp_vector(&t.cross(&f, &a, &t.cross_p(&f, &b, &e))).neg(&f));
        assert_eq!(nest(&pa, &jb, &je), frame.j_vector(&t.cross_p(&f, &a, &t.cross(&f, &b, &e))));
        let r5 = vector::sub(&f, &t.cross_p(&f, &b, &t.cross(&f, &a, &e)), &vector::scale(&f, &tr(&a, &b), &e));
        assert_eq!(nest(&ja, &pb, &je), frame.j_vector(&r5));
        let r6 = vector::sub(&f, &vector::scale(&f, &tr(&b, &a), &e), &t.cross(&f, &b, &t.cross_p(&f, &a, &e)));
        assert_eq!(nest(&pa, &jb, &pe), frame.jp_vector(&r6));
        let r7 = vector::sub(
            &f,
            &t.cross_p(&f, &e, &t.cross(&f, &a, &b)),
            &vector::add(&f, &vector::scale(&f, &tr(&a, &e), &b), &vector::scale(&f, &tr(&b, &e), &a)),
        );
        assert_eq!(nest(&ja, &jb, &pe), frame.j_vector(&r7));
        let r8 = vector::sub(
            &f,
            &vector::add(&f, &vector::scale(&f, &tr(&e, &a), &b), &vector::scale(&f, &tr(&e, &b), &a)),
            &t.cross(&f, &e, &t.cross_p(&f, &a, &b)),
        );
        assert_eq!(nest(&pa, &pb, &je), frame.jp_vector(&r8));
    }
}

#[test]
fn a2_has_a_degenerate_twin() {
    let l = LieAlgebra::chevalley(CartanType::A(2), gf(5)).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    let frame = HexFrame::search(&gr).unwrap();
    let t = frame.twin_tables().unwrap();
    let f = l.field();
    let n = t.norm_form(f);
    for a in all_vectors(f, t.dim) {
        assert!(f.is_zero(&n.eval(f, &a)));
    }
    match base_point(&frame, &t, Sampling::default()) {
        Err(ExlieError::Inapplicable { reason }) => assert!(reason.contains("degenerate-twin"), "{reason}"),
        other => panic!("expected a degenerate twin, got {:?}", other.map(|b| b.z)),
    }
}

#[test]
fn cns_needs_at_least_four_elements() {
    let l = LieAlgebra::chevalley(CartanType::G2, gf(3)).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    assert!(matches!(HexFrame::search(&gr), Err(ExlieError::Inapplicable { .. })));
}

#[test]
fn isotopes_are_cubic_norm_structures() {
    let c = cns_of(CartanType::D(4), 5);
    let f = c.field();
    let d = vec![1, 2, 3];
    assert!(!f.is_zero(&c.norm(&d)));
    let iso = c.isotope(&d).unwrap();
    assert!(iso.axioms(Sampling::default()).passed());
    assert_eq!(iso.unit(), d.as_slice());
}

fn f4() -> &'static CubicNormStructure<FiniteField> {
    static F4: OnceLock<CubicNormStructure<FiniteField>> = OnceLock::new();
    F4.get_or_init(|| cns_of(CartanType::F4, 5))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn f4_norm_is_cubic_and_polarizes(
        a in proptest::collection::vec(0u32..5, 6),
        b in proptest::collection::vec(0u32..5, 6),
        s in 0u32..5,
    ) {
        let c = f4();
        let f = c.field();
        let sa = vector::scale(f, &s, &a);
        prop_assert_eq!(c.norm(&sa), f.mul(&f.pow(&s, 3), &c.norm(&a)));
        let lhs = c.norm(&vector::add(f, &a, &b));
        let rhs = [c.norm(&a), c.trace(&c.sharp(&a), &b), c.trace(&a, &c.sharp(&b)), c.norm(&b)]
            .iter()
            .fold(f.zero(), |acc, t| f.add(&acc, t));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(c.trace(&a, &b), c.trace(&b, &a));
        prop_assert_eq!(c.cross(&a, &b), c.cross(&b, &a));
    }
}
