mod common;

use common::{check_seeded, degree_constraints_hold, gf, random_in, truncated_exp_ad};
use exlie::expauto::{commutator_holds, exp_difference, scale, Exponentiator};
use exlie::extremal::find_hyperbolic_pair;
use exlie::grading::Grading5;
use exlie::{CartanType, LieAlgebra};
use exlie_field::{Field, Rationals};
use exlie_linalg::SparseVec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn seeded_l_exponentials_over_small_fields() {
    let mut total = 0;
    for (q, seed) in [(4, 0x40), (5, 0x50), (7, 0x70)] {
        total += check_seeded(CartanType::G2, gf(q), 24, seed).unwrap();
        total += check_seeded(CartanType::F4, gf(q), 10, seed + 1).unwrap();
    }
    assert!(total >= 100, "{total} samples");
}

#[test]
fn rational_l_exponential_is_exp_ad() {
    let q = Rationals;
    for ty in [CartanType::A(2), CartanType::G2] {
        let l = LieAlgebra::chevalley(ty, q).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        let ex = Exponentiator::new(&gr).unwrap();
        let d1 = gr.dims()[3];
        for k in 0..4i64 {
            let coords: Vec<_> = (0..d1).map(|i| q.from_i64((i as i64 * 3 + k) % 5 - 2)).collect();
            let lv = gr.combine(&coords, 1);
            let canon = ex.canonical(&lv).unwrap();
            assert_eq!(canon.auto.matrix(&l), truncated_exp_ad(&gr, &lv), "{ty}, sample {k}");
        }
    }
}

#[test]
fn rescaling_l_conjugates_by_the_torus() {
    let f = gf(5);
    let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    let ex = Exponentiator::new(&gr).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for s in 1..5u32 {
        let lv = random_in(&gr, 1, &mut rng);
        let a = ex.l_exponential(&lv).unwrap();
        let scaled = scale(&gr, &a, &s).unwrap();
        assert!(degree_constraints_hold(&gr, &scaled));
        let direct = ex.l_exponential(&scaled.l).unwrap();
        exp_difference(&gr, &direct, &scaled).unwrap();
    }
}

#[test]
fn transport_reaches_every_image_of_x() {
    let f = gf(5);
    let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    let ex = Exponentiator::new(&gr).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for mu in 0..5u32 {
        let lv = random_in(&gr, 1, &mut rng);
        let target = exlie::expauto::exp_top(&gr, &mu).compose(&ex.l_exponential(&lv).unwrap().auto);
        let e = target.apply_sparse(&l, &x.x);
        let phi = ex.transport(&e).unwrap();
        assert_eq!(phi.auto.apply_sparse(&l, &x.x), e);
        assert!(phi.auto.agrees_with(&target, &l));
    }
}

#[test]
fn elements_outside_l1_are_rejected() {
    let f = gf(5);
    let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
    let (x, y) = find_hyperbolic_pair(&l).unwrap();
    let gr = Grading5::new(&l, &x, &y).unwrap();
    let ex = Exponentiator::new(&gr).unwrap();
    assert!(ex.l_exponential(&y.x).is_err());
    assert!(ex.l_exponential(&SparseVec::new()).unwrap().auto.is_identity_product());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn g2_l_exponentials_commute_up_to_the_top(
        a in proptest::collection::vec(0u32..7, 4),
        b in proptest::collection::vec(0u32..7, 4),
    ) {
        let f = gf(7);
        let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
        let (x, y) = find_hyperbolic_pair(&l).unwrap();
        let gr = Grading5::new(&l, &x, &y).unwrap();
        prop_assume!(gr.dims()[3] == 4);
        let ex = Exponentiator::new(&gr).unwrap();
        let (la, lb) = (gr.combine(&a, 1), gr.combine(&b, 1));
        let (ea, eb) = (ex.canonical(&la).unwrap(), ex.canonical(&lb).unwrap());
        prop_assert!(commutator_holds(&gr, &ea, &eb));
        prop_assert!(degree_constraints_hold(&gr, &ea));
        prop_assert_eq!(ea.auto.matrix(&l), truncated_exp_ad(&gr, &la));
    }
}
