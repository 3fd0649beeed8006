use exlie_field::{Field, FiniteField, Rationals};
use exlie_linalg::{kernel, rank, solve, vector, DirectSum, Mat, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_mat(f: &FiniteField, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat<u32> {
    let data = (0..rows).map(|_| (0..cols).map(|_| f.random(rng)).collect()).collect();
    Mat::from_rows(data, cols)
}

fn random_vectors(f: &FiniteField, rng: &mut ChaCha8Rng, count: usize, n: usize) -> Vec<Vec<u32>> {
    (0..count).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect()
}

#[test]
fn identity_solve_returns_rhs() {
    let f = FiniteField::prime(5).unwrap();
    let b = vec![1, 4, 0, 2];
    assert_eq!(solve(&f, &Mat::identity(&f, 4), &b).unwrap(), Some(b));
}

#[test]
fn zero_and_invertible_kernels() {
    let f = FiniteField::prime(7).unwrap();
    assert_eq!(kernel(&f, &Mat::zeros(&f, 4, 4)).dim(), 4);
    assert_eq!(kernel(&f, &Mat::identity(&f, 4)).dim(), 0);
}

#[test]
fn rational_solve() {
    let q = Rationals;
    let a = Mat::from_rows(vec![vec![q.from_i64(2), q.from_i64(1)], vec![q.from_i64(1), q.from_i64(3)]], 2);
    let x = solve(&q, &a, &[q.from_i64(1), q.from_i64(0)]).unwrap().unwrap();
    assert_eq!(x, vec![q.parse("3/5").unwrap(), q.parse("-1/5").unwrap()]);
}

proptest! {
    #[test]
    fn invertible_systems_over_gf7(seed in any::<u64>()) {
        let f = FiniteField::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_mat(&f, &mut rng, 6, 6);
        prop_assume!(rank(&f, &a) == 6);
        let b: Vec<u32> = (0..6).map(|_| f.random(&mut rng)).collect();
        let x = solve(&f, &a, &b).unwrap().unwrap();
        prop_assert_eq!(a.mul_vec(&f, &x), b);
        prop_assert!(a.mul(&f, &a.inverse(&f).unwrap()).is_identity(&f));
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let f = FiniteField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Low-rank products make nontrivial kernels likely.
        let inner = rng.gen_range(1..=cols);
        let a = random_mat(&f, &mut rng, rows, inner).mul(&f, &random_mat(&f, &mut rng, inner, cols));
        let k = kernel(&f, &a);
        prop_assert_eq!(k.dim() + rank(&f, &a), cols);
        for v in k.basis() {
            prop_assert!(vector::is_zero(&f, &a.mul_vec(&f, v)));
        }
    }

    #[test]
    fn dimension_formula(seed in any::<u64>(), da in 0usize..5, db in 0usize..5) {
        let f = FiniteField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Subspace::span(&f, 6, &random_vectors(&f, &mut rng, da, 6));
        let b = Subspace::span(&f, 6, &random_vectors(&f, &mut rng, db, 6));
        let sum = a.sum(&f, &b);
        let meet = a.intersect(&f, &b);
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(meet.is_subspace_of(&f, &a) && meet.is_subspace_of(&f, &b));
    }

    #[test]
    fn rref_is_canonical(seed in any::<u64>()) {
        let f = FiniteField::quadratic(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = random_vectors(&f, &mut rng, 3, 5);
        let s = Subspace::span(&f, 5, &vs);
        // Any invertible recombination of the spanning vectors gives the same object.
        let mut mixed = vs.clone();
        mixed.reverse();
        let extra = vector::add(&f, &mixed[0], &vector::scale(&f, &4, &mixed[1]));
        mixed[0] = extra;
        prop_assert_eq!(Subspace::span(&f, 5, &mixed), s);
    }

    #[test]
    fn projections_sum_to_identity(seed in any::<u64>()) {
        let f = FiniteField::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mat(&f, &mut rng, 5, 5);
        prop_assume!(rank(&f, &m) == 5);
        let cols = m.columns();
        let pieces = vec![
            Subspace::span(&f, 5, &cols[..2]),
            Subspace::span(&f, 5, &cols[2..3]),
            Subspace::span(&f, 5, &cols[3..]),
        ];
        let ds = DirectSum::new(&f, pieces).unwrap();
        let v: Vec<u32> = (0..5).map(|_| f.random(&mut rng)).collect();
        let parts = ds.components(&f, &v);
        let total = parts.iter().fold(vec![0; 5], |acc, p| vector::add(&f, &acc, p));
        prop_assert_eq!(total, v);
        for (i, p) in parts.iter().enumerate() {
            prop_assert!(ds.pieces()[i].contains(&f, p));
        }
    }
}
