//! Free functions on dense coordinate vectors.

use exlie_field::Field;

pub fn zeros<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
    vec![f.zero(); n]
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = zeros(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|a| f.is_zero(a))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn scale<F: Field>(f: &F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(s, x)).collect()
}

/// `acc += s * a`.
pub fn axpy<F: Field>(f: &F, acc: &mut [F::Elem], s: &F::Elem, a: &[F::Elem]) {
    assert_eq!(acc.len(), a.len(), "vector length mismatch");
    if f.is_zero(s) {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !f.is_zero(y) {
            f.mul_add_assign(x, s, y);
        }
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        f.mul_add_assign(&mut acc, x, y);
    }
    acc
}

/// Linear combination `Σ c_i v_i`; an empty list gives the zero vector of length `n`.
pub fn combine<F: Field>(f: &F, n: usize, coeffs: &[F::Elem], vectors: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    assert_eq!(coeffs.len(), vectors.len(), "coefficient count mismatch");
    let mut out = zeros(f, n);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(f, &mut out, c, v);
    }
    out
}

/// Index of the first nonzero coordinate.
pub fn leading<F: Field>(f: &F, v: &[F::Elem]) -> Option<usize> {
    v.iter().position(|a| !f.is_zero(a))
}

/// If `b` is a scalar multiple `λa` with `a` nonzero, returns `λ`.
pub fn proportion<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<F::Elem> {
    let i = leading(f, a)?;
    let lambda = f.div(&b[i], &a[i]).expect("nonzero pivot");
    let matches = a.iter().zip(b).all(|(x, y)| f.mul(&lambda, x) == *y);
    matches.then_some(lambda)
}

pub fn format<F: Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|a| f.format(a)).collect()
}
