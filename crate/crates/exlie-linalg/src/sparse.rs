//! Sparse vectors as sorted `(index, value)` lists with no explicit zeros.

use exlie_field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone> SparseVec<E> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from entries that are already sorted, distinct and nonzero.
    pub fn from_sorted(entries: Vec<(usize, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn from_dense<F: Field<Elem = E>>(f: &F, v: &[E]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, a)| !f.is_zero(a)).map(|(i, a)| (i, a.clone())).collect(),
        }
    }

    pub fn unit<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        SparseVec { entries: vec![(i, f.one())] }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_unsorted<F: Field<Elem = E>>(f: &F, mut entries: Vec<(usize, E)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, E)> = Vec::with_capacity(entries.len());
        for (i, a) in entries {
            match out.last_mut() {
                Some((j, b)) if *j == i => f.add_assign(b, &a),
                _ => out.push((i, a)),
            }
        }
        out.retain(|(_, a)| !f.is_zero(a));
        SparseVec { entries: out }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Vec<E> {
        let mut v = vec![f.zero(); n];
        for (i, a) in &self.entries {
            v[*i] = a.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, E)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => f.zero(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        if f.is_zero(s) {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, a)| (*i, f.mul(s, a))).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, a)| (*i, f.neg(a))).collect() }
    }

    /// `self + s * other` by a sorted merge.
    pub fn add_scaled<F: Field<Elem = E>>(&self, f: &F, s: &E, other: &Self) -> Self {
        if f.is_zero(s) || other.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, f.mul(s, y)));
                        b.next();
                    } else {
                        let mut v = x.clone();
                        f.mul_add_assign(&mut v, s, y);
                        if !f.is_zero(&v) {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, f.mul(s, y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add_scaled(f, &f.one(), other)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add_scaled(f, &f.neg(&f.one()), other)
    }

    /// Dot product of two sparse vectors.
    pub fn dot_sparse<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> E {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = f.zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    f.mul_add_assign(&mut acc, &a[i].1, &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Dot product with a dense vector.
    pub fn dot_dense<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> E {
        let mut acc = f.zero();
        for (i, a) in &self.entries {
            f.mul_add_assign(&mut acc, a, &v[*i]);
        }
        acc
    }
}

/// Accumulates many scaled sparse contributions into a dense buffer, which is
/// much cheaper than repeated sorted merges.
pub struct Accumulator<F: Field> {
    dense: Vec<F::Elem>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(f: &F, n: usize) -> Self {
        Accumulator { dense: vec![f.zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    pub fn add(&mut self, f: &F, i: usize, a: &F::Elem) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        f.add_assign(&mut self.dense[i], a);
    }

    pub fn add_mul(&mut self, f: &F, i: usize, a: &F::Elem, b: &F::Elem) {
        let p = f.mul(a, b);
        self.add(f, i, &p);
    }

    /// Drains into a sparse vector, leaving the accumulator empty.
    pub fn take(&mut self, f: &F) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = std::mem::replace(&mut self.dense[i], f.zero());
            self.mark[i] = false;
            if !f.is_zero(&v) {
                entries.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(entries)
    }
}
