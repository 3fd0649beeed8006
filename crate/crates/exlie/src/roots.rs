//! Irreducible root systems in simple-root coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::ExlieError;

/// Cartan type with Bourbaki numbering of the simple roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Number of roots.
    pub fn root_count(self) -> usize {
        match self {
            CartanType::A(n) => n * (n + 1),
            CartanType::B(n) | CartanType::C(n) => 2 * n * n,
            CartanType::D(n) => 2 * n * (n - 1),
            CartanType::E(6) => 72,
            CartanType::E(7) => 126,
            CartanType::E(8) => 240,
            CartanType::E(_) => unreachable!("validated on parse"),
            CartanType::F4 => 48,
            CartanType::G2 => 12,
        }
    }

    /// Dimension of the corresponding simple Lie algebra.
    pub fn dimension(self) -> usize {
        self.root_count() + self.rank()
    }

    fn validate(self) -> Result<Self, ExlieError> {
        let ok = match self {
            CartanType::A(n) => (1..=8).contains(&n),
            CartanType::B(n) => (2..=8).contains(&n),
            CartanType::C(n) => (3..=8).contains(&n),
            CartanType::D(n) => (4..=8).contains(&n),
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(ExlieError::UnsupportedType(self.to_string()))
        }
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots, scaled to integers with
    /// the shortest roots of squared length 2.
    fn gram(self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut g = vec![vec![0i64; r]; r];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self {
            CartanType::A(n) => {
                for i in 0..n {
                    g[i][i] = 2;
                    if i + 1 < n {
                        link(&mut g, i, i + 1, -1);
                    }
                }
            }
            CartanType::B(n) => {
                for i in 0..n {
                    g[i][i] = if i + 1 < n { 4 } else { 2 };
                    if i + 1 < n {
                        link(&mut g, i, i + 1, -2);
                    }
                }
            }
            CartanType::C(n) => {
                for i in 0..n {
                    g[i][i] = if i + 1 < n { 2 } else { 4 };
                    if i + 2 < n {
                        link(&mut g, i, i + 1, -1);
                    } else if i + 1 < n {
                        link(&mut g, i, i + 1, -2);
                    }
                }
            }
            CartanType::D(n) => {
                (0..n).for_each(|i| g[i][i] = 2);
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 3, n - 1, -1);
            }
            CartanType::E(n) => {
                (0..n).for_each(|i| g[i][i] = 2);
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 2..n - 1 {
                    link(&mut g, i, i + 1, -1);
                }
            }
            CartanType::F4 => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            CartanType::G2 => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => f.write_str("F4"),
            CartanType::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = ExlieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || ExlieError::UnsupportedType(s.to_string());
        let (letter, digits) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        let n: usize = digits.parse().map_err(|_| bad())?;
        let ty = match (letter, n) {
            ("A", n) => CartanType::A(n),
            ("B", n) => CartanType::B(n),
            ("C", n) => CartanType::C(n),
            ("D", n) => CartanType::D(n),
            ("E", n) => CartanType::E(n),
            ("F", 4) => CartanType::F4,
            ("G", 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        ty.validate().map_err(|_| bad())
    }
}

/// A root system with roots indexed `0..2N`: positive roots first in the
/// order (height, then lexicographic on coordinates), then their negatives
/// in the same order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    max_norm: i64,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self, ExlieError> {
        let cartan_type = cartan_type.validate()?;
        let gram = cartan_type.gram();
        let r = cartan_type.rank();
        let inner = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += a[i] * gram[i][j] * b[j];
                }
            }
            s
        };

        // Grow positive roots by height using root strings.
        let mut positive: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: HashMap<Vec<i64>, ()> = positive.iter().map(|v| (v.clone(), ())).collect();
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..r {
                    // p = largest k with beta - k α_i a root.
                    let mut p = 0;
                    loop {
                        let mut v = beta.clone();
                        v[i] -= p + 1;
                        if v.iter().all(|&c| c >= 0) && known.contains_key(&v) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = 2 * inner(beta, &positive[i]) / gram[i][i];
                    let q = p - pairing;
                    if q > 0 {
                        let mut v = beta.clone();
                        v[i] += 1;
                        if !known.contains_key(&v) {
                            known.insert(v.clone(), ());
                            next.push(v);
                        }
                    }
                }
            }
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
        if roots.len() != cartan_type.root_count() {
            return Err(ExlieError::Internal(format!(
                "{cartan_type}: generated {} roots, expected {}",
                roots.len(),
                cartan_type.root_count()
            )));
        }
        let index = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let max_norm = (0..r).map(|i| gram[i][i]).max().unwrap_or(2);
        Ok(RootSystem { cartan_type, gram, roots, index, max_norm })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    pub fn negate(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    /// Index of the simple root `α_i`.
    pub fn simple(&self, i: usize) -> usize {
        self.index_of(&self.unit(i)).expect("simple root present")
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn inner_coords(&self, a: &[i64], b: &[i64]) -> i64 {
        a.iter()
            .zip(&self.gram)
            .filter(|(ai, _)| **ai != 0)
            .map(|(ai, row)| ai * row.iter().zip(b).map(|(g, bj)| g * bj).sum::<i64>())
            .sum()
    }

    pub fn inner(&self, i: usize, j: usize) -> i64 {
        self.inner_coords(&self.roots[i], &self.roots[j])
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.inner(i, i)
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.norm(i) == self.max_norm
    }

    /// `⟨β, α^∨⟩ = 2(β,α)/(α,α)`.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i64 {
        2 * self.inner(beta, alpha) / self.norm(alpha)
    }

    /// `⟨β, α_i^∨⟩` for the simple coroot `α_i^∨`.
    pub fn simple_pairing(&self, beta: usize, i: usize) -> i64 {
        2 * self.inner_coords(&self.roots[beta], &self.unit(i)) / self.gram[i][i]
    }

    /// Coordinates of the coroot `α^∨` in the simple coroots.
    pub fn coroot_coords(&self, alpha: usize) -> Vec<i64> {
        let n = self.norm(alpha);
        self.roots[alpha]
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let v = c * self.gram[i][i];
                debug_assert_eq!(v % n, 0);
                v / n
            })
            .collect()
    }

    /// Index of `α + β` when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&v)
    }

    pub fn difference(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x - y).collect();
        self.index_of(&v)
    }

    /// Largest `p ≥ 0` with `β − pα` a root.
    pub fn string_below(&self, alpha: usize, beta: usize) -> i64 {
        let mut p = 0;
        let mut v = self.roots[beta].clone();
        loop {
            for (x, a) in v.iter_mut().zip(&self.roots[alpha]) {
                *x -= a;
            }
            if self.index_of(&v).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// The highest root (last positive root in the order).
    pub fn highest_root(&self) -> usize {
        self.num_positive() - 1
    }

    pub fn format_root(&self, i: usize) -> String {
        let parts: Vec<String> = self.roots[i].iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (name, count) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
            ("F4", 48),
            ("G2", 12),
        ] {
            let rs = RootSystem::new(name.parse().unwrap()).unwrap();
            assert_eq!(rs.len(), count, "{name}");
        }
    }

    #[test]
    fn highest_roots() {
        let g2 = RootSystem::new(CartanType::G2).unwrap();
        assert_eq!(g2.root(g2.highest_root()), &[3, 2]);
        assert!(g2.is_long(g2.highest_root()));
        let e8 = RootSystem::new(CartanType::E(8)).unwrap();
        assert_eq!(e8.root(e8.highest_root()), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let f4 = RootSystem::new(CartanType::F4).unwrap();
        assert_eq!(f4.root(f4.highest_root()), &[2, 3, 4, 2]);
    }

    #[test]
    fn bad_labels() {
        for bad in ["Z9", "E9", "F3", "A0", "D3", ""] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }
}
