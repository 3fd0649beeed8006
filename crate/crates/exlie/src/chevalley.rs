//! Integer structure constants of a Chevalley basis.
//!
//! Signs are fixed by declaring `N_{α,β} = p + 1 > 0` on every extraspecial
//! pair (the decomposition `ξ = α + β` of a positive root with `α` first in
//! the root order) and deriving all other constants from the standard
//! relations between the `N_{r,s}`. Basis order: positive root vectors, then
//! the simple coroots `h_i`, then negative root vectors.

use std::collections::HashMap;

use crate::roots::RootSystem;
use crate::ExlieError;

/// A sparse integer vector, sorted by index.
pub type IntVec = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct ChevalleyTable {
    pub roots: RootSystem,
    /// `n[(r, s)]` for all roots with `r + s` a root.
    n: HashMap<(usize, usize), i64>,
}

impl ChevalleyTable {
    pub fn new(roots: RootSystem) -> Result<Self, ExlieError> {
        let mut builder = Builder { rs: &roots, pos: HashMap::new() };
        builder.fill_positive()?;
        let mut n = HashMap::new();
        for r in 0..roots.len() {
            for s in 0..roots.len() {
                if roots.sum(r, s).is_some() {
                    let v = builder.n(r, s)?;
                    let p = roots.string_below(r, s);
                    if v.abs() != p + 1 {
                        return Err(ExlieError::Internal(format!(
                            "structure constant N({r},{s}) = {v}, expected ±{}",
                            p + 1
                        )));
                    }
                    n.insert((r, s), v);
                }
            }
        }
        Ok(ChevalleyTable { roots, n })
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.roots.rank()
    }

    /// Basis index of the root vector `e_r`.
    pub fn root_index(&self, r: usize) -> usize {
        let np = self.roots.num_positive();
        if r < np {
            r
        } else {
            r + self.roots.rank()
        }
    }

    /// Basis index of `h_i`.
    pub fn cartan_index(&self, i: usize) -> usize {
        self.roots.num_positive() + i
    }

    /// Root of a basis index, `None` for Cartan elements.
    pub fn root_of(&self, b: usize) -> Option<usize> {
        let np = self.roots.num_positive();
        let r = self.roots.rank();
        if b < np {
            Some(b)
        } else if b < np + r {
            None
        } else {
            Some(b - r)
        }
    }

    pub fn structure_constant(&self, r: usize, s: usize) -> Option<i64> {
        self.n.get(&(r, s)).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim())
            .map(|b| match self.root_of(b) {
                Some(r) => format!("e{}", self.roots.format_root(r)),
                None => format!("h{}", b - self.roots.num_positive() + 1),
            })
            .collect()
    }

    /// `[b_i, b_j]` with integer coefficients.
    pub fn bracket(&self, i: usize, j: usize) -> IntVec {
        let rank = self.roots.rank();
        match (self.root_of(i), self.root_of(j)) {
            (None, None) => Vec::new(),
            (None, Some(s)) => {
                let k = i - self.roots.num_positive();
                let c = self.roots.simple_pairing(s, k);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(j, c)]
                }
            }
            (Some(_), None) => self.bracket(j, i).into_iter().map(|(k, c)| (k, -c)).collect(),
            (Some(r), Some(s)) => {
                if s == self.roots.negate(r) {
                    // [e_r, e_{-r}] = h_r, the coroot of r in simple coroots.
                    let coords = self.roots.coroot_coords(r);
                    (0..rank).filter(|&k| coords[k] != 0).map(|k| (self.cartan_index(k), coords[k])).collect()
                } else if let Some(t) = self.roots.sum(r, s) {
                    vec![(self.root_index(t), self.n[&(r, s)])]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Images of every basis vector under the divided powers
    /// `ad(e_α)^k / k!`, `k ≥ 1`, as integer vectors. Entry `j` lists the
    /// nonzero powers applied to `b_j`.
    pub fn divided_powers(&self, alpha: usize) -> Vec<Vec<IntVec>> {
        let e = self.root_index(alpha);
        (0..self.dim())
            .map(|j| {
                let mut out = Vec::new();
                let mut cur: IntVec = vec![(j, 1)];
                for k in 1..=4 {
                    let mut acc: HashMap<usize, i64> = HashMap::new();
                    for &(b, c) in &cur {
                        for (t, d) in self.bracket(e, b) {
                            *acc.entry(t).or_insert(0) += c * d;
                        }
                    }
                    let mut next: IntVec = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                    next.sort_unstable();
                    if next.is_empty() {
                        break;
                    }
                    for (_, c) in next.iter_mut() {
                        assert_eq!(*c % k, 0, "divided power not integral");
                        *c /= k;
                    }
                    out.push(next.clone());
                    cur = next;
                }
                out
            })
            .collect()
    }
}

struct Builder<'a> {
    rs: &'a RootSystem,
    /// Constants for pairs of positive roots.
    pos: HashMap<(usize, usize), i64>,
}

/// `num / den` as an exact integer.
fn exact_div(num: i64, den: i64) -> Result<i64, ExlieError> {
    if den == 0 || num % den != 0 {
        return Err(ExlieError::Internal(format!("inexact structure-constant division {num}/{den}")));
    }
    Ok(num / den)
}

impl Builder<'_> {
    fn fill_positive(&mut self) -> Result<(), ExlieError> {
        let rs = self.rs;
        let np = rs.num_positive();
        let mut by_height: Vec<usize> = (0..np).collect();
        by_height.sort_by_key(|&i| (rs.height(i), i));
        for &xi in &by_height {
            let pairs: Vec<(usize, usize)> =
                (0..np).filter_map(|g| rs.difference(xi, g).filter(|&d| rs.is_positive(d)).map(|d| (g, d))).collect();
            let Some(&(alpha, beta)) = pairs.iter().min_by_key(|(g, _)| *g) else {
                continue;
            };
            let nab = rs.string_below(alpha, beta) + 1;
            self.pos.insert((alpha, beta), nab);
            self.pos.insert((beta, alpha), -nab);
            for &(g, d) in &pairs {
                if g >= d || g == alpha {
                    continue;
                }
                // Four-root relation for (γ, δ, −α, −β), solved for N_{γ,δ}.
                let (mut num, mut den) = (0i64, 1i64);
                let mut add_term = |n: i64, d: i64| {
                    num = num * d + n * den;
                    den *= d;
                };
                let (na, nb) = (rs.negate(alpha), rs.negate(beta));
                if let Some(t) = rs.sum(d, na) {
                    add_term(self.n(d, na)? * self.n(g, nb)?, rs.norm(t));
                }
                if let Some(t) = rs.sum(g, na) {
                    add_term(self.n(na, g)? * self.n(d, nb)?, rs.norm(t));
                }
                let v = exact_div(rs.norm(xi) * num, den * nab)?;
                self.pos.insert((g, d), v);
                self.pos.insert((d, g), -v);
            }
        }
        Ok(())
    }

    /// `N_{r,s}` for arbitrary roots with `r + s` a root, reduced to
    /// positive pairs of smaller height.
    fn n(&self, r: usize, s: usize) -> Result<i64, ExlieError> {
        let rs = self.rs;
        let t = rs
            .sum(r, s)
            .map(|x| rs.negate(x))
            .ok_or_else(|| ExlieError::Internal(format!("N({r},{s}) requested for a non-root sum")))?;
        match (rs.is_positive(r), rs.is_positive(s)) {
            (true, true) => self
                .pos
                .get(&(r, s))
                .copied()
                .ok_or_else(|| ExlieError::Internal(format!("N({r},{s}) used before it was fixed"))),
            (false, false) => Ok(-self.n(rs.negate(r), rs.negate(s))?),
            (false, true) => Ok(-self.n(s, r)?),
            (true, false) => {
                if rs.is_positive(t) {
                    // r + s negative: N_{r,s}/(t,t) = N_{t,r}/(s,s).
                    exact_div(rs.norm(t) * self.n(t, r)?, rs.norm(s))
                } else {
                    // r + s positive: N_{r,s}/(t,t) = N_{s,t}/(r,r), N_{s,t} = −N_{−s,−t}.
                    exact_div(-rs.norm(t) * self.n(rs.negate(s), rs.negate(t))?, rs.norm(r))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;

    fn jacobi_holds(table: &ChevalleyTable) -> bool {
        let n = table.dim();
        let br = |a: &IntVec, j: usize| -> HashMap<usize, i64> {
            let mut acc = HashMap::new();
            for &(i, c) in a {
                for (k, d) in table.bracket(i, j) {
                    *acc.entry(k).or_insert(0) += c * d;
                }
            }
            acc
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [[i,j],k] + [[j,k],i] + [[k,i],j]
                    let mut total: HashMap<usize, i64> = HashMap::new();
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (t, c) in br(&table.bracket(x, y), z) {
                            *total.entry(t).or_insert(0) += c;
                        }
                    }
                    if total.values().any(|&c| c != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn integral_jacobi_small_types() {
        for ty in [CartanType::A(1), CartanType::A(2), CartanType::B(2), CartanType::G2, CartanType::C(3)] {
            let table = ChevalleyTable::new(RootSystem::new(ty).unwrap()).unwrap();
            assert!(jacobi_holds(&table), "{ty}");
        }
    }

    #[test]
    fn a1_relations() {
        let t = ChevalleyTable::new(RootSystem::new(CartanType::A(1)).unwrap()).unwrap();
        // basis (e, h, f)
        assert_eq!(t.bracket(0, 2), vec![(1, 1)]);
        assert_eq!(t.bracket(1, 0), vec![(0, 2)]);
        assert_eq!(t.bracket(1, 2), vec![(2, -2)]);
    }
}
