//! Finite groups stored as Cayley tables.
//!
//! The table's element order is the coordinate order of group-algebra
//! vectors, so it is part of the instance format and must stay stable.

use itertools::Itertools;

use crate::error::{GlabError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `Z/n`, element `i` is `g^i`.
    Cyclic(usize),
    /// Symmetries of the n-gon, order 2n; element `i + n*j` is `r^i s^j`.
    Dihedral(usize),
    /// `S_n` for n <= 4; permutations in lexicographic order, `(ab)(x) = a(b(x))`.
    Symmetric(usize),
    /// Direct product; the first factor varies fastest.
    Product(Vec<GroupSpec>),
    /// Explicit table, `table[a][b] = a*b`.
    Cayley(Vec<Vec<usize>>),
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Product(parts) => {
                write!(
                    f,
                    "product({})",
                    parts.iter().map(|p| p.to_string()).join(", ")
                )
            }
            GroupSpec::Cayley(t) => write!(f, "cayley(order {})", t.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
        match spec {
            GroupSpec::Cyclic(n) => {
                let n = positive(*n)?;
                Self::from_fn(n, |a, b| (a + b) % n)
            }
            GroupSpec::Dihedral(n) => {
                let n = positive(*n)?;
                Self::from_fn(2 * n, |a, b| {
                    let (ra, sa) = (a % n, a / n);
                    let (rb, sb) = (b % n, b / n);
                    let r = if sa == 0 {
                        (ra + rb) % n
                    } else {
                        (ra + n - rb) % n
                    };
                    r + n * ((sa + sb) % 2)
                })
            }
            GroupSpec::Symmetric(n) => {
                if *n == 0 || *n > 4 {
                    return Err(GlabError::Invalid(format!(
                        "symmetric({n}) supported only for 1 <= n <= 4"
                    )));
                }
                let perms: Vec<Vec<usize>> = (0..*n).permutations(*n).collect();
                let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
                let m = perms.len();
                let mut table = vec![0; m * m];
                for (a, pa) in perms.iter().enumerate() {
                    for (b, pb) in perms.iter().enumerate() {
                        let comp: Vec<usize> = (0..*n).map(|x| pa[pb[x]]).collect();
                        table[a * m + b] = index(&comp);
                    }
                }
                Self::from_table(m, table)
            }
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(GlabError::Invalid("empty group product".into()));
                }
                let groups = parts
                    .iter()
                    .map(FiniteGroup::build)
                    .collect::<Result<Vec<_>>>()?;
                let order: usize = groups.iter().map(|g| g.order).product();
                let split = |mut x: usize| -> Vec<usize> {
                    groups
                        .iter()
                        .map(|g| {
                            let c = x % g.order;
                            x /= g.order;
                            c
                        })
                        .collect()
                };
                Self::from_fn(order, |a, b| {
                    let (ca, cb) = (split(a), split(b));
                    let mut out = 0;
                    let mut stride = 1;
                    for (k, g) in groups.iter().enumerate() {
                        out += g.mul(ca[k], cb[k]) * stride;
                        stride *= g.order;
                    }
                    out
                })
            }
            GroupSpec::Cayley(rows) => {
                let n = rows.len();
                if n == 0 || rows.iter().any(|r| r.len() != n) {
                    return Err(GlabError::Invalid(
                        "Cayley table must be square and non-empty".into(),
                    ));
                }
                if let Some(&bad) = rows.iter().flatten().find(|&&x| x >= n) {
                    return Err(GlabError::Invalid(format!(
                        "table entry {bad} out of range"
                    )));
                }
                Self::from_table(n, rows.concat())
            }
        }
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f(a, b);
            }
        }
        Self::from_table(n, table)
    }

    /// Validate a row-major table: Latin square, identity, associativity.
    fn from_table(n: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        for row in 0..n {
            let mut seen = vec![usize::MAX; n];
            for col in 0..n {
                let v = table[row * n + col];
                if seen[v] != usize::MAX {
                    return Err(GlabError::NonLatin {
                        row,
                        col1: seen[v],
                        col2: col,
                    });
                }
                seen[v] = col;
            }
        }
        for col in 0..n {
            let mut seen = vec![usize::MAX; n];
            for row in 0..n {
                let v = table[row * n + col];
                if seen[v] != usize::MAX {
                    // report as a column clash, transposed
                    return Err(GlabError::NonLatin {
                        row: col,
                        col1: seen[v],
                        col2: row,
                    });
                }
                seen[v] = row;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| GlabError::Invalid("table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GlabError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The permutation `g ↦ g⁻¹` of element indices; it realizes the adjoint
    /// on coordinates.
    pub fn inversion_permutation(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Full Latin-square and associativity audit, regardless of order.
    pub fn audit(&self) -> Result<()> {
        Self::from_table(self.order, self.table.clone()).map(|_| ())
    }

    /// Small greedy generating set, in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut members = vec![self.identity];
        for g in 0..self.order {
            if span[g] {
                continue;
            }
            gens.push(g);
            // subgroup closure of members ∪ {g}
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &h in gens.iter() {
                    for y in [self.mul(x, h), self.mul(h, x)] {
                        if !span[y] {
                            span[y] = true;
                            members.push(y);
                            frontier.push(y);
                        }
                    }
                }
            }
        }
        gens
    }

    /// Exhaustive isomorphism search for small groups: try every assignment of
    /// images for a generating set and check the induced map.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.generators();
        let n = self.order;
        for images in (0..gens.len()).map(|_| 0..n).multi_cartesian_product() {
            let mut map = vec![usize::MAX; n];
            map[self.identity] = other.identity;
            let mut frontier = vec![self.identity];
            let mut ok = true;
            'grow: while let Some(x) = frontier.pop() {
                for (k, &g) in gens.iter().enumerate() {
                    let y = self.mul(x, g);
                    let img = other.mul(map[x], images[k]);
                    if map[y] == usize::MAX {
                        map[y] = img;
                        frontier.push(y);
                    } else if map[y] != img {
                        ok = false;
                        break 'grow;
                    }
                }
            }
            if !ok || map.contains(&usize::MAX) {
                continue;
            }
            let mut hit = vec![false; n];
            map.iter().for_each(|&v| hit[v] = true);
            if !hit.iter().all(|&h| h) {
                continue;
            }
            let hom =
                (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
            if hom {
                return Some(map);
            }
        }
        None
    }
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        Err(GlabError::Invalid("group parameter must be >= 1".into()))
    } else {
        Ok(n)
    }
}
