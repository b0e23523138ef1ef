use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::QuotientSpec;
use crate::error::{Result, TileError};

/// A finite group by its multiplication table: `table[a][b] = a * b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&c| c >= n))
        {
            return Err(TileError::InvalidSpec(
                "table must be square with entries below its order".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| TileError::InvalidSpec("no identity".into()))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| TileError::InvalidSpec(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(TileError::InvalidSpec(format!(
                            "({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self {
            table: vec![vec![0]],
            identity: 0,
            inverse: vec![0],
        }
    }

    /// The additive group of a finite quotient, elements in quotient index order.
    pub fn from_quotient(q: &QuotientSpec) -> Result<Self> {
        let n = q.size();
        Self::new(
            (0..n)
                .map(|a| (0..n).map(|b| q.add_idx(a, b)).collect())
                .collect(),
        )
    }

    /// `S_n` with permutations in lexicographic order of one-line notation and
    /// `(s t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = Self::permutations(n);
        let index = |p: &[usize]| {
            perms
                .iter()
                .position(|q| q.as_slice() == p)
                .expect("closed under composition")
        };
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self::new(table)
    }

    /// Permutations of `0..n` in lexicographic order.
    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            out.push(p.clone());
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
                break;
            };
            let j = (i..n)
                .rev()
                .find(|&j| p[j] > p[i - 1])
                .expect("pivot has a successor");
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        out
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn check_subgroup(&self, h: &[usize]) -> Result<BTreeSet<usize>> {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        if set.iter().any(|&x| x >= self.order()) {
            return Err(TileError::InvalidSubgroup("element out of range".into()));
        }
        if !set.contains(&self.identity) {
            return Err(TileError::InvalidSubgroup("missing the identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(TileError::InvalidSubgroup(format!(
                        "{a}*{b} leaves the set"
                    )));
                }
            }
        }
        Ok(set)
    }

    /// `{x y : x in xs, y in ys}`.
    pub fn product(&self, xs: &BTreeSet<usize>, ys: &BTreeSet<usize>) -> BTreeSet<usize> {
        xs.iter()
            .flat_map(|&x| ys.iter().map(move |&y| self.mul(x, y)))
            .collect()
    }

    /// Right coset `H a`.
    pub fn right_coset(&self, h: &BTreeSet<usize>, a: usize) -> BTreeSet<usize> {
        h.iter().map(|&x| self.mul(x, a)).collect()
    }
}

/// Whether `H a H a H a = G`.
pub fn triple_product_check(g: &FiniteGroupTable, h: &[usize], a: usize) -> Result<bool> {
    let h = g.check_subgroup(h)?;
    if a >= g.order() {
        return Err(TileError::InvalidInput(format!("element {a} out of range")));
    }
    if h.contains(&a) {
        return Err(TileError::PremiseViolation("a lies in H".into()));
    }
    let ha = g.right_coset(&h, a);
    let prod = g.product(&g.product(&ha, &ha), &ha);
    Ok(prod.len() == g.order())
}
