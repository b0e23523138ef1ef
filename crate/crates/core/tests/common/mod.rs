//! Independent brute-force oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use tilekit_core::rational::{int, rat};
use tilekit_core::torus::{CellSet, SymbolicVector};
use tilekit_core::{GroupElement, GroupSpec, QuotientSpec, Rational};

/// Plain mixed-radix arithmetic on `Z/m_1 x ... x Z/m_k`, first factor most significant.
#[derive(Clone, Debug)]
pub struct Radix {
    pub moduli: Vec<u64>,
    pub size: usize,
}

impl Radix {
    pub fn new(moduli: &[u64]) -> Self {
        Self {
            moduli: moduli.to_vec(),
            size: moduli.iter().product::<u64>() as usize,
        }
    }

    pub fn digits(&self, mut i: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (k, &m) in self.moduli.iter().enumerate().rev() {
            out[k] = i as u64 % m;
            i /= m as usize;
        }
        out
    }

    pub fn index(&self, d: &[u64]) -> usize {
        d.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da
            .iter()
            .zip(&db)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        self.index(&s)
    }

    pub fn scale(&self, r: i64, a: usize) -> usize {
        let d = self.digits(a);
        let s: Vec<u64> = d
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (r as i128 * x as i128).rem_euclid(m as i128) as u64)
            .collect();
        self.index(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(-1, a)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.add(a, b)).collect())
            .collect()
    }
}

/// Coverage counts of `F + A` computed from an addition table.
pub fn levels(table: &[Vec<usize>], f: &[usize], a: &[usize]) -> Vec<u32> {
    let mut c = vec![0; table.len()];
    for &x in a {
        for &y in f {
            c[table[x][y]] += 1;
        }
    }
    c
}

pub fn is_tiling(table: &[Vec<usize>], f: &[usize], a: &[usize]) -> bool {
    levels(table, f, a).iter().all(|&c| c == 1)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Tiles of size `k` containing index 0.
pub fn tiles_through_zero(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n - 1, k - 1)
        .into_iter()
        .map(|c| {
            std::iter::once(0)
                .chain(c.into_iter().map(|x| x + 1))
                .collect()
        })
        .collect()
}

/// Every `A` with `F + A` a tiling, by trying all subsets of the right size.
pub fn naive_tilings(table: &[Vec<usize>], f: &[usize]) -> Vec<Vec<usize>> {
    let n = table.len();
    if f.is_empty() || !n.is_multiple_of(f.len()) {
        return vec![];
    }
    let k = n / f.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut covered = vec![false; n];
    fn go(
        table: &[Vec<usize>],
        f: &[usize],
        start: usize,
        k: usize,
        cur: &mut Vec<usize>,
        covered: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            if covered.iter().all(|&c| c) {
                out.push(cur.clone());
            }
            return;
        }
        for a in start..table.len() {
            let cells: Vec<usize> = f.iter().map(|&y| table[a][y]).collect();
            if cells.iter().any(|&c| covered[c]) {
                continue;
            }
            cells.iter().for_each(|&c| covered[c] = true);
            cur.push(a);
            go(table, f, a + 1, k, cur, covered, out);
            cur.pop();
            cells.iter().for_each(|&c| covered[c] = false);
        }
    }
    go(table, f, 0, k, &mut cur, &mut covered, &mut out);
    out
}

/// Invariant-factor lists `d_1 | d_2 | ...` of all abelian groups of order `2..=max`.
pub fn abelian_groups(max: u64) -> Vec<Vec<u64>> {
    fn go(prev: u64, prod: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let mut d = if prev == 0 { 2 } else { prev };
        while prod * d <= max {
            if prev == 0 || d % prev == 0 {
                cur.push(d);
                go(d, prod * d, max, cur, out);
                cur.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    go(0, 1, max, &mut vec![], &mut out);
    out.sort_by_key(|g| (g.iter().product::<u64>(), g.clone()));
    out
}

pub fn quotient(factors: &[u64]) -> QuotientSpec {
    QuotientSpec::finite(GroupSpec::new(0, factors.to_vec()).unwrap()).unwrap()
}

pub fn elements(radix: &Radix, idx: &[usize]) -> Vec<GroupElement> {
    idx.iter()
        .map(|&i| GroupElement::torsion(radix.digits(i)))
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn sv(parts: &[Rational]) -> SymbolicVector {
    SymbolicVector::rational(parts.to_vec())
}

/// Two boxes at resolution 8, with the three shift classes sliding along `x`.
pub fn disconnected_example() -> (CellSet, Vec<Vec<Rational>>, Vec<SymbolicVector>) {
    let a = CellSet::from_boxes(
        2,
        8,
        &[
            vec![(int(0), rat(1, 2)), (int(0), rat(1, 8))],
            vec![(rat(1, 4), rat(3, 4)), (rat(1, 4), rat(3, 8))],
        ],
    )
    .unwrap();
    let classes: [(&str, &[(i64, i64)]); 3] = [
        ("a1", &[(0, 0), (4, 0)]),
        ("a2", &[(2, 4), (6, 4)]),
        ("a3", &[(0, 1), (6, 3), (4, 5), (2, 7)]),
    ];
    let mut f0 = Vec::new();
    let mut f = Vec::new();
    for (name, pts) in classes {
        for &(x, y) in pts {
            let p = vec![rat(x, 8), rat(y, 8)];
            f.push(sv(&p).plus_symbol(name, &[int(1), int(0)]));
            f0.push(p);
        }
    }
    (a, f0, f)
}

/// `(0,1/2)^2` with one row of squares sliding along `x`.
pub fn connected_example() -> (CellSet, Vec<SymbolicVector>) {
    let a = CellSet::from_cells(2, 2, &[vec![0, 0]]).unwrap();
    let e1 = [int(1), int(0)];
    let f = vec![
        sv(&[int(0), int(0)]),
        sv(&[rat(1, 2), int(0)]),
        sv(&[int(0), rat(1, 2)]).plus_symbol("a", &e1),
        sv(&[rat(1, 2), rat(1, 2)]).plus_symbol("a", &e1),
    ];
    (a, f)
}

/// Eight half-cubes, three pairs sliding along the three axes.
pub fn cube_example() -> (CellSet, Vec<SymbolicVector>) {
    let a = CellSet::from_cells(3, 2, &[vec![0, 0, 0]]).unwrap();
    let (z, h) = (int(0), rat(1, 2));
    let e = |k: usize| -> Vec<Rational> { (0..3).map(|i| int((i == k) as i64)).collect() };
    let f = vec![
        sv(&[z.clone(), z.clone(), z.clone()]).plus_symbol("alpha", &e(1)),
        sv(&[z.clone(), h.clone(), z.clone()]).plus_symbol("alpha", &e(1)),
        sv(&[h.clone(), z.clone(), z.clone()]).plus_symbol("beta", &e(2)),
        sv(&[h.clone(), z.clone(), h.clone()]).plus_symbol("beta", &e(2)),
        sv(&[z.clone(), h.clone(), h.clone()]).plus_symbol("gamma", &e(0)),
        sv(&[h.clone(), h.clone(), h.clone()]).plus_symbol("gamma", &e(0)),
        sv(&[z.clone(), z.clone(), h.clone()]),
        sv(&[h.clone(), h.clone(), z.clone()]),
    ];
    (a, f)
}
