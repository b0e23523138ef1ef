//! Exhaustive enumeration of all complements `A` with `F + A = G` for a
//! finite abelian group `G`, with translation-orbit classification.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GroupElement, QuotientSpec};
use crate::error::{Result, TileError};
use crate::tilings::PeriodicSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingCatalog {
    pub quotient: QuotientSpec,
    pub tile: Vec<GroupElement>,
    /// Each solution as its sorted list of point indices; the list of
    /// solutions is sorted lexicographically.
    pub solutions: Vec<Vec<usize>>,
    /// Partition of solution positions into translation orbits, each orbit
    /// sorted, orbits ordered by their smallest member.
    pub orbit_classes: Vec<Vec<usize>>,
}

impl TilingCatalog {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn solution_set(&self, i: usize) -> PeriodicSet {
        PeriodicSet::from_indices(&self.quotient, self.solutions[i].iter().copied())
            .expect("solution indices lie in the domain")
    }

    pub fn solution_elements(&self, i: usize) -> Vec<GroupElement> {
        self.solutions[i]
            .iter()
            .map(|&x| self.quotient.element(x))
            .collect()
    }
}

struct Search<'a> {
    q: &'a QuotientSpec,
    tile: &'a [usize],
}

impl Search<'_> {
    fn place(&self, covered: &mut [bool], a: usize) -> Option<Vec<usize>> {
        let cells: Vec<usize> = self.tile.iter().map(|&f| self.q.add_idx(a, f)).collect();
        if cells.iter().any(|&c| covered[c]) {
            return None;
        }
        for &c in &cells {
            covered[c] = true;
        }
        Some(cells)
    }

    fn run(
        &self,
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        start: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(x) = (start..covered.len()).find(|&i| !covered[i]) else {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            out.push(sol);
            return;
        };
        for &f in self.tile {
            let a = self.q.sub_idx(x, f);
            if let Some(cells) = self.place(covered, a) {
                chosen.push(a);
                self.run(covered, chosen, x + 1, out);
                chosen.pop();
                for c in cells {
                    covered[c] = false;
                }
            }
        }
    }
}

/// All `A` with `F + A = G`, by backtracking on the smallest uncovered point.
///
/// Returns an empty catalog when `|F|` does not divide `|G|`.
pub fn enumerate_tilings(q: &QuotientSpec, tile: &[GroupElement]) -> Result<TilingCatalog> {
    if tile.is_empty() {
        return Err(TileError::InvalidInput("empty tile".into()));
    }
    let idx: Vec<usize> = tile.iter().map(|f| q.index_of(f)).collect::<Result<_>>()?;
    if idx.iter().collect::<BTreeSet<_>>().len() != idx.len() {
        return Err(TileError::InvalidInput("tile has repeated elements".into()));
    }
    let n = q.size();
    let empty = |q: &QuotientSpec| TilingCatalog {
        quotient: q.clone(),
        tile: tile.to_vec(),
        solutions: vec![],
        orbit_classes: vec![],
    };
    if !n.is_multiple_of(idx.len()) {
        return Ok(empty(q));
    }
    let search = Search { q, tile: &idx };
    // Point 0 is always the first uncovered point; its branches are independent.
    let mut solutions: Vec<Vec<usize>> = idx
        .par_iter()
        .flat_map_iter(|&f| {
            let mut covered = vec![false; n];
            let mut out = Vec::new();
            let a = q.sub_idx(0, f);
            if search.place(&mut covered, a).is_some() {
                let mut chosen = vec![a];
                search.run(&mut covered, &mut chosen, 1, &mut out);
            }
            out
        })
        .collect();
    solutions.sort_unstable();
    let orbit_classes = translation_orbits(q, &solutions);
    Ok(TilingCatalog {
        quotient: q.clone(),
        tile: tile.to_vec(),
        solutions,
        orbit_classes,
    })
}

fn translation_orbits(q: &QuotientSpec, solutions: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let position: HashMap<&[usize], usize> = solutions
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; solutions.len()];
    let mut classes = Vec::new();
    for i in 0..solutions.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = BTreeSet::new();
        for g in 0..q.size() {
            let mut moved: Vec<usize> = solutions[i].iter().map(|&a| q.add_idx(a, g)).collect();
            moved.sort_unstable();
            if let Some(&j) = position.get(moved.as_slice()) {
                orbit_of[j] = id;
                members.insert(j);
            }
        }
        classes.push(members.into_iter().collect());
    }
    classes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub count: usize,
    pub orbit_count: usize,
    /// Per solution (catalog order): whether the membership bit of some single
    /// point separates it from every other solution.
    pub rigidity: Vec<bool>,
}

pub fn count_and_orbits(q: &QuotientSpec, tile: &[GroupElement]) -> Result<OrbitSummary> {
    let catalog = enumerate_tilings(q, tile)?;
    Ok(summarize(&catalog))
}

pub fn summarize(catalog: &TilingCatalog) -> OrbitSummary {
    let count = catalog.count();
    let mut containing = vec![0usize; catalog.quotient.size()];
    for sol in &catalog.solutions {
        for &x in sol {
            containing[x] += 1;
        }
    }
    let rigidity = catalog
        .solutions
        .iter()
        .map(|sol| {
            let members: BTreeSet<usize> = sol.iter().copied().collect();
            (0..containing.len()).any(|x| {
                if members.contains(&x) {
                    containing[x] == 1
                } else {
                    containing[x] + 1 == count
                }
            })
        })
        .collect();
    OrbitSummary {
        count,
        orbit_count: catalog.orbit_classes.len(),
        rigidity,
    }
}
