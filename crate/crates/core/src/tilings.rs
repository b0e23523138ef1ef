//! Tiling verification `1_F * 1_A = 1_X` on finite quotients, level
//! functions, and dilation scans.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{GroupElement, QuotientSpec, Weight};
use crate::error::{Result, TileError};

/// A lattice-periodic subset of `Z^d x torsion`, stored on the fundamental
/// domain of its quotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSet {
    quotient: QuotientSpec,
    membership: Vec<bool>,
}

impl PeriodicSet {
    pub fn new(quotient: QuotientSpec, membership: Vec<bool>) -> Result<Self> {
        if membership.len() != quotient.size() {
            return Err(TileError::SpecMismatch(format!(
                "membership has {} entries, fundamental domain has {}",
                membership.len(),
                quotient.size()
            )));
        }
        Ok(Self {
            quotient,
            membership,
        })
    }

    /// Elements are reduced modulo the quotient first.
    pub fn from_elements(quotient: &QuotientSpec, elements: &[GroupElement]) -> Result<Self> {
        let mut membership = vec![false; quotient.size()];
        for g in elements {
            membership[quotient.index_of(&quotient.reduce(g)?)?] = true;
        }
        Self::new(quotient.clone(), membership)
    }

    pub fn from_indices(
        quotient: &QuotientSpec,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut membership = vec![false; quotient.size()];
        for i in indices {
            *membership
                .get_mut(i)
                .ok_or_else(|| TileError::SpecMismatch(format!("index {i} out of range")))? = true;
        }
        Self::new(quotient.clone(), membership)
    }

    pub fn full(quotient: &QuotientSpec) -> Self {
        Self {
            quotient: quotient.clone(),
            membership: vec![true; quotient.size()],
        }
    }

    pub fn quotient(&self) -> &QuotientSpec {
        &self.quotient
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    pub fn contains_idx(&self, i: usize) -> bool {
        self.membership[i]
    }

    pub fn count(&self) -> usize {
        self.membership.iter().filter(|&&b| b).count()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.membership
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.indices()
            .into_iter()
            .map(|i| self.quotient.element(i))
            .collect()
    }

    /// `self + shift`.
    pub fn translate(&self, shift: usize) -> Self {
        let mut membership = vec![false; self.membership.len()];
        for i in self.indices() {
            membership[self.quotient.add_idx(i, shift)] = true;
        }
        Self {
            quotient: self.quotient.clone(),
            membership,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingReport {
    pub is_tiling: bool,
    /// Level value -> number of points at that level.
    pub level_histogram: BTreeMap<i64, u64>,
    /// Tile elements occurring more than once, with their multiplicity.
    pub collision_multiplicities: Weight,
}

impl TilingReport {
    pub fn from_levels(levels: &[i64], tile: &Weight) -> Self {
        let mut level_histogram = BTreeMap::new();
        for &c in levels {
            *level_histogram.entry(c).or_insert(0u64) += 1;
        }
        let is_tiling = level_histogram.len() == 1 && level_histogram.contains_key(&1);
        let mut collision_multiplicities = Weight::new();
        for (g, m) in tile.iter().filter(|&(_, m)| m > 1) {
            collision_multiplicities
                .add_term(g.clone(), m)
                .expect("multiplicities already fit");
        }
        Self {
            is_tiling,
            level_histogram,
            collision_multiplicities,
        }
    }

    pub fn has_collisions(&self) -> bool {
        !self.collision_multiplicities.is_zero()
    }
}

fn tile_indices(q: &QuotientSpec, tile: &[GroupElement]) -> Result<Vec<usize>> {
    if tile.is_empty() {
        return Err(TileError::InvalidInput("empty tile".into()));
    }
    tile.iter().map(|f| q.index_of(f)).collect()
}

fn check_set(q: &QuotientSpec, set: &PeriodicSet) -> Result<()> {
    if set.quotient() != q {
        return Err(TileError::SpecMismatch(
            "set lives on a different quotient".into(),
        ));
    }
    Ok(())
}

fn levels_by_index(q: &QuotientSpec, tile: &[usize], set: &PeriodicSet) -> Vec<i64> {
    let mut levels = vec![0i64; q.size()];
    let members = set.indices();
    for &f in tile {
        for &a in &members {
            levels[q.add_idx(a, f)] += 1;
        }
    }
    levels
}

/// `c(x) = sum_{f in F} 1_A(x - f)` at every point of the fundamental domain.
///
/// The tile may be a multiset; repeated elements count with multiplicity.
pub fn level_function(
    q: &QuotientSpec,
    tile: &[GroupElement],
    set: &PeriodicSet,
) -> Result<Vec<i64>> {
    check_set(q, set)?;
    let tile = tile_indices(q, tile)?;
    Ok(levels_by_index(q, &tile, set))
}

pub fn verify_tiling(
    q: &QuotientSpec,
    tile: &[GroupElement],
    set: &PeriodicSet,
) -> Result<TilingReport> {
    let levels = level_function(q, tile, set)?;
    Ok(TilingReport::from_levels(
        &levels,
        &Weight::multiset(tile.iter().cloned()),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilationEntry {
    pub r: i64,
    /// `gcd(r, |F|) = 1`: the hypothesis of the measurable dilation lemma.
    pub coprime_to_tile_size: bool,
    /// `r` coprime to every prime `<= |F|`: the stronger `Z^d` hypothesis.
    pub coprime_to_small_primes: bool,
    /// The multiset `rF`.
    pub dilated_tile: Weight,
    pub report: TilingReport,
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Checks `rF + A` for every requested `r`, in input order.
///
/// Fails with [`TileError::PremiseViolation`] unless `F + A` itself tiles.
pub fn dilation_scan(
    q: &QuotientSpec,
    tile: &[GroupElement],
    set: &PeriodicSet,
    r_values: &[i64],
) -> Result<Vec<DilationEntry>> {
    let base = verify_tiling(q, tile, set)?;
    if !base.is_tiling {
        return Err(TileError::PremiseViolation("F + A is not a tiling".into()));
    }
    let tile_idx = tile_indices(q, tile)?;
    let n = tile_idx.len() as u64;
    let small_primes = primes_up_to(n);
    let scan_one = |&r: &i64| {
        let dilated: Vec<usize> = tile_idx.iter().map(|&f| q.scale_idx(r, f)).collect();
        let levels = levels_by_index(q, &dilated, set);
        let dilated_tile = Weight::multiset(dilated.iter().map(|&i| q.element(i)));
        let report = TilingReport::from_levels(&levels, &dilated_tile);
        let r_abs = r.unsigned_abs();
        DilationEntry {
            r,
            coprime_to_tile_size: r_abs.gcd(&n) == 1,
            coprime_to_small_primes: small_primes.iter().all(|p| r_abs % p != 0),
            dilated_tile,
            report,
        }
    };
    Ok(if r_values.len() > 64 {
        r_values.par_iter().map(scan_one).collect()
    } else {
        r_values.iter().map(scan_one).collect()
    })
}
