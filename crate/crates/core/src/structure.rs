//! Structure decomposition `1_X = sum_f phi_f` on finite quotients.
//!
//! Each `phi_f(x)` is the exact average of `1_A(x - n*q*f - f)` over the
//! finite cyclic orbit of translation by `q*f`, stored as an integer count
//! over the orbit length so every check is exact integer arithmetic.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{GroupElement, QuotientSpec};
use crate::error::{Result, TileError};
use crate::rational::{format_rational, Rational};
use crate::tilings::{verify_tiling, PeriodicSet};

/// Which exponent `q` multiplies each tile element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QNormalization {
    /// `q = |F|`.
    #[default]
    TileSize,
    /// `q` = product of the primes `<= 2|F|`.
    SmallPrimeProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub f: GroupElement,
    /// Additive order of `q*f` in the quotient.
    pub orbit_len: u64,
    /// `phi_f(x) * orbit_len` at every point of the fundamental domain.
    pub counts: Vec<u64>,
}

impl Component {
    pub fn value(&self, x: usize) -> Rational {
        Rational::new(self.counts[x].into(), self.orbit_len.into())
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.counts.len()).map(|x| self.value(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub q_exponent: u64,
    pub normalization: QNormalization,
    /// One component per tile element, in tile order.
    pub components: Vec<Component>,
}

impl Decomposition {
    /// Components rendered as `"p/q"` strings, for display.
    pub fn formatted(&self) -> Vec<(GroupElement, Vec<String>)> {
        self.components
            .iter()
            .map(|c| {
                (
                    c.f.clone(),
                    c.values().iter().map(format_rational).collect(),
                )
            })
            .collect()
    }
}

pub fn q_exponent(tile_len: usize, normalization: QNormalization) -> Result<u64> {
    let n = tile_len as u64;
    match normalization {
        QNormalization::TileSize => Ok(n),
        QNormalization::SmallPrimeProduct => (2..=2 * n)
            .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
            .try_fold(1u64, |acc, p| acc.checked_mul(p))
            .ok_or(TileError::ArithmeticOverflow("product of small primes")),
    }
}

fn tiling_premise(
    q: &QuotientSpec,
    tile: &[GroupElement],
    set: &PeriodicSet,
) -> Result<Vec<usize>> {
    if !verify_tiling(q, tile, set)?.is_tiling {
        return Err(TileError::PremiseViolation("F + A is not a tiling".into()));
    }
    tile.iter().map(|f| q.index_of(f)).collect()
}

fn scale_mod_exponent(q: &QuotientSpec, qe: u64, f: usize) -> usize {
    let exponent = q.moduli().iter().fold(1u64, |acc, &m| acc.lcm(&m));
    q.scale_idx((qe % exponent) as i64, f)
}

/// Below this many point evaluations the components are built sequentially.
const PARALLEL_WORK: usize = 1 << 14;

pub fn decompose(
    q: &QuotientSpec,
    tile: &[GroupElement],
    set: &PeriodicSet,
    normalization: QNormalization,
) -> Result<Decomposition> {
    let tile_idx = tiling_premise(q, tile, set)?;
    let qe = q_exponent(tile.len(), normalization)?;
    let members = set.membership();
    let component = |(f, &fi): (&GroupElement, &usize)| {
        let step = scale_mod_exponent(q, qe, fi);
        let orbit_len = q.order_of_idx(step);
        let counts = (0..q.size())
            .map(|x| {
                let mut y = q.sub_idx(x, fi);
                let mut c = 0u64;
                for _ in 0..orbit_len {
                    c += members[y] as u64;
                    y = q.sub_idx(y, step);
                }
                c
            })
            .collect();
        Component {
            f: f.clone(),
            orbit_len,
            counts,
        }
    };
    let components = if q.size() * tile.len() >= PARALLEL_WORK {
        tile.par_iter()
            .zip(tile_idx.par_iter())
            .map(component)
            .collect()
    } else {
        tile.iter().zip(tile_idx.iter()).map(component).collect()
    };
    Ok(Decomposition {
        q_exponent: qe,
        normalization,
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub sum_is_one: bool,
    pub invariant: bool,
    pub means_match: bool,
    /// Tile elements for which `A + q*f = A`, so that `phi_f = 1_{f+A}` was checked.
    pub indicator_cases: Vec<GroupElement>,
}

fn violation(check: char, point: usize, detail: String) -> TileError {
    TileError::StructureViolation {
        check,
        point,
        detail,
    }
}

/// Verifies the four decomposition properties, failing on the first violation:
/// (a) `sum_f phi_f = 1`, (b) `phi_f` is `q*f`-invariant, (c) the mean of
/// `phi_f` is `|A|/|X|`, (d) `phi_f = 1_{f+A}` whenever `A + q*f = A`.
pub fn check_decomposition(
    q: &QuotientSpec,
    tile: &[GroupElement],
    set: &PeriodicSet,
    dec: &Decomposition,
) -> Result<DecompositionReport> {
    let tile_idx = tiling_premise(q, tile, set)?;
    let n = q.size();
    if dec.components.len() != tile.len()
        || dec
            .components
            .iter()
            .zip(tile)
            .any(|(c, f)| &c.f != f || c.counts.len() != n || c.orbit_len == 0)
    {
        return Err(TileError::SpecMismatch(
            "decomposition does not match the tile or quotient".into(),
        ));
    }

    let common: u128 = dec
        .components
        .iter()
        .fold(1u128, |acc, c| acc.lcm(&(c.orbit_len as u128)));
    for x in 0..n {
        let mut total = 0u128;
        for c in &dec.components {
            if c.counts[x] > c.orbit_len {
                return Err(violation('a', x, format!("phi_{:?} exceeds 1", c.f)));
            }
            total += c.counts[x] as u128 * (common / c.orbit_len as u128);
        }
        if total != common {
            return Err(violation(
                'a',
                x,
                format!("sum of components is {total}/{common}"),
            ));
        }
    }

    let members = set.membership();
    let size_a = set.count() as u128;
    let mut indicator_cases = Vec::new();
    for (c, &fi) in dec.components.iter().zip(&tile_idx) {
        let step = scale_mod_exponent(q, dec.q_exponent, fi);
        for x in 0..n {
            if c.counts[q.add_idx(x, step)] != c.counts[x] {
                return Err(violation('b', x, format!("phi_{:?} not invariant", c.f)));
            }
        }

        let mass: u128 = c.counts.iter().map(|&v| v as u128).sum();
        if mass != size_a * c.orbit_len as u128 {
            return Err(violation(
                'c',
                0,
                format!(
                    "mean of phi_{:?} is {mass}/{}",
                    c.f,
                    c.orbit_len as u128 * n as u128
                ),
            ));
        }

        if (0..n).all(|a| members[q.add_idx(a, step)] == members[a]) {
            for x in 0..n {
                let expected = if members[q.sub_idx(x, fi)] {
                    c.orbit_len
                } else {
                    0
                };
                if c.counts[x] != expected {
                    return Err(violation(
                        'd',
                        x,
                        format!("phi_{:?} differs from 1_(f+A)", c.f),
                    ));
                }
            }
            indicator_cases.push(c.f.clone());
        }
    }
    Ok(DecompositionReport {
        sum_is_one: true,
        invariant: true,
        means_match: true,
        indicator_cases,
    })
}
