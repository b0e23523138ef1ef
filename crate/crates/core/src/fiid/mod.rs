//! Seeded factor-of-iid tiling simulators on finite windows of `Z x G`, and
//! an exhaustive validator for their output.

mod group;
mod nonabelian;
mod two_tile;
mod validate;
mod vertical;

use serde::{Deserialize, Serialize};

use crate::rng::draw_unit;

pub use group::{triple_product_check, FiniteGroupTable};
pub use nonabelian::{nonabelian_tile, simulate_nonabelian, simulate_nonabelian_s3};
pub use two_tile::{simulate_two_tile, two_tile_family};
pub use validate::{site_records, validate_trace, SiteRecord, TraceReport};
pub use vertical::{simulate_vertical, vertical_family};

/// Sites `start .. start + len` of `Z`; the field at site `x` and fiber
/// element `g` is `draw_unit(seed, x, g)`, so windows with different starts
/// see the same field where they overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiidWindow {
    pub start: i64,
    pub len: usize,
    pub seed: u64,
}

impl FiidWindow {
    pub fn new(len: usize, seed: u64) -> Self {
        Self {
            start: 0,
            len,
            seed,
        }
    }

    pub fn shifted(self, k: i64) -> Self {
        Self {
            start: self.start + k,
            ..self
        }
    }

    pub fn end(&self) -> i64 {
        self.start + self.len as i64
    }

    pub fn contains(&self, x: i64) -> bool {
        (self.start..self.end()).contains(&x)
    }

    pub fn field(&self, x: i64, fiber: usize) -> f64 {
        draw_unit(self.seed, x, fiber as u64)
    }
}

/// A tile of `Z x G`: pairs `(dx, g)` acting on `(x, h)` as `(x + dx, g h)`.
pub type FiberTile = Vec<(i64, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiidTrace {
    pub window: FiidWindow,
    /// Order of the fiber group (1 for tilings of `Z` itself).
    pub fiber_order: usize,
    pub s: Vec<i64>,
    /// Refined marker set; empty when the construction has none.
    pub s_prime: Vec<i64>,
    /// One set per tile, as sorted `(site, fiber element)` pairs.
    pub sets: Vec<Vec<(i64, usize)>>,
    /// Half-open site interval on which every output is determined.
    pub core: (i64, i64),
    /// Gaps from the window edges to the first and last marker; not part of
    /// any histogram.
    pub censored_gaps: (u64, u64),
    /// Comparisons decided by the site or group index tie rule.
    pub ties: u64,
}

/// `v(x) < v(y)` with ties broken by the smaller site; counts ties.
fn less(v: &[f64], x: usize, y: usize, ties: &mut u64) -> bool {
    if v[x] == v[y] {
        *ties += 1;
        x < y
    } else {
        v[x] < v[y]
    }
}

/// Window positions that beat every neighbour within `radius`, among the
/// positions whose whole neighbourhood lies in the window.
fn local_minima(v: &[f64], radius: usize, ties: &mut u64) -> Vec<usize> {
    if v.len() <= 2 * radius {
        return vec![];
    }
    (radius..v.len() - radius)
        .filter(|&x| (1..=radius).all(|d| less(v, x, x - d, ties) && less(v, x, x + d, ties)))
        .collect()
}

fn censored(window: &FiidWindow, s: &[i64]) -> (u64, u64) {
    match (s.first(), s.last()) {
        (Some(&a), Some(&b)) => ((a - window.start) as u64, (window.end() - 1 - b) as u64),
        _ => (window.len as u64, window.len as u64),
    }
}
