use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::group::FiniteGroupTable;
use super::{FiberTile, FiidTrace};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TraceReport {
    pub core_len: u64,
    /// Points `(x, g)` of the core covered other than exactly once.
    pub coverage_violations: u64,
    pub gap_histogram_s: BTreeMap<i64, u64>,
    pub gap_histogram_s_prime: BTreeMap<i64, u64>,
    /// Per tile, `|A_i restricted to the core| / core length`.
    pub densities: Vec<f64>,
}

fn gaps(xs: &[i64]) -> BTreeMap<i64, u64> {
    let mut h = BTreeMap::new();
    for w in xs.windows(2) {
        *h.entry(w[1] - w[0]).or_insert(0) += 1;
    }
    h
}

/// Exhaustive coverage count of `u_i F_i A_i` on `core x G`.
pub fn validate_trace(
    trace: &FiidTrace,
    group: &FiniteGroupTable,
    tiles: &[FiberTile],
) -> TraceReport {
    let (lo, hi) = trace.core;
    if hi <= lo {
        return TraceReport::default();
    }
    let n = group.order();
    let width = (hi - lo) as usize;
    let mut cover = vec![0u32; width * n];
    for (tile, set) in tiles.iter().zip(&trace.sets) {
        for &(x, g) in set {
            for &(dx, f) in tile {
                let y = x + dx;
                if (lo..hi).contains(&y) {
                    cover[(y - lo) as usize * n + group.mul(f, g)] += 1;
                }
            }
        }
    }
    let densities = trace
        .sets
        .iter()
        .map(|set| set.iter().filter(|(x, _)| (lo..hi).contains(x)).count() as f64 / width as f64)
        .collect();
    TraceReport {
        core_len: width as u64,
        coverage_violations: cover.iter().filter(|&&c| c != 1).count() as u64,
        gap_histogram_s: gaps(&trace.s),
        gap_histogram_s_prime: gaps(&trace.s_prime),
        densities,
    }
}

/// One record per window site, for JSON-lines export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiteRecord {
    pub site: i64,
    pub in_core: bool,
    pub in_s: bool,
    pub in_s_prime: bool,
    /// `(tile index, fiber element)` for every set point at this site.
    pub labels: Vec<(usize, usize)>,
}

pub fn site_records(trace: &FiidTrace) -> Vec<SiteRecord> {
    let mut labels: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
    for (i, set) in trace.sets.iter().enumerate() {
        for &(x, g) in set {
            labels.entry(x).or_default().push((i, g));
        }
    }
    (trace.window.start..trace.window.end())
        .map(|x| SiteRecord {
            site: x,
            in_core: (trace.core.0..trace.core.1).contains(&x),
            in_s: trace.s.binary_search(&x).is_ok(),
            in_s_prime: trace.s_prime.binary_search(&x).is_ok(),
            labels: labels.remove(&x).unwrap_or_default(),
        })
        .collect()
}
