use crate::algebra::{GroupElement, QuotientSpec};
use crate::error::{Result, TileError};
use crate::tilings::{verify_tiling, PeriodicSet};

use super::{FiberTile, FiidTrace, FiidWindow};

/// The tile `{0} x F0`.
pub fn vertical_family(q: &QuotientSpec, f0: &[GroupElement]) -> Result<Vec<FiberTile>> {
    Ok(vec![f0
        .iter()
        .map(|f| Ok((0, q.index_of(f)?)))
        .collect::<Result<_>>()?])
}

/// `A = {(x, g0(x) + a) : a in A0}` with `g0(x)` the fiber argmin of the field.
pub fn simulate_vertical(
    window: FiidWindow,
    g0: &QuotientSpec,
    f0: &[GroupElement],
    a0: &[GroupElement],
) -> Result<FiidTrace> {
    if !g0.parent().is_finite() {
        return Err(TileError::InvalidSpec(
            "the fiber group must be finite".into(),
        ));
    }
    let a0_set = PeriodicSet::from_elements(g0, a0)?;
    if a0_set.count() != a0.len() || !verify_tiling(g0, f0, &a0_set)?.is_tiling {
        return Err(TileError::PremiseViolation(
            "F0 + A0 is not a tiling of G0".into(),
        ));
    }
    let a0_idx = a0_set.indices();
    let n = g0.size();
    let mut ties = 0;
    let mut set = Vec::with_capacity(window.len * a0_idx.len());
    for i in 0..window.len {
        let x = window.start + i as i64;
        let mut best = 0;
        let mut best_val = window.field(x, 0);
        for g in 1..n {
            let v = window.field(x, g);
            if v == best_val {
                ties += 1;
            }
            if v < best_val {
                best = g;
                best_val = v;
            }
        }
        for &a in &a0_idx {
            set.push((x, g0.add_idx(best, a)));
        }
    }
    set.sort_unstable();
    Ok(FiidTrace {
        window,
        fiber_order: n,
        s: vec![],
        s_prime: vec![],
        sets: vec![set],
        core: (window.start, window.end()),
        censored_gaps: (0, 0),
        ties,
    })
}
