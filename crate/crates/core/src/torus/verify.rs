//! Exact verification of `F + A = T^d` for rational shifts and grid-cell tiles.

use num_bigint::BigInt;

use crate::algebra::GroupElement;
use crate::error::Result;
use crate::rational::Rational;
use crate::tilings::{verify_tiling, TilingReport};

use super::cells::{common_resolution, CellSet};

/// Refines `A` to the coarsest grid containing every shift, then checks that
/// every cell is covered exactly once. Collisions are shifts equal mod `Z^d`.
pub fn verify_rational_torus_tiling(shifts: &[Vec<Rational>], a: &CellSet) -> Result<TilingReport> {
    let r = common_resolution(a.resolution(), shifts)?;
    let refined = a.at_resolution(r)?;
    let q = refined.quotient()?;
    let set = refined.to_periodic_set()?;
    let tile = shifts
        .iter()
        .map(|f| {
            let steps = refined.grid_steps(f)?;
            Ok(GroupElement::free(
                steps.into_iter().map(|s| s as i64).collect(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    verify_tiling(&q, &tile, &set)
}

/// `F + A` as a cell set at the common resolution, with multiplicities
/// collapsed; `None` if two translates overlap.
pub fn disjoint_union(shifts: &[Vec<Rational>], a: &CellSet) -> Result<Option<CellSet>> {
    let r = common_resolution(a.resolution(), shifts)?;
    let refined = a.at_resolution(r)?;
    let mut out = CellSet::empty(a.dim(), r)?;
    for f in shifts {
        let moved = refined.translate(f)?;
        if moved
            .membership()
            .iter()
            .zip(out.membership())
            .any(|(&m, &o)| m && o)
        {
            return Ok(None);
        }
        out = out.union(&moved)?;
    }
    Ok(Some(out))
}

/// `|F| * measure(A)`, which equals 1 for every tiling.
pub fn total_measure(shift_count: usize, a: &CellSet) -> Rational {
    a.measure() * Rational::from_integer(BigInt::from(shift_count))
}
