//! Monte-Carlo check of a three-tile sliding tiling of `T^3` whose tiles have
//! no translational symmetry.

use serde::Serialize;

use crate::rng::CounterStream;

pub const BOUNDARY_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SineCheck {
    pub samples: u64,
    pub violations: u64,
    pub skipped_boundary: u64,
}

fn bump(x: f64) -> f64 {
    (std::f64::consts::PI * x.rem_euclid(1.0)).sin() / 10.0
}

fn in_band(z: f64, lo: f64, hi: f64) -> bool {
    (z - lo).rem_euclid(1.0) < hi - lo
}

fn near(z: f64, w: f64) -> bool {
    let d = (z - w).rem_euclid(1.0);
    d < BOUNDARY_EPS || 1.0 - d < BOUNDARY_EPS
}

/// `[lower, upper)` bounds in `z` of the three tiles at `(x, y)`, each tile
/// translated by the given `(x, y)` shift.
fn bands(shifts: &[(f64, f64); 3], x: f64, y: f64) -> [(f64, f64); 3] {
    let [(a1, b1), (a2, b2), (a3, b3)] = *shifts;
    [
        (bump(x - a1), 1.0 / 3.0 + bump(x - a1 + y - b1)),
        (1.0 / 3.0 + bump(x - a2 + y - b2), 2.0 / 3.0 + bump(y - b2)),
        (2.0 / 3.0 + bump(y - b3), 1.0 + bump(x - a3)),
    ]
}

/// Number of translated tiles containing `(x, y, z)`, or `None` within
/// `BOUNDARY_EPS` of a boundary surface.
pub fn coverage(shifts: &[(f64, f64); 3], x: f64, y: f64, z: f64) -> Option<u32> {
    let bands = bands(shifts, x, y);
    if bands.iter().any(|&(lo, hi)| near(z, lo) || near(z, hi)) {
        return None;
    }
    Some(bands.iter().filter(|&&(lo, hi)| in_band(z, lo, hi)).count() as u32)
}

fn sample(shifts: &[(f64, f64); 3], samples: u64, seed: u64) -> SineCheck {
    let mut rng = CounterStream::new(seed, 0x513e);
    let (mut violations, mut skipped_boundary) = (0, 0);
    for _ in 0..samples {
        let (x, y, z) = (rng.next_unit(), rng.next_unit(), rng.next_unit());
        match coverage(shifts, x, y, z) {
            None => skipped_boundary += 1,
            Some(1) => {}
            Some(_) => violations += 1,
        }
    }
    SineCheck {
        samples,
        violations,
        skipped_boundary,
    }
}

/// Samples the tiling by `(t,0,0) + A_1`, `(0,t,0) + A_2`, `(t,t,0) + A_3`.
pub fn sine_multitile_check(t: f64, samples: u64, seed: u64) -> SineCheck {
    sample(&[(t, 0.0), (0.0, t), (t, t)], samples, seed)
}
