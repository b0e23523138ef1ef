use crate::error::{Result, TileError};

use super::{censored, local_minima, FiberTile, FiidTrace, FiidWindow};

/// The tiles `{0,1}` and `{0,1,2}` of `Z`.
pub fn two_tile_family() -> Vec<FiberTile> {
    vec![vec![(0, 0), (1, 0)], vec![(0, 0), (1, 0), (2, 0)]]
}

/// Local minima `S`, even fill `S'`, and `A_1`, `A_2` the points of `S'`
/// followed by a gap of 2 and of 3.
pub fn simulate_two_tile(window: FiidWindow) -> Result<FiidTrace> {
    if window.len < 10 {
        return Err(TileError::InvalidInput(
            "two-tile windows need N >= 10".into(),
        ));
    }
    let lambda: Vec<f64> = (0..window.len)
        .map(|i| window.field(window.start + i as i64, 0))
        .collect();
    let mut ties = 0;
    let s: Vec<i64> = local_minima(&lambda, 1, &mut ties)
        .into_iter()
        .map(|i| window.start + i as i64)
        .collect();
    if s.is_empty() {
        return Err(TileError::DegenerateWindow(
            "no local minimum in the window".into(),
        ));
    }
    let mut s_prime = Vec::new();
    for pair in s.windows(2) {
        s_prime.extend((pair[0]..=pair[1] - 2).step_by(2));
    }
    s_prime.push(*s.last().expect("nonempty"));
    let (mut a1, mut a2) = (Vec::new(), Vec::new());
    for pair in s_prime.windows(2) {
        match pair[1] - pair[0] {
            2 => a1.push((pair[0], 0)),
            3 => a2.push((pair[0], 0)),
            gap => unreachable!("fill leaves gaps of 2 or 3, found {gap}"),
        }
    }
    let core = (s[0], *s.last().expect("nonempty"));
    Ok(FiidTrace {
        window,
        fiber_order: 1,
        censored_gaps: censored(&window, &s),
        s,
        s_prime,
        sets: vec![a1, a2],
        core,
        ties,
    })
}
