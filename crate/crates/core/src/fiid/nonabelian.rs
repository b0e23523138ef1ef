use crate::error::{Result, TileError};

use super::group::{triple_product_check, FiniteGroupTable};
use super::{censored, local_minima, FiberTile, FiidTrace, FiidWindow};

/// `F = ({0} x H a) u ({1} x (G \ H))`.
pub fn nonabelian_tile(g: &FiniteGroupTable, h: &[usize], a: usize) -> Result<FiberTile> {
    let h = g.check_subgroup(h)?;
    let mut tile: FiberTile = g.right_coset(&h, a).into_iter().map(|x| (0, x)).collect();
    tile.extend((0..g.order()).filter(|x| !h.contains(x)).map(|x| (1, x)));
    Ok(tile)
}

/// `S_3` with `H = {e, (0 1)}` and `a = (1 2)`.
pub fn simulate_nonabelian_s3(
    window: FiidWindow,
) -> Result<(FiniteGroupTable, Vec<usize>, usize, FiidTrace)> {
    let g = FiniteGroupTable::symmetric(3)?;
    let h = vec![0, 2];
    let a = (0..g.order())
        .find(|x| !h.contains(x))
        .expect("H is proper");
    let trace = simulate_nonabelian(window, &g, &h, a)?;
    Ok((g, h, a, trace))
}

/// Sequence `g_x` obeying `g_{x-1} in H a g_x`, built between consecutive
/// markers; `A = {(x, g_x)}`.
pub fn simulate_nonabelian(
    window: FiidWindow,
    g: &FiniteGroupTable,
    h: &[usize],
    a: usize,
) -> Result<FiidTrace> {
    if !triple_product_check(g, h, a)? {
        return Err(TileError::PremiseViolation("H a H a H a != G".into()));
    }
    if window.len < 20 {
        return Err(TileError::InvalidInput(
            "non-abelian windows need N >= 20".into(),
        ));
    }
    let h_set = g.check_subgroup(h)?;
    let n = g.order();
    let mut ties = 0;
    let field = |i: usize, k: usize| window.field(window.start + i as i64, k);
    let fiber_min: Vec<f64> = (0..window.len)
        .map(|i| (0..n).map(|k| field(i, k)).fold(f64::INFINITY, f64::min))
        .collect();
    let s = local_minima(&fiber_min, 2, &mut ties);
    if s.is_empty() {
        return Err(TileError::DegenerateWindow(
            "no marker in the window".into(),
        ));
    }

    let argmax = |i: usize, ties: &mut u64| {
        let mut best = 0;
        for k in 1..n {
            let (v, b) = (field(i, k), field(i, best));
            if v == b {
                *ties += 1;
            }
            if v > b {
                best = k;
            }
        }
        best
    };
    let a_inv = g.inv(a);
    let mut b_set: Vec<usize> = h_set.iter().map(|&x| g.mul(a_inv, x)).collect();
    b_set.sort_unstable();
    let ha = g.right_coset(&h_set, a);

    let first = s[0];
    let mut labels = vec![usize::MAX; window.len];
    labels[first] = argmax(first, &mut ties);
    for pair in s.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let target = argmax(hi, &mut ties);
        for j in 1..=hi - lo - 3 {
            labels[lo + j] = g.mul(a_inv, labels[lo + j - 1]);
        }
        let base = labels[hi - 3];
        let allowed: std::collections::BTreeSet<usize> =
            ha.iter().map(|&x| g.mul(x, target)).collect();
        let (b0, b1) = b_set
            .iter()
            .flat_map(|&b0| b_set.iter().map(move |&b1| (b0, b1)))
            .find(|&(b0, b1)| allowed.contains(&g.mul(b0, g.mul(b1, base))))
            .expect("H a H a H a = G guarantees a pair");
        labels[hi - 2] = g.mul(b1, base);
        labels[hi - 1] = g.mul(b0, labels[hi - 2]);
        labels[hi] = target;
    }
    let last = *s.last().expect("nonempty");
    let to_site = |i: usize| window.start + i as i64;
    let set: Vec<(i64, usize)> = (first..=last).map(|i| (to_site(i), labels[i])).collect();
    let s_sites: Vec<i64> = s.iter().map(|&i| to_site(i)).collect();
    Ok(FiidTrace {
        window,
        fiber_order: n,
        censored_gaps: censored(&window, &s_sites),
        s: s_sites,
        s_prime: vec![],
        sets: vec![set],
        core: (to_site(first) + 1, to_site(last) + 1),
        ties,
    })
}
