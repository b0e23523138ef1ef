//! Invariance of planar cell sets under the flow along an integer direction.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Result, TileError};
use crate::limits::check_domain;
use crate::rational::{frac, Rational};

use super::cells::CellSet;

/// The matrix `[[p, q], [-v2, v1]]` in `SL_2(Z)` sending the primitive `v` to
/// `(1, 0)`, with `q` the smallest nonnegative choice.
pub fn sl2_normalizer(v: [i64; 2]) -> Result<[[i64; 2]; 2]> {
    let [v1, v2] = v;
    if v1.gcd(&v2) != 1 {
        return Err(TileError::InvalidInput(format!(
            "direction {v:?} is not primitive"
        )));
    }
    let (p, q) = if v1 == 0 {
        (0, v2)
    } else {
        let m = v1.abs();
        let q = (0..m)
            .find(|&q| (q * v2 - 1).rem_euclid(m) == 0)
            .expect("v2 is invertible mod v1");
        ((1 - q * v2) / v1, q)
    };
    Ok([[p, q], [-v2, v1]])
}

fn cell_of(x: &[Rational; 2], q: u64) -> [u64; 2] {
    let qr = Rational::from_integer(q.into());
    [0, 1].map(|i| {
        (frac(&x[i]) * &qr)
            .floor()
            .to_integer()
            .to_u64()
            .expect("inside the unit square")
    })
}

/// True iff `U + t v = U` (up to null sets) for every real `t`.
///
/// After the change of coordinates `M` with `M v = (1, 0)`, the flow lines are
/// the level sets of `h . x` with `h = (-v2, v1)`. Cell corners lie on levels
/// in `(1/Q) Z`, so one line strictly between consecutive levels sees the
/// same cells as every other line in that band; each band is traced once and
/// must meet only members or only non-members.
pub fn verify_invariance_along(u: &CellSet, v: &[i64]) -> Result<bool> {
    if u.dim() != 2 || v.len() != 2 {
        return Err(TileError::Unsupported(
            "flow invariance is implemented for d = 2".into(),
        ));
    }
    let m = sl2_normalizer([v[0], v[1]])?;
    let qn = u.resolution();
    let reach = (v[0].unsigned_abs() + v[1].unsigned_abs()) as u128;
    check_domain("transformed grid", u128::from(qn) * u128::from(qn) * reach)?;

    let w = [
        Rational::from_integer((-m[0][1]).into()),
        Rational::from_integer(m[0][0].into()),
    ];
    let vr = [
        Rational::from_integer(v[0].into()),
        Rational::from_integer(v[1].into()),
    ];
    let qr = Rational::from_integer(qn.into());
    let two = Rational::from_integer(2.into());
    for k in 0..qn {
        let s = Rational::new((2 * k + 1).into(), (2 * qn).into());
        let base = [&s * &w[0], &s * &w[1]];
        let mut cuts: BTreeSet<Rational> =
            BTreeSet::from([Rational::zero(), Rational::from_integer(1.into())]);
        for i in 0..2 {
            if vr[i].is_zero() {
                continue;
            }
            let lo = (&base[i] * &qr).floor().to_integer() - i64::abs(v[i]) * qn as i64 - 1;
            let hi = (&base[i] * &qr).ceil().to_integer() + i64::abs(v[i]) * qn as i64 + 1;
            let mut j: num_bigint::BigInt = lo;
            while j <= hi {
                let t = (Rational::new(j.clone(), qn.into()) - &base[i]) / &vr[i];
                if t > Rational::zero() && t < Rational::from_integer(1.into()) {
                    cuts.insert(t);
                }
                j += 1;
            }
        }
        let cuts: Vec<Rational> = cuts.into_iter().collect();
        let mut seen: Option<bool> = None;
        for pair in cuts.windows(2) {
            let t = (&pair[0] + &pair[1]) / &two;
            let x = [&base[0] + &t * &vr[0], &base[1] + &t * &vr[1]];
            let member = u.contains(&cell_of(&x, qn));
            match seen {
                None => seen = Some(member),
                Some(prev) if prev != member => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// True iff membership does not depend on coordinate `axis`.
pub fn invariant_along_axis(u: &CellSet, axis: usize) -> Result<bool> {
    if axis >= u.dim() {
        return Err(TileError::InvalidInput(format!("axis {axis} out of range")));
    }
    let q = u.resolution();
    for i in 0..u.len() {
        let mut c = u.coords(i);
        if c[axis] != 0 {
            continue;
        }
        let first = u.membership()[i];
        for k in 1..q {
            c[axis] = k;
            if u.contains(&c) != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
