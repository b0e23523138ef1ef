//! Planar tilings by a connected tile: either every shift is rational, or the
//! shifts split into equal-size parts, each on one flow line mod `Z^2`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Result, TileError};
use crate::intervals::{
    classify_connected, ConnectedClassification, RationalMultiset, StepFunction,
};
use crate::rational::{frac, serde_rational, Rational};

use super::cells::{common_resolution, CellSet};
use super::symbolic::SymbolicVector;
use super::symbolic_verify::{strip_invariant, verify_symbolic_tiling};
use super::velocity::velocity_decomposition;
use super::verify::disjoint_union;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedPart {
    /// Shift indices, in input order.
    pub members: Vec<usize>,
    /// Velocity class the part was cut from.
    pub class: usize,
    /// Transverse coordinate (mod 1) shared by the part's shifts.
    #[serde(with = "serde_rational")]
    pub coset: Rational,
    pub strip_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripInterval {
    pub class: usize,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
    pub classification: ConnectedClassification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ConnectedReport {
    AllRational,
    Sliding {
        direction: Vec<i64>,
        m: u64,
        intervals: Vec<StripInterval>,
        parts: Vec<ConnectedPart>,
    },
}

pub fn connected_case(shifts: &[SymbolicVector], a: &CellSet) -> Result<ConnectedReport> {
    if a.dim() != 2 {
        return Err(TileError::InvalidInput("connected case needs d = 2".into()));
    }
    if !a.is_edge_connected() {
        return Err(TileError::ConnectedRequired);
    }
    if !verify_symbolic_tiling(shifts, a)?.certified {
        return Err(TileError::PremiseViolation(
            "F + A is not a certified tiling".into(),
        ));
    }
    let dec = velocity_decomposition(shifts)?;
    if dec.classes.len() == 1 {
        return Ok(ConnectedReport::AllRational);
    }
    let direction = dec
        .common_direction
        .clone()
        .ok_or_else(|| TileError::LemmaViolation("velocities are not parallel".into()))?;
    // Flow along the first axis; a vertical flow is handled by swapping axes.
    let (tile, f0, transverse) = match direction.as_slice() {
        [1, 0] => (a.clone(), dec.f0.clone(), 1usize),
        [0, 1] => (
            a.transpose()?,
            dec.f0
                .iter()
                .map(|f| vec![f[1].clone(), f[0].clone()])
                .collect(),
            0usize,
        ),
        _ => {
            return Err(TileError::Unsupported(format!(
                "connected case is implemented for axis directions, got {direction:?}"
            )))
        }
    };

    let r = common_resolution(tile.resolution(), &f0)?;
    let psi_rows = row_profile(&tile);
    let (psi_start, psi_len) =
        cyclic_support(&psi_rows.iter().map(|v| !v.is_zero()).collect::<Vec<_>>()).ok_or_else(
            || TileError::LemmaViolation("row profile is not supported on one interval".into()),
        )?;
    let qa = tile.resolution();
    let psi = lifted_profile(&psi_rows, psi_start, psi_len, qa)?;
    let psi_lo = Rational::new(psi_start.into(), qa.into());

    let mut intervals = Vec::new();
    let mut parts = Vec::new();
    let mut common_m: Option<u64> = None;
    for (k, members) in dec.classes.iter().enumerate() {
        let part: Vec<Vec<Rational>> = members.iter().map(|&i| f0[i].clone()).collect();
        let strip = disjoint_union(&part, &tile)?
            .ok_or_else(|| TileError::LemmaViolation("class translates overlap".into()))?
            .at_resolution(r)?;
        let rows = full_rows(&strip)?;
        for (start, len) in cyclic_runs(&rows) {
            let lo = Rational::new(start.into(), r.into());
            let hi = &lo + Rational::new(len.into(), r.into());
            // Lift each shift so that its copy of psi lands inside [lo, hi].
            let mut lifted = RationalMultiset::new();
            let mut placed = Vec::new();
            for &i in members {
                let y = frac(&f0[i][1]);
                let first = &psi_lo + &y;
                let t = &y + (&lo - &first).ceil();
                if &psi_lo + &t < hi {
                    lifted.insert(t.clone(), 1);
                    placed.push((i, t));
                }
            }
            let classification = classify_connected(&lifted, &psi, &lo, &hi)?;
            match common_m {
                None => common_m = Some(classification.m),
                Some(m) if m != classification.m => {
                    return Err(TileError::LemmaViolation(format!(
                        "parts of cardinality {m} and {}",
                        classification.m
                    )))
                }
                _ => {}
            }
            placed.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
            for chunk in placed.chunk_by(|x, y| x.1 == y.1) {
                let members: Vec<usize> = {
                    let mut m: Vec<usize> = chunk.iter().map(|(i, _)| *i).collect();
                    m.sort_unstable();
                    m
                };
                if members.len() as u64 != classification.m {
                    return Err(TileError::LemmaViolation(format!(
                        "part of cardinality {} where {} was forced",
                        members.len(),
                        classification.m
                    )));
                }
                let coset = frac(&chunk[0].1);
                if !members.iter().all(|&i| {
                    shifts[i]
                        .component(transverse)
                        .congruent_mod_one(&shifts[members[0]].component(transverse))
                }) {
                    return Err(TileError::LemmaViolation(
                        "part is not on a single flow line".into(),
                    ));
                }
                let pts: Vec<Vec<Rational>> = members.iter().map(|&i| f0[i].clone()).collect();
                let u = disjoint_union(&pts, &tile)?
                    .ok_or_else(|| TileError::LemmaViolation("part translates overlap".into()))?;
                let strip_invariant = strip_invariant(&u, &[1, 0])?;
                parts.push(ConnectedPart {
                    members,
                    class: k,
                    coset,
                    strip_invariant,
                });
            }
            intervals.push(StripInterval {
                class: k,
                a: lo,
                b: hi,
                classification,
            });
        }
    }
    let placed: usize = parts.iter().map(|p| p.members.len()).sum();
    if placed != shifts.len() {
        return Err(TileError::LemmaViolation(format!(
            "{placed} of {} shifts fit the strip intervals",
            shifts.len()
        )));
    }
    parts.sort_by(|x, y| x.members.cmp(&y.members));
    Ok(ConnectedReport::Sliding {
        direction,
        m: common_m.unwrap_or(0),
        intervals,
        parts,
    })
}

/// Row densities `psi(row) = (cells in row) / Q`, rows indexed by the second coordinate.
fn row_profile(a: &CellSet) -> Vec<Rational> {
    let q = a.resolution();
    (0..q)
        .map(|y| {
            let n = (0..q).filter(|&x| a.contains(&[x, y])).count();
            Rational::new(BigInt::from(n), BigInt::from(q))
        })
        .collect()
}

fn full_rows(strip: &CellSet) -> Result<Vec<bool>> {
    let q = strip.resolution();
    (0..q)
        .map(|y| {
            let n = (0..q).filter(|&x| strip.contains(&[x, y])).count() as u64;
            match n {
                0 => Ok(false),
                n if n == q => Ok(true),
                _ => Err(TileError::LemmaViolation(format!(
                    "row {y} of a class strip is partially covered"
                ))),
            }
        })
        .collect()
}

/// Maximal cyclic runs of `true` as `(start, length)`.
fn cyclic_runs(flags: &[bool]) -> Vec<(u64, u64)> {
    let n = flags.len();
    if flags.iter().all(|&b| b) {
        return vec![(0, n as u64)];
    }
    let Some(gap) = flags.iter().position(|&b| !b) else {
        return vec![];
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let idx = (gap + i) % n;
        if flags[idx] {
            let start = idx;
            let mut len = 0;
            while i < n && flags[(gap + i) % n] {
                len += 1;
                i += 1;
            }
            out.push((start as u64, len as u64));
        } else {
            i += 1;
        }
    }
    out.sort_unstable();
    out
}

fn cyclic_support(flags: &[bool]) -> Option<(u64, u64)> {
    match cyclic_runs(flags).as_slice() {
        [run] => Some(*run),
        _ => None,
    }
}

/// `psi` lifted to the real line on `[start/Q, (start+len)/Q]`.
fn lifted_profile(rows: &[Rational], start: u64, len: u64, q: u64) -> Result<StepFunction> {
    let breakpoints = (0..=len)
        .map(|k| Rational::new((start + k).into(), q.into()))
        .collect();
    let values = (0..len)
        .map(|k| rows[((start + k) % q) as usize].clone())
        .collect();
    StepFunction::new(breakpoints, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_wrap_around() {
        assert_eq!(cyclic_runs(&[true, false, true, true]), vec![(2, 3)]);
        assert_eq!(
            cyclic_runs(&[true, false, true, false]),
            vec![(0, 1), (2, 1)]
        );
        assert_eq!(cyclic_runs(&[true, true]), vec![(0, 2)]);
        assert_eq!(cyclic_runs(&[false, false]), vec![]);
    }
}
