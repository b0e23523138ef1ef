//! Tilings of the circle: rationality of the shift set and assembly of all
//! tiles from tilings of a finite cyclic group.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{GroupElement, QuotientSpec};
use crate::enumerate::enumerate_tilings;
use crate::error::{Result, TileError};
use crate::rational::{serde_rational_vec, Rational};
use crate::rng::CounterStream;
use crate::tilings::TilingReport;

use super::cells::CellSet;
use super::symbolic::SymbolicScalar;
use super::verify::verify_rational_torus_tiling;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CircleOutcome {
    /// `F = F0 + v` with `F0` rational and `F0 + A` a tiling.
    Rational {
        #[serde(with = "serde_rational_vec")]
        f0: Vec<Rational>,
        velocity: SymbolicScalar,
        report: TilingReport,
    },
    /// Two shifts differ by an irrational amount, which no circle tiling allows.
    TheoremViolation {
        witness: (usize, usize),
        samples: usize,
        substitution_tilings: usize,
    },
}

const CONFIRMATION_DENOMINATORS: [i64; 3] = [1009, 1013, 1019];

pub fn circle_rationality(shifts: &[SymbolicScalar], a: &CellSet) -> Result<CircleOutcome> {
    if a.dim() != 1 {
        return Err(TileError::InvalidInput("circle tiles need d = 1".into()));
    }
    let first = shifts
        .first()
        .ok_or_else(|| TileError::InvalidInput("empty shift set".into()))?;
    let velocity = first.symbolic_part();
    if let Some(j) = shifts.iter().position(|f| f.symbolic_part() != velocity) {
        let mut rng = CounterStream::new(0, 0xc1c);
        let symbols: Vec<String> = shifts
            .iter()
            .flat_map(|f| f.irrational_coeffs().keys().cloned())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut substitution_tilings = 0;
        for &den in &CONFIRMATION_DENOMINATORS {
            let values: BTreeMap<String, Rational> = symbols
                .iter()
                .map(|s| {
                    (
                        s.clone(),
                        Rational::new(
                            BigInt::from(1 + rng.below(den as u64 - 1)),
                            BigInt::from(den),
                        ),
                    )
                })
                .collect();
            let concrete = shifts
                .iter()
                .map(|f| Ok(vec![f.substitute(&values)?]))
                .collect::<Result<Vec<_>>>()?;
            if verify_rational_torus_tiling(&concrete, a)?.is_tiling {
                substitution_tilings += 1;
            }
        }
        return Ok(CircleOutcome::TheoremViolation {
            witness: (0, j),
            samples: CONFIRMATION_DENOMINATORS.len(),
            substitution_tilings,
        });
    }
    let f0: Vec<Rational> = shifts.iter().map(|f| f.rational.clone()).collect();
    let report =
        verify_rational_torus_tiling(&f0.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>(), a)?;
    if !report.is_tiling {
        return Err(TileError::PremiseViolation(
            "the rational surrogate F0 + A is not a tiling".into(),
        ));
    }
    Ok(CircleOutcome::Rational {
        f0,
        velocity,
        report,
    })
}

/// Builds `A_psi` at resolution `qden * R`, where `R = assignment.len()`.
///
/// The transversal `[0, 1/qden)` is cut into `R` cells; cell `j` carries the
/// tiling `assignment[j]` of `Z/qden` by `F'`, placed on its orbit under
/// translation by `1/qden`.
pub fn assemble_circle_tiling(
    qden: u64,
    fprime: &[u64],
    assignment: &[Vec<u64>],
) -> Result<CellSet> {
    if assignment.is_empty() {
        return Err(TileError::InvalidInput(
            "assignment needs at least one transversal cell".into(),
        ));
    }
    if fprime.iter().any(|&f| f >= qden) {
        return Err(TileError::InvalidInput(format!("F' must lie in Z/{qden}")));
    }
    let q = QuotientSpec::cyclic(qden)?;
    let tile: Vec<GroupElement> = fprime
        .iter()
        .map(|&f| GroupElement::torsion(vec![f]))
        .collect();
    let catalog = enumerate_tilings(&q, &tile)?;
    let r = assignment.len() as u64;
    let resolution = qden
        .checked_mul(r)
        .ok_or(TileError::ArithmeticOverflow("circle resolution"))?;
    let mut out = CellSet::empty(1, resolution)?;
    for (j, value) in assignment.iter().enumerate() {
        let mut sorted = value.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let as_idx: Vec<usize> = sorted.iter().map(|&h| h as usize).collect();
        if sorted.len() != value.len() || catalog.solutions.binary_search(&as_idx).is_err() {
            return Err(TileError::InvalidAssignment(format!(
                "{value:?} is not a tiling of Z/{qden} by {fprime:?}"
            )));
        }
        for h in sorted {
            out.set(&[j as u64 + h * r], true);
        }
    }
    Ok(out)
}

/// `F'` as circle shifts `f / qden`.
pub fn cyclic_shifts(qden: u64, fprime: &[u64]) -> Vec<Vec<Rational>> {
    fprime
        .iter()
        .map(|&f| vec![Rational::new(f.into(), qden.into())])
        .collect()
}
