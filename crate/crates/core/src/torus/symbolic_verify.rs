//! Certification of tilings whose shifts carry formal irrational parts.
//!
//! A symbolic family `F = F^0 + v` tiles for every value of the symbols when
//! the rational surrogate `F^0 + A` tiles and each class union `F^0_i + A` is
//! invariant under the flow along its class velocity.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Result, TileError};
use crate::limits::check_domain;
use crate::rational::Rational;
use crate::rng::CounterStream;
use crate::tilings::TilingReport;

use super::cells::CellSet;
use super::invariance::{invariant_along_axis, verify_invariance_along};
use super::symbolic::SymbolicVector;
use super::velocity::{symbolic_direction, to_i64_vec, velocity_decomposition};
use super::verify::{disjoint_union, verify_rational_torus_tiling};

/// Random substitutions run after a successful certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstitutionPlan {
    pub trials: usize,
    pub seed: u64,
    /// Largest refined grid (cells) a substitution may need.
    pub grid_budget: u64,
}

impl Default for SubstitutionPlan {
    fn default() -> Self {
        Self {
            trials: 8,
            seed: 0,
            grid_budget: 1 << 18,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub members: Vec<usize>,
    /// Integer flow direction; `None` for the class at rest.
    pub direction: Option<Vec<i64>>,
    pub invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionOutcome {
    pub values: BTreeMap<String, String>,
    pub is_tiling: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicTilingReport {
    pub certified: bool,
    pub surrogate: TilingReport,
    pub classes: Vec<ClassCheck>,
    pub failing_class: Option<usize>,
    pub substitutions: Vec<SubstitutionOutcome>,
    pub substitutions_skipped: usize,
}

/// Flow direction of a class velocity, checked against the supported geometry.
pub(crate) fn class_direction(v: &SymbolicVector) -> Result<Option<Vec<i64>>> {
    let dir = symbolic_direction(v).map_err(|()| {
        TileError::Unsupported("class velocity is not along a single direction".into())
    })?;
    let Some(dir) = dir else { return Ok(None) };
    let dir = to_i64_vec(&dir)?;
    if v.dim() >= 3 && dir.iter().filter(|&&x| x != 0).count() != 1 {
        return Err(TileError::Unsupported(format!(
            "class direction {dir:?} is not axis-parallel"
        )));
    }
    if dir.iter().filter(|&&x| x != 0).count() == 1 {
        return Ok(Some(dir.iter().map(|&x| x.signum()).collect()));
    }
    Ok(Some(dir))
}

pub(crate) fn strip_invariant(u: &CellSet, dir: &[i64]) -> Result<bool> {
    match u.dim() {
        2 => verify_invariance_along(u, dir),
        _ => invariant_along_axis(
            u,
            dir.iter().position(|&x| x != 0).expect("nonzero direction"),
        ),
    }
}

pub fn verify_symbolic_tiling(
    shifts: &[SymbolicVector],
    a: &CellSet,
) -> Result<SymbolicTilingReport> {
    verify_symbolic_tiling_with(shifts, a, &SubstitutionPlan::default())
}

pub fn verify_symbolic_tiling_with(
    shifts: &[SymbolicVector],
    a: &CellSet,
    plan: &SubstitutionPlan,
) -> Result<SymbolicTilingReport> {
    if shifts.iter().any(|f| f.dim() != a.dim()) {
        return Err(TileError::SpecMismatch(
            "shift and tile dimensions differ".into(),
        ));
    }
    let dec = velocity_decomposition(shifts)?;
    let directions = dec
        .class_velocities
        .iter()
        .map(class_direction)
        .collect::<Result<Vec<_>>>()?;
    let surrogate = verify_rational_torus_tiling(&dec.f0, a)?;

    let mut classes = Vec::with_capacity(dec.classes.len());
    let mut failing_class = None;
    for (k, (members, direction)) in dec.classes.iter().zip(directions).enumerate() {
        let invariant = match (&direction, surrogate.is_tiling) {
            (None, _) => true,
            (Some(_), false) => false,
            (Some(dir), true) => {
                let part: Vec<Vec<Rational>> = members.iter().map(|&i| dec.f0[i].clone()).collect();
                match disjoint_union(&part, a)? {
                    Some(u) => strip_invariant(&u, dir)?,
                    None => false,
                }
            }
        };
        if surrogate.is_tiling && !invariant && failing_class.is_none() {
            failing_class = Some(k);
        }
        classes.push(ClassCheck {
            members: members.clone(),
            direction,
            invariant,
        });
    }

    let mut certified = surrogate.is_tiling && failing_class.is_none();
    let (mut substitutions, mut substitutions_skipped) = (Vec::new(), 0);
    if certified {
        let symbols: BTreeSet<&String> = shifts.iter().flat_map(|f| f.symbols()).collect();
        let mut rng = CounterStream::new(plan.seed, 0x5b5);
        for _ in 0..plan.trials {
            match substitution_trial(shifts, a, &symbols, plan, &mut rng)? {
                Some(outcome) => substitutions.push(outcome),
                None => substitutions_skipped += 1,
            }
        }
        certified = substitutions.iter().all(|s| s.is_tiling);
    }
    Ok(SymbolicTilingReport {
        certified,
        surrogate,
        classes,
        failing_class,
        substitutions,
        substitutions_skipped,
    })
}

const SUBSTITUTION_DENOMINATORS: [u64; 5] = [3, 5, 7, 11, 13];

fn substitution_trial(
    shifts: &[SymbolicVector],
    a: &CellSet,
    symbols: &BTreeSet<&String>,
    plan: &SubstitutionPlan,
    rng: &mut CounterStream,
) -> Result<Option<SubstitutionOutcome>> {
    let start = rng.below(SUBSTITUTION_DENOMINATORS.len() as u64) as usize;
    for offset in 0..SUBSTITUTION_DENOMINATORS.len() {
        let den = SUBSTITUTION_DENOMINATORS[(start + offset) % SUBSTITUTION_DENOMINATORS.len()];
        let values: BTreeMap<String, Rational> = symbols
            .iter()
            .map(|s| {
                (
                    (*s).clone(),
                    Rational::new(BigInt::from(rng.below(3 * den)), BigInt::from(den)),
                )
            })
            .collect();
        let concrete = shifts
            .iter()
            .map(|f| f.substitute(&values))
            .collect::<Result<Vec<_>>>()?;
        let l = crate::rational::lcm_denominators(concrete.iter().flatten())
            .lcm(&BigInt::from(a.resolution()));
        let cells = l
            .to_u64()
            .and_then(|r| (0..a.dim()).try_fold(1u64, |acc, _| acc.checked_mul(r)));
        if cells.is_none_or(|c| c > plan.grid_budget)
            || check_domain("substitution grid", cells.unwrap().into()).is_err()
        {
            continue;
        }
        let is_tiling = verify_rational_torus_tiling(&concrete, a)?.is_tiling;
        let values = values
            .iter()
            .map(|(k, v)| (k.clone(), crate::rational::format_rational(v)))
            .collect();
        return Ok(Some(SubstitutionOutcome { values, is_tiling }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn colliding_surrogate_not_certified() {
        let a = CellSet::from_boxes(2, 2, &[vec![(int(0), rat(1, 2)), (int(0), int(1))]]).unwrap();
        let f = vec![
            SymbolicVector::rational(vec![int(0), int(0)]),
            SymbolicVector::rational(vec![int(0), int(0)]).plus_symbol("a", &[int(1), int(0)]),
        ];
        let rep = verify_symbolic_tiling(&f, &a).unwrap();
        assert!(!rep.certified);
        assert!(!rep.surrogate.is_tiling && rep.surrogate.has_collisions());
    }

    #[test]
    fn diagonal_velocity_needs_diagonal_invariance() {
        let a = CellSet::from_boxes(2, 2, &[vec![(int(0), rat(1, 2)), (int(0), int(1))]]).unwrap();
        let f = vec![
            SymbolicVector::rational(vec![int(0), int(0)]),
            SymbolicVector::rational(vec![rat(1, 2), int(0)]).plus_symbol("a", &[int(1), int(1)]),
        ];
        let rep = verify_symbolic_tiling(&f, &a).unwrap();
        assert!(rep.surrogate.is_tiling);
        assert!(!rep.certified);
        assert_eq!(rep.failing_class, Some(1));
    }

    #[test]
    fn three_dimensional_directions_must_be_axes() {
        let a = CellSet::full(3, 1).unwrap();
        let f = vec![
            SymbolicVector::rational(vec![int(0); 3]),
            SymbolicVector::rational(vec![int(0); 3]).plus_symbol("a", &[int(1), int(1), int(0)]),
        ];
        assert!(matches!(
            verify_symbolic_tiling(&f, &a),
            Err(TileError::Unsupported(_))
        ));
    }
}
