//! Weak rationality directions and the velocity decomposition of a shift set.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Result, TileError};
use crate::lattice::{kernel_basis, primitive_integer};
use crate::rational::{serde_rational_rows, Rational};

use super::symbolic::{SymbolicScalar, SymbolicVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum WeakDirection {
    FullyRational,
    /// Primitive `h` with `h . f` rational, first nonzero entry positive.
    Direction {
        h: Vec<i64>,
    },
    /// No nonzero integer `k` makes `k . f` rational; such a shift never
    /// occurs in a tiling.
    NoDirection,
}

pub(crate) fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or(TileError::ArithmeticOverflow("integer direction"))
        })
        .collect()
}

pub fn weak_rational_direction(f: &SymbolicVector) -> Result<WeakDirection> {
    if f.dim() != 2 {
        return Err(TileError::Unsupported(format!(
            "weak rational direction needs d = 2, got {}",
            f.dim()
        )));
    }
    if f.is_rational() {
        return Ok(WeakDirection::FullyRational);
    }
    let rows: Vec<Vec<Rational>> = f.irrational_coeffs().values().cloned().collect();
    let kernel = kernel_basis(&rows, 2);
    Ok(match kernel.as_slice() {
        [h] => WeakDirection::Direction { h: to_i64_vec(h)? },
        _ => WeakDirection::NoDirection,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VelocityDecomposition {
    /// Common symbolic part subtracted from every shift: the first one (in
    /// input order) that leaves each velocity along a single direction.
    pub normalization: SymbolicVector,
    /// Shift indices grouped by equal symbolic part, in order of first appearance.
    pub classes: Vec<Vec<usize>>,
    /// Normalized symbolic part shared by each class.
    pub class_velocities: Vec<SymbolicVector>,
    /// Rational parts of the shifts.
    #[serde(with = "serde_rational_rows")]
    pub f0: Vec<Vec<Rational>>,
    /// Per shift, its normalized symbolic part.
    pub velocities: Vec<SymbolicVector>,
    /// In `d = 2`: the primitive `v` with every velocity a multiple of it.
    pub common_direction: Option<Vec<i64>>,
    /// Per shift, `alpha_i` with `v_i = alpha_i * v`.
    pub alphas: Option<Vec<SymbolicScalar>>,
    /// Set in `d = 2` when the velocities are not all parallel.
    pub parallel_violation: bool,
}

/// Primitive integer direction shared by every coefficient vector of `v`, or
/// `None` if `v` is rational; `Err` if the coefficient vectors are not parallel.
pub(crate) fn symbolic_direction(
    v: &SymbolicVector,
) -> std::result::Result<Option<Vec<BigInt>>, ()> {
    let mut dir: Option<Vec<BigInt>> = None;
    for c in v.irrational_coeffs().values() {
        let p = primitive_integer(c);
        match &dir {
            None => dir = Some(p),
            Some(d) if d == &p || d.iter().zip(&p).all(|(a, b)| a == &-b) => {}
            Some(_) => return Err(()),
        }
    }
    Ok(dir)
}

/// `alpha` with `v = alpha * dir`, for `v` parallel to `dir`.
fn coefficient_along(v: &SymbolicVector, dir: &[BigInt]) -> SymbolicScalar {
    let axis = dir
        .iter()
        .position(|x| !x.is_zero())
        .expect("direction is nonzero");
    let scale = Rational::from_integer(dir[axis].clone());
    v.component(axis).scale(&scale.recip())
}

/// Symbolic part of the first shift whose subtraction leaves every velocity
/// along a single direction; the first shift's if none does.
fn choose_normalization(shifts: &[SymbolicVector]) -> Result<SymbolicVector> {
    let mut candidates: Vec<SymbolicVector> = Vec::new();
    for f in shifts {
        let s = f.symbolic_part();
        if !candidates.contains(&s) {
            candidates.push(s);
        }
    }
    for c in &candidates {
        let mut ok = true;
        for f in shifts {
            if symbolic_direction(&f.symbolic_part().sub(c)?).is_err() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(c.clone());
        }
    }
    Ok(candidates.swap_remove(0))
}

pub fn velocity_decomposition(shifts: &[SymbolicVector]) -> Result<VelocityDecomposition> {
    let first = shifts
        .first()
        .ok_or_else(|| TileError::InvalidInput("empty shift set".into()))?;
    let d = first.dim();
    if shifts.iter().any(|f| f.dim() != d) {
        return Err(TileError::SpecMismatch(
            "shifts of different dimensions".into(),
        ));
    }
    let normalization = choose_normalization(shifts)?;
    let velocities: Vec<SymbolicVector> = shifts
        .iter()
        .map(|f| f.symbolic_part().sub(&normalization))
        .collect::<Result<_>>()?;
    let f0: Vec<Vec<Rational>> = shifts.iter().map(|f| f.rational_part().to_vec()).collect();

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_velocities: Vec<SymbolicVector> = Vec::new();
    for (i, v) in velocities.iter().enumerate() {
        match class_velocities.iter().position(|c| c == v) {
            Some(k) => classes[k].push(i),
            None => {
                classes.push(vec![i]);
                class_velocities.push(v.clone());
            }
        }
    }

    let (mut common_direction, mut alphas, mut parallel_violation) = (None, None, false);
    if d == 2 {
        let mut all = SymbolicVector::rational(vec![Rational::zero(); 2]);
        for (k, v) in velocities.iter().enumerate() {
            for (s, c) in v.irrational_coeffs() {
                all = all.plus_symbol(&format!("{s}#{k}"), c);
            }
        }
        match symbolic_direction(&all) {
            Ok(Some(dir)) => {
                alphas = Some(
                    velocities
                        .iter()
                        .map(|v| coefficient_along(v, &dir))
                        .collect(),
                );
                common_direction = Some(to_i64_vec(&dir)?);
            }
            Ok(None) => {}
            Err(()) => parallel_violation = true,
        }
    }
    Ok(VelocityDecomposition {
        normalization,
        classes,
        class_velocities,
        f0,
        velocities,
        common_direction,
        alphas,
        parallel_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sv(x: Rational, y: Rational) -> SymbolicVector {
        SymbolicVector::rational(vec![x, y])
    }

    #[test]
    fn weak_directions() {
        let f = sv(int(0), rat(1, 2)).plus_symbol("a", &[int(1), int(0)]);
        assert_eq!(
            weak_rational_direction(&f).unwrap(),
            WeakDirection::Direction { h: vec![0, 1] }
        );
        assert_eq!(
            weak_rational_direction(&sv(rat(1, 3), rat(2, 5))).unwrap(),
            WeakDirection::FullyRational
        );
        let g = sv(int(0), int(0))
            .plus_symbol("a", &[int(1), int(0)])
            .plus_symbol("b", &[int(0), int(1)]);
        assert_eq!(
            weak_rational_direction(&g).unwrap(),
            WeakDirection::NoDirection
        );
        let diag = sv(int(0), int(0)).plus_symbol("a", &[int(2), int(-4)]);
        assert_eq!(
            weak_rational_direction(&diag).unwrap(),
            WeakDirection::Direction { h: vec![2, 1] }
        );
        let three = SymbolicVector::rational(vec![int(0); 3]);
        assert!(matches!(
            weak_rational_direction(&three),
            Err(TileError::Unsupported(_))
        ));
    }

    #[test]
    fn connected_two_dimensional_example() {
        let e1 = [int(1), int(0)];
        let f = vec![
            sv(int(0), int(0)),
            sv(rat(1, 2), int(0)),
            sv(int(0), rat(1, 2)).plus_symbol("a", &e1),
            sv(rat(1, 2), rat(1, 2)).plus_symbol("a", &e1),
        ];
        let dec = velocity_decomposition(&f).unwrap();
        assert_eq!(dec.classes, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(dec.common_direction, Some(vec![1, 0]));
        let a = SymbolicScalar::symbol("a");
        let zero = SymbolicScalar::default();
        assert_eq!(dec.alphas, Some(vec![zero.clone(), zero, a.clone(), a]));
        assert_eq!(dec.f0[2], vec![int(0), rat(1, 2)]);
        assert!(!dec.parallel_violation);
    }

    #[test]
    fn first_shift_normalized() {
        let e1 = [int(1), int(0)];
        let f = vec![
            sv(int(0), int(0)).plus_symbol("v", &e1),
            sv(rat(1, 2), int(0)).plus_symbol("v", &e1),
        ];
        let dec = velocity_decomposition(&f).unwrap();
        assert_eq!(dec.classes, vec![vec![0, 1]]);
        assert!(dec.velocities.iter().all(|v| v.is_rational()));
        assert_eq!(dec.common_direction, None);
    }

    #[test]
    fn non_parallel_flagged() {
        let f = vec![
            sv(int(0), int(0)),
            sv(int(0), int(0)).plus_symbol("a", &[int(1), int(0)]),
            sv(int(0), int(0)).plus_symbol("b", &[int(0), int(1)]),
        ];
        let dec = velocity_decomposition(&f).unwrap();
        assert!(dec.parallel_violation);
        assert_eq!(dec.classes.len(), 3);
    }
}
