//! Subsets of the torus `T^d` that are unions of half-open grid cells
//! `[k/Q, (k+1)/Q)^d`, stored densely with the first coordinate most
//! significant.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{GroupSpec, QuotientSpec};
use crate::error::{Result, TileError};
use crate::limits::check_domain;
use crate::rational::{lcm_denominators, Rational};
use crate::tilings::PeriodicSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellSet {
    d: usize,
    q: u64,
    membership: Vec<bool>,
}

fn grid_size(d: usize, q: u64) -> Result<usize> {
    let needed = (0..d)
        .try_fold(1u128, |acc, _| acc.checked_mul(u128::from(q)))
        .unwrap_or(u128::MAX);
    check_domain("torus grid", needed)
}

impl CellSet {
    pub fn empty(d: usize, q: u64) -> Result<Self> {
        if d == 0 || q == 0 {
            return Err(TileError::InvalidInput(
                "dimension and resolution must be positive".into(),
            ));
        }
        Ok(Self {
            d,
            q,
            membership: vec![false; grid_size(d, q)?],
        })
    }

    pub fn full(d: usize, q: u64) -> Result<Self> {
        let mut s = Self::empty(d, q)?;
        s.membership.fill(true);
        Ok(s)
    }

    pub fn from_cells(d: usize, q: u64, cells: &[Vec<u64>]) -> Result<Self> {
        let mut s = Self::empty(d, q)?;
        for c in cells {
            if c.len() != d || c.iter().any(|&x| x >= q) {
                return Err(TileError::InvalidInput(format!(
                    "cell {c:?} outside (Z/{q})^{d}"
                )));
            }
            let i = s.index(c);
            s.membership[i] = true;
        }
        Ok(s)
    }

    /// Union of boxes `prod_i [lo_i, hi_i)` taken mod 1, each endpoint a
    /// multiple of `1/q` and each side of length at most 1.
    pub fn from_boxes(d: usize, q: u64, boxes: &[Vec<(Rational, Rational)>]) -> Result<Self> {
        let mut s = Self::empty(d, q)?;
        let qr = Rational::from_integer(q.into());
        let mut ranges = Vec::with_capacity(d);
        for b in boxes {
            if b.len() != d {
                return Err(TileError::InvalidInput("box has wrong dimension".into()));
            }
            ranges.clear();
            for (lo, hi) in b {
                let (l, h) = (lo * &qr, hi * &qr);
                if !l.is_integer() || !h.is_integer() || h < l || &h - &l > qr {
                    return Err(TileError::InvalidInput(format!(
                        "box side [{lo}, {hi}) not on the 1/{q} grid"
                    )));
                }
                let l = l
                    .to_integer()
                    .to_i64()
                    .ok_or(TileError::ArithmeticOverflow("box endpoint"))?;
                let h = h
                    .to_integer()
                    .to_i64()
                    .ok_or(TileError::ArithmeticOverflow("box endpoint"))?;
                ranges.push((l, h));
            }
            let mut coords = vec![0u64; d];
            s.fill_box(&ranges, 0, &mut coords);
        }
        Ok(s)
    }

    fn fill_box(&mut self, ranges: &[(i64, i64)], axis: usize, coords: &mut Vec<u64>) {
        if axis == self.d {
            let i = self.index(coords);
            self.membership[i] = true;
            return;
        }
        for k in ranges[axis].0..ranges[axis].1 {
            coords[axis] = k.rem_euclid(self.q as i64) as u64;
            self.fill_box(ranges, axis + 1, coords);
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn resolution(&self) -> u64 {
        self.q
    }

    pub fn membership(&self) -> &[bool] {
        &self.membership
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.membership.iter().any(|&b| b)
    }

    pub fn count(&self) -> usize {
        self.membership.iter().filter(|&&b| b).count()
    }

    /// Exact Lebesgue measure `|cells| / Q^d`.
    pub fn measure(&self) -> Rational {
        Rational::new(self.count().into(), BigInt::from(self.len()))
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .fold(0usize, |acc, &x| acc * self.q as usize + x as usize)
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.d];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.q as usize) as u64;
            index /= self.q as usize;
        }
        out
    }

    pub fn contains(&self, coords: &[u64]) -> bool {
        self.membership[self.index(coords)]
    }

    pub fn set(&mut self, coords: &[u64], value: bool) {
        let i = self.index(coords);
        self.membership[i] = value;
    }

    pub fn cells(&self) -> Vec<Vec<u64>> {
        (0..self.len())
            .filter(|&i| self.membership[i])
            .map(|i| self.coords(i))
            .collect()
    }

    /// The same set at resolution `Q * factor`.
    pub fn refine(&self, factor: u64) -> Result<Self> {
        if factor == 1 {
            return Ok(self.clone());
        }
        let mut out = Self::empty(
            self.d,
            self.q
                .checked_mul(factor)
                .ok_or(TileError::ArithmeticOverflow("resolution"))?,
        )?;
        let (fine, coarse) = (out.q as usize, self.q as usize);
        for i in 0..out.len() {
            let (mut rest, mut src, mut weight) = (i, 0, 1);
            for _ in 0..self.d {
                src += (rest % fine) / factor as usize * weight;
                rest /= fine;
                weight *= coarse;
            }
            out.membership[i] = self.membership[src];
        }
        Ok(out)
    }

    /// The same set at resolution `target`, which must be a multiple of `Q`.
    pub fn at_resolution(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.q) {
            return Err(TileError::InvalidInput(format!(
                "resolution {target} is not a multiple of {}",
                self.q
            )));
        }
        self.refine(target / self.q)
    }

    /// Translate by a shift whose coordinates are multiples of `1/Q`.
    pub fn translate(&self, shift: &[Rational]) -> Result<Self> {
        let steps = self.grid_steps(shift)?;
        let mut out = Self::empty(self.d, self.q)?;
        let q = self.q as usize;
        for i in (0..self.len()).filter(|&i| self.membership[i]) {
            let (mut rest, mut dst, mut weight) = (i, 0, 1);
            for &s in steps.iter().rev() {
                dst += (rest % q + s as usize) % q * weight;
                rest /= q;
                weight *= q;
            }
            out.membership[dst] = true;
        }
        Ok(out)
    }

    /// `shift * Q` reduced into `[0, Q)`, coordinate by coordinate.
    pub fn grid_steps(&self, shift: &[Rational]) -> Result<Vec<u64>> {
        if shift.len() != self.d {
            return Err(TileError::SpecMismatch("shift has wrong dimension".into()));
        }
        let qr = Rational::from_integer(self.q.into());
        shift
            .iter()
            .map(|s| {
                let k = s * &qr;
                if !k.is_integer() {
                    return Err(TileError::InvalidInput(format!(
                        "shift coordinate {s} is off the 1/{} grid",
                        self.q
                    )));
                }
                Ok(k.to_integer()
                    .mod_floor(&BigInt::from(self.q))
                    .to_u64()
                    .expect("reduced below Q"))
            })
            .collect()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.d != other.d || self.q != other.q {
            return Err(TileError::SpecMismatch(
                "cell sets on different grids".into(),
            ));
        }
        Ok(Self {
            d: self.d,
            q: self.q,
            membership: self
                .membership
                .iter()
                .zip(&other.membership)
                .map(|(a, b)| *a || *b)
                .collect(),
        })
    }

    /// Connectivity through shared faces, with wraparound.
    pub fn is_edge_connected(&self) -> bool {
        let Some(start) = self.membership.iter().position(|&b| b) else {
            return false;
        };
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            let c = self.coords(i);
            for axis in 0..self.d {
                for delta in [1, self.q - 1] {
                    let mut n = c.clone();
                    n[axis] = (n[axis] + delta) % self.q;
                    let j = self.index(&n);
                    if self.membership[j] && !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        reached == self.count()
    }

    /// Swaps the two coordinates of a planar set.
    pub fn transpose(&self) -> Result<Self> {
        if self.d != 2 {
            return Err(TileError::Unsupported("transpose needs d = 2".into()));
        }
        let mut out = Self::empty(2, self.q)?;
        for c in self.cells() {
            out.set(&[c[1], c[0]], true);
        }
        Ok(out)
    }

    /// The grid `(Z/Q)^d` as a quotient of `Z^d`, with matching point order.
    pub fn quotient(&self) -> Result<QuotientSpec> {
        QuotientSpec::new(GroupSpec::free(self.d), vec![self.q; self.d])
    }

    pub fn to_periodic_set(&self) -> Result<PeriodicSet> {
        PeriodicSet::new(self.quotient()?, self.membership.clone())
    }
}

/// Smallest resolution that is a multiple of `q` and puts every shift on the grid.
pub fn common_resolution<'a>(
    q: u64,
    shifts: impl IntoIterator<Item = &'a Vec<Rational>>,
) -> Result<u64> {
    let l = lcm_denominators(shifts.into_iter().flatten());
    let r = l.lcm(&BigInt::from(q));
    r.to_u64()
        .filter(|r| !r.is_zero())
        .ok_or(TileError::CapacityExceeded {
            what: "torus resolution",
            needed: u128::MAX,
            cap: crate::limits::domain_cap(),
        })
}

#[derive(Serialize, Deserialize)]
struct RawCells {
    d: usize,
    #[serde(rename = "Q")]
    q: u64,
    cells: Vec<Vec<u64>>,
}

impl Serialize for CellSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCells {
            d: self.d,
            q: self.q,
            cells: self.cells(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CellSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCells::deserialize(d)?;
        CellSet::from_cells(raw.d, raw.q, &raw.cells).map_err(serde::de::Error::custom)
    }
}
