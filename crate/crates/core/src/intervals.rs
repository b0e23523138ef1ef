//! Rational step functions on the line, exact convolution with finite
//! multisets, and the classifier for connected-support interval tilings.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TileError};
use crate::rational::{format_rational, serde_rational, serde_rational_vec, Rational};

/// A nonnegative, finitely supported rational step function in canonical form:
/// `values[i]` holds on `(breakpoints[i], breakpoints[i+1])`, adjacent values
/// differ, and the first and last values are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStep")]
pub struct StepFunction {
    #[serde(with = "serde_rational_vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    values: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawStep {
    #[serde(with = "serde_rational_vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    values: Vec<Rational>,
}

impl TryFrom<RawStep> for StepFunction {
    type Error = TileError;

    fn try_from(raw: RawStep) -> Result<Self> {
        Self::new(raw.breakpoints, raw.values)
    }
}

impl StepFunction {
    pub fn zero() -> Self {
        Self {
            breakpoints: vec![],
            values: vec![],
        }
    }

    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.is_empty() && values.is_empty() {
            return Ok(Self::zero());
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(TileError::InvalidInput(
                "need exactly one value per breakpoint gap".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TileError::InvalidInput(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(TileError::InvalidInput(
                "step values must be nonnegative".into(),
            ));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    /// `value * 1_[lo, hi]`.
    pub fn constant_on(lo: Rational, hi: Rational, value: Rational) -> Result<Self> {
        Self::new(vec![lo, hi], vec![value])
    }

    pub fn indicator(lo: Rational, hi: Rational) -> Result<Self> {
        Self::constant_on(lo, hi, Rational::one())
    }

    /// Indicator of a union of intervals, which may touch or overlap.
    pub fn indicator_union(intervals: &[(Rational, Rational)]) -> Result<Self> {
        let mut acc = Self::zero();
        for (lo, hi) in intervals {
            acc = acc.add(&Self::indicator(lo.clone(), hi.clone())?);
        }
        let values = acc
            .values
            .iter()
            .map(|v| {
                if v.is_zero() {
                    v.clone()
                } else {
                    Rational::one()
                }
            })
            .collect();
        Ok(Self::canonical(acc.breakpoints, values))
    }

    fn canonical(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Self {
        let mut bps: Vec<Rational> = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<Rational> = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            if vals.last() == Some(&v) {
                continue;
            }
            bps.push(breakpoints[i].clone());
            vals.push(v);
        }
        if let Some(last) = breakpoints.last() {
            bps.push(last.clone());
        }
        while vals.first().is_some_and(|v| v.is_zero()) {
            vals.remove(0);
            bps.remove(0);
        }
        while vals.last().is_some_and(|v| v.is_zero()) {
            vals.pop();
            bps.pop();
        }
        if vals.is_empty() {
            return Self::zero();
        }
        Self {
            breakpoints: bps,
            values: vals,
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the open piece containing `x`; 0 off the support. At a
    /// breakpoint the value of the piece to its right is returned.
    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() || x < &self.breakpoints[0] || x >= self.breakpoints.last().unwrap() {
            return Rational::zero();
        }
        let i = self.breakpoints.partition_point(|b| b <= x) - 1;
        self.values[i].clone()
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        if c.is_negative() {
            return Err(TileError::InvalidInput("negative scale".into()));
        }
        Ok(Self::canonical(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * c).collect(),
        ))
    }

    pub fn shift(&self, t: &Rational) -> Self {
        Self {
            breakpoints: self.breakpoints.iter().map(|b| b + t).collect(),
            values: self.values.clone(),
        }
    }

    /// `x -> self(lo + x * width)`; `width` must be positive.
    fn reparametrize(&self, lo: &Rational, width: &Rational) -> Self {
        Self {
            breakpoints: self.breakpoints.iter().map(|b| (b - lo) / width).collect(),
            values: self.values.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        sum_of(&[(self, Rational::zero(), 1)][..], other)
    }

    /// Maximal closed intervals on which the function is positive.
    pub fn support_intervals(&self) -> Vec<(Rational, Rational)> {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (i, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (lo, hi) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            match out.last_mut() {
                Some(last) if &last.1 == lo => last.1 = hi.clone(),
                _ => out.push((lo.clone(), hi.clone())),
            }
        }
        out
    }

    /// `sum_i values[i] * length_i`.
    pub fn integral(&self) -> Rational {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v * (&self.breakpoints[i + 1] - &self.breakpoints[i]))
            .sum()
    }

    pub fn is_indicator_of(&self, lo: &Rational, hi: &Rational) -> bool {
        self.breakpoints.len() == 2
            && &self.breakpoints[0] == lo
            && &self.breakpoints[1] == hi
            && self.values[0].is_one()
    }

    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| {
                format!(
                    "{}*1[{},{}]",
                    format_rational(v),
                    format_rational(&self.breakpoints[i]),
                    format_rational(&self.breakpoints[i + 1])
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `other + sum_j m_j * psi_j(x - t_j)` for the given shifted copies.
fn sum_of(terms: &[(&StepFunction, Rational, u64)], other: &StepFunction) -> StepFunction {
    let mut cuts: BTreeSet<Rational> = other.breakpoints.iter().cloned().collect();
    for (psi, t, _) in terms {
        cuts.extend(psi.breakpoints.iter().map(|b| b + t));
    }
    let cuts: Vec<Rational> = cuts.into_iter().collect();
    if cuts.len() < 2 {
        return StepFunction::zero();
    }
    let two = Rational::from_integer(2.into());
    let values = cuts
        .windows(2)
        .map(|w| {
            let mid = (&w[0] + &w[1]) / &two;
            let mut v = other.eval(&mid);
            for (psi, t, m) in terms {
                v += psi.eval(&(&mid - t)) * Rational::from_integer((*m).into());
            }
            v
        })
        .collect();
    StepFunction::canonical(cuts, values)
}

/// A finite multiset of rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<MultisetEntry>", into = "Vec<MultisetEntry>")]
pub struct RationalMultiset {
    entries: BTreeMap<Rational, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct MultisetEntry {
    #[serde(with = "serde_rational")]
    at: Rational,
    mult: u64,
}

impl From<Vec<MultisetEntry>> for RationalMultiset {
    fn from(v: Vec<MultisetEntry>) -> Self {
        Self::from_pairs(v.into_iter().map(|e| (e.at, e.mult)))
    }
}

impl From<RationalMultiset> for Vec<MultisetEntry> {
    fn from(m: RationalMultiset) -> Self {
        m.entries
            .into_iter()
            .map(|(at, mult)| MultisetEntry { at, mult })
            .collect()
    }
}

impl RationalMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, u64)>) -> Self {
        let mut out = Self::new();
        for (x, m) in pairs {
            out.insert(x, m);
        }
        out
    }

    pub fn from_points(points: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_pairs(points.into_iter().map(|x| (x, 1)))
    }

    pub fn insert(&mut self, x: Rational, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.entries.entry(x).or_insert(0) += mult;
    }

    /// `(point, multiplicity)` in increasing order of point.
    pub fn sorted(&self) -> Vec<(Rational, u64)> {
        self.entries.iter().map(|(x, &m)| (x.clone(), m)).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `sum_j m_j * psi(x - f_j)`.
pub fn step_convolve(f: &RationalMultiset, psi: &StepFunction) -> StepFunction {
    let pts = f.sorted();
    let terms: Vec<(&StepFunction, Rational, u64)> =
        pts.into_iter().map(|(x, m)| (psi, x, m)).collect();
    sum_of(&terms, &StepFunction::zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedClassification {
    pub m: u64,
    #[serde(with = "serde_rational")]
    pub c: Rational,
    #[serde(with = "serde_rational")]
    pub c_prime: Rational,
}

/// Given `1_F * psi = 1_[a,b]` with `psi` supported on one interval, finds
/// `m` and `[c, c']` with `m * psi = 1_[c,c']`.
///
/// The work is done after normalizing `[a,b]` to `[0,1]` and `min F` to `0`.
/// Also checks that the extreme multiplicities of `F` both equal `m` and that
/// `c' - c` is at most the last gap of `F`.
pub fn classify_connected(
    f: &RationalMultiset,
    psi: &StepFunction,
    a: &Rational,
    b: &Rational,
) -> Result<ConnectedClassification> {
    if psi.support_intervals().len() > 1 {
        return Err(TileError::ConnectedRequired);
    }
    if f.is_empty() {
        return Err(TileError::PremiseViolation("empty multiset".into()));
    }
    if a >= b {
        return Err(TileError::PremiseViolation("need a < b".into()));
    }
    if !step_convolve(f, psi).is_indicator_of(a, b) {
        return Err(TileError::PremiseViolation(
            "1_F * psi is not the indicator of [a,b]".into(),
        ));
    }

    let pts = f.sorted();
    let f_min = pts[0].0.clone();
    let width = b - a;
    let normalized_f =
        RationalMultiset::from_pairs(pts.iter().map(|(x, m)| ((x - &f_min) / &width, *m)));
    let normalized_psi = psi.reparametrize(&(a - &f_min), &width);
    debug_assert!(step_convolve(&normalized_f, &normalized_psi)
        .is_indicator_of(&Rational::zero(), &Rational::one()));

    let support = normalized_psi.support_intervals();
    let (lo, hi) = support
        .first()
        .cloned()
        .ok_or_else(|| TileError::LemmaViolation("psi vanishes".into()))?;
    let vals = normalized_psi.values();
    if vals.iter().any(|v| v != &vals[0]) {
        return Err(TileError::LemmaViolation(
            "psi is not constant on its support".into(),
        ));
    }
    let inv = vals[0].recip();
    if !inv.is_integer() {
        return Err(TileError::LemmaViolation(format!(
            "psi takes value {} on its support",
            format_rational(&vals[0])
        )));
    }
    let m: u64 = inv
        .to_integer()
        .try_into()
        .map_err(|_| TileError::LemmaViolation("multiplicity out of range".into()))?;

    let (m_first, m_last) = (pts[0].1, pts[pts.len() - 1].1);
    if m_first != m || m_last != m {
        return Err(TileError::LemmaViolation(format!(
            "extreme multiplicities {m_first}, {m_last} differ from m = {m}"
        )));
    }
    if pts.len() > 1 {
        let last_gap = &pts[pts.len() - 1].0 - &pts[pts.len() - 2].0;
        if (&hi - &lo) * &width > last_gap {
            return Err(TileError::LemmaViolation(
                "support longer than the last gap of F".into(),
            ));
        }
    }
    let back = |u: &Rational| a - &f_min + u * &width;
    Ok(ConnectedClassification {
        m,
        c: back(&lo),
        c_prime: back(&hi),
    })
}
