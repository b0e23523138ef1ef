//! Finitely generated abelian groups `Z^d x Z/n_1 x ... x Z/n_k`, their finite
//! quotients, and integer group-ring arithmetic over those quotients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TileError};
use crate::limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    pub torsion_orders: Vec<u64>,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion_orders: Vec<u64>) -> Result<Self> {
        if let Some(n) = torsion_orders.iter().find(|&&n| n < 2) {
            return Err(TileError::InvalidSpec(format!("torsion order {n} < 2")));
        }
        Ok(Self {
            free_rank,
            torsion_orders,
        })
    }

    /// `Z/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(TileError::InvalidSpec("Z/0 is not finite".into())),
            1 => Self::new(0, vec![]),
            _ => Self::new(0, vec![n]),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion_orders: vec![],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_size(&self) -> u128 {
        self.torsion_orders.iter().map(|&n| u128::from(n)).product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free_part: vec![0; self.free_rank],
            torsion_part: vec![0; self.torsion_orders.len()],
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.free_part.len() != self.free_rank || g.torsion_part.len() != self.torsion_orders.len()
        {
            return Err(TileError::SpecMismatch(format!(
                "element has shape ({}|{}), group has ({}|{})",
                g.free_part.len(),
                g.torsion_part.len(),
                self.free_rank,
                self.torsion_orders.len()
            )));
        }
        for (&r, &n) in g.torsion_part.iter().zip(&self.torsion_orders) {
            if r >= n {
                return Err(TileError::SpecMismatch(format!(
                    "residue {r} not reduced mod {n}"
                )));
            }
        }
        Ok(())
    }

    /// Builds an element from signed torsion residues, reducing them.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_orders.len() {
            return Err(TileError::SpecMismatch("coordinate count".into()));
        }
        let torsion_part = torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&t, &n)| t.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement {
            free_part: free,
            torsion_part,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    #[serde(rename = "free")]
    pub free_part: Vec<i64>,
    #[serde(rename = "torsion")]
    pub torsion_part: Vec<u64>,
}

impl GroupElement {
    /// Element of a finite group given by its torsion residues.
    pub fn torsion(residues: Vec<u64>) -> Self {
        Self {
            free_part: vec![],
            torsion_part: residues,
        }
    }

    pub fn free(coords: Vec<i64>) -> Self {
        Self {
            free_part: coords,
            torsion_part: vec![],
        }
    }
}

pub fn group_add(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    spec.check(g)?;
    spec.check(h)?;
    let free_part = g
        .free_part
        .iter()
        .zip(&h.free_part)
        .map(|(a, b)| {
            a.checked_add(*b)
                .ok_or(TileError::ArithmeticOverflow("group_add"))
        })
        .collect::<Result<_>>()?;
    let torsion_part = g
        .torsion_part
        .iter()
        .zip(&h.torsion_part)
        .zip(&spec.torsion_orders)
        .map(|((a, b), n)| (a + b) % n)
        .collect();
    Ok(GroupElement {
        free_part,
        torsion_part,
    })
}

pub fn group_neg(spec: &GroupSpec, g: &GroupElement) -> Result<GroupElement> {
    scalar_dilate(spec, -1, g)
}

/// `r * g`; negative `r` allowed.
pub fn scalar_dilate(spec: &GroupSpec, r: i64, g: &GroupElement) -> Result<GroupElement> {
    spec.check(g)?;
    let free_part = g
        .free_part
        .iter()
        .map(|a| {
            a.checked_mul(r)
                .ok_or(TileError::ArithmeticOverflow("scalar_dilate"))
        })
        .collect::<Result<_>>()?;
    let torsion_part = g
        .torsion_part
        .iter()
        .zip(&spec.torsion_orders)
        .map(|(&a, &n)| {
            let n = i128::from(n);
            (i128::from(a) * i128::from(r)).rem_euclid(n) as u64
        })
        .collect();
    Ok(GroupElement {
        free_part,
        torsion_part,
    })
}

/// A finite quotient `Z/N_1 x ... x Z/N_d x torsion` of a [`GroupSpec`].
///
/// Points of the fundamental domain are indexed in row-major mixed radix over
/// [`QuotientSpec::moduli`] (free coordinates first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientSpec {
    parent: GroupSpec,
    periods: Vec<u64>,
    #[serde(skip)]
    moduli: Vec<u64>,
    #[serde(skip)]
    size: usize,
}

impl<'de> Deserialize<'de> for QuotientSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            parent: GroupSpec,
            periods: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        let parent = GroupSpec::new(raw.parent.free_rank, raw.parent.torsion_orders)
            .map_err(serde::de::Error::custom)?;
        QuotientSpec::new(parent, raw.periods).map_err(serde::de::Error::custom)
    }
}

impl QuotientSpec {
    pub fn new(parent: GroupSpec, periods: Vec<u64>) -> Result<Self> {
        if periods.len() != parent.free_rank {
            return Err(TileError::SpecMismatch(format!(
                "{} periods for free rank {}",
                periods.len(),
                parent.free_rank
            )));
        }
        if periods.contains(&0) {
            return Err(TileError::InvalidSpec("period 0".into()));
        }
        let moduli: Vec<u64> = periods
            .iter()
            .chain(&parent.torsion_orders)
            .copied()
            .collect();
        let needed = moduli
            .iter()
            .try_fold(1u128, |acc, &m| acc.checked_mul(u128::from(m)))
            .unwrap_or(u128::MAX);
        let size = limits::check_domain("fundamental domain", needed)?;
        Ok(Self {
            parent,
            periods,
            moduli,
            size,
        })
    }

    /// The group itself, when it is already finite.
    pub fn finite(spec: GroupSpec) -> Result<Self> {
        if !spec.is_finite() {
            return Err(TileError::InvalidSpec(
                "free rank > 0 needs explicit periods".into(),
            ));
        }
        Self::new(spec, vec![])
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::finite(GroupSpec::cyclic(n)?)
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Reduces free coordinates into `[0, N_i)`.
    pub fn reduce(&self, g: &GroupElement) -> Result<GroupElement> {
        self.parent.check(g)?;
        let free_part = g
            .free_part
            .iter()
            .zip(&self.periods)
            .map(|(&a, &n)| a.rem_euclid(n as i64))
            .collect();
        Ok(GroupElement {
            free_part,
            torsion_part: g.torsion_part.clone(),
        })
    }

    pub fn is_reduced(&self, g: &GroupElement) -> bool {
        self.parent.check(g).is_ok()
            && g.free_part
                .iter()
                .zip(&self.periods)
                .all(|(&a, &n)| a >= 0 && (a as u64) < n)
    }

    fn ensure_reduced(&self, g: &GroupElement) -> Result<()> {
        if self.is_reduced(g) {
            Ok(())
        } else {
            Err(TileError::SpecMismatch(format!(
                "{g:?} is not reduced modulo the quotient"
            )))
        }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.ensure_reduced(g)?;
        let digits = g
            .free_part
            .iter()
            .map(|&a| a as u64)
            .chain(g.torsion_part.iter().copied());
        Ok(self.encode(digits))
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let digits = self.decode(index);
        let d = self.periods.len();
        GroupElement {
            free_part: digits[..d].iter().map(|&x| x as i64).collect(),
            torsion_part: digits[d..].to_vec(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(|i| self.element(i))
    }

    pub fn decode(&self, mut index: usize) -> Vec<u64> {
        let mut digits = vec![0u64; self.moduli.len()];
        for (slot, &m) in digits.iter_mut().zip(&self.moduli).rev() {
            *slot = index as u64 % m;
            index /= m as usize;
        }
        digits
    }

    pub fn encode(&self, digits: impl IntoIterator<Item = u64>) -> usize {
        digits
            .into_iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (x, &m)| acc * m as usize + x as usize)
    }

    pub fn add_idx(&self, i: usize, j: usize) -> usize {
        self.digitwise(i, j, |x, y, m| (x + y) % m)
    }

    pub fn sub_idx(&self, i: usize, j: usize) -> usize {
        self.digitwise(i, j, |x, y, m| (x + m - y) % m)
    }

    /// Combines two indices digit by digit, least significant digit first.
    fn digitwise(
        &self,
        mut i: usize,
        mut j: usize,
        op: impl Fn(usize, usize, usize) -> usize,
    ) -> usize {
        if let [m] = self.moduli[..] {
            return op(i, j, m as usize);
        }
        let (mut out, mut weight) = (0, 1);
        for &m in self.moduli.iter().rev() {
            let m = m as usize;
            out += op(i % m, j % m, m) * weight;
            i /= m;
            j /= m;
            weight *= m;
        }
        out
    }

    pub fn neg_idx(&self, i: usize) -> usize {
        self.sub_idx(0, i)
    }

    pub fn scale_idx(&self, r: i64, i: usize) -> usize {
        let scale = |x: usize, m: usize| (x as i128 * i128::from(r)).rem_euclid(m as i128) as usize;
        self.digitwise(i, 0, |x, _, m| scale(x, m))
    }

    /// Additive order of the point with the given index.
    pub fn order_of_idx(&self, i: usize) -> u64 {
        self.decode(i)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| m / num_integer::gcd(x, m))
            .fold(1, num_integer::lcm)
    }

    /// Table `t[x] = x + shift` over the whole fundamental domain.
    pub fn translation_table(&self, shift: usize) -> Vec<usize> {
        (0..self.size).map(|x| self.add_idx(x, shift)).collect()
    }
}

/// A finitely supported integer-valued function on a group.
///
/// Zero coefficients are never stored. Multisets are weights whose
/// coefficients are multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Weight {
    terms: BTreeMap<GroupElement, i64>,
}

#[derive(Serialize, Deserialize)]
struct WeightTerm {
    at: GroupElement,
    coeff: i64,
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<WeightTerm> = self
            .terms
            .iter()
            .map(|(g, &c)| WeightTerm {
                at: g.clone(),
                coeff: c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<WeightTerm>::deserialize(d)?;
        let mut w = Weight::new();
        for t in terms {
            w.add_term(t.at, t.coeff)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(w)
    }
}

impl Weight {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(g: GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, 1);
        Self { terms }
    }

    /// Indicator of a set; repeated elements are counted once.
    pub fn indicator<'a>(set: impl IntoIterator<Item = &'a GroupElement>) -> Self {
        Self {
            terms: set.into_iter().map(|g| (g.clone(), 1)).collect(),
        }
    }

    /// Multiplicity function of a multiset.
    pub fn multiset(items: impl IntoIterator<Item = GroupElement>) -> Self {
        let mut terms = BTreeMap::new();
        for g in items {
            *terms.entry(g).or_insert(0) += 1;
        }
        Self { terms }
    }

    pub fn add_term(&mut self, g: GroupElement, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(g).or_insert(0);
        *slot = slot
            .checked_add(c)
            .ok_or(TileError::ArithmeticOverflow("weight"))?;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn get(&self, g: &GroupElement) -> i64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, i64)> {
        self.terms.iter().map(|(g, &c)| (g, c))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients (the cardinality, for a multiset).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Coefficients reduced into `[0, p)`; zeros dropped.
    pub fn mod_p(&self, p: u64) -> Weight {
        let p = p as i64;
        Self {
            terms: self
                .terms
                .iter()
                .map(|(g, &c)| (g.clone(), c.rem_euclid(p)))
                .filter(|&(_, c)| c != 0)
                .collect(),
        }
    }

    /// Keys reduced modulo the quotient, merging coefficients.
    pub fn reduce(&self, q: &QuotientSpec) -> Result<Weight> {
        let mut out = Weight::new();
        for (g, c) in self.iter() {
            out.add_term(q.reduce(g)?, c)?;
        }
        Ok(out)
    }

    fn ensure_reduced(&self, q: &QuotientSpec) -> Result<()> {
        self.terms.keys().try_for_each(|g| q.ensure_reduced(g))
    }

    /// Dense coefficient vector over the fundamental domain.
    pub fn to_dense(&self, q: &QuotientSpec) -> Result<Vec<i64>> {
        let mut out = vec![0i64; q.size()];
        for (g, c) in self.iter() {
            out[q.index_of(g)?] = c;
        }
        Ok(out)
    }
}

/// Exact convolution `(w1 * w2)(x) = sum_y w1(y) w2(x - y)` over the quotient.
pub fn convolve(q: &QuotientSpec, w1: &Weight, w2: &Weight) -> Result<Weight> {
    convolve_inner(q, w1, w2, None)
}

fn convolve_inner(
    q: &QuotientSpec,
    w1: &Weight,
    w2: &Weight,
    modulus: Option<i64>,
) -> Result<Weight> {
    w1.ensure_reduced(q)?;
    w2.ensure_reduced(q)?;
    let left: Vec<(usize, i64)> = w1
        .iter()
        .map(|(g, c)| Ok((q.index_of(g)?, c)))
        .collect::<Result<_>>()?;
    let right: Vec<(usize, i64)> = w2
        .iter()
        .map(|(g, c)| Ok((q.index_of(g)?, c)))
        .collect::<Result<_>>()?;
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for &(i, a) in &left {
        for &(j, b) in &right {
            let prod = a
                .checked_mul(b)
                .ok_or(TileError::ArithmeticOverflow("convolve"))?;
            let slot = acc.entry(q.add_idx(i, j)).or_insert(0);
            *slot = slot
                .checked_add(prod)
                .ok_or(TileError::ArithmeticOverflow("convolve"))?;
            if let Some(m) = modulus {
                *slot = slot.rem_euclid(m);
            }
        }
    }
    Ok(Weight {
        terms: acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (q.element(i), c))
            .collect(),
    })
}

pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub p: u64,
    pub holds: bool,
    /// `1_F^{*p}` with coefficients reduced mod `p`.
    pub lhs: Weight,
    /// Multiplicities of the multiset `pF`, reduced mod `p`.
    pub rhs: Weight,
}

/// Checks `1_F^{*p} = 1_{pF} (mod p)` coefficientwise over the quotient.
pub fn frobenius_check(q: &QuotientSpec, tile: &[GroupElement], p: i64) -> Result<FrobeniusReport> {
    if !is_prime(p) {
        return Err(TileError::InvalidPrime(p));
    }
    if tile.is_empty() {
        return Err(TileError::InvalidInput("empty tile".into()));
    }
    let indicator = Weight::indicator(tile);
    indicator.ensure_reduced(q)?;
    let mut lhs = indicator.clone();
    for _ in 1..p {
        lhs = convolve_inner(q, &lhs, &indicator, Some(p))?;
    }
    let lhs = lhs.mod_p(p as u64);
    let dilated = indicator
        .iter()
        .map(|(g, _)| Ok(q.element(q.scale_idx(p, q.index_of(g)?))))
        .collect::<Result<Vec<_>>>()?;
    let rhs = Weight::multiset(dilated).mod_p(p as u64);
    Ok(FrobeniusReport {
        p: p as u64,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}
