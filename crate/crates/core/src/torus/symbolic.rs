//! Scalars and vectors of the form `rational + sum_s c_s * alpha_s`, where the
//! formal symbols `alpha_s` and `1` are linearly independent over `Q`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, TileError};
use crate::rational::{format_rational, frac, serde_rational, serde_rational_vec, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicScalar {
    pub rational: Rational,
    irr: BTreeMap<String, Rational>,
}

impl SymbolicScalar {
    pub fn rational(r: Rational) -> Self {
        Self {
            rational: r,
            irr: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str) -> Self {
        Self::rational(Rational::zero()).plus_symbol(name, Rational::from_integer(1.into()))
    }

    /// Adds `coeff * name`.
    pub fn plus_symbol(mut self, name: &str, coeff: Rational) -> Self {
        let entry = self
            .irr
            .entry(name.to_string())
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.irr.remove(name);
        }
        self
    }

    pub fn irrational_coeffs(&self) -> &BTreeMap<String, Rational> {
        &self.irr
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_empty()
    }

    /// The purely symbolic part (rational part dropped).
    pub fn symbolic_part(&self) -> Self {
        Self {
            rational: Rational::zero(),
            irr: self.irr.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::rational(&self.rational + &other.rational);
        out.irr = self.irr.clone();
        for (s, c) in &other.irr {
            out = out.plus_symbol(s, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            rational: -&self.rational,
            irr: self.irr.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            rational: &self.rational * c,
            irr: self.irr.iter().map(|(s, v)| (s.clone(), v * c)).collect(),
        }
    }

    /// Equal modulo the integers.
    pub fn congruent_mod_one(&self, other: &Self) -> bool {
        let d = self.sub(other);
        d.is_rational() && d.rational.is_integer()
    }

    pub fn substitute(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut out = self.rational.clone();
        for (s, c) in &self.irr {
            let v = values
                .get(s)
                .ok_or_else(|| TileError::InvalidInput(format!("no value for symbol {s}")))?;
            out += c * v;
        }
        Ok(out)
    }

    pub fn substitute_f64(&self, values: &BTreeMap<String, f64>) -> Result<f64> {
        let mut out = crate::rational::to_f64(&self.rational);
        for (s, c) in &self.irr {
            let v = values
                .get(s)
                .ok_or_else(|| TileError::InvalidInput(format!("no value for symbol {s}")))?;
            out += crate::rational::to_f64(c) * v;
        }
        Ok(out)
    }

    /// Rational part reduced into `[0, 1)`.
    pub fn reduce_mod_one(&self) -> Self {
        Self {
            rational: frac(&self.rational),
            irr: self.irr.clone(),
        }
    }
}

impl std::fmt::Display for SymbolicScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", format_rational(&self.rational))?;
        for (s, c) in &self.irr {
            write!(f, " + {}*{}", format_rational(c), s)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawScalar {
    #[serde(with = "serde_rational")]
    rat: Rational,
    #[serde(default)]
    irr: BTreeMap<String, String>,
}

impl Serialize for SymbolicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawScalar {
            rat: self.rational.clone(),
            irr: self
                .irr
                .iter()
                .map(|(k, v)| (k.clone(), format_rational(v)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawScalar::deserialize(d)?;
        let mut out = Self::rational(raw.rat);
        for (k, v) in raw.irr {
            let c = crate::rational::parse_rational(&v).map_err(serde::de::Error::custom)?;
            out = out.plus_symbol(&k, c);
        }
        Ok(out)
    }
}

/// A point of `R^d` with rational part and per-symbol coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicVector {
    rat: Vec<Rational>,
    irr: BTreeMap<String, Vec<Rational>>,
}

impl SymbolicVector {
    pub fn rational(rat: Vec<Rational>) -> Self {
        Self {
            rat,
            irr: BTreeMap::new(),
        }
    }

    pub fn from_components(components: &[SymbolicScalar]) -> Self {
        let d = components.len();
        let mut out = Self::rational(components.iter().map(|c| c.rational.clone()).collect());
        for (i, c) in components.iter().enumerate() {
            for (s, v) in &c.irr {
                let mut coeffs = vec![Rational::zero(); d];
                coeffs[i] = v.clone();
                out = out.plus_symbol(s, &coeffs);
            }
        }
        out
    }

    /// Adds `name * coeffs`.
    pub fn plus_symbol(mut self, name: &str, coeffs: &[Rational]) -> Self {
        assert_eq!(
            coeffs.len(),
            self.rat.len(),
            "coefficient vector has wrong dimension"
        );
        let entry = self
            .irr
            .entry(name.to_string())
            .or_insert_with(|| vec![Rational::zero(); coeffs.len()]);
        for (e, c) in entry.iter_mut().zip(coeffs) {
            *e += c;
        }
        if entry.iter().all(Zero::is_zero) {
            self.irr.remove(name);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.rat.len()
    }

    pub fn rational_part(&self) -> &[Rational] {
        &self.rat
    }

    pub fn irrational_coeffs(&self) -> &BTreeMap<String, Vec<Rational>> {
        &self.irr
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_empty()
    }

    pub fn symbolic_part(&self) -> Self {
        Self {
            rat: vec![Rational::zero(); self.dim()],
            irr: self.irr.clone(),
        }
    }

    pub fn component(&self, i: usize) -> SymbolicScalar {
        let mut out = SymbolicScalar::rational(self.rat[i].clone());
        for (s, c) in &self.irr {
            out = out.plus_symbol(s, c[i].clone());
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(TileError::SpecMismatch(format!(
                "dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::rational(
            self.rat
                .iter()
                .zip(&other.rat)
                .map(|(a, b)| a + b)
                .collect(),
        );
        out.irr = self.irr.clone();
        for (s, c) in &other.irr {
            out = out.plus_symbol(s, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut neg = Self::rational(other.rat.iter().map(|x| -x).collect());
        for (s, c) in &other.irr {
            let c: Vec<Rational> = c.iter().map(|x| -x).collect();
            neg = neg.plus_symbol(s, &c);
        }
        self.add(&neg)
    }

    pub fn substitute(&self, values: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
        (0..self.dim())
            .map(|i| self.component(i).substitute(values))
            .collect()
    }

    pub fn substitute_f64(&self, values: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.component(i).substitute_f64(values))
            .collect()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.irr.keys()
    }
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    #[serde(with = "serde_rational_vec")]
    rat: Vec<Rational>,
    #[serde(default)]
    irr: BTreeMap<String, Vec<String>>,
}

impl Serialize for SymbolicVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawVector {
            rat: self.rat.clone(),
            irr: self
                .irr
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(format_rational).collect()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawVector::deserialize(d)?;
        let mut out = Self::rational(raw.rat);
        for (k, v) in raw.irr {
            if v.len() != out.dim() {
                return Err(serde::de::Error::custom(format!(
                    "symbol {k} has {} coefficients",
                    v.len()
                )));
            }
            let coeffs = v
                .iter()
                .map(|x| crate::rational::parse_rational(x))
                .collect::<Result<Vec<_>>>()
                .map_err(serde::de::Error::custom)?;
            out = out.plus_symbol(&k, &coeffs);
        }
        Ok(out)
    }
}
