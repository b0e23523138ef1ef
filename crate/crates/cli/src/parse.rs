//! Command-line syntax for groups, elements and ranges.
//!
//! A group is a product of factors joined by `x`: `Z/n` is a torsion factor
//! and `Z(n)` a free factor taken with period `n`. Elements list one
//! coordinate per factor, in factor order. With a single factor, elements are
//! separated by commas (`0,1,2`); otherwise by semicolons (`0,1;1,0`).

use tilekit_core::{GroupElement, GroupSpec, QuotientSpec};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    Free(u64),
    Torsion(u64),
}

#[derive(Clone, Debug)]
pub struct GroupArg {
    factors: Vec<Factor>,
    pub quotient: QuotientSpec,
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad {what} '{s}'")))
}

pub fn group(s: &str) -> Result<GroupArg, CliError> {
    let mut factors = Vec::new();
    for part in s.split('x') {
        let part = part.trim();
        let factor = if let Some(n) = part.strip_prefix("Z/") {
            Factor::Torsion(number(n, "torsion order")?)
        } else if let Some(n) = part.strip_prefix("Z(").and_then(|p| p.strip_suffix(')')) {
            Factor::Free(number(n, "period")?)
        } else {
            return Err(CliError::Input(format!(
                "bad group factor '{part}' (expected Z/n or Z(n))"
            )));
        };
        factors.push(factor);
    }
    let periods: Vec<u64> = factors
        .iter()
        .filter_map(|f| match f {
            Factor::Free(p) => Some(*p),
            Factor::Torsion(_) => None,
        })
        .collect();
    let torsion: Vec<u64> = factors
        .iter()
        .filter_map(|f| match f {
            Factor::Torsion(n) => Some(*n),
            Factor::Free(_) => None,
        })
        .collect();
    let spec = GroupSpec::new(periods.len(), torsion)?;
    let quotient = QuotientSpec::new(spec, periods)?;
    Ok(GroupArg { factors, quotient })
}

impl GroupArg {
    fn element(&self, coords: &[i64]) -> Result<GroupElement, CliError> {
        if coords.len() != self.factors.len() {
            return Err(CliError::Input(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.factors.len()
            )));
        }
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (f, &c) in self.factors.iter().zip(coords) {
            match f {
                Factor::Free(_) => free.push(c),
                Factor::Torsion(_) => torsion.push(c),
            }
        }
        let g = self.quotient.parent().element(free, torsion)?;
        Ok(self.quotient.reduce(&g)?)
    }

    pub fn elements(&self, s: &str) -> Result<Vec<GroupElement>, CliError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(vec![]);
        }
        let items: Vec<Vec<i64>> = if self.factors.len() == 1 {
            s.split(',')
                .map(|c| Ok(vec![number(c, "coordinate")?]))
                .collect::<Result<_, CliError>>()?
        } else {
            s.split(';')
                .map(|e| e.split(',').map(|c| number(c, "coordinate")).collect())
                .collect::<Result<_, CliError>>()?
        };
        items.iter().map(|c| self.element(c)).collect()
    }
}

/// `a..b` (inclusive) or a comma-separated list.
pub fn int_range(s: &str) -> Result<Vec<i64>, CliError> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = number(lo, "range start")?;
        let hi: i64 = number(hi.trim_start_matches('='), "range end")?;
        if hi < lo {
            return Err(CliError::Input(format!("empty range '{s}'")));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|r| number(r, "integer")).collect()
}

pub fn u64_list(s: &str) -> Result<Vec<u64>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|r| number(r, "integer")).collect()
}

/// Semicolon-separated lists of comma-separated integers.
pub fn u64_rows(s: &str) -> Result<Vec<Vec<u64>>, CliError> {
    s.split(';').map(u64_list).collect()
}
