//! Flag vectors in the f, h, ℓ and L bases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};
use crate::subset::{full, key, parse_key, MAX_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    F,
    H,
    #[serde(rename = "ELL")]
    Ell,
    L,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::F => "F",
            Basis::H => "H",
            Basis::Ell => "ELL",
            Basis::L => "L",
        };
        f.write_str(s)
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F" => Ok(Basis::F),
            "H" => Ok(Basis::H),
            "ELL" | "ℓ" => Ok(Basis::Ell),
            "L" => Ok(Basis::L),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// Exact rational values indexed by the subsets of `[1,n]` (dense, by mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    n: usize,
    basis: Basis,
    entries: Vec<Q>,
}

impl FlagVector {
    pub fn zero(n: usize, basis: Basis) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::RankOverflow(n));
        }
        Ok(Self { n, basis, entries: vec![Q::zero(); 1 << n] })
    }

    pub fn from_entries(n: usize, basis: Basis, entries: Vec<Q>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::RankOverflow(n));
        }
        if entries.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: n, found: entries.len() });
        }
        Ok(Self { n, basis, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Q> {
        self.entries
    }

    pub fn get(&self, mask: u32) -> &Q {
        &self.entries[mask as usize]
    }

    pub fn set(&mut self, mask: u32, v: Q) {
        self.entries[mask as usize] = v;
    }

    /// Entry at the subset given by its ranks.
    pub fn at(&self, ranks: &[usize]) -> &Q {
        let mask = ranks.iter().fold(0u32, |m, &r| m | crate::subset::bit(r));
        self.get(mask)
    }

    pub fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::WrongBasis { expected: basis.to_string(), found: self.basis.to_string() });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { n: self.n, basis: self.basis, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        other.expect_basis(self.basis)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, basis: self.basis, entries })
    }

    /// Coordinates relabelled by `S -> {n+1-s}`; this is the flag vector of
    /// the dual poset in every basis.
    pub fn reversed(&self) -> Self {
        let mut entries = vec![Q::zero(); self.entries.len()];
        for (m, v) in self.entries.iter().enumerate() {
            entries[crate::subset::reverse(m as u32, self.n) as usize] = v.clone();
        }
        Self { n: self.n, basis: self.basis, entries }
    }

    /// Masks with a nonzero entry.
    pub fn support(&self) -> Vec<u32> {
        (0..=full(self.n)).filter(|&m| !self.entries[m as usize].is_zero()).collect()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer() && !v.is_negative())
    }

    pub fn to_json(&self) -> FlagVectorJson {
        FlagVectorJson {
            n: self.n,
            basis: self.basis,
            entries: (0..=full(self.n)).map(|m| (key(m), format_q(&self.entries[m as usize]))).collect(),
        }
    }

    pub fn from_json(j: &FlagVectorJson) -> Result<Self> {
        let mut v = Self::zero(j.n, j.basis)?;
        for (k, val) in &j.entries {
            let m = parse_key(k, j.n)?;
            v.set(m, parse_q(val)?);
        }
        Ok(v)
    }
}

/// Wire format: `{ "n", "basis", "entries": { "1,3": "p/q", ... } }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagVectorJson {
    pub n: usize,
    pub basis: Basis,
    pub entries: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn json_round_trip() {
        let mut v = FlagVector::zero(3, Basis::L).unwrap();
        v.set(0b011, q_frac(-1, 2));
        v.set(0, q(2));
        let j = serde_json::to_string(&v.to_json()).unwrap();
        let back: FlagVectorJson = serde_json::from_str(&j).unwrap();
        assert_eq!(FlagVector::from_json(&back).unwrap(), v);
        assert!(j.contains("\"1,2\":\"-1/2\""));
        assert!(j.contains("\"\":\"2\""));
        assert!(j.contains("\"basis\":\"L\""));
    }

    #[test]
    fn reversal() {
        let mut v = FlagVector::zero(3, Basis::F).unwrap();
        v.set(0b001, q(5));
        assert_eq!(v.reversed().at(&[3]), &q(5));
    }

    #[test]
    fn wrong_sizes() {
        assert!(FlagVector::from_entries(2, Basis::F, vec![q(1)]).is_err());
        assert!(FlagVector::zero(21, Basis::F).is_err());
    }
}
