//! Integer chains over named graded bases.
//!
//! A chain is a finite integer linear combination of named basis elements of
//! a single degree. Zero coefficients are never stored, so equality of chains
//! is structural equality of the pruned coefficient maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A named generator of fixed degree.
///
/// Canonical names are dash-separated decimal vertex lists ("0-1-2"), which
/// keeps ordering stable and stays unambiguous for posets with ten or more
/// elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        BasisElement { name: name.into(), degree }
    }
}

/// Renders a strictly increasing vertex tuple as its canonical name.
pub fn tuple_name(vertices: &[usize]) -> String {
    vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
}

/// Parses a canonical name back into its vertex tuple.
pub fn parse_tuple(name: &str) -> Option<Vec<usize>> {
    name.split('-').map(|p| p.parse::<usize>().ok()).collect()
}

/// An integer chain of homogeneous degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, coeffs: BTreeMap::new() }
    }

    pub fn generator(name: impl Into<String>, degree: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.into(), 1);
        Chain { degree, coeffs }
    }

    /// Builds a chain from (name, coefficient) pairs, pruning zeros and
    /// summing repeats.
    pub fn from_pairs<I, S>(degree: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut coeffs: BTreeMap<String, i64> = BTreeMap::new();
        for (name, c) in pairs {
            let e = coeffs.entry(name.into()).or_insert(0);
            *e += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Chain { degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Chain) -> Result<Chain, ChainError> {
        if self.degree != other.degree {
            return Err(ChainError::DegreeMismatch(self.degree, other.degree));
        }
        let mut coeffs = self.coeffs.clone();
        for (name, c) in &other.coeffs {
            let e = coeffs.entry(name.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                coeffs.remove(name);
            }
        }
        Ok(Chain { degree: self.degree, coeffs })
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Chain {
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Chain {
        if k == 0 {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), k * c)).collect(),
        }
    }

    /// The set of basis names carrying a non-zero coefficient.
    pub fn support(&self) -> BTreeSet<String> {
        self.coeffs.keys().cloned().collect()
    }

    /// Splits into positive and negative parts: `self = plus - minus` with
    /// disjoint supports and non-negative coefficients on both sides.
    pub fn decompose_pm(&self) -> (Chain, Chain) {
        let mut plus = BTreeMap::new();
        let mut minus = BTreeMap::new();
        for (name, c) in &self.coeffs {
            if *c > 0 {
                plus.insert(name.clone(), *c);
            } else {
                minus.insert(name.clone(), -c);
            }
        }
        (
            Chain { degree: self.degree, coeffs: plus },
            Chain { degree: self.degree, coeffs: minus },
        )
    }

    /// True iff every coefficient is non-negative (the basis-generated cone).
    pub fn is_positive(&self) -> bool {
        self.coeffs.values().all(|c| *c >= 0)
    }

    /// Compact printer used for cell identifiers: `01+2.013` means
    /// `(0-1) + 2·(0-1-3)` with the dashes dropped when every vertex is a
    /// single digit.
    pub fn compact(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (name, c) in &self.coeffs {
            let compact_name = if name.split('-').all(|p| p.len() == 1) {
                name.replace('-', "")
            } else {
                name.clone()
            };
            if *c == 1 {
                parts.push(compact_name);
            } else {
                parts.push(format!("{c}.{compact_name}"));
            }
        }
        parts.join("+")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (name, c) in &self.coeffs {
            if first {
                match *c {
                    1 => write!(f, "({name})")?,
                    -1 => write!(f, "-({name})")?,
                    c => write!(f, "{c}({name})")?,
                }
                first = false;
            } else {
                match *c {
                    1 => write!(f, " + ({name})")?,
                    -1 => write!(f, " - ({name})")?,
                    c if c > 0 => write!(f, " + {c}({name})")?,
                    c => write!(f, " - {}({name})", -c)?,
                }
            }
        }
        Ok(())
    }
}
