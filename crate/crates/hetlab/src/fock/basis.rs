use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rectangular truncation of the signal ⊗ image Fock space.
///
/// Signal occupations run over `0..d_a`, image occupations over `0..d_b`.
/// States are flattened signal-major: `index_of(p, q) = p * d_b + q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoModeBasis {
    d_a: usize,
    d_b: usize,
}

impl TwoModeBasis {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a < 2 || d_b < 2 {
            return Err(Error::InvalidBasis(format!(
                "cutoffs must be at least 2, got ({d_a}, {d_b})"
            )));
        }
        Ok(Self { d_a, d_b })
    }

    pub fn square(d: usize) -> Result<Self> {
        Self::new(d, d)
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dim(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        p < self.d_a && q < self.d_b
    }

    pub fn index_of(&self, p: usize, q: usize) -> Result<usize> {
        if !self.contains(p, q) {
            return Err(Error::OutOfRange(format!(
                "Fock pair ({p}, {q}) outside cutoffs ({}, {})",
                self.d_a, self.d_b
            )));
        }
        Ok(p * self.d_b + q)
    }

    pub fn state_of(&self, index: usize) -> Result<(usize, usize)> {
        if index >= self.dim() {
            return Err(Error::OutOfRange(format!(
                "flat index {index} outside dimension {}",
                self.dim()
            )));
        }
        Ok((index / self.d_b, index % self.d_b))
    }

    /// All `(p, q)` pairs in flat-index order.
    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.d_a).flat_map(move |p| (0..self.d_b).map(move |q| (p, q)))
    }
}

impl fmt::Display for TwoModeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.d_a, self.d_b)
    }
}

/// The space an operator acts on; used as the basis tag of [`OperatorMatrix`].
///
/// [`OperatorMatrix`]: super::OperatorMatrix
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    Single(usize),
    TwoMode(TwoModeBasis),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Single(d) => *d,
            Space::TwoMode(b) => b.dim(),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Single(d) => write!(f, "single({d})"),
            Space::TwoMode(b) => write!(f, "two-mode({b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Signal,
    Image,
}
