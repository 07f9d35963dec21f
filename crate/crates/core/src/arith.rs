//! Residue arithmetic and the residue order `<=_N`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModulusError {
    #[error("modulus must be at least 2, got {0}")]
    TooSmall(String),
    #[error("missing `mod <N>` header")]
    MissingHeader,
}

/// A modulus `N >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus<S>(S);

impl<S: Scalar> Modulus<S> {
    pub fn new(n: S) -> Result<Self, ModulusError> {
        if n < S::lit(2) {
            return Err(ModulusError::TooSmall(n.to_string()));
        }
        Ok(Modulus(n))
    }

    pub fn get(&self) -> &S {
        &self.0
    }

    /// The maximal residue `N - 1`.
    pub fn max_residue(&self) -> S {
        self.0.clone() - S::one()
    }

    /// The unique residue in `[0, N-1]` congruent to `i`.
    pub fn reduce(&self, i: &S) -> S {
        i.mod_floor(&self.0)
    }

    /// Residue of `i + j` without forming the (possibly overflowing) sum.
    pub fn add(&self, i: &S, j: &S) -> S {
        let (a, b) = (self.reduce(i), self.reduce(j));
        let room = self.0.clone() - b.clone();
        if a >= room {
            a - room
        } else {
            a + b
        }
    }

    /// Residue of `i - j`, again without forming the raw difference.
    pub fn sub(&self, i: &S, j: &S) -> S {
        let (a, b) = (self.reduce(i), self.reduce(j));
        if a >= b {
            a - b
        } else {
            a + (self.0.clone() - b)
        }
    }

    /// Compares `i` and `j` by their residues.
    pub fn compare(&self, i: &S, j: &S) -> Ordering {
        self.reduce(i).cmp(&self.reduce(j))
    }

    pub fn is_residue(&self, v: &S) -> bool {
        !v.is_negative() && *v < self.0
    }
}

impl<S: Scalar> std::fmt::Display for Modulus<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn reduce_mod<S: Scalar>(i: &S, n: &Modulus<S>) -> S {
    n.reduce(i)
}

pub fn cmp_mod<S: Scalar>(i: &S, j: &S, n: &Modulus<S>) -> Ordering {
    n.compare(i, j)
}
