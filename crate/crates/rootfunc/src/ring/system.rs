//! Validated square polynomial systems.

use thiserror::Error;

use super::degree::Degree;
use super::field::ExactField;
use super::poly::Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("system is empty")]
    Empty,
    #[error("system has {have} equations but {want} variables; a square system is required")]
    NotSquare { have: usize, want: usize },
    #[error("equation {index} has degree {degree}; every equation must have degree at least 1")]
    DegenerateEquation { index: usize, degree: Degree },
    #[error("equation {index} lives in {have} variables, expected {want}")]
    MixedArity { index: usize, have: usize, want: usize },
}

/// A square system `f_1, …, f_n` in `n` variables with every `deg f_i ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemProfile<K: ExactField> {
    nvars: usize,
    polys: Vec<Poly<K>>,
}

impl<K: ExactField> SystemProfile<K> {
    pub fn new(polys: Vec<Poly<K>>) -> Result<Self, SystemError> {
        if polys.is_empty() {
            return Err(SystemError::Empty);
        }
        let nvars = polys[0].nvars();
        for (index, p) in polys.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(SystemError::MixedArity {
                    index: index + 1,
                    have: p.nvars(),
                    want: nvars,
                });
            }
        }
        if polys.len() != nvars {
            return Err(SystemError::NotSquare {
                have: polys.len(),
                want: nvars,
            });
        }
        for (index, p) in polys.iter().enumerate() {
            let degree = p.degree();
            if degree < 1 {
                return Err(SystemError::DegenerateEquation {
                    index: index + 1,
                    degree,
                });
            }
        }
        Ok(SystemProfile { nvars, polys })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Poly<K>] {
        &self.polys
    }

    /// The equation `f_{i+1}` (0-based `i`).
    pub fn poly(&self, i: usize) -> &Poly<K> {
        &self.polys[i]
    }

    /// Degree of `f_{i+1}` as a plain integer (validated ≥ 1).
    pub fn deg(&self, i: usize) -> i64 {
        self.polys[i]
            .degree()
            .finite()
            .expect("validated equations have finite degree")
    }

    /// `δ_f = Σ (deg f_i − 1)`.
    pub fn delta_f(&self) -> i64 {
        (0..self.polys.len()).map(|i| self.deg(i) - 1).sum()
    }
}
