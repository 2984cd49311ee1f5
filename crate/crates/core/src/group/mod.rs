//! The complex reflection group `G(m,1,n) ≅ C_m ≀ S_n`.
//!
//! Generators are `t` (color 1 on the first position) and the adjacent
//! transpositions `s_1, …, s_{n−1}`. `m = None` stands for `m = ∞`, where
//! colors are unreduced integers.

mod coset;
mod element;
mod normal;
mod word;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coset::{coset_label, coxeter_todd, CosetTable, CosetVertex, GeneratorAction};
pub use element::GroupElement;
pub use normal::{normal_form, reduced_word, transversal_word, NestedNormalForm};
pub use word::{word_to_element, GroupLetter, GroupWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator index out of range: {0}")]
    Index(String),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("signature mismatch")]
    Mismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSignature {
    /// `None` is `m = ∞`.
    pub m: Option<usize>,
    pub n: usize,
}

impl GroupSignature {
    pub fn new(m: Option<usize>, n: usize) -> Result<Self, GroupError> {
        if m == Some(0) {
            return Err(GroupError::Shape("m must be positive".into()));
        }
        Ok(GroupSignature { m, n })
    }

    pub fn finite(m: usize, n: usize) -> Self {
        Self::new(Some(m), n).expect("m positive")
    }

    /// `m^n n!` for finite `m`.
    pub fn order(&self) -> Option<u128> {
        let m = self.m? as u128;
        Some((1..=self.n as u128).map(|k| m * k).product())
    }
}

impl fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "G({m},1,{})", self.n),
            None => write!(f, "G(∞,1,{})", self.n),
        }
    }
}
