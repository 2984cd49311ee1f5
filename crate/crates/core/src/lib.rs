//! Exact computer algebra for the chain of cyclotomic Hecke algebras
//! `H(m,1,1) ⊂ H(m,1,2) ⊂ …` and their affine limit.

pub mod central;
pub mod group;
pub mod hecke;
pub mod report;
pub mod reps;
pub mod sample;
pub mod scalars;
pub mod traces;
pub mod verify;

pub use scalars::{LaurentPoly, ScalarValue, Var};

/// The chapters of the guide in `book/`, compiled as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    pub mod scalars {}
    #[doc = include_str!("../../../book/src/groups.md")]
    pub mod groups {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub mod algebra {}
    #[doc = include_str!("../../../book/src/representations.md")]
    pub mod representations {}
    #[doc = include_str!("../../../book/src/traces.md")]
    pub mod traces {}
    #[doc = include_str!("../../../book/src/central-forms.md")]
    pub mod central_forms {}
    #[doc = include_str!("../../../book/src/fusion.md")]
    pub mod fusion {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
}
