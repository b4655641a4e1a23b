//! Truncated power series over graded GF(2)-algebras.
//!
//! Weights are positive: the formal parameters `t`, `s` and the law variables
//! `x`, `y` carry weight one, and `u = x F(x, t)` carries weight two. A grade
//! of `-1` on a parameter is therefore recorded as weight `+1`, and a
//! coefficient of `x^i y^j` in a law of variable weight `w` has ring degree
//! `w (i + j) - w` plus the weight of its parameter monomial.

pub mod gf2;
mod invariant;
mod json;
mod ring;
pub(crate) mod solve;
mod truncated;

pub use invariant::invariant_rewrite;
pub use json::{RingJson, SeriesJson, TermJson};
pub use ring::{CoefficientRing, Generator, Monomial, RingElem, RingError, RingMap};
pub use truncated::{vars, Exponents, TruncatedSeries, Variable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable lists differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("truncations differ: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },
    #[error("series live over different coefficient rings")]
    RingMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("series substituted for {variable} has a nonzero constant term")]
    NonzeroConstantTerm { variable: String },
    #[error("series substituted for {variable} (weight {weight}) starts in weight {found}")]
    WeightDeficit { variable: String, weight: u32, found: u32 },
    #[error("series is not invariant under x -> F(x, t): first difference at {monomial} ({coefficient})")]
    NotInvariant { monomial: String, coefficient: String },
    #[error("no expression in t and u reaches {monomial} in weight {weight}")]
    NotExpressible { weight: u32, monomial: String },
    #[error("weight {weight}: the unknown {unknown} is not determined")]
    Underdetermined { weight: u32, unknown: usize },
    #[error("weight {weight}: the system has no solution at {monomial}")]
    Inconsistent { weight: u32, monomial: String },
    #[error("column {column} has a non-scalar leading coefficient")]
    NonScalarLeading { column: usize },
    #[error("column {column} starts in weight {found}, expected {expected}")]
    ColumnWeight { column: usize, expected: u32, found: u32 },
    #[error("malformed series JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
