//! Finite coverings `p: T -> B` as polynomial functors `p(X) = Σ_b X^{p^{-1}(b)}`.

mod covering;
mod poly;
mod selftest;
mod splitting;

use thiserror::Error;

pub use covering::FiniteCovering;
pub use poly::{binomial, IntPolynomial};
pub use selftest::{
    random_covering, random_pair, run_selftest, run_selftest_with, ComposeFn, Counterexample, LawTally,
    SelftestConfig, SelftestReport, APPLY_LIMIT, COMPOSE_LIMIT, LAWS, MAX_BASE, SPLITTING_DEGREE,
};
pub use splitting::{split_covering, splitting_check, splitting_map, SplittingReport};

#[derive(Debug, Error)]
pub enum CoveringError {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("divided derivatives start at order one")]
    ZeroOrder,
    #[error("the composite base would exceed {limit} elements")]
    TooLarge { limit: usize },
    #[error("no pair within the size limits after {attempts} draws")]
    RejectionExhausted { attempts: usize },
}
