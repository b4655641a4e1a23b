//! Composites of the operations `q_n`, their Adem relations, and the action on
//! `GF(2)[b_0, b_1, ...]`.

mod adem;
mod basis;
mod binom;
mod cartan;
mod monomial;
mod priddy;

use thiserror::Error;

use crate::series::SeriesError;

pub use adem::{adem_expand, normal_form, normal_form_with, rewrite_at, Strategy, DEFAULT_STEP_GUARD};
pub use basis::free_q_basis;
pub use binom::binom_mod2;
pub use cartan::cartan_expand;
pub use monomial::{is_admissible_pair, QMonomial, QPolynomial};
pub use priddy::{b_ring, check_adem_on_priddy, priddy_action, AdemCheck, PriddyTable};
pub(crate) use priddy::b_series;

#[derive(Debug, Error)]
pub enum QringError {
    #[error("rewriting did not terminate after {steps} steps; pending {pending}")]
    NonTermination { steps: usize, pending: String },
    #[error("q_{n}(b_{k}) lies above truncation {truncation}")]
    OutOfRange { n: u32, k: u32, truncation: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}
