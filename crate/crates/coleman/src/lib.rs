//! Single and double Coleman integrals on `E ∖ O` from the tangential base point at O.

pub mod etale;
pub mod even;
pub mod formal;
pub mod anchor;
pub mod disk;
pub mod engine;

use ecmodel::EcError;
use frobenius::FrobError;
use padic::PadicError;

pub use formal::FormalDisk;

pub(crate) fn floor_log(p: u64, k: u64) -> i64 {
    let mut n = 0;
    let mut q = p;
    while q <= k {
        n += 1;
        q = q.saturating_mul(p);
    }
    n
}

#[derive(Debug, thiserror::Error)]
pub enum ColemanError {
    #[error("domain: {0}")]
    Domain(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Frobenius(#[from] FrobError),
    #[error(transparent)]
    Curve(#[from] EcError),
}
