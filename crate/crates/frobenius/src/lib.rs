//! Frobenius on the de Rham cohomology of an elliptic curve with good reduction.

pub mod kedlaya;
pub mod poly;
pub mod short;

pub use kedlaya::{frobenius_matrix, Correction, FrobeniusData};
pub use short::{short_model, ShortModel};

use ecmodel::EcError;
use padic::PadicError;

#[derive(Debug, thiserror::Error)]
pub enum FrobError {
    #[error("unsupported prime {0} (need p ≥ 5)")]
    UnsupportedPrime(u64),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Curve(#[from] EcError),
}
