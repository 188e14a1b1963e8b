//! Capped-precision p-adic numbers, truncated power series over them, and
//! zero finding on residue disks.

mod fp;
mod funcs;
mod number;
mod roots;
mod series;

pub use fp::{FpPoly, Fp};
pub use funcs::{padic_exp, padic_log, sqrt_with_residue, teichmuller, teichmuller_of_residue};
pub use number::{inv_mod, pow_p, split_valuation, Padic};
pub use roots::{series_zeros_in_disk, ZeroSet};
pub use series::{Series, NO_TAIL};

/// Default working absolute precision in p-adic digits.
pub const DEFAULT_PREC: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
