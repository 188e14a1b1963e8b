//! Weierstrass models over Z, reduction mod p, p-adic points and the formal group.

pub mod curve;
pub mod elog;
pub mod formal;
pub mod fp;
pub mod qp;

pub use curve::{factor_primes, is_probable_prime, ord, CurveModel, ReductionData, ReductionType};
pub use elog::{elliptic_log, formal_log_at, log_terms};
pub use formal::{FormalGroup, PadicFormal};
pub use fp::{count_points_fp, FpCurve, FpPoint};
pub use qp::{PadicCurve, PadicPoint};

use padic::PadicError;

#[derive(Debug, thiserror::Error)]
pub enum EcError {
    #[error("singular model {0}")]
    Singular(String),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),
    #[error("could not factor {0}")]
    Factorization(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Padic(PadicError),
}
