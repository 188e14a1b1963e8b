//! Weakly global points of level 1 and 2 on `E ∖ O`: local value sets at bad
//! primes, their norms, the torsion locus and its partition by `D_2`.

pub mod level;
pub mod wset;

pub use level::{
    level1_set, level2_set_rank0, level2_set_rank1, Assignment, Level2Result, MatchPolicy, PsiSet, Rank1Result,
};
pub use wset::{parse_rational, w_norms, w_set, w_sets, WNorm, WSet};

use coleman::ColemanError;
use ecmodel::EcError;
use padic::PadicError;

#[derive(Debug, thiserror::Error)]
pub enum SelmerError {
    #[error("domain: {0}")]
    Domain(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error(transparent)]
    Coleman(#[from] ColemanError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Curve(#[from] EcError),
}
