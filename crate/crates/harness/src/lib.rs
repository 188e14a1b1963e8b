//! Curve-record ingestion, batch runs with persistent reports, and the
//! request/response types shared by the HTTP service and its client.

pub mod api;
pub mod ops;
pub mod record;
pub mod run;

pub use record::{ingest, ingest_str, CurveRecord, Ingested, RecordError};
pub use run::{run_batch, run_record, write_reports, RunConfig, RunReport, Summary, Verdict};

use serde::{Deserialize, Serialize};

/// Which exit status a failure maps to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Ingest,
    Computation,
    Io,
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("ingest: {0}")]
    Ingest(String),
    #[error("computation: {0}")]
    Computation(String),
    #[error("io: {0}")]
    Io(String),
}

impl HarnessError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            HarnessError::Usage(_) => ErrorKind::Usage,
            HarnessError::Ingest(_) => ErrorKind::Ingest,
            HarnessError::Computation(_) => ErrorKind::Computation,
            HarnessError::Io(_) => ErrorKind::Io,
        }
    }
}

macro_rules! computation {
    ($($t:ty),*) => {$(
        impl From<$t> for HarnessError {
            fn from(e: $t) -> Self {
                HarnessError::Computation(e.to_string())
            }
        }
    )*};
}

computation!(
    padic::PadicError,
    ecmodel::EcError,
    frobenius::FrobError,
    coleman::ColemanError,
    selmer::SelmerError
);

impl From<polylog::PolylogError> for HarnessError {
    fn from(e: polylog::PolylogError) -> Self {
        match e {
            polylog::PolylogError::Io(_) | polylog::PolylogError::Checkpoint { .. } => HarnessError::Io(e.to_string()),
            polylog::PolylogError::Domain(_) => HarnessError::Usage(e.to_string()),
            _ => HarnessError::Computation(e.to_string()),
        }
    }
}
