use std::path::PathBuf;

use padic::Padic;
use serde::{Deserialize, Serialize};

use crate::record::RecordError;
use crate::run::{RunReport, Summary};
use crate::ErrorKind;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P1Request {
    pub p: u64,
    pub level: u8,
    pub prec: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P1S2Request {
    pub p: u64,
    pub prec: i64,
    pub match_digits: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P1Response {
    pub report: polylog::P1WeaklyGlobalReport,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRequest {
    pub bound: u64,
    pub jobs: Option<usize>,
    /// Checkpoint path as seen by the service.
    pub resume: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResponse {
    pub bound: u64,
    pub primes_checked: usize,
    pub resumed: usize,
    pub vanishing: Vec<u64>,
}

/// Curve input travels as the text of a record file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EcRequest {
    pub curves: String,
    pub label: String,
    pub p: u64,
    pub level: u8,
    pub prec: i64,
    pub match_digits: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchRequest {
    pub curves: String,
    pub p: u64,
    pub level: u8,
    pub prec: i64,
    pub match_digits: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchResponse {
    pub summary: Summary,
    pub reports: Vec<RunReport>,
    pub ingest_errors: Vec<RecordError>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobRequest {
    pub curves: String,
    pub label: String,
    pub p: u64,
    pub prec: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobReport {
    pub label: String,
    pub p: u64,
    pub prec: i64,
    /// `φ*ω_i = dh_i + Σ_j matrix[j][i]·ω_j` on the short model.
    pub matrix: [[Padic; 2]; 2],
    pub trace: Padic,
    pub det: Padic,
    pub a_p: i64,
    pub trace_matches: bool,
    pub det_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: ErrorKind,
    pub message: String,
}
