//! The p-adic dilogarithm at roots of unity and weakly global points of
//! `P¹ ∖ {0, 1, ∞}` at levels 1 and 2.

pub mod gseries;
pub mod li2;
pub mod p1;
pub mod scan;

pub use gseries::{g_series, g_series_mod_p, g_series_padic, GRepr, GSeries};
pub use li2::{g2_series, li2_at_root_of_unity, li2_with};
pub use p1::{p1_s2_weakly_global, p1_weakly_global, s2_disk_series, s2_value, Evidence, P1WeaklyGlobalReport};
pub use scan::{dilog_scan, g2_at_sixth_roots_mod_p, primes_below, randomness_product, ScanConfig, ScanReport};

use padic::PadicError;

#[derive(Debug, thiserror::Error)]
pub enum PolylogError {
    #[error("domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("checkpoint: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint line {line}: {msg}")]
    Checkpoint { line: usize, msg: String },
}
