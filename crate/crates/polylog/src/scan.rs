//! Mod-p non-vanishing scan for `g_2(ζ_6)` over primes `p ≡ 1 (mod 3)`.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use padic::Fp;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gseries::inverses;
use crate::PolylogError;

/// Primes below `bound` by the sieve of Eratosthenes.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `g_2 mod p` at the two primitive sixth roots of unity of F_p, `p ≡ 1 (mod 3)`.
///
/// Modulo p, `g_2(v) = Σ_{k=1}^{p−2} H_k·v^k/k` with `H_k = Σ_{i≤k} 1/i`.
pub fn g2_at_sixth_roots_mod_p(p: u64) -> Result<[(u64, u64); 2], PolylogError> {
    if p % 3 != 1 {
        return Err(PolylogError::Domain(format!("{p} is not 1 mod 3")));
    }
    let f = Fp::new(p);
    let roots = f.elements_of_order(6);
    let [z1, z2] = roots[..] else {
        return Err(PolylogError::Domain(format!("F_{p} lacks two sixth roots of unity")));
    };
    let inv = inverses(p);
    let (mut h, mut a1, mut a2, mut w1, mut w2) = (0u64, 0u64, 0u64, 1u64, 1u64);
    for k in 1..=(p - 2) as usize {
        h = f.add(h, inv[k]);
        w1 = f.mul(w1, z1);
        w2 = f.mul(w2, z2);
        let c = f.mul(h, inv[k]);
        a1 = f.add(a1, f.mul(c, w1));
        a2 = f.add(a2, f.mul(c, w2));
    }
    Ok([(z1, a1), (z2, a2)])
}

#[derive(Clone, Debug, Default)]
pub struct ScanConfig {
    pub bound: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Plain-text checkpoint, one `p verdict` line per finished prime.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub bound: u64,
    pub primes_checked: usize,
    /// Verdicts taken from the checkpoint rather than recomputed.
    pub resumed: usize,
    pub vanishing: Vec<u64>,
    /// `(p, g_2(ζ_6) ≢ 0)` in increasing `p`.
    pub verdicts: Vec<(u64, bool)>,
}

fn verdict_word(nonzero: bool) -> &'static str {
    if nonzero {
        "nonzero"
    } else {
        "zero"
    }
}

fn read_checkpoint(path: &PathBuf) -> Result<BTreeMap<u64, bool>, PolylogError> {
    let mut done = BTreeMap::new();
    if !path.exists() {
        return Ok(done);
    }
    let file = std::fs::File::open(path)?;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: &str| PolylogError::Checkpoint { line: i + 1, msg: msg.to_string() };
        let mut parts = line.split_whitespace();
        let p: u64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("expected a prime"))?;
        let v = match parts.next() {
            Some("nonzero") => true,
            Some("zero") => false,
            _ => return Err(bad("expected `zero` or `nonzero`")),
        };
        done.insert(p, v);
    }
    Ok(done)
}

fn verdict(p: u64) -> bool {
    // both roots must give a nonzero value
    g2_at_sixth_roots_mod_p(p).map(|r| r.iter().all(|&(_, v)| v != 0)).unwrap_or(false)
}

/// Checks `g_2(ζ_6) ≢ 0 (mod p)` for every prime `7 ≤ p < bound` with `p ≡ 1 (mod 3)`.
pub fn dilog_scan(config: &ScanConfig) -> Result<ScanReport, PolylogError> {
    if config.bound < 7 {
        return Err(PolylogError::Domain("scan bound must be at least 7".into()));
    }
    let mut done = match &config.checkpoint {
        Some(path) => read_checkpoint(path)?,
        None => BTreeMap::new(),
    };
    let primes: Vec<u64> = primes_below(config.bound).into_iter().filter(|p| p % 3 == 1).collect();
    let resumed = primes.iter().filter(|p| done.contains_key(p)).count();
    let todo: Vec<u64> = primes.iter().copied().filter(|p| !done.contains_key(p)).collect();
    let mut sink = match &config.checkpoint {
        Some(path) => Some(OpenOptions::new().create(true).append(true).open(path)?),
        None => None,
    };
    let pool = match config.jobs {
        Some(k) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| PolylogError::Domain(format!("thread pool: {e}")))?,
        ),
        None => None,
    };
    for chunk in todo.chunks(512) {
        let run = || chunk.par_iter().map(|&p| (p, verdict(p))).collect::<Vec<_>>();
        let results = match &pool {
            Some(pool) => pool.install(run),
            None => run(),
        };
        if let Some(file) = sink.as_mut() {
            for (p, v) in &results {
                writeln!(file, "{p} {}", verdict_word(*v))?;
            }
            file.flush()?;
        }
        done.extend(results);
    }
    let verdicts: Vec<(u64, bool)> = primes.iter().map(|p| (*p, done[p])).collect();
    let vanishing = verdicts.iter().filter(|(_, v)| !v).map(|(p, _)| *p).collect();
    Ok(ScanReport { bound: config.bound, primes_checked: verdicts.len(), resumed, vanishing, verdicts })
}

/// `∏ (1 − 1/p)` over primes `p ≡ 1 (mod 3)` below `bound`.
pub fn randomness_product(bound: u64) -> f64 {
    primes_below(bound).into_iter().filter(|p| p % 3 == 1).map(|p| 1.0 - 1.0 / p as f64).product()
}
