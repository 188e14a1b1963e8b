use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use client::{Client, ClientError};
use harness::api::{BatchRequest, EcRequest, FrobRequest, P1Request, P1Response, P1S2Request, ScanRequest};
use harness::{write_reports, ErrorKind, RunReport, Verdict};
use serde::Serialize;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const COMPUTE: u8 = 3;

#[derive(Parser)]
#[command(name = "qc", about = "Weakly global points on P^1 minus three points and on elliptic curves")]
struct Cli {
    /// Absolute p-adic precision.
    #[arg(long, global = true, default_value_t = 20)]
    prec: i64,
    /// Digits of agreement needed for D2(z) = |w| and for point comparisons.
    #[arg(long, global = true, default_value_t = 5)]
    match_digits: i64,
    /// Service URL; without it an in-process service is started.
    #[arg(long, global = true, env = "QC_SERVER")]
    server: Option<String>,
    /// Print the raw JSON response.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Level 1 or 2 points of P^1 minus {0, 1, ∞}.
    P1 {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
    },
    /// Zero set for S = {2}.
    #[command(name = "p1-s2")]
    P1S2 {
        #[arg(long)]
        p: u64,
    },
    /// Checks g2(ζ6) mod p ≠ 0 for primes p ≡ 1 mod 3 below the bound.
    DilogScan {
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, env = "QC_JOBS")]
        jobs: Option<usize>,
    },
    /// One curve from a record file.
    Ec {
        #[arg(long)]
        curves: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
    },
    /// Every curve of a record file; reports go to --out, one object per line.
    Batch {
        #[arg(long)]
        curves: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=2))]
        level: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Frobenius matrix of one curve.
    Frob {
        #[arg(long)]
        curves: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long)]
        p: u64,
    },
}

fn read(path: &Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        USAGE
    })
}

fn failed(e: ClientError) -> u8 {
    eprintln!("error: {e}");
    match e {
        ClientError::Api(body) => match body.kind {
            ErrorKind::Usage | ErrorKind::Ingest => USAGE,
            ErrorKind::Computation | ErrorKind::Io => COMPUTE,
        },
        ClientError::Transport(_) => COMPUTE,
    }
}

fn dump<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("responses serialize"));
}

fn print_p1(r: &P1Response) {
    let rep = &r.report;
    let which = if rep.s_variant { "S = {2}".to_string() } else { format!("level {}", rep.level) };
    if rep.points.is_empty() {
        println!("p = {}, {which}: {{}}", rep.p);
    } else {
        println!("p = {}, {which}: {} points", rep.p, rep.points.len());
        for z in &rep.points {
            println!("  {z}");
        }
    }
    for n in &r.notes {
        println!("NOTE: {n}");
    }
}

fn print_report(r: &RunReport) {
    let v = serde_json::to_string(&r.verdict).unwrap();
    println!("{} p={} level={} prec={}: {}", r.label, r.p, r.level, r.precision, v.trim_matches('"'));
    if let Some(n) = r.w_norms {
        println!("  w-norms: {n}");
    }
    if let Some(n) = r.level1_count {
        println!("  level-1 points: {n}");
    }
    for psi in &r.nonempty_psi {
        println!("  Psi{}: {} points", psi.norm, psi.points.len());
    }
    for pt in &r.weakly_global {
        println!("  ({}, {})", pt.x, pt.y);
    }
    for [x, y] in &r.missing_known {
        println!("  missing known point ({x}, {y})");
    }
    if !r.extra_points.is_empty() {
        println!("  {} points beyond the known ones", r.extra_points.len());
    }
    if !r.assumptions.additive_primes.is_empty() {
        println!("  additive primes with W = {{0}}: {:?}", r.assumptions.additive_primes);
    }
    if !r.assumptions.w_override.is_empty() {
        println!("  w overrides: {:?}", r.assumptions.w_override);
    }
    if let Some(m) = &r.message {
        println!("  note: {m}");
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass | Verdict::Skip => PASS,
        Verdict::Fail => FAIL,
        Verdict::Error => COMPUTE,
    }
}

async fn run(cli: Cli, client: Client) -> u8 {
    let (prec, md) = (cli.prec, cli.match_digits);
    match cli.cmd {
        Cmd::P1 { p, level } => match client.p1(&P1Request { p, level, prec }).await {
            Ok(r) => {
                if cli.json { dump(&r) } else { print_p1(&r) }
                PASS
            }
            Err(e) => failed(e),
        },
        Cmd::P1S2 { p } => match client.p1_s2(&P1S2Request { p, prec, match_digits: md }).await {
            Ok(r) => {
                if cli.json { dump(&r) } else { print_p1(&r) }
                PASS
            }
            Err(e) => failed(e),
        },
        Cmd::DilogScan { bound, resume, jobs } => {
            let resume = resume.map(|p| std::path::absolute(&p).unwrap_or(p));
            match client.dilog_scan(&ScanRequest { bound, jobs, resume }).await {
                Ok(r) => {
                    if cli.json {
                        dump(&r);
                    } else {
                        println!("{} primes p ≡ 1 mod 3 below {bound} ({} resumed)", r.primes_checked, r.resumed);
                        println!("{} vanishing primes", r.vanishing.len());
                        for p in &r.vanishing {
                            println!("  {p}");
                        }
                    }
                    if r.vanishing.is_empty() { PASS } else { FAIL }
                }
                Err(e) => failed(e),
            }
        }
        Cmd::Ec { curves, label, p, level } => {
            let curves = match read(&curves) {
                Ok(t) => t,
                Err(c) => return c,
            };
            match client.ec(&EcRequest { curves, label, p, level, prec, match_digits: md }).await {
                Ok(r) => {
                    if cli.json { dump(&r) } else { print_report(&r) }
                    verdict_code(r.verdict)
                }
                Err(e) => failed(e),
            }
        }
        Cmd::Batch { curves, p, level, out } => {
            let curves = match read(&curves) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let r = match client.batch(&BatchRequest { curves, p, level, prec, match_digits: md }).await {
                Ok(r) => r,
                Err(e) => return failed(e),
            };
            if let Err(e) = write_reports(&out, &r.reports) {
                eprintln!("error: {e}");
                return COMPUTE;
            }
            for e in &r.ingest_errors {
                eprintln!("line {}: {}", e.line, e.message);
            }
            if cli.json {
                dump(&r.summary);
            } else {
                for rep in &r.reports {
                    let v = serde_json::to_string(&rep.verdict).unwrap();
                    println!("{} {}", v.trim_matches('"'), rep.label);
                }
                let s = &r.summary;
                println!("PASS {} FAIL {} SKIP {} ERROR {}", s.pass, s.fail, s.skip, s.error);
            }
            if !r.ingest_errors.is_empty() {
                USAGE
            } else if r.summary.error > 0 {
                COMPUTE
            } else if r.summary.fail > 0 {
                FAIL
            } else {
                PASS
            }
        }
        Cmd::Frob { curves, label, p } => {
            let curves = match read(&curves) {
                Ok(t) => t,
                Err(c) => return c,
            };
            match client.frob(&FrobRequest { curves, label, p, prec }).await {
                Ok(r) => {
                    if cli.json {
                        dump(&r);
                    } else {
                        println!("{} p={} prec={}", r.label, r.p, r.prec);
                        for row in &r.matrix {
                            println!("  [{}, {}]", row[0], row[1]);
                        }
                        println!("  trace {} (a_p = {}): {}", r.trace, r.a_p, if r.trace_matches { "ok" } else { "MISMATCH" });
                        println!("  det {}: {}", r.det, if r.det_matches { "ok" } else { "MISMATCH" });
                    }
                    if r.trace_matches && r.det_matches { PASS } else { FAIL }
                }
                Err(e) => failed(e),
            }
        }
    }
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = Cli::parse();
    let base = match &cli.server {
        Some(url) => url.clone(),
        None => {
            let listener = match tokio::net::TcpListener::bind("127.0.0.1:0").await {
                Ok(l) => l,
                Err(e) => {
                    eprintln!("error: cannot start the local service: {e}");
                    return ExitCode::from(COMPUTE);
                }
            };
            let addr = listener.local_addr().expect("bound socket has an address");
            tokio::spawn(service::serve(listener));
            format!("http://{addr}")
        }
    };
    ExitCode::from(run(cli, Client::new(&base)).await)
}
