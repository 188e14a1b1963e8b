//! HTTP/JSON front end for the weakly-global point computations.
//!
//! Every route takes a JSON body and answers with either the result or an
//! [`ErrorBody`] whose `kind` tells the caller how to classify the failure.

use axum::extract::Json;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use harness::api::{
    BatchRequest, BatchResponse, EcRequest, ErrorBody, FrobReport, FrobRequest, P1Request, P1Response, P1S2Request,
    ScanRequest, ScanResponse,
};
use harness::{ingest_str, ops, run_batch, run_record, ErrorKind, HarnessError, RunConfig, RunReport, Summary};
use serde::Serialize;
use tokio::net::TcpListener;

pub struct ApiError(HarnessError);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let kind = self.0.kind();
        let status = match kind {
            ErrorKind::Usage | ErrorKind::Ingest => StatusCode::BAD_REQUEST,
            ErrorKind::Computation => StatusCode::UNPROCESSABLE_ENTITY,
            ErrorKind::Io => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let message = match self.0 {
            HarnessError::Usage(m) | HarnessError::Ingest(m) | HarnessError::Computation(m) | HarnessError::Io(m) => m,
        };
        (status, Json(ErrorBody { kind, message })).into_response()
    }
}

impl From<HarnessError> for ApiError {
    fn from(e: HarnessError) -> Self {
        ApiError(e)
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

/// The math is CPU bound, so it runs off the async workers.
async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    T: Serialize + Send + 'static,
    F: FnOnce() -> Result<T, HarnessError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json).map_err(ApiError),
        Err(e) => Err(ApiError(HarnessError::Computation(format!("worker failed: {e}")))),
    }
}

fn check_prec(prec: i64) -> Result<(), HarnessError> {
    if !(1..=2000).contains(&prec) {
        return Err(HarnessError::Usage(format!("precision {prec} is out of range")));
    }
    Ok(())
}

async fn p1(Json(req): Json<P1Request>) -> ApiResult<P1Response> {
    blocking(move || {
        check_prec(req.prec)?;
        ops::p1(req.p, req.level, req.prec)
    })
    .await
}

async fn p1_s2(Json(req): Json<P1S2Request>) -> ApiResult<P1Response> {
    blocking(move || {
        check_prec(req.prec)?;
        ops::p1_s2(req.p, req.prec, req.match_digits)
    })
    .await
}

async fn dilog_scan(Json(req): Json<ScanRequest>) -> ApiResult<ScanResponse> {
    blocking(move || {
        let cfg = polylog::ScanConfig { bound: req.bound, jobs: req.jobs, checkpoint: req.resume };
        let r = polylog::dilog_scan(&cfg)?;
        Ok(ScanResponse { bound: r.bound, primes_checked: r.primes_checked, resumed: r.resumed, vanishing: r.vanishing })
    })
    .await
}

async fn ec(Json(req): Json<EcRequest>) -> ApiResult<RunReport> {
    blocking(move || {
        check_prec(req.prec)?;
        let ingested = ingest_str(&req.curves);
        let rec = ops::find(&ingested, &req.label)?;
        let cfg = RunConfig { prec: req.prec, match_digits: req.match_digits, timings: true, ..RunConfig::new(req.p, req.level) };
        Ok(run_record(rec, &cfg))
    })
    .await
}

async fn batch(Json(req): Json<BatchRequest>) -> ApiResult<BatchResponse> {
    blocking(move || {
        check_prec(req.prec)?;
        let ingested = ingest_str(&req.curves);
        let cfg = RunConfig { prec: req.prec, match_digits: req.match_digits, ..RunConfig::new(req.p, req.level) };
        let reports = run_batch(&ingested.records, &cfg);
        Ok(BatchResponse { summary: Summary::of(&reports), reports, ingest_errors: ingested.errors })
    })
    .await
}

async fn frob(Json(req): Json<FrobRequest>) -> ApiResult<FrobReport> {
    blocking(move || {
        check_prec(req.prec)?;
        let ingested = ingest_str(&req.curves);
        ops::frob_report(ops::find(&ingested, &req.label)?, req.p, req.prec)
    })
    .await
}

async fn health() -> &'static str {
    "ok"
}

pub fn router() -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/p1", post(p1))
        .route("/p1-s2", post(p1_s2))
        .route("/dilog-scan", post(dilog_scan))
        .route("/ec", post(ec))
        .route("/batch", post(batch))
        .route("/frob", post(frob))
}

pub async fn serve(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
