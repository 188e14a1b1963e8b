//! Thin typed client for the service routes.

use harness::api::{
    BatchRequest, BatchResponse, EcRequest, ErrorBody, FrobReport, FrobRequest, P1Request, P1Response, P1S2Request,
    ScanRequest, ScanResponse,
};
use harness::RunReport;
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    /// The service answered with a classified error.
    #[error("{}: {}", serde_json::to_string(&.0.kind).unwrap_or_default().trim_matches('"'), .0.message)]
    Api(ErrorBody),
    #[error("transport: {0}")]
    Transport(#[from] reqwest::Error),
}

#[derive(Clone, Debug)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base: &str) -> Self {
        Client { base: base.trim_end_matches('/').to_string(), http: reqwest::Client::new() }
    }

    async fn post<Q: Serialize, R: DeserializeOwned>(&self, route: &str, body: &Q) -> Result<R, ClientError> {
        let resp = self.http.post(format!("{}/{route}", self.base)).json(body).send().await?;
        if resp.status().is_success() {
            Ok(resp.json().await?)
        } else {
            let status = resp.status();
            let text = resp.text().await?;
            match serde_json::from_str::<ErrorBody>(&text) {
                Ok(body) => Err(ClientError::Api(body)),
                Err(_) => Err(ClientError::Api(ErrorBody {
                    kind: if status.is_client_error() { harness::ErrorKind::Usage } else { harness::ErrorKind::Computation },
                    message: format!("{status}: {text}"),
                })),
            }
        }
    }

    pub async fn health(&self) -> Result<String, ClientError> {
        Ok(self.http.get(format!("{}/health", self.base)).send().await?.text().await?)
    }

    pub async fn p1(&self, req: &P1Request) -> Result<P1Response, ClientError> {
        self.post("p1", req).await
    }

    pub async fn p1_s2(&self, req: &P1S2Request) -> Result<P1Response, ClientError> {
        self.post("p1-s2", req).await
    }

    pub async fn dilog_scan(&self, req: &ScanRequest) -> Result<ScanResponse, ClientError> {
        self.post("dilog-scan", req).await
    }

    pub async fn ec(&self, req: &EcRequest) -> Result<RunReport, ClientError> {
        self.post("ec", req).await
    }

    pub async fn batch(&self, req: &BatchRequest) -> Result<BatchResponse, ClientError> {
        self.post("batch", req).await
    }

    pub async fn frob(&self, req: &FrobRequest) -> Result<FrobReport, ClientError> {
        self.post("frob", req).await
    }
}
