//! JSON-over-HTTP front end: `POST /analyze` and `GET /health`.

use std::sync::{Arc, OnceLock};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use uzmorph::analyzer::Fingerprint;
use uzmorph::{AnalysisRecord, Analyzer, Pos, TokenError};

/// Largest number of tokens accepted in one request.
pub const MAX_TOKENS: usize = 1000;

/// Shared engine slot, empty until the lexicon has loaded.
#[derive(Clone, Default)]
pub struct AppState {
    engine: Arc<OnceLock<Analyzer>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_analyzer(analyzer: Analyzer) -> Self {
        let state = Self::new();
        let _ = state.install(analyzer);
        state
    }

    /// Publishes the engine. Returns false if one was already installed.
    pub fn install(&self, analyzer: Analyzer) -> bool {
        self.engine.set(analyzer).is_ok()
    }

    pub fn analyzer(&self) -> Option<&Analyzer> {
        self.engine.get()
    }
}

#[derive(Debug, Deserialize)]
pub struct AnalyzeRequest {
    pub tokens: Vec<RequestToken>,
}

#[derive(Debug, Deserialize)]
pub struct RequestToken {
    pub text: String,
    #[serde(default)]
    pub pos: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum ResponseItem {
    Analysis(AnalysisRecord),
    Error(TokenError),
}

#[derive(Debug, Serialize)]
struct Health<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    fingerprint: Option<&'a Fingerprint>,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/analyze", post(analyze))
        .route("/health", get(health))
        .with_state(state)
}

fn error(status: StatusCode, msg: impl Into<String>) -> Response {
    (status, Json(serde_json::json!({ "error": msg.into() }))).into_response()
}

async fn analyze(State(state): State<AppState>, body: Bytes) -> Response {
    let request: AnalyzeRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, format!("malformed request: {e}")),
    };
    if request.tokens.len() > MAX_TOKENS {
        return error(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!(
                "{} tokens exceed the limit of {MAX_TOKENS}",
                request.tokens.len()
            ),
        );
    }
    let Some(analyzer) = state.analyzer() else {
        return error(StatusCode::SERVICE_UNAVAILABLE, "lexicon is still loading");
    };
    let items: Vec<ResponseItem> = request
        .tokens
        .iter()
        .map(|t| analyze_one(analyzer, t))
        .collect();
    Json(items).into_response()
}

fn analyze_one(analyzer: &Analyzer, token: &RequestToken) -> ResponseItem {
    let fail = |msg: String| {
        ResponseItem::Error(TokenError {
            token: token.text.clone(),
            error: msg,
        })
    };
    let pos = match token.pos.as_deref().map(str::parse::<Pos>).transpose() {
        Ok(pos) => pos,
        Err(e) => return fail(e.to_string()),
    };
    match analyzer.analyze(&token.text, pos) {
        Ok(set) => ResponseItem::Analysis(set.best().record()),
        Err(e) => fail(e.to_string()),
    }
}

async fn health(State(state): State<AppState>) -> Response {
    match state.analyzer() {
        Some(a) => Json(Health {
            status: "ok",
            fingerprint: Some(a.fingerprint()),
        })
        .into_response(),
        None => (
            StatusCode::SERVICE_UNAVAILABLE,
            Json(Health {
                status: "loading",
                fingerprint: None,
            }),
        )
            .into_response(),
    }
}
