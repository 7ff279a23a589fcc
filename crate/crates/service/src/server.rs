use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::json;
use tower_http::cors::CorsLayer;

use crate::compute::{handle_compute_bytes, ServiceError};
use crate::VERSION;

pub const DEFAULT_PORT: u16 = 8787;

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

/// `POST /api/compute` and `GET /healthz`, with permissive CORS.
pub fn router() -> Router {
    Router::new()
        .route("/api/compute", post(compute))
        .route("/healthz", get(healthz))
        .method_not_allowed_fallback(|| async {
            error(
                StatusCode::METHOD_NOT_ALLOWED,
                "method_not_allowed",
                "unsupported HTTP method",
            )
        })
        .fallback(|| async { error(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .layer(CorsLayer::permissive())
}

fn error(status: StatusCode, code: &str, detail: &str) -> Response {
    (status, Json(json!({ "error": code, "detail": detail }))).into_response()
}

async fn healthz() -> Response {
    Json(json!({ "status": "ok", "version": VERSION })).into_response()
}

async fn compute(body: Bytes) -> Response {
    match tokio::task::spawn_blocking(move || handle_compute_bytes(&body)).await {
        Ok(Ok(resp)) => Json(resp).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(e) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            "internal",
            &e.to_string(),
        ),
    }
}
