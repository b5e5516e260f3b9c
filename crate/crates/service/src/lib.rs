//! Stateless JSON-over-HTTP front end for `ruledkit`.
//!
//! * `POST /api/design` takes a [`DesignRequest`] and answers with a
//!   [`DesignResponse`], or `{"error": ...}` with status 400 (malformed
//!   input) or 422 (a net that is not closed, geometry with no usable sample).
//! * `GET /api/health` reports status, version and active tolerances.
//!
//! Every float in a response body is written with 17 significant digits.

mod design;

use std::io;
use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Serialize;
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;

use ruledkit::export::to_json17;
use ruledkit::Tolerances;

pub use design::{
    design, DesignError, DesignRequest, DesignResponse, Integrals, LiftText, MAX_COUNT, MIN_COUNT,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Health {
    pub status: &'static str,
    pub version: &'static str,
    pub tolerances: Tolerances,
}

fn json<T: Serialize>(status: StatusCode, body: &T) -> Response {
    match to_json17(body) {
        Ok(text) => (status, [(header::CONTENT_TYPE, "application/json")], text).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

fn error_response(e: &DesignError) -> Response {
    let status = StatusCode::from_u16(e.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    json(status, e)
}

async fn health(State(tol): State<Tolerances>) -> Response {
    json(
        StatusCode::OK,
        &Health {
            status: "ok",
            version: VERSION,
            tolerances: tol,
        },
    )
}

async fn design_handler(State(tol): State<Tolerances>, body: Bytes) -> Response {
    let req: DesignRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => {
            return error_response(&DesignError {
                position: Some(e.column()),
                ..DesignError::bad_request(format!("malformed request: {e}"))
            })
        }
    };
    match tokio::task::spawn_blocking(move || design(&req, &tol)).await {
        Ok(Ok(resp)) => json(StatusCode::OK, &resp),
        Ok(Err(e)) => error_response(&e),
        Err(e) => json(
            StatusCode::INTERNAL_SERVER_ERROR,
            &DesignError {
                status: 500,
                ..DesignError::bad_request(format!("pipeline aborted: {e}"))
            },
        ),
    }
}

/// Router with both endpoints and a permissive CORS layer.
pub fn router(tol: Tolerances) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/design", post(design_handler))
        .layer(CorsLayer::permissive())
        .with_state(tol)
}

/// Binds `0.0.0.0:port`. Port 0 picks a free port.
pub async fn bind(port: u16) -> io::Result<TcpListener> {
    TcpListener::bind(SocketAddr::from(([0, 0, 0, 0], port))).await
}

/// Serves until the listener fails.
pub async fn serve(listener: TcpListener, tol: Tolerances) -> io::Result<()> {
    axum::serve(listener, router(tol)).await
}
