//! HTTP endpoint serving the query engine at `/sparql`.
//!
//! GET takes the query in the URL-encoded `query` parameter; POST takes
//! either an `application/x-www-form-urlencoded` body with a `query`
//! field or a raw `application/sparql-query` body. Responses use the
//! SPARQL results JSON content type; parse and evaluation errors map to
//! status 400 with a plain-text message.

use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use mgkb_rdf::Graph;

use crate::{evaluate_indexed, parse_query, IndexedGraph};

pub const RESULTS_CONTENT_TYPE: &str = "application/sparql-results+json";

/// Build the router over an immutable graph snapshot. The index is built
/// once; request handlers only read it.
pub fn router(graph: &Graph) -> Router {
    let index = Arc::new(IndexedGraph::build(graph));
    Router::new()
        .route("/sparql", get(handle_get).post(handle_post))
        .with_state(index)
}

/// Serve until the task is dropped. Binding the listener is left to the
/// caller so tests can use an ephemeral port.
pub async fn serve(graph: &Graph, listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(graph)).await
}

async fn handle_get(
    State(index): State<Arc<IndexedGraph>>,
    Query(params): Query<HashMap<String, String>>,
) -> Response {
    match params.get("query") {
        Some(q) => run_query(&index, q),
        None => bad_request("missing `query` parameter".into()),
    }
}

async fn handle_post(
    State(index): State<Arc<IndexedGraph>>,
    headers: HeaderMap,
    body: Bytes,
) -> Response {
    let content_type = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or("");
    let query = if content_type.starts_with("application/x-www-form-urlencoded") {
        url::form_urlencoded::parse(&body)
            .find(|(k, _)| k == "query")
            .map(|(_, v)| v.into_owned())
    } else {
        String::from_utf8(body.to_vec()).ok()
    };
    match query {
        Some(q) => run_query(&index, &q),
        None => bad_request("missing query in request body".into()),
    }
}

fn run_query(index: &IndexedGraph, text: &str) -> Response {
    let ast = match parse_query(text) {
        Ok(ast) => ast,
        Err(e) => return bad_request(e.to_string()),
    };
    match evaluate_indexed(&ast, index) {
        Ok(results) => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, RESULTS_CONTENT_TYPE)],
            results.to_json().to_string(),
        )
            .into_response(),
        Err(e) => bad_request(e.to_string()),
    }
}

fn bad_request(message: String) -> Response {
    (StatusCode::BAD_REQUEST, message).into_response()
}
