//! HTTP and WebSocket service holding one scene.
//!
//! `GET /scene`, `PUT /scene` (optimistic concurrency on `revision`),
//! `POST /sample`, `GET /classify` and `GET /live` (WebSocket). Every accepted
//! PUT bumps the revision and pushes a `{revision, name, space, mesh}` frame
//! to all live clients; a client also receives the current frame on connect.

use std::sync::Arc;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ruledspace_core::bezier::ControlNet;
use serde::Serialize;
use serde_json::json;
use tokio::sync::{broadcast, RwLock};

use crate::mesh_io::{compute_mesh, mesh_document, to_obj, MeshFormat, SampleRequest};
use crate::report::{classify, SegmentReport};
use crate::scene::{Scene, SceneError};

struct Current {
    scene: Scene,
    net: ControlNet,
    /// Serialized mesh frame for the current revision.
    frame: String,
}

pub struct AppState {
    current: RwLock<Current>,
    /// Serializes writers; readers only take `current`.
    write: tokio::sync::Mutex<()>,
    frames: broadcast::Sender<String>,
}

pub type SharedState = Arc<AppState>;

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("revision {given} does not match current revision {current}")]
    Conflict { given: u64, current: u64 },
    #[error("evaluation failed: {0}")]
    Eval(#[from] ruledspace_core::Error),
    #[error("{0}")]
    BadRequest(String),
    #[error("worker failed: {0}")]
    Worker(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, kind, path) = match &self {
            ApiError::Scene(SceneError::Validation { path, .. }) => (StatusCode::BAD_REQUEST, "validation", Some(path.clone())),
            ApiError::Scene(SceneError::Parse { .. }) => (StatusCode::BAD_REQUEST, "parse", None),
            ApiError::Scene(SceneError::Io { .. }) => (StatusCode::INTERNAL_SERVER_ERROR, "io", None),
            ApiError::Conflict { .. } => (StatusCode::CONFLICT, "conflict", None),
            ApiError::Eval(_) => (StatusCode::BAD_REQUEST, "evaluation", None),
            ApiError::BadRequest(_) => (StatusCode::BAD_REQUEST, "request", None),
            ApiError::Worker(_) => (StatusCode::INTERNAL_SERVER_ERROR, "worker", None),
        };
        (status, Json(json!({ "error": kind, "path": path, "message": self.to_string() }))).into_response()
    }
}

fn frame_for(scene: &Scene, net: &ControlNet) -> Result<String, ApiError> {
    let mesh = compute_mesh(net, &scene.sampling)?;
    Ok(serde_json::to_string(&mesh_document(scene, mesh)).expect("meshes always serialize"))
}

impl AppState {
    pub fn new(scene: Scene) -> Result<SharedState, ApiError> {
        let net = scene.net()?;
        let frame = frame_for(&scene, &net)?;
        let (frames, _) = broadcast::channel(16);
        Ok(Arc::new(AppState { current: RwLock::new(Current { scene, net, frame }), write: Default::default(), frames }))
    }

    pub async fn scene(&self) -> Scene {
        self.current.read().await.scene.clone()
    }

    /// Validates `scene`, checks its revision against the current one and
    /// swaps it in with the revision incremented.
    pub async fn replace(&self, mut scene: Scene) -> Result<Scene, ApiError> {
        let _writer = self.write.lock().await;
        let current = self.current.read().await.scene.revision;
        if scene.revision != current {
            return Err(ApiError::Conflict { given: scene.revision, current });
        }
        scene.revision = current + 1;
        let candidate = scene.clone();
        let (net, frame) = tokio::task::spawn_blocking(move || -> Result<_, ApiError> {
            let net = candidate.net()?;
            let frame = frame_for(&candidate, &net)?;
            Ok((net, frame))
        })
        .await
        .map_err(|e| ApiError::Worker(e.to_string()))??;
        *self.current.write().await = Current { scene: scene.clone(), net, frame: frame.clone() };
        // no receivers is fine
        let _ = self.frames.send(frame);
        Ok(scene)
    }
}

pub fn router(state: SharedState) -> Router {
    Router::new()
        .route("/scene", get(get_scene).put(put_scene))
        .route("/sample", post(post_sample))
        .route("/classify", get(get_classify))
        .route("/live", get(live))
        .with_state(state)
}

async fn get_scene(State(state): State<SharedState>) -> Json<Scene> {
    Json(state.scene().await)
}

async fn put_scene(State(state): State<SharedState>, body: String) -> Result<Json<Scene>, ApiError> {
    let scene = Scene::parse(&body)?;
    Ok(Json(state.replace(scene).await?))
}

async fn post_sample(State(state): State<SharedState>, body: String) -> Result<Response, ApiError> {
    let request: SampleRequest = if body.trim().is_empty() {
        SampleRequest::default()
    } else {
        serde_json::from_str(&body).map_err(|e| ApiError::BadRequest(format!("invalid sample request: {e}")))?
    };
    let (scene, net) = {
        let current = state.current.read().await;
        (current.scene.clone(), current.net.clone())
    };
    let sampling = request.resolve(&scene);
    if sampling.nt < 2 || sampling.nu < 2 || !(sampling.u_range[0].is_finite() && sampling.u_range[1].is_finite()) {
        return Err(ApiError::BadRequest("nt and nu must be at least 2 and u_range finite".into()));
    }
    let mesh = tokio::task::spawn_blocking(move || compute_mesh(&net, &sampling))
        .await
        .map_err(|e| ApiError::Worker(e.to_string()))??;
    Ok(match request.format.unwrap_or_default() {
        MeshFormat::Json => Json(mesh_document(&scene, mesh)).into_response(),
        MeshFormat::Obj => ([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], to_obj(&scene, &mesh)).into_response(),
    })
}

#[derive(Serialize)]
struct ClassifyResponse {
    revision: u64,
    segments: Vec<SegmentReport>,
}

async fn get_classify(State(state): State<SharedState>) -> Result<Json<ClassifyResponse>, ApiError> {
    let current = state.current.read().await;
    Ok(Json(ClassifyResponse { revision: current.scene.revision, segments: classify(&current.net)? }))
}

async fn live(ws: WebSocketUpgrade, State(state): State<SharedState>) -> Response {
    ws.on_upgrade(move |socket| push_frames(socket, state))
}

async fn push_frames(mut socket: WebSocket, state: SharedState) {
    // subscribe before reading the current frame so no revision is missed
    let mut rx = state.frames.subscribe();
    let initial = state.current.read().await.frame.clone();
    if socket.send(Message::Text(initial.into())).await.is_err() {
        return;
    }
    loop {
        tokio::select! {
            frame = rx.recv() => match frame {
                Ok(frame) => {
                    if socket.send(Message::Text(frame.into())).await.is_err() {
                        return;
                    }
                }
                Err(broadcast::error::RecvError::Lagged(_)) => {
                    let latest = state.current.read().await.frame.clone();
                    if socket.send(Message::Text(latest.into())).await.is_err() {
                        return;
                    }
                }
                Err(broadcast::error::RecvError::Closed) => return,
            },
            incoming = socket.recv() => match incoming {
                Some(Ok(Message::Close(_))) | None | Some(Err(_)) => return,
                Some(Ok(_)) => {}
            },
        }
    }
}

pub async fn serve(state: SharedState, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
