//! Scene files, mesh export, the `ruledspace` command-line tool and the live
//! editing service built on `ruledspace-core`.

pub mod cli;
pub mod mesh_io;
pub mod report;
pub mod scene;
pub mod server;

pub use scene::{Record, Sampling, Scene, SceneError};
