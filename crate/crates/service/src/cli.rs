//! Command-line interface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ruledspace_core::bezier::eval;
use ruledspace_core::GammaSurface;
use serde_json::json;

use crate::mesh_io::{compute_mesh, sidecar_json, sidecar_path, to_obj, SampleRequest};
use crate::report::verify;
use crate::scene::Scene;
use crate::server::{serve, AppState};

/// Scene served when `serve` is started without `--scene`.
pub const DEFAULT_SCENE: &str = include_str!("../scenes/fig5.scene.json");

#[derive(Debug, Parser)]
#[command(name = "ruledspace", version, about = "Design rational ruled surfaces, strips and patches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the ruling at parameter t as JSON.
    Eval {
        scene: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Export the sampled surface as OBJ plus a `.labels.json` sidecar.
    Mesh {
        scene: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Check degree, circle and height invariants of a scene.
    Verify { scene: PathBuf },
    /// Run the HTTP/WebSocket service.
    Serve {
        #[arg(long, env = "RULEDSPACE_PORT", default_value_t = 8080)]
        port: u16,
        /// Initial scene; defaults to the built-in quadratic strip.
        #[arg(long)]
        scene: Option<PathBuf>,
    },
    /// Emit example data.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long)]
    pub nt: Option<usize>,
    #[arg(long)]
    pub nu: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub u_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u_max: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// Canonical surface of two skew lines: rulings, slice count and residuals.
    Gamma {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, allow_negative_numbers = true)]
        n: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 11)]
        nt: usize,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Eval { scene, t } => {
            let scene = Scene::load(&scene)?;
            let sample = eval(&scene.net()?, t)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&sample)?)?;
            Ok(0)
        }
        Command::Mesh { scene, output, sampling } => {
            let scene = Scene::load(&scene)?;
            let request = SampleRequest {
                nt: sampling.nt,
                nu: sampling.nu,
                u_range: match (sampling.u_min, sampling.u_max) {
                    (None, None) => None,
                    (lo, hi) => Some([lo.unwrap_or(scene.sampling.u_range[0]), hi.unwrap_or(scene.sampling.u_range[1])]),
                },
                format: None,
            };
            let mesh = compute_mesh(&scene.net()?, &request.resolve(&scene))?;
            std::fs::write(&output, to_obj(&scene, &mesh))?;
            let sidecar = sidecar_path(&output);
            std::fs::write(&sidecar, sidecar_json(&scene, &mesh))?;
            writeln!(out, "wrote {} and {}", output.display(), sidecar.display())?;
            Ok(0)
        }
        Command::Verify { scene } => {
            let scene = Scene::load(&scene)?;
            let report = verify(&scene.net()?, scene.sampling.nt)?;
            writeln!(out, "{}", report.summary())?;
            for failure in &report.failures {
                writeln!(err, "  {failure}")?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Serve { port, scene } => {
            let scene = match scene {
                Some(path) => Scene::load(path)?,
                None => Scene::from_json(DEFAULT_SCENE)?,
            };
            let state = AppState::new(scene)?;
            tokio::runtime::Runtime::new()?.block_on(serve(state, port))?;
            Ok(0)
        }
        Command::Demo { which: Demo::Gamma { h, n, alpha, nt } } => {
            let g = GammaSurface::new(h, n, alpha)?;
            let nt = nt.max(2);
            let rulings: Vec<_> = (0..nt)
                .map(|i| {
                    let t = i as f64 / (nt - 1) as f64;
                    json!({ "t": t, "striction": g.striction(t), "dir": g.ruling_dir(t) })
                })
                .collect();
            let max_implicit = (0..nt)
                .flat_map(|i| [-1.0, 0.0, 1.0].map(|u| (i as f64 / (nt - 1) as f64, u)))
                .map(|(t, u)| g.implicit(&g.point(t, u)).iter().fold(0.0f64, |m, r| m.max(r.abs())))
                .fold(0.0f64, f64::max);
            let slice = g.degree_slice_check()?;
            let (at_infinity, dir_at_infinity) = g.ruling_at_infinity();
            let doc = json!({
                "h": h,
                "n": n,
                "alpha": alpha,
                "rulings": rulings,
                "ruling_at_infinity": { "point": at_infinity, "dir": dir_at_infinity },
                "max_implicit_residual": max_implicit,
                "slice": { "real": slice.real, "complex": slice.complex },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            Ok(0)
        }
    }
}
