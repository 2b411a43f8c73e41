//! Scene documents: a control net stored as line(-element) records with
//! height labels, plus sampling settings and metadata.
//!
//! A record `{dir, mom, ell?, ell2?, height}` describes the E³ line `(dir, mom)`
//! lifted to x₀ = `height`. Its homogeneous coordinates are
//! `(dir, mom − height·dir, ell, ell2)`, so the record keeps the scale of the
//! representative and Farin points can be stored in the same form.

use std::path::{Path, PathBuf};

use ruledspace_core::bezier::{ControlNet, Space};
use ruledspace_core::lines3::plucker_condition_residual;
use ruledspace_core::{Error as CoreError, HomPoint, Vec3};
use serde::{Deserialize, Serialize};

pub const SCENE_VERSION: u32 = 1;

/// Records must satisfy the Plücker condition up to this relative residual.
pub const RECORD_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at byte {offset} (line {line}, column {column}): {message}")]
    Parse { offset: usize, line: usize, column: usize, message: String },
    #[error("invalid {path}: {message}")]
    Validation { path: String, message: String },
}

impl SceneError {
    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        SceneError::Validation { path: path.into(), message: message.into() }
    }

    /// Field path of a validation error.
    pub fn path(&self) -> Option<&str> {
        match self {
            SceneError::Validation { path, .. } => Some(path),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub dir: [f64; 3],
    pub mom: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell2: Option<f64>,
    pub height: f64,
}

impl Record {
    pub fn to_hom(&self) -> Vec<f64> {
        let h = self.height;
        let mut x = vec![
            self.dir[0],
            self.dir[1],
            self.dir[2],
            self.mom[0] - h * self.dir[0],
            self.mom[1] - h * self.dir[1],
            self.mom[2] - h * self.dir[2],
        ];
        x.extend(self.ell);
        x.extend(self.ell2);
        x
    }

    /// Inverse of [`Record::to_hom`]; `None` when the direction block vanishes.
    pub fn from_hom(x: &[f64]) -> Option<Record> {
        let dir = Vec3::new(x[0], x[1], x[2]);
        let dd = dir.norm_squared();
        if dd == 0.0 {
            return None;
        }
        let m = Vec3::new(x[3], x[4], x[5]);
        let height = -dir.dot(&m) / dd;
        let mom = m + dir * height;
        Some(Record {
            dir: [x[0], x[1], x[2]],
            mom: [mom.x, mom.y, mom.z],
            ell: x.get(6).copied(),
            ell2: x.get(7).copied(),
            height,
        })
    }

    fn validate(&self, path: &str, space: Space) -> Result<HomPoint, SceneError> {
        let values = self.dir.iter().chain(&self.mom).chain(self.ell.iter()).chain(self.ell2.iter()).chain([&self.height]);
        if values.into_iter().any(|v| !v.is_finite()) {
            return Err(SceneError::invalid(path, "all numbers must be finite"));
        }
        let (want_ell, want_ell2) = match space {
            Space::P5 => (false, false),
            Space::P6 => (true, false),
            Space::P7 => (true, true),
        };
        if self.ell.is_some() != want_ell {
            let msg = if want_ell { "ell is required for this space" } else { "ell is not allowed for this space" };
            return Err(SceneError::invalid(format!("{path}.ell"), msg));
        }
        if self.ell2.is_some() != want_ell2 {
            let msg = if want_ell2 { "ell2 is required for this space" } else { "ell2 is not allowed for this space" };
            return Err(SceneError::invalid(format!("{path}.ell2"), msg));
        }
        if self.dir.iter().all(|v| *v == 0.0) {
            return Err(SceneError::invalid(format!("{path}.dir"), "direction must be nonzero"));
        }
        let six = [self.dir[0], self.dir[1], self.dir[2], self.mom[0], self.mom[1], self.mom[2]];
        let residual = plucker_condition_residual(&six);
        if residual.abs() > RECORD_TOL {
            return Err(SceneError::invalid(
                format!("{path}.mom"),
                format!("moment is not orthogonal to the direction (relative residual {residual:e})"),
            ));
        }
        HomPoint::new(self.to_hom()).map_err(|e| SceneError::invalid(path, e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub nt: usize,
    pub nu: usize,
    pub u_range: [f64; 2],
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { nt: 33, nu: 9, u_range: [-2.0, 2.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub version: u32,
    #[serde(default)]
    pub revision: u64,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub space: Space,
    pub controls: Vec<Record>,
    pub farins: Vec<Record>,
    #[serde(default)]
    pub sampling: Sampling,
}

/// Byte offset of a 1-based line/column position reported by the parser.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

impl Scene {
    /// Parses a scene document without validating it.
    pub fn parse(text: &str) -> Result<Scene, SceneError> {
        serde_json::from_str(text).map_err(|e| SceneError::Parse {
            offset: if e.is_eof() { text.len() } else { byte_offset(text, e.line(), e.column()) },
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Parses and validates a scene document.
    pub fn from_json(text: &str) -> Result<Scene, SceneError> {
        let scene = Scene::parse(text)?;
        scene.net()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenes always serialize");
        s.push('\n');
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scene, SceneError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io { path: path.to_owned(), source })?;
        Scene::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SceneError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|source| SceneError::Io { path: path.to_owned(), source })
    }

    /// Validates every record and builds the control net.
    pub fn net(&self) -> Result<ControlNet, SceneError> {
        if self.version != SCENE_VERSION {
            return Err(SceneError::invalid(
                "version",
                format!("unsupported version {}, expected {SCENE_VERSION}", self.version),
            ));
        }
        let s = &self.sampling;
        if s.nt < 2 || s.nu < 2 {
            return Err(SceneError::invalid("sampling", "nt and nu must be at least 2"));
        }
        if !(s.u_range[0].is_finite() && s.u_range[1].is_finite()) {
            return Err(SceneError::invalid("sampling.u_range", "bounds must be finite"));
        }
        if self.controls.len() < 2 {
            return Err(SceneError::invalid("controls", "at least 2 controls are required"));
        }
        if self.farins.len() + 1 != self.controls.len() {
            return Err(SceneError::invalid(
                "farins",
                format!(
                    "expected {} Farin records for {} controls, got {}",
                    self.controls.len() - 1,
                    self.controls.len(),
                    self.farins.len()
                ),
            ));
        }
        let controls = self
            .controls
            .iter()
            .enumerate()
            .map(|(i, r)| r.validate(&format!("controls[{i}]"), self.space))
            .collect::<Result<Vec<_>, _>>()?;
        let farins = self
            .farins
            .iter()
            .enumerate()
            .map(|(i, r)| r.validate(&format!("farins[{i}]"), self.space))
            .collect::<Result<Vec<_>, _>>()?;
        ControlNet::new(self.space, controls, farins).map_err(|e| match e {
            CoreError::InvalidFarin { index, residual } => {
                SceneError::invalid(format!("farins[{index}]"), format!("not in the span of its segment (residual {residual:e})"))
            }
            CoreError::FarinOutsideSegment { index } => {
                SceneError::invalid(format!("farins[{index}]"), "outside the segment of its two controls")
            }
            other => SceneError::invalid("controls", other.to_string()),
        })
    }

    /// Scene with unit-weight Farin points for the given control records.
    pub fn with_unit_weights(name: &str, space: Space, controls: Vec<Record>) -> Result<Scene, SceneError> {
        let hom = controls
            .iter()
            .enumerate()
            .map(|(i, r)| r.validate(&format!("controls[{i}]"), space))
            .collect::<Result<Vec<_>, _>>()?;
        let net = ControlNet::with_unit_weights(space, hom).map_err(|e| SceneError::invalid("controls", e.to_string()))?;
        let farins = net.farins().iter().map(|f| Record::from_hom(f.coords()).expect("Farin points have a direction")).collect();
        Ok(Scene {
            version: SCENE_VERSION,
            revision: 0,
            name: name.to_owned(),
            description: String::new(),
            space,
            controls,
            farins,
            sampling: Sampling::default(),
        })
    }
}
