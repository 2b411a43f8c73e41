//! Projective De Casteljau with Farin points in P⁵, P⁶ and P⁷.
//!
//! A control net is a polygon of homogeneous points with one Farin point per
//! edge. The Farin points fix the relative scale of neighbouring control
//! representatives, after which plain De Casteljau on coordinates gives a
//! rational curve. Each curve point is read as a line (P⁵), line-element (P⁶)
//! or line with two boundary scalars (P⁷) of E⁴ orthogonal to x₀ and then
//! projected to E³ with its x₀-coordinate kept as a height label.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{norm, HomPoint, Vec3, Vec4};
use crate::error::{Error, Result};
use crate::fit::projective_degree;
use crate::lines3::{element_point, PluckerLine};
use crate::lines4::{project_coords, GENERATOR_EPS};

/// Farin points must lie in the span of their edge up to this relative residual.
pub const FARIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    /// Lines.
    P5,
    /// Line-elements (strips).
    P6,
    /// Lines with two boundary points (patches).
    P7,
}

impl Space {
    pub fn dim(self) -> usize {
        match self {
            Space::P5 => 6,
            Space::P6 => 7,
            Space::P7 => 8,
        }
    }

    pub fn from_dim(dim: usize) -> Option<Space> {
        match dim {
            6 => Some(Space::P5),
            7 => Some(Space::P6),
            8 => Some(Space::P7),
            _ => None,
        }
    }
}

/// Validated control polygon with Farin points.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlNet {
    space: Space,
    controls: Vec<HomPoint>,
    farins: Vec<HomPoint>,
    reps: Vec<HomPoint>,
    weights: Vec<f64>,
}

/// Coefficients of a Farin point in the span of its edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarinSplit {
    pub lambda: f64,
    pub mu: f64,
    /// Distance of the unit Farin point from the span of the unit edge ends.
    pub residual: f64,
}

/// Least-squares `f ≈ λ·a + μ·b` on unit-normalized coordinates; the
/// coefficients refer to the inputs as given.
pub fn split_farin(a: &HomPoint, b: &HomPoint, f: &HomPoint) -> FarinSplit {
    let (na, nb, nf) = (a.norm(), b.norm(), f.norm());
    let (ua, ub, uf) = (a.normalized(), b.normalized(), f.normalized());
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let g = nalgebra::Matrix2::new(1.0, dot(&ua, &ub), dot(&ua, &ub), 1.0);
    let rhs = nalgebra::Vector2::new(dot(&ua, &uf), dot(&ub, &uf));
    let Some(sol) = g.lu().solve(&rhs) else {
        return FarinSplit { lambda: 0.0, mu: 0.0, residual: f64::INFINITY };
    };
    let residual = norm(&uf.iter().zip(ua.iter().zip(&ub)).map(|(f, (a, b))| f - sol.x * a - sol.y * b).collect::<Vec<_>>());
    FarinSplit { lambda: sol.x * nf / na, mu: sol.y * nf / nb, residual }
}

fn dir_block(x: &[f64]) -> Vec3 {
    Vec3::new(x[0], x[1], x[2])
}

/// Signs the controls so that the first direction block has a positive
/// largest component and each following one makes a non-obtuse angle with
/// its predecessor.
fn orient(controls: &[HomPoint]) -> Result<Vec<HomPoint>> {
    let mut oriented: Vec<HomPoint> = Vec::with_capacity(controls.len());
    for c in controls {
        let d = dir_block(c.coords());
        let flip = match oriented.last() {
            Some(prev) => dir_block(prev.coords()).dot(&d) < 0.0,
            None => d[d.iamax()] < 0.0,
        };
        oriented.push(if flip { c.scaled(-1.0)? } else { c.clone() });
    }
    Ok(oriented)
}

impl ControlNet {
    /// Validates the net, orients the controls (see [`orient`]) and recovers
    /// the weights from the Farin points.
    pub fn new(space: Space, controls: Vec<HomPoint>, farins: Vec<HomPoint>) -> Result<Self> {
        if controls.len() < 2 {
            return Err(Error::InvalidNet(format!("need at least 2 controls, got {}", controls.len())));
        }
        if farins.len() + 1 != controls.len() {
            return Err(Error::InvalidNet(format!(
                "need {} Farin points for {} controls, got {}",
                controls.len() - 1,
                controls.len(),
                farins.len()
            )));
        }
        for p in controls.iter().chain(&farins) {
            if p.coords().len() != space.dim() {
                return Err(Error::DimensionMismatch { expected: space.dim(), got: p.coords().len() });
            }
        }
        for (i, c) in controls.iter().enumerate() {
            if dir_block(c.coords()).norm() <= GENERATOR_EPS * c.norm() {
                return Err(Error::InvalidNet(format!("controls[{i}] has a vanishing direction block")));
            }
        }

        let oriented = orient(&controls)?;

        let mut scale = vec![1.0 / oriented[0].norm()];
        for (i, f) in farins.iter().enumerate() {
            let split = split_farin(&oriented[i], &oriented[i + 1], f);
            if !(split.residual <= FARIN_TOL) {
                return Err(Error::InvalidFarin { index: i, residual: split.residual });
            }
            if !(split.lambda * split.mu > 0.0) {
                return Err(Error::FarinOutsideSegment { index: i });
            }
            scale.push(scale[i] * split.mu / split.lambda);
        }
        let reps = oriented.iter().zip(&scale).map(|(c, k)| c.scaled(*k)).collect::<Result<Vec<_>>>()?;
        let weights = reps.iter().map(HomPoint::norm).collect();
        Ok(ControlNet { space, controls, farins, reps, weights })
    }

    /// Net with every Farin point at the midpoint of the unit-norm, oriented
    /// representatives of its edge (all weights 1).
    pub fn with_unit_weights(space: Space, controls: Vec<HomPoint>) -> Result<Self> {
        let oriented = orient(&controls)?;
        let farins = oriented
            .windows(2)
            .map(|w| HomPoint::new(w[0].normalized().iter().zip(w[1].normalized()).map(|(a, b)| a + b).collect()))
            .collect::<Result<Vec<_>>>()?;
        ControlNet::new(space, controls, farins)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.controls.len() - 1
    }

    pub fn controls(&self) -> &[HomPoint] {
        &self.controls
    }

    pub fn farins(&self) -> &[HomPoint] {
        &self.farins
    }

    /// Scaled control representatives `c₀*, …, cₙ*` with `c₀*` of unit norm.
    pub fn representatives(&self) -> &[HomPoint] {
        &self.reps
    }

    /// Norms of the representatives, i.e. weights relative to unit-norm controls.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Homogeneous curve point at `t`.
    pub fn curve_point(&self, t: f64) -> Vec<f64> {
        decasteljau_eval(&self.reps, t)
    }
}

/// Scaled representatives with `farin[i] ∝ c_i* + c_{i+1}*`.
pub fn weights_from_farin(net: &ControlNet) -> Vec<HomPoint> {
    net.reps.clone()
}

/// Repeated linear interpolation `(1−t)·a + t·b` on coordinates.
pub fn decasteljau_eval(reps: &[HomPoint], t: f64) -> Vec<f64> {
    let mut work: Vec<Vec<f64>> = reps.iter().map(|p| p.coords().to_vec()).collect();
    for level in (1..work.len()).rev() {
        for i in 0..level {
            let (lo, hi) = work.split_at_mut(i + 1);
            for (a, b) in lo[i].iter_mut().zip(&hi[0]) {
                *a = (1.0 - t) * *a + t * b;
            }
        }
    }
    work.swap_remove(0)
}

/// What a sample carries along its line besides the line itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Marks {
    Line,
    Strip { point: Vec3 },
    Patch { boundary: [Vec3; 2] },
}

/// One ruling of the projected surface, labeled with its x₀-coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuledSample {
    pub t: f64,
    pub line: PluckerLine,
    pub marks: Marks,
    pub height: f64,
}

impl RuledSample {
    pub fn unit_dir(&self) -> Vec3 {
        self.line.dir.normalize()
    }

    /// Point of E⁴ over `p` at this sample's height.
    pub fn lift(&self, p: &Vec3) -> Vec4 {
        Vec4::new(self.height, p.x, p.y, p.z)
    }

    /// Start of the `u` axis used for meshing: the strip point for strips and
    /// the pedal point otherwise.
    pub fn origin(&self) -> Vec3 {
        match self.marks {
            Marks::Strip { point } => point,
            _ => self.line.pedal_point(),
        }
    }
}

fn read_sample(x: &[f64], t: f64) -> Result<RuledSample> {
    let dir = dir_block(x);
    if dir.norm() <= GENERATOR_EPS * norm(x) {
        return Err(Error::GeneratorSpace { t });
    }
    let height = -dir.dot(&Vec3::new(x[3], x[4], x[5])) / dir.norm_squared();
    let p = project_coords(x).map_err(|_| Error::GeneratorSpace { t })?;
    let line = PluckerLine::new(dir, Vec3::new(p[3], p[4], p[5]))?;
    let marks = match x.len() {
        6 => Marks::Line,
        7 => Marks::Strip { point: element_point(&line.dir, &line.mom, x[6])? },
        _ => Marks::Patch { boundary: [element_point(&line.dir, &line.mom, x[6])?, element_point(&line.dir, &line.mom, x[7])?] },
    };
    Ok(RuledSample { t, line, marks, height })
}

/// Evaluates a net of any space.
pub fn eval(net: &ControlNet, t: f64) -> Result<RuledSample> {
    read_sample(&net.curve_point(t), t)
}

fn eval_in(net: &ControlNet, space: Space, t: f64) -> Result<RuledSample> {
    if net.space != space {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: net.space.dim() });
    }
    eval(net, t)
}

pub fn eval_ruled(net: &ControlNet, t: f64) -> Result<RuledSample> {
    eval_in(net, Space::P5, t)
}

pub fn eval_strip(net: &ControlNet, t: f64) -> Result<RuledSample> {
    eval_in(net, Space::P6, t)
}

pub fn eval_patch(net: &ControlNet, t: f64) -> Result<RuledSample> {
    eval_in(net, Space::P7, t)
}

/// Degree bound `2n` of the homogeneous parametrization of the marked curve.
pub fn surface_degree_bound(net: &ControlNet) -> usize {
    2 * net.degree()
}

fn fit_samples(max_degree: usize) -> Vec<f64> {
    let k = (4 * (max_degree + 1) + 8).max(40);
    (0..k).map(|i| i as f64 / (k - 1) as f64).collect()
}

/// Fitted degree in `t` of the surface on `[0, 1]`: the larger of the
/// projective degrees of the E⁴ marked curve (pedal points, strip points or both
/// boundary points, lifted by height) and of the ruling directions.
pub fn fitted_surface_degree(net: &ControlNet, max_degree: usize) -> Result<Option<usize>> {
    let ts = fit_samples(max_degree);
    let samples = ts.iter().map(|&t| eval(net, t)).collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, Vec<f64>)> = samples
        .iter()
        .map(|s| {
            let mut v = vec![1.0, s.height];
            match s.marks {
                Marks::Patch { boundary } => {
                    v.extend(boundary[0].iter());
                    v.extend(boundary[1].iter());
                }
                _ => v.extend(s.origin().iter()),
            }
            (s.t, v)
        })
        .collect();
    let dirs: Vec<(f64, Vec<f64>)> = samples.iter().map(|s| (s.t, s.line.dir.iter().copied().collect())).collect();
    let tol = 1e-9;
    let (Some(a), Some(b)) = (projective_degree(&points, max_degree, tol)?, projective_degree(&dirs, max_degree, tol)?) else {
        return Ok(None);
    };
    Ok(Some(a.max(b)))
}

/// Fitted projective degree of the projected lines as a curve in P⁵.
pub fn fitted_line_degree(net: &ControlNet, max_degree: usize) -> Result<Option<usize>> {
    let samples = fit_samples(max_degree)
        .into_iter()
        .map(|t| eval(net, t).map(|s| (t, s.line.coords().to_vec())))
        .collect::<Result<Vec<_>>>()?;
    projective_degree(&samples, max_degree, 1e-9)
}

/// Sampled surface: `nt` rulings with `nu` points each, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub nt: usize,
    pub nu: usize,
    pub u_range: (f64, f64),
    pub vertices: Vec<Vec3>,
    pub rulings: Vec<RuledSample>,
    /// Strip points of a P⁶ net.
    pub curve: Option<Vec<Vec3>>,
}

impl Mesh {
    pub fn vertex(&self, i: usize, j: usize) -> &Vec3 {
        &self.vertices[i * self.nu + j]
    }
}

/// Grid `origin(tᵢ) + uⱼ·dir(tᵢ)` with unit directions, `tᵢ` uniform in `[0, 1]`
/// and `uⱼ` uniform in `u_range`. Patches measure `u` from the pedal point
/// and clamp it between the two boundary points.
pub fn sample_mesh(net: &ControlNet, nt: usize, nu: usize, u_range: (f64, f64)) -> Result<Mesh> {
    if nt < 2 || nu < 2 {
        return Err(Error::InvalidNet(format!("mesh needs nt ≥ 2 and nu ≥ 2, got {nt}×{nu}")));
    }
    if !(u_range.0.is_finite() && u_range.1.is_finite()) {
        return Err(Error::InvalidNet("u range must be finite".into()));
    }
    let results: Vec<Result<RuledSample>> = (0..nt).into_par_iter().map(|i| eval(net, i as f64 / (nt - 1) as f64)).collect();
    let rulings = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut vertices = Vec::with_capacity(nt * nu);
    for s in &rulings {
        let (origin, dir) = (s.origin(), s.unit_dir());
        let clamp = match s.marks {
            Marks::Patch { boundary } => {
                let (a, b) = ((boundary[0] - origin).dot(&dir), (boundary[1] - origin).dot(&dir));
                Some((a.min(b), a.max(b)))
            }
            _ => None,
        };
        for j in 0..nu {
            let mut u = u_range.0 + (u_range.1 - u_range.0) * j as f64 / (nu - 1) as f64;
            if let Some((lo, hi)) = clamp {
                u = u.clamp(lo, hi);
            }
            vertices.push(origin + dir * u);
        }
    }
    let curve = (net.space == Space::P6).then(|| rulings.iter().map(RuledSample::origin).collect());
    Ok(Mesh { nt, nu, u_range, vertices, rulings, curve })
}
