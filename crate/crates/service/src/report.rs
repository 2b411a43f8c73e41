//! Invariant checks and segment classification for scenes.

use ruledspace_core::bezier::{eval, fitted_surface_degree, surface_degree_bound, ControlNet, Marks, RuledSample, Space};
use ruledspace_core::fit::fit_circle;
use ruledspace_core::gamma::{classify_element_segment, classify_segment, SegmentClass};
use ruledspace_core::lines3::plucker_condition_residual;
use ruledspace_core::{E4Line, E4LineElement, Error as CoreError, HomPoint, Vec3, Vec4};
use serde::{Deserialize, Serialize};

pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub index: usize,
    pub class: SegmentClass,
}

fn segment_lines(space: Space, a: &HomPoint, b: &HomPoint) -> ruledspace_core::Result<SegmentClass> {
    match space {
        Space::P6 => classify_element_segment(&E4LineElement::from_hom(a)?, &E4LineElement::from_hom(b)?),
        _ => {
            let six = |p: &HomPoint| HomPoint::from_slice(&p.coords()[..6]).and_then(|h| E4Line::from_hom(&h));
            classify_segment(&six(a)?, &six(b)?)
        }
    }
}

/// Case analysis of every edge of the control polygon.
pub fn classify(net: &ControlNet) -> ruledspace_core::Result<Vec<SegmentReport>> {
    net.controls()
        .windows(2)
        .enumerate()
        .map(|(index, w)| segment_lines(net.space(), &w[0], &w[1]).map(|class| SegmentReport { index, class }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub degree_bound: usize,
    pub fitted_degree: Option<usize>,
    pub max_plucker_residual: f64,
    /// Largest circle-fit residual over all segment curves that are not straight.
    pub max_circle_residual: f64,
    pub max_height_error: f64,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn degree_ok(&self) -> bool {
        self.fitted_degree.is_some_and(|d| d <= self.degree_bound)
    }

    pub fn circles_ok(&self) -> bool {
        self.max_circle_residual < VERIFY_TOL
    }

    pub fn heights_ok(&self) -> bool {
        self.max_height_error < VERIFY_TOL && self.max_plucker_residual < VERIFY_TOL
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let degree = match self.fitted_degree {
            Some(d) if d <= self.degree_bound => format!("degree≤{}", self.degree_bound),
            Some(d) => format!("degree={d}>{}", self.degree_bound),
            None => format!("degree>{}", self.degree_bound),
        };
        let circles = if self.circles_ok() { "circles OK" } else { "circles FAILED" };
        let heights = if self.heights_ok() { "heights OK" } else { "heights FAILED" };
        format!("{verdict} {degree}, {circles}, {heights}")
    }
}

/// Marked E⁴ curves of a sample: pedal points, strip points or both boundaries.
fn marked_points(s: &RuledSample) -> Vec<Vec4> {
    match s.marks {
        Marks::Line => vec![s.lift(&s.line.pedal_point())],
        Marks::Strip { point } => vec![s.lift(&point)],
        Marks::Patch { boundary } => vec![s.lift(&boundary[0]), s.lift(&boundary[1])],
    }
}

/// Circle residual of a point set, `0` for collinear or coincident sets.
fn circle_residual(points: &[Vec4]) -> ruledspace_core::Result<f64> {
    let coords: Vec<Vec<f64>> = points.iter().map(|p| p.iter().copied().collect()).collect();
    match fit_circle(&coords) {
        Ok(fit) => Ok(fit.residual / (1.0 + fit.radius)),
        Err(CoreError::DegenerateFit(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Runs the invariant suite: degree fit against `2n`, circularity of the
/// marked curve of every polygon edge, Plücker residuals and height labels.
pub fn verify(net: &ControlNet, nt: usize) -> ruledspace_core::Result<VerifyReport> {
    let mut failures = Vec::new();
    let degree_bound = surface_degree_bound(net);
    let fitted_degree = fitted_surface_degree(net, degree_bound + 2)?;
    if !fitted_degree.is_some_and(|d| d <= degree_bound) {
        failures.push(format!("fitted degree {fitted_degree:?} exceeds {degree_bound}"));
    }

    let mut max_plucker_residual = 0.0f64;
    let mut max_height_error = 0.0f64;
    let nt = nt.max(2);
    for i in 0..nt {
        let t = i as f64 / (nt - 1) as f64;
        let s = eval(net, t)?;
        max_plucker_residual = max_plucker_residual.max(plucker_condition_residual(&s.line.coords()).abs());
        let x = net.curve_point(t);
        let lift = E4Line::from_hom(&HomPoint::from_slice(&x[..6])?)?;
        max_height_error = max_height_error.max((lift.pedal_point()?.w - s.height).abs());
    }
    for (t, c) in [(0.0, net.controls().first()), (1.0, net.controls().last())] {
        let c = c.expect("nets have controls").coords();
        let dir = Vec3::new(c[0], c[1], c[2]);
        let expected = -dir.dot(&Vec3::new(c[3], c[4], c[5])) / dir.norm_squared();
        let got = eval(net, t)?.height;
        max_height_error = max_height_error.max((got - expected).abs() / (1.0 + expected.abs()));
    }
    if max_plucker_residual >= VERIFY_TOL {
        failures.push(format!("Plücker residual {max_plucker_residual:e}"));
    }
    if max_height_error >= VERIFY_TOL {
        failures.push(format!("height error {max_height_error:e}"));
    }

    let mut max_circle_residual = 0.0f64;
    for (i, w) in net.controls().windows(2).enumerate() {
        let segment = ControlNet::new(net.space(), w.to_vec(), vec![net.farins()[i].clone()])?;
        let samples = (0..24).map(|k| eval(&segment, k as f64 / 23.0)).collect::<ruledspace_core::Result<Vec<_>>>()?;
        let tracks = marked_points(&samples[0]).len();
        for track in 0..tracks {
            let points: Vec<Vec4> = samples.iter().map(|s| marked_points(s)[track]).collect();
            let r = circle_residual(&points)?;
            if r >= VERIFY_TOL {
                failures.push(format!("segment {i}: marked curve is not a circle (residual {r:e})"));
            }
            max_circle_residual = max_circle_residual.max(r);
        }
    }

    Ok(VerifyReport { degree_bound, fitted_degree, max_plucker_residual, max_circle_residual, max_height_error, failures })
}
