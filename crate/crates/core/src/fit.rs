//! Least-squares circle and ellipse fits for point sets in ℝᵈ.
//!
//! Both fits first find the best plane through the points (SVD of the centered
//! data) and then fit inside that plane. Residuals are maximum deviations, so a
//! fit on exact data reports roundoff-level residuals.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleFit {
    pub center: Vec<f64>,
    pub radius: f64,
    /// Orthonormal basis of the supporting plane.
    pub basis: [Vec<f64>; 2],
    /// Largest distance of an input point from the fitted circle.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseFit {
    pub center: Vec<f64>,
    /// Semi-axis lengths, major first.
    pub semi_axes: [f64; 2],
    pub basis: [Vec<f64>; 2],
    /// Largest first-order (Sampson) distance to the conic combined with the
    /// distance from the supporting plane.
    pub residual: f64,
}

struct PlaneFrame {
    origin: DVector<f64>,
    e1: DVector<f64>,
    e2: DVector<f64>,
    uv: Vec<Vector2<f64>>,
    off_plane: Vec<f64>,
}

fn plane_frame<P: AsRef<[f64]>>(points: &[P]) -> Result<PlaneFrame> {
    let d = points[0].as_ref().len();
    if d < 2 || points.iter().any(|p| p.as_ref().len() != d) {
        return Err(Error::DegenerateFit("points must share a dimension of at least 2"));
    }
    let n = points.len();
    let data = DMatrix::from_fn(n, d, |i, j| points[i].as_ref()[j]);
    let origin: DVector<f64> = data.row_mean().transpose();
    let centered = DMatrix::from_fn(n, d, |i, j| data[(i, j)] - origin[j]);
    let svd = centered.clone().svd(false, true);
    let v_t = svd.v_t.ok_or(Error::DegenerateFit("singular value decomposition failed"))?;

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    if order.len() < 2 {
        return Err(Error::DegenerateFit("not enough points"));
    }
    let (s0, s1) = (svd.singular_values[order[0]], svd.singular_values[order[1]]);
    if s0 <= f64::MIN_POSITIVE || s1 <= 1e-10 * s0 {
        return Err(Error::DegenerateFit("points are collinear or coincident"));
    }
    let e1: DVector<f64> = v_t.row(order[0]).transpose();
    let e2: DVector<f64> = v_t.row(order[1]).transpose();

    let mut uv = Vec::with_capacity(n);
    let mut off_plane = Vec::with_capacity(n);
    for i in 0..n {
        let r: DVector<f64> = centered.row(i).transpose();
        let (u, v) = (r.dot(&e1), r.dot(&e2));
        off_plane.push((&r - &e1 * u - &e2 * v).norm());
        uv.push(Vector2::new(u, v));
    }
    Ok(PlaneFrame { origin, e1, e2, uv, off_plane })
}

impl PlaneFrame {
    fn lift(&self, p: &Vector2<f64>) -> Vec<f64> {
        (&self.origin + &self.e1 * p.x + &self.e2 * p.y).iter().copied().collect()
    }

    fn basis(&self) -> [Vec<f64>; 2] {
        [self.e1.iter().copied().collect(), self.e2.iter().copied().collect()]
    }
}

/// Plane fit followed by an algebraic circle fit refined by Gauss–Newton on
/// the geometric distances.
pub fn fit_circle<P: AsRef<[f64]>>(points: &[P]) -> Result<CircleFit> {
    if points.len() < 5 {
        return Err(Error::DegenerateFit("circle fit needs at least 5 points"));
    }
    let frame = plane_frame(points)?;
    let n = frame.uv.len();

    let a = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 2.0 * frame.uv[i].x,
        1 => 2.0 * frame.uv[i].y,
        _ => 1.0,
    });
    let b = DVector::from_fn(n, |i, _| frame.uv[i].norm_squared());
    let sol = a.svd(true, true).solve(&b, 1e-14).map_err(|_| Error::DegenerateFit("circle system is singular"))?;
    let mut center = Vector2::new(sol[0], sol[1]);
    let r2 = sol[2] + center.norm_squared();
    if !(r2 > 0.0) {
        return Err(Error::DegenerateFit("no real circle through the points"));
    }
    let mut radius = r2.sqrt();

    for _ in 0..10 {
        let mut jtj = nalgebra::Matrix3::<f64>::zeros();
        let mut jtr = nalgebra::Vector3::<f64>::zeros();
        for p in &frame.uv {
            let d = p - center;
            let dist = d.norm();
            if dist == 0.0 {
                continue;
            }
            let row = nalgebra::Vector3::new(-d.x / dist, -d.y / dist, -1.0);
            let res = dist - radius;
            jtj += row * row.transpose();
            jtr += row * res;
        }
        let Some(step) = jtj.lu().solve(&(-jtr)) else { break };
        center += Vector2::new(step.x, step.y);
        radius += step.z;
        if step.norm() <= 1e-15 * (1.0 + radius) {
            break;
        }
    }

    let residual =
        frame.uv.iter().zip(&frame.off_plane).map(|(p, off)| ((p - center).norm() - radius).hypot(*off)).fold(0.0, f64::max);

    Ok(CircleFit { center: frame.lift(&center), radius: radius.abs(), basis: frame.basis(), residual })
}

/// Plane fit followed by an algebraic conic fit; fails unless the conic is a
/// real ellipse.
pub fn fit_ellipse<P: AsRef<[f64]>>(points: &[P]) -> Result<EllipseFit> {
    if points.len() < 6 {
        return Err(Error::DegenerateFit("ellipse fit needs at least 6 points"));
    }
    let frame = plane_frame(points)?;
    let n = frame.uv.len();
    let scale = (frame.uv.iter().map(|p| p.norm_squared()).sum::<f64>() / n as f64).sqrt();
    let uv: Vec<Vector2<f64>> = frame.uv.iter().map(|p| p / scale).collect();

    let design = DMatrix::from_fn(n, 6, |i, j| {
        let (x, y) = (uv[i].x, uv[i].y);
        [x * x, x * y, y * y, x, y, 1.0][j]
    });
    let svd = design.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::DegenerateFit("singular value decomposition failed"))?;
    let smallest = (0..svd.singular_values.len())
        .min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]))
        .expect("six singular values");
    let q: Vec<f64> = v_t.row(smallest).iter().copied().collect();
    let (a, b, c, d, e, f) = (q[0], q[1], q[2], q[3], q[4], q[5]);

    if b * b - 4.0 * a * c >= 0.0 {
        return Err(Error::DegenerateFit("conic through the points is not an ellipse"));
    }

    let residual = uv
        .iter()
        .zip(&frame.off_plane)
        .map(|(p, off)| {
            let (x, y) = (p.x, p.y);
            let value = a * x * x + b * x * y + c * y * y + d * x + e * y + f;
            let grad = Vector2::new(2.0 * a * x + b * y + d, b * x + 2.0 * c * y + e);
            let sampson = value.abs() / grad.norm().max(f64::MIN_POSITIVE) * scale;
            sampson.hypot(*off)
        })
        .fold(0.0, f64::max);

    let quad = Matrix2::new(a, b / 2.0, b / 2.0, c);
    let center = quad.lu().solve(&Vector2::new(-d / 2.0, -e / 2.0)).ok_or(Error::DegenerateFit("conic has no center"))?;
    let f_c = f + 0.5 * (d * center.x + e * center.y);
    let eig = quad.symmetric_eigen();
    let mut axes = [(-f_c / eig.eigenvalues[0]).sqrt() * scale, (-f_c / eig.eigenvalues[1]).sqrt() * scale];
    if !(axes[0].is_finite() && axes[1].is_finite()) {
        return Err(Error::DegenerateFit("conic through the points is imaginary"));
    }
    if axes[0] < axes[1] {
        axes.swap(0, 1);
    }

    Ok(EllipseFit { center: frame.lift(&(center * scale)), semi_axes: axes, basis: frame.basis(), residual })
}

/// Smallest `d ≤ max_degree` such that some polynomial curve of degree `d`
/// passes projectively through all samples `(tᵢ, vᵢ)`, i.e. `P(tᵢ) = λᵢ·vᵢ`.
///
/// Solved as one homogeneous linear system in the Chebyshev coefficients of
/// `P` and the unknown scales `λᵢ`; degree `d` is accepted when the smallest
/// singular value is below `tol` times the largest.
pub fn projective_degree<V: AsRef<[f64]>>(samples: &[(f64, V)], max_degree: usize, tol: f64) -> Result<Option<usize>> {
    let k = samples.len();
    if k == 0 {
        return Err(Error::DegenerateFit("no samples"));
    }
    let dim = samples[0].1.as_ref().len();
    if dim < 2 || samples.iter().any(|(_, v)| v.as_ref().len() != dim) {
        return Err(Error::DegenerateFit("samples must share a dimension of at least 2"));
    }
    let (lo, hi) = samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (t, _)| (a.min(*t), b.max(*t)));
    if !(hi > lo) {
        return Err(Error::DegenerateFit("sample parameters must not coincide"));
    }
    let units: Vec<Vec<f64>> = samples
        .iter()
        .map(|(_, v)| {
            let v = v.as_ref();
            let n = crate::algebra::norm(v);
            v.iter().map(|x| x / n).collect()
        })
        .collect();
    if units.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateFit("zero or non-finite sample"));
    }

    for d in 0..=max_degree {
        let cols = dim * (d + 1) + k;
        if dim * k <= cols {
            return Err(Error::DegenerateFit("too few samples for the requested degree"));
        }
        let mut m = DMatrix::zeros(dim * k, cols);
        for (i, (t, _)) in samples.iter().enumerate() {
            let tau = 2.0 * (t - lo) / (hi - lo) - 1.0;
            let mut cheb = vec![1.0, tau];
            while cheb.len() <= d {
                let n = cheb.len();
                cheb.push(2.0 * tau * cheb[n - 1] - cheb[n - 2]);
            }
            for c in 0..dim {
                for (j, tj) in cheb.iter().take(d + 1).enumerate() {
                    m[(i * dim + c, j * dim + c)] = *tj;
                }
                m[(i * dim + c, dim * (d + 1) + i)] = -units[i][c];
            }
        }
        let sv = m.singular_values();
        let max = sv.max();
        let min = sv.min();
        if min <= tol * max {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
