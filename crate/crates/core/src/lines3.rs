//! Lines and line-elements of E³ in Plücker coordinates.
//!
//! Six-tuples are ordered `(l₀₁, l₀₂, l₀₃, l₂₃, l₃₁, l₁₂)`: the first block is
//! the direction `dir`, the second the moment `mom = p × dir`. Line-elements
//! append `ell = ⟨p, dir⟩` for the carried point `p`.

use serde::{Deserialize, Serialize};

use crate::algebra::{norm, HomPoint, Vec3, DEFAULT_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PluckerLine {
    pub dir: Vec3,
    pub mom: Vec3,
}

impl PluckerLine {
    /// Validating constructor: rejects ideal lines and tuples off the Plücker quadric.
    pub fn new(dir: Vec3, mom: Vec3) -> Result<Self> {
        if dir.norm_squared() == 0.0 {
            return Err(Error::InvalidDirection);
        }
        let residual = plucker_condition_residual(&six(&dir, &mom));
        if residual.abs() > DEFAULT_TOL {
            return Err(Error::NotOnQuadric(residual));
        }
        Ok(PluckerLine { dir, mom })
    }

    /// Line through two points of P³ given in homogeneous coordinates `(x₀:x₁:x₂:x₃)`.
    pub fn from_points(p: &HomPoint, q: &HomPoint) -> Result<Self> {
        for pt in [p, q] {
            if pt.coords().len() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, got: pt.coords().len() });
            }
        }
        let (p, q) = (p.coords(), q.coords());
        let minor = |i: usize, j: usize| p[i] * q[j] - p[j] * q[i];
        let dir = Vec3::new(minor(0, 1), minor(0, 2), minor(0, 3));
        let mom = Vec3::new(minor(2, 3), minor(3, 1), minor(1, 2));
        let scale = norm(p) * norm(q);
        if (dir.norm_squared() + mom.norm_squared()).sqrt() <= 1e-14 * scale {
            return Err(Error::DegenerateLine);
        }
        if dir.norm() <= 1e-14 * scale {
            return Err(Error::InvalidDirection);
        }
        Ok(PluckerLine { dir, mom })
    }

    pub fn from_point_dir(p: &Vec3, dir: &Vec3) -> Result<Self> {
        if dir.norm_squared() == 0.0 {
            return Err(Error::InvalidDirection);
        }
        Ok(PluckerLine { dir: *dir, mom: p.cross(dir) })
    }

    pub fn coords(&self) -> [f64; 6] {
        six(&self.dir, &self.mom)
    }

    pub fn to_hom(&self) -> HomPoint {
        HomPoint::new(self.coords().to_vec()).expect("direction is nonzero")
    }

    /// Point of the line closest to the origin.
    pub fn pedal_point(&self) -> Vec3 {
        self.dir.cross(&self.mom) / self.dir.norm_squared()
    }

    pub fn contains_point(&self, p: &Vec3, tol: f64) -> bool {
        let scale = self.dir.norm();
        ((p.cross(&self.dir) - self.mom).norm() / scale) <= tol * (1.0 + p.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineElement3 {
    pub dir: Vec3,
    pub mom: Vec3,
    pub ell: f64,
}

impl LineElement3 {
    pub fn new(dir: Vec3, mom: Vec3, ell: f64) -> Result<Self> {
        PluckerLine::new(dir, mom)?;
        Ok(LineElement3 { dir, mom, ell })
    }

    /// `(dir, p × dir, ⟨p, dir⟩)`.
    pub fn from_point_dir(p: &Vec3, dir: &Vec3) -> Result<Self> {
        if dir.norm_squared() == 0.0 {
            return Err(Error::InvalidDirection);
        }
        Ok(LineElement3 { dir: *dir, mom: p.cross(dir), ell: p.dot(dir) })
    }

    /// Recovers the carried point `(dir × mom + ell·dir) / ⟨dir, dir⟩`.
    pub fn point(&self) -> Result<Vec3> {
        element_point(&self.dir, &self.mom, self.ell)
    }

    pub fn line(&self) -> PluckerLine {
        PluckerLine { dir: self.dir, mom: self.mom }
    }

    pub fn coords(&self) -> [f64; 7] {
        let s = six(&self.dir, &self.mom);
        [s[0], s[1], s[2], s[3], s[4], s[5], self.ell]
    }

    pub fn to_hom(&self) -> HomPoint {
        HomPoint::new(self.coords().to_vec()).expect("direction is nonzero")
    }
}

/// Point carried by the line-element `(dir, mom, ell)`; works for any scale of the tuple.
pub fn element_point(dir: &Vec3, mom: &Vec3, ell: f64) -> Result<Vec3> {
    let d2 = dir.norm_squared();
    if d2 == 0.0 {
        return Err(Error::InvalidDirection);
    }
    Ok((dir.cross(mom) + dir * ell) / d2)
}

/// A linear complex of lines, or of line-elements when `ell` is present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearComplex {
    pub dir: Vec3,
    pub mom: Vec3,
    pub ell: Option<f64>,
}

impl LinearComplex {
    pub fn of_lines(dir: Vec3, mom: Vec3) -> Self {
        LinearComplex { dir, mom, ell: None }
    }

    pub fn of_elements(dir: Vec3, mom: Vec3, ell: f64) -> Self {
        LinearComplex { dir, mom, ell: Some(ell) }
    }

    fn norm(&self) -> f64 {
        (self.dir.norm_squared() + self.mom.norm_squared() + self.ell.unwrap_or(0.0).powi(2)).sqrt()
    }

    /// ⟨𝐜, 𝐥̄⟩ + ⟨𝐜̄, 𝐥⟩ on unit-norm representatives.
    pub fn line_residual(&self, l: &PluckerLine) -> f64 {
        let nl = (l.dir.norm_squared() + l.mom.norm_squared()).sqrt();
        (self.dir.dot(&l.mom) + self.mom.dot(&l.dir)) / (self.norm() * nl)
    }

    /// ⟨𝐜, 𝐥̄⟩ + ⟨𝐜̄, 𝐥⟩ + c·l on unit-norm representatives.
    pub fn element_residual(&self, e: &LineElement3) -> f64 {
        let ne = norm(&e.coords());
        let c = self.ell.unwrap_or(0.0);
        (self.dir.dot(&e.mom) + self.mom.dot(&e.dir) + c * e.ell) / (self.norm() * ne)
    }

    pub fn contains_line(&self, l: &PluckerLine, tol: f64) -> bool {
        self.line_residual(l).abs() <= tol
    }

    pub fn contains_element(&self, e: &LineElement3, tol: f64) -> bool {
        self.element_residual(e).abs() <= tol
    }
}

/// l₀₁l₂₃ + l₀₂l₃₁ + l₀₃l₁₂ evaluated on the unit-norm representative.
pub fn plucker_condition_residual(x: &[f64; 6]) -> f64 {
    let n2: f64 = x.iter().map(|c| c * c).sum();
    if n2 == 0.0 {
        return 0.0;
    }
    (x[0] * x[3] + x[1] * x[4] + x[2] * x[5]) / n2
}

/// Pole of a hyperplane of P⁵ with respect to the Plücker quadric.
///
/// The hyperplane `Σ hᵢ xᵢ = 0` is given by its coefficients on
/// `(l₀₁, …, l₁₂)`; the pole is obtained by swapping the two 3-blocks, so the
/// pole of the tangent hyperplane at a point of the quadric is that point.
pub fn pole_of_hyperplane(h: &[f64; 6]) -> Result<HomPoint> {
    HomPoint::new(vec![h[3], h[4], h[5], h[0], h[1], h[2]])
}

pub(crate) fn six(a: &Vec3, b: &Vec3) -> [f64; 6] {
    [a.x, a.y, a.z, b.x, b.y, b.z]
}
