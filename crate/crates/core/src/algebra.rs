//! Quaternions, dual numbers and homogeneous points.
//!
//! Points of E⁴ are carried as quaternions `w + x𝐢 + y𝐣 + z𝐤` with the
//! x₀-coordinate in the scalar slot, so E³ is the hyperplane of pure
//! quaternions. Homogeneous tuples are stored unnormalized and compared up to
//! a nonzero real factor.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::{Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Vec4 = Vector4<f64>;

/// Absolute tolerance used on unit-normalized data unless a caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn scalar(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn pure(v: &Vec3) -> Self {
        Quaternion::new(0.0, v.x, v.y, v.z)
    }

    /// Embeds the point `(p₀,p₁,p₂,p₃)` of E⁴ as `p₀ + p₁𝐢 + p₂𝐣 + p₃𝐤`.
    pub fn from_point(p: &Vec4) -> Self {
        Quaternion::new(p[0], p[1], p[2], p[3])
    }

    pub fn to_point(&self) -> Vec4 {
        Vec4::new(self.w, self.x, self.y, self.z)
    }

    pub fn vector(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Euclidean inner product of the coefficient 4-vectors.
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sq() == 0.0
    }

    /// Scalar part of the unit-norm representative is below `tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        let n = self.norm();
        n == 0.0 || (self.w / n).abs() <= tol
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Hamilton product, 𝐢𝐣 = 𝐤.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

/// `a + εb` with ε² = 0.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualNumber {
    pub re: f64,
    pub eps: f64,
}

impl DualNumber {
    pub const fn new(re: f64, eps: f64) -> Self {
        DualNumber { re, eps }
    }

    pub fn sqrt(&self) -> Result<DualNumber> {
        if self.re <= 0.0 {
            return Err(Error::NonPositiveDualNorm);
        }
        let r = self.re.sqrt();
        Ok(DualNumber::new(r, self.eps / (2.0 * r)))
    }

    pub fn recip(&self) -> Option<DualNumber> {
        if self.re == 0.0 {
            return None;
        }
        Some(DualNumber::new(1.0 / self.re, -self.eps / (self.re * self.re)))
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.re + o.re, self.eps + o.eps)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.re - o.re, self.eps - o.eps)
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

/// Dual vector `𝐥 + ε𝐥̄`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualVector3 {
    pub dir: Vec3,
    pub mom: Vec3,
}

impl DualVector3 {
    pub fn new(dir: Vec3, mom: Vec3) -> Self {
        DualVector3 { dir, mom }
    }

    /// ⟨𝐚+ε𝐚̄, 𝐛+ε𝐛̄⟩ = ⟨𝐚,𝐛⟩ + ε(⟨𝐚,𝐛̄⟩ + ⟨𝐚̄,𝐛⟩).
    pub fn dot(&self, o: &DualVector3) -> DualNumber {
        DualNumber::new(self.dir.dot(&o.dir), self.dir.dot(&o.mom) + self.mom.dot(&o.dir))
    }

    pub fn scale(&self, s: DualNumber) -> DualVector3 {
        DualVector3::new(self.dir * s.re, self.mom * s.re + self.dir * s.eps)
    }
}

/// Homogeneous coordinates of a point of Pⁿ, n ∈ {3, 5, 6, 7}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct HomPoint {
    coords: Vec<f64>,
}

impl HomPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if !matches!(coords.len(), 4 | 6 | 7 | 8) {
            return Err(Error::InvalidHomogeneousPoint(format!("unsupported tuple length {}", coords.len())));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidHomogeneousPoint("non-finite coordinate".into()));
        }
        if coords.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidHomogeneousPoint("zero tuple".into()));
        }
        Ok(HomPoint { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        HomPoint::new(coords.to_vec())
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Projective dimension n of the ambient space Pⁿ.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn normalized(&self) -> Vec<f64> {
        let n = self.norm();
        self.coords.iter().map(|c| c / n).collect()
    }

    pub fn scaled(&self, s: f64) -> Result<HomPoint> {
        HomPoint::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn proj_eq(&self, other: &HomPoint, tol: f64) -> bool {
        // both tuples are nonzero by construction
        proj_equal(&self.coords, &other.coords, tol).unwrap_or(false)
    }
}

impl TryFrom<Vec<f64>> for HomPoint {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        HomPoint::new(v)
    }
}

impl From<HomPoint> for Vec<f64> {
    fn from(p: HomPoint) -> Vec<f64> {
        p.coords
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Projective equality: every 2×2 minor of the unit-normalized pair is below `tol`.
pub fn proj_equal(p: &[f64], q: &[f64], tol: f64) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), got: q.len() });
    }
    let (np, nq) = (norm(p), norm(q));
    if np == 0.0 || nq == 0.0 {
        return Err(Error::InvalidHomogeneousPoint("zero tuple".into()));
    }
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let minor = (p[i] * q[j] - p[j] * q[i]) / (np * nq);
            if minor.abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
