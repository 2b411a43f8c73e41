//! The cubic conoidal 2-surface Γ ⊂ E⁴ traced by the straight segment between
//! two skew lines orthogonal to x₀.
//!
//! In the canonical frame the first line is the x₂-axis in x₀ = 0 and the
//! second passes through `(h, n, 0, 0)` with direction `(0, 0, cos α, sin α)`.
//! The parametrization `g(t, u) = s(t) + u·r(t)` has the striction curve `s`
//! (pedal points of the rulings) in the x₀x₁-plane and ruling directions `r` in
//! the x₂x₃-plane; `t = 1` is the first line and `t = 0` the second.
//!
//! The closed forms below are one of two mirror-image families through the
//! same pair of lines. With the product convention 𝐢𝐣 = 𝐤 used by
//! [`crate::lines4`], the straight segment in P⁵ traces the other one, which is
//! the reflection `x₁ ↦ −x₁` of the closed form taken with `n ↦ −n`.
//! [`Chirality`] selects the family; surfaces built from a pair of lines with
//! [`canonicalize_skew_pair`] use [`Chirality::Segment`].

use nalgebra::{DMatrix, Matrix3, Rotation3, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Quaternion, Vec3, Vec4, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::lines4::{E4Line, E4LineElement};

/// Direct isometry of E⁴ that maps the x₀-direction to itself: an E³ rotation
/// on `(x₁, x₂, x₃)` followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame4 {
    pub rotation: Matrix3<f64>,
    pub translation: Vec4,
}

impl Frame4 {
    pub fn identity() -> Self {
        Frame4 { rotation: Matrix3::identity(), translation: Vec4::zeros() }
    }

    pub fn new(rotation: Matrix3<f64>, translation: Vec4) -> Result<Self> {
        let orth = (rotation.transpose() * rotation - Matrix3::identity()).norm();
        if orth > 1e-9 || (rotation.determinant() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidNet("frame rotation must be orthogonal with determinant +1".into()));
        }
        Ok(Frame4 { rotation, translation })
    }

    pub fn from_rotation(rotation: Rotation3<f64>, translation: Vec4) -> Self {
        Frame4 { rotation: *rotation.matrix(), translation }
    }

    pub fn apply_dir(&self, d: &Vec4) -> Vec4 {
        let r = self.rotation * Vec3::new(d[1], d[2], d[3]);
        Vec4::new(d[0], r.x, r.y, r.z)
    }

    pub fn apply_point(&self, p: &Vec4) -> Vec4 {
        self.apply_dir(p) + self.translation
    }

    pub fn inverse_dir(&self, d: &Vec4) -> Vec4 {
        let r = self.rotation.transpose() * Vec3::new(d[1], d[2], d[3]);
        Vec4::new(d[0], r.x, r.y, r.z)
    }

    pub fn inverse_point(&self, p: &Vec4) -> Vec4 {
        self.inverse_dir(&(p - self.translation))
    }
}

/// Which of the two mirror-image interpolating families a [`GammaSurface`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    /// The closed-form parametrization with `(t−1)(t·k + h)` striction numerators.
    Displayed,
    /// The family traced by the straight P⁵ segment between the two lines.
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaSurface {
    pub h: f64,
    pub n: f64,
    pub alpha: f64,
    pub frame: Frame4,
    pub chirality: Chirality,
}

/// Values and first two derivatives of a scalar function of `t`.
#[derive(Debug, Clone, Copy)]
struct Jet {
    f: f64,
    d1: f64,
    d2: f64,
}

/// `(c₀ + c₁t + c₂t²) / den(t)` with derivatives.
fn ratio(num: [f64; 3], den: [f64; 3], t: f64) -> Jet {
    let ev = |c: [f64; 3]| (c[0] + t * (c[1] + t * c[2]), c[1] + 2.0 * c[2] * t, 2.0 * c[2]);
    let (n, n1, n2) = ev(num);
    let (d, d1, d2) = ev(den);
    let f = n / d;
    let d1f = (n1 * d - n * d1) / (d * d);
    let d2f = (n2 - 2.0 * d1 * d1f - d2 * f) / d;
    Jet { f, d1: d1f, d2: d2f }
}

/// Result of [`GammaSurface::degree_slice_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceCount {
    pub real: usize,
    pub complex: usize,
    /// Intersection points as `(v₀ : v₁ : v₂ : v₃ : v)` with `v` the
    /// homogenizing coordinate; real and imaginary parts.
    pub points: Vec<[(f64, f64); 5]>,
}

impl SliceCount {
    pub fn total(&self) -> usize {
        self.real + self.complex
    }
}

impl GammaSurface {
    /// Canonically placed surface in the displayed form.
    pub fn new(h: f64, n: f64, alpha: f64) -> Result<Self> {
        if !(h.is_finite() && n.is_finite()) {
            return Err(Error::Classification("non-finite surface parameters".into()));
        }
        if !(alpha > 0.0 && alpha < std::f64::consts::PI) || alpha.sin() <= DEFAULT_TOL {
            return Err(Error::Classification(format!("angle {alpha} must lie strictly between 0 and π")));
        }
        Ok(GammaSurface { h, n, alpha, frame: Frame4::identity(), chirality: Chirality::Displayed })
    }

    pub fn with_frame(mut self, frame: Frame4) -> Self {
        self.frame = frame;
        self
    }

    pub fn with_chirality(mut self, chirality: Chirality) -> Self {
        self.chirality = chirality;
        self
    }

    /// `n` as it enters the closed form.
    fn n_form(&self) -> f64 {
        match self.chirality {
            Chirality::Displayed => self.n,
            Chirality::Segment => -self.n,
        }
    }

    fn mirror(&self, mut v: Vec4) -> Vec4 {
        if self.chirality == Chirality::Segment {
            v[1] = -v[1];
        }
        v
    }

    fn den(&self) -> [f64; 3] {
        let c1 = self.alpha.cos() - 1.0;
        [-1.0, -2.0 * c1, 2.0 * c1]
    }

    /// Numerators of the striction point, `(t−1)(t·k + h)` and `(t−1)(t·k' + n)`.
    fn striction_nums(&self) -> [[f64; 3]; 2] {
        let (h, n) = (self.h, self.n_form());
        let (s, c) = self.alpha.sin_cos();
        let k0 = h * c - n * s - h;
        let k1 = h * s + n * c - n;
        [[-h, h - k0, k0], [-n, n - k1, k1]]
    }

    fn ruling_nums(&self) -> [[f64; 3]; 2] {
        let (s, c) = self.alpha.sin_cos();
        [[c, 1.0 - c, 0.0], [s, -s, 0.0]]
    }

    /// Jets of the two nonzero striction and ruling components in closed form.
    fn jets(&self, t: f64) -> ([Jet; 2], [Jet; 2]) {
        let den = self.den();
        let [s0, s1] = self.striction_nums();
        let [r2, r3] = self.ruling_nums();
        ([ratio(s0, den, t), ratio(s1, den, t)], [ratio(r2, den, t), ratio(r3, den, t)])
    }

    /// Striction point in canonical coordinates of the selected family.
    pub fn canonical_striction(&self, t: f64) -> Vec4 {
        let ([s0, s1], _) = self.jets(t);
        self.mirror(Vec4::new(s0.f, s1.f, 0.0, 0.0))
    }

    pub fn canonical_ruling_dir(&self, t: f64) -> Vec4 {
        let (_, [r2, r3]) = self.jets(t);
        Vec4::new(0.0, 0.0, r2.f, r3.f)
    }

    pub fn canonical_point(&self, t: f64, u: f64) -> Vec4 {
        self.canonical_striction(t) + self.canonical_ruling_dir(t) * u
    }

    /// Pedal point of the ruling at `t`, in world coordinates.
    pub fn striction(&self, t: f64) -> Vec4 {
        self.frame.apply_point(&self.canonical_striction(t))
    }

    pub fn ruling_dir(&self, t: f64) -> Vec4 {
        self.frame.apply_dir(&self.canonical_ruling_dir(t))
    }

    pub fn point(&self, t: f64, u: f64) -> Vec4 {
        self.frame.apply_point(&self.canonical_point(t, u))
    }

    /// Limit ruling as `t → ∞`: a point on it and its direction.
    pub fn ruling_at_infinity(&self) -> (Vec4, Vec4) {
        let den = self.den();
        let [s0, s1] = self.striction_nums();
        let (s, c) = self.alpha.sin_cos();
        let p = self.mirror(Vec4::new(s0[2] / den[2], s1[2] / den[2], 0.0, 0.0));
        let d = Vec4::new(0.0, 0.0, 1.0 - c, -s);
        (self.frame.apply_point(&p), self.frame.apply_dir(&d))
    }

    /// The ruling at `t` as a line of E⁴.
    pub fn ruling(&self, t: f64) -> E4Line {
        let d = self.ruling_dir(t);
        E4Line::from_dir_point(Quaternion::from_point(&d), Quaternion::from_point(&self.striction(t)))
            .expect("ruling directions never vanish")
    }

    /// Point `s + (t·ℓ₁ + (1−t)·ℓ₂)·r` of the curve determined by two scalars.
    pub fn strip_circle_point(&self, t: f64, ell1: f64, ell2: f64) -> Vec4 {
        self.point(t, t * ell1 + (1.0 - t) * ell2)
    }

    /// Partial derivatives `(∂g/∂t, ∂g/∂u)` in world coordinates.
    pub fn tangents(&self, t: f64, u: f64) -> (Vec4, Vec4) {
        let ([s0, s1], [r2, r3]) = self.jets(t);
        let gt = self.mirror(Vec4::new(s0.d1, s1.d1, u * r2.d1, u * r3.d1));
        let gu = Vec4::new(0.0, 0.0, r2.f, r3.f);
        (self.frame.apply_dir(&gt), self.frame.apply_dir(&gu))
    }

    /// The three implicit polynomials evaluated at a world point, divided by
    /// `(1 + |h| + |n|)·(1 + ‖g‖)³` with `g` the canonical coordinates.
    pub fn implicit(&self, p: &Vec4) -> [f64; 3] {
        let g = self.mirror(self.frame.inverse_point(p));
        let (g0, g1, g2, g3) = (g[0], g[1], g[2], g[3]);
        let (h, n) = (self.h, self.n_form());
        let (s, c) = self.alpha.sin_cos();
        let terms_a = [s * g1 * g2 * g2, s * g1 * g3 * g3, -s * h * g3 * g2, -s * n * g3 * g3, -c * n * g3 * g2, c * h * g3 * g3];
        let terms_b = [s * h * g3 * g3, -s * n * g3 * g2, -s * g0 * g3 * g3, -s * g0 * g2 * g2, c * h * g3 * g2, c * n * g3 * g3];
        let terms_c = [s * g0 * g0, -s * n * g1, s * g1 * g1, -s * h * g0, -c * n * g0, c * g1 * h];
        let scale = (1.0 + h.abs() + n.abs()) * (1.0 + g.norm()).powi(3);
        let normalized = |terms: &[f64]| terms.iter().sum::<f64>() / scale;
        [normalized(&terms_a), normalized(&terms_b), normalized(&terms_c)]
    }

    /// Parameters `(t, u)` of the unique tangent plane orthogonal to `w`.
    ///
    /// Newton iteration on `⟨w, ∂g/∂t⟩ = ⟨w, ∂g/∂u⟩ = 0` (denominators cleared)
    /// from a 4×4 grid of starts over `[−3, 3]²`; converged roots are merged at 1e-7. Fails if no
    /// start converges or if two distinct roots are found.
    pub fn ln_tangent_params(&self, w: &Vec4) -> Result<(f64, f64)> {
        let wn = w.norm();
        if wn == 0.0 {
            return Err(Error::Numerical("zero normal vector".into()));
        }
        let wc = self.mirror(self.frame.inverse_dir(&(w / wn)));
        let eval = |t: f64, u: f64| {
            let ([s0, s1], [r2, r3]) = self.jets(t);
            let f1 = wc[0] * s0.d1 + wc[1] * s1.d1 + u * (wc[2] * r2.d1 + wc[3] * r3.d1);
            let f2 = wc[2] * r2.f + wc[3] * r3.f;
            let j11 = wc[0] * s0.d2 + wc[1] * s1.d2 + u * (wc[2] * r2.d2 + wc[3] * r3.d2);
            let j12 = wc[2] * r2.d1 + wc[3] * r3.d1;
            (Vector2::new(f1, f2), nalgebra::Matrix2::new(j11, j12, j12, 0.0))
        };
        // same system times (D², D); polynomial in t, so Newton does not run off
        // along the flat asymptotes of the rational form
        let den = self.den();
        let cleared = |t: f64, u: f64| {
            let (f, j) = eval(t, u);
            let d = den[0] + t * (den[1] + t * den[2]);
            let d1 = den[1] + 2.0 * den[2] * t;
            let g = Vector2::new(d * d * f.x, d * f.y);
            let jg =
                nalgebra::Matrix2::new(2.0 * d * d1 * f.x + d * d * j[(0, 0)], d * d * j[(0, 1)], d1 * f.y + d * j[(1, 0)], 0.0);
            (g, jg)
        };

        let grid = [-3.0, -1.0, 1.0, 3.0];
        let mut roots: Vec<(f64, f64)> = Vec::new();
        for &t0 in &grid {
            for &u0 in &grid {
                let (mut t, mut u) = (t0, u0);
                let mut converged = false;
                for _ in 0..100 {
                    let (f, j) = cleared(t, u);
                    let Some(step) = j.lu().solve(&(-f)) else { break };
                    t += step.x;
                    u += step.y;
                    if !(t.is_finite() && u.is_finite()) {
                        break;
                    }
                    if step.norm() <= 1e-14 * (1.0 + t.abs() + u.abs()) {
                        converged = true;
                        break;
                    }
                }
                if converged || (t.is_finite() && u.is_finite()) {
                    converged = eval(t, u).0.norm() < 1e-12 && t.abs() < 1e8;
                }
                if converged && !roots.iter().any(|&(rt, ru)| (rt - t).hypot(ru - u) <= 1e-7 * (1.0 + t.abs() + u.abs())) {
                    roots.push((t, u));
                }
            }
        }
        match roots.as_slice() {
            [] => Err(Error::Numerical("no real tangent plane orthogonal to the given vector".into())),
            [root] => {
                let (f, _) = eval(root.0, root.1);
                if f.norm() > 1e-9 {
                    return Err(Error::Numerical(format!("tangency residual {:e} too large", f.norm())));
                }
                Ok(*root)
            }
            _ => Err(Error::Numerical(format!("{} distinct tangent planes found, vector is not generic", roots.len()))),
        }
    }

    /// Line-symmetric displacement for the ruling at `t`:
    /// `P ↦ 𝔩∘P∘𝔩̃ − 2𝔩∘𝔪̃` with `(𝔩, 𝔪)` the ruling scaled to a unit direction.
    pub fn line_symmetric_displacement(&self, t: f64, p: &Quaternion) -> Quaternion {
        let ruling = self.ruling(t);
        let scale = ruling.dir.norm();
        let (l, m) = (ruling.dir / scale, ruling.mom / scale);
        l * *p * l.conj() - (l * m.conj()).scale(2.0)
    }

    /// Intersects the homogenized implicit system with the plane
    /// `v₀ = v₂ + v₃ + v`, `v₁ = v₂ − v₃ − v` and counts the distinct common
    /// solutions over ℂ.
    ///
    /// Works on the closed form with the parameters of this surface. On the
    /// plane the first two equations are linear in `v`; eliminating `v` leaves a
    /// univariate polynomial in `v₂` (chart `v₃ = 1`) whose roots come from
    /// companion-matrix eigenvalues. Root clusters within 1e-6 are merged and
    /// every candidate is checked against all three equations. The line
    /// `v₃ = 0` is handled separately.
    pub fn degree_slice_check(&self) -> Result<SliceCount> {
        let (h, n) = (self.h, self.n_form());
        let (s, c) = self.alpha.sin_cos();
        let system = |v: Complex64, v2: Complex64, v3: Complex64| -> [Complex64; 3] {
            let v0 = v2 + v3 + v;
            let v1 = v2 - v3 - v;
            let (g0, g1, g2, g3) = (v0, v1, v2, v3);
            let a = (g1 * g2 * g2 + g1 * g3 * g3 - g3 * g2 * v * h - g3 * g3 * v * n) * s - g3 * (g2 * n - g3 * h) * v * c;
            let b = (g3 * g3 * v * h - g3 * g2 * v * n - g0 * g3 * g3 - g0 * g2 * g2) * s + g3 * (g2 * h + g3 * n) * v * c;
            let cc = (g0 * g0 - g1 * v * n + g1 * g1 - g0 * v * h) * s - (g0 * v * n - g1 * v * h) * c;
            [a, b, cc]
        };
        let coef_scale = 1.0 + h.abs() + n.abs();
        let residual_ok = |v: Complex64, v2: Complex64, v3: Complex64| {
            let mag = 1.0 + v.norm() + v2.norm() + v3.norm();
            let r = system(v, v2, v3);
            r.iter().all(|x| x.norm() <= 1e-6 * coef_scale * mag.powi(3))
        };

        // chart v₃ = 1: A = a₁v + a₀, B = b₁v + b₀ with coefficients in v₂
        let q = Poly::new(vec![1.0, 0.0, 1.0]);
        let a0 = Poly::new(vec![-1.0, 1.0]).mul(&q).scale(s);
        let a1 = q.scale(-s).add(&Poly::new(vec![c * h - s * n, -s * h - c * n]));
        let b0 = Poly::new(vec![1.0, 1.0]).mul(&q).scale(-s);
        let b1 = q.scale(-s).add(&Poly::new(vec![s * h + c * n, c * h - s * n]));
        let resultant = a1.mul(&b0).sub(&a0.mul(&b1));

        let one = Complex64::new(1.0, 0.0);
        let mut solutions: Vec<[Complex64; 3]> = Vec::new();
        let mut push = |sol: [Complex64; 3]| {
            let key = normalize_projective(&sol);
            let dup = solutions.iter().any(|other| {
                let o = normalize_projective(other);
                key.iter().zip(&o).all(|(x, y)| (x - y).norm() <= 1e-6)
            });
            if !dup {
                solutions.push(sol);
            }
        };

        for z in cluster_roots(&resultant.roots()?, 1e-6) {
            let (c1, c0) = (a1.eval(z), a0.eval(z));
            let v = if c1.norm() > 1e-9 * coef_scale * (1.0 + z.norm()).powi(2) {
                -c0 / c1
            } else {
                let (d1, d0) = (b1.eval(z), b0.eval(z));
                if d1.norm() <= 1e-12 {
                    return Err(Error::Numerical("slice system is degenerate on a whole line".into()));
                }
                -d0 / d1
            };
            if residual_ok(v, z, one) {
                push([v, z, one]);
            }
        }

        // line v₃ = 0: first (v : 1 : 0), then the point (1 : 0 : 0)
        let zero = Complex64::new(0.0, 0.0);
        let a_at = |v: Complex64| system(v, one, zero)[0];
        let (l0, l1) = (a_at(zero), a_at(one) - a_at(zero));
        if l1.norm() > 1e-12 {
            let v = -l0 / l1;
            if residual_ok(v, one, zero) {
                push([v, one, zero]);
            }
        } else if l0.norm() <= 1e-12 {
            return Err(Error::Numerical("slice system is degenerate at infinity".into()));
        }
        if residual_ok(one, zero, zero) {
            push([one, zero, zero]);
        }

        let mut real = 0;
        let mut points = Vec::with_capacity(solutions.len());
        for sol in &solutions {
            let p = normalize_projective(sol);
            if p.iter().all(|x| x.im.abs() <= 1e-6) {
                real += 1;
            }
            let [v, v2, v3] = *sol;
            let full = [v2 + v3 + v, v2 - v3 - v, v2, v3, v];
            points.push(full.map(|x| (x.re, x.im)));
        }
        Ok(SliceCount { real, complex: solutions.len() - real, points })
    }
}

/// Scales a complex projective tuple so that its largest entry is 1.
fn normalize_projective(x: &[Complex64; 3]) -> [Complex64; 3] {
    let pivot = *x.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("three entries");
    x.map(|v| v / pivot)
}

fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match clusters.iter_mut().find(|(c, k)| (*c / *k as f64 - r).norm() <= tol * (1.0 + r.norm())) {
            Some((sum, k)) => {
                *sum += r;
                *k += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters.into_iter().map(|(sum, k)| sum / k as f64).collect()
}

/// Dense polynomial with real coefficients, constant term first.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<f64>);

impl Poly {
    fn new(c: Vec<f64>) -> Self {
        Poly(c)
    }

    fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly((0..n).map(|i| self.0.get(i).unwrap_or(&0.0) + o.0.get(i).unwrap_or(&0.0)).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1.0))
    }

    fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Roots from the eigenvalues of the companion matrix; leading
    /// coefficients below 1e-12 of the largest are dropped.
    fn roots(&self) -> Result<Vec<Complex64>> {
        let max = self.0.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return Err(Error::Numerical("zero polynomial".into()));
        }
        let mut c = self.0.clone();
        while c.last().is_some_and(|x| x.abs() <= 1e-12 * max) {
            c.pop();
        }
        let deg = c.len() - 1;
        if deg == 0 {
            return Ok(Vec::new());
        }
        let lead = c[deg];
        let companion = DMatrix::from_fn(deg, deg, |i, j| {
            if i == 0 {
                -c[deg - 1 - j] / lead
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        Ok(companion.complex_eigenvalues().iter().copied().collect())
    }
}

/// Case analysis of the straight segment between two lines (or line-elements)
/// orthogonal to x₀.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum SegmentClass {
    /// Same line (for line-elements: same carrier line).
    Identical,
    /// The lines meet in `vertex`; the segment is the pencil they span. For
    /// line-elements the carried points trace the circle through the vertex
    /// and both points.
    ConcurrentPencil {
        vertex: Vec4,
        circle: Option<Circumcircle>,
    },
    /// Distinct parallel lines; the segment is the parallel pencil in their plane.
    ParallelPencil {
        direction: Vec4,
    },
    GenericSkew {
        surface: GammaSurface,
    },
}

impl SegmentClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SegmentClass::Identical => "identical",
            SegmentClass::ConcurrentPencil { .. } => "concurrent_pencil",
            SegmentClass::ParallelPencil { .. } => "parallel_pencil",
            SegmentClass::GenericSkew { .. } => "generic_skew",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circumcircle {
    pub center: Vec4,
    pub radius: f64,
}

/// Circle through three points of E⁴, `None` when they are collinear.
pub fn circumcircle(a: &Vec4, b: &Vec4, c: &Vec4) -> Option<Circumcircle> {
    let (u, v) = (b - a, c - a);
    let (uu, uv, vv) = (u.dot(&u), u.dot(&v), v.dot(&v));
    let det = uu * vv - uv * uv;
    if det <= 1e-12 * uu * vv || det == 0.0 {
        return None;
    }
    let alpha = 0.5 * (uu * vv - uv * vv) / det;
    let beta = 0.5 * (vv * uu - uv * uu) / det;
    let center = a + u * alpha + v * beta;
    Some(Circumcircle { center, radius: (center - a).norm() })
}

struct Placed {
    height: f64,
    pedal: Vec3,
    dir: Vec3,
}

fn placed(line: &E4Line) -> Result<Placed> {
    if !line.is_conoidal(DEFAULT_TOL) {
        return Err(Error::NotPure(line.dir.w / line.dir.norm()));
    }
    let f = line.pedal_point()?;
    Ok(Placed { height: line.height()?, pedal: f.vector(), dir: line.dir.vector().normalize() })
}

/// Canonical parameters and placing frame of the surface spanned by two skew lines.
///
/// `a` becomes the x₂-axis of the canonical frame and `b` the line through
/// `(h, n, 0, 0)`; the returned surface uses [`Chirality::Segment`] so that its
/// rulings are the lines of the P⁵ segment between `a` and `b`.
pub fn canonicalize_skew_pair(a: &E4Line, b: &E4Line) -> Result<GammaSurface> {
    let (pa, pb) = (placed(a)?, placed(b)?);
    let cross = pa.dir.cross(&pb.dir);
    let sin = cross.norm();
    if sin <= DEFAULT_TOL {
        return Err(Error::Classification("lines are parallel".into()));
    }
    let normal = cross / sin;
    let cos = pa.dir.dot(&pb.dir);

    // foot of the common normal on the projection of `a`
    let w0 = pa.pedal - pb.pedal;
    let (d, e) = (pa.dir.dot(&w0), pb.dir.dot(&w0));
    let s_a = (cos * e - d) / (sin * sin);
    let foot = pa.pedal + pa.dir * s_a;

    let n = (pb.pedal - pa.pedal).dot(&normal);
    let h = pb.height - pa.height;
    let scale = 1.0 + pa.pedal.norm() + pb.pedal.norm() + pa.height.abs() + pb.height.abs();
    if n.abs() <= DEFAULT_TOL * scale && h.abs() <= DEFAULT_TOL * scale {
        return Err(Error::Classification("lines intersect".into()));
    }

    let rotation = Matrix3::from_columns(&[normal, pa.dir, normal.cross(&pa.dir)]);
    let frame = Frame4::new(rotation, Vec4::new(pa.height, foot.x, foot.y, foot.z))?;
    Ok(GammaSurface::new(h, n, sin.atan2(cos))?.with_frame(frame).with_chirality(Chirality::Segment))
}

/// Classifies the segment between two lines orthogonal to x₀.
pub fn classify_segment(a: &E4Line, b: &E4Line) -> Result<SegmentClass> {
    let (pa, pb) = (placed(a)?, placed(b)?);
    if a.to_hom()?.proj_eq(&b.to_hom()?, DEFAULT_TOL) {
        return Ok(SegmentClass::Identical);
    }
    let cross = pa.dir.cross(&pb.dir);
    if cross.norm() <= DEFAULT_TOL {
        return Ok(SegmentClass::ParallelPencil { direction: Vec4::new(0.0, pa.dir.x, pa.dir.y, pa.dir.z) });
    }
    let normal = cross.normalize();
    let scale = 1.0 + pa.pedal.norm() + pb.pedal.norm() + pa.height.abs() + pb.height.abs();
    let gap = (pb.pedal - pa.pedal).dot(&normal);
    if gap.abs() <= DEFAULT_TOL * scale && (pb.height - pa.height).abs() <= DEFAULT_TOL * scale {
        let w0 = pa.pedal - pb.pedal;
        let cos = pa.dir.dot(&pb.dir);
        let s_a = (cos * pb.dir.dot(&w0) - pa.dir.dot(&w0)) / (1.0 - cos * cos);
        let v = pa.pedal + pa.dir * s_a;
        return Ok(SegmentClass::ConcurrentPencil { vertex: Vec4::new(pa.height, v.x, v.y, v.z), circle: None });
    }
    Ok(SegmentClass::GenericSkew { surface: canonicalize_skew_pair(a, b)? })
}

/// Classifies the segment between two line-elements by their carrier lines and
/// attaches the circle through the vertex and both points in the concurrent case.
pub fn classify_element_segment(a: &E4LineElement, b: &E4LineElement) -> Result<SegmentClass> {
    let class = classify_segment(&a.line(), &b.line())?;
    Ok(match class {
        SegmentClass::ConcurrentPencil { vertex, .. } => {
            let (p1, p2) = (a.point()?.to_point(), b.point()?.to_point());
            SegmentClass::ConcurrentPencil { vertex, circle: circumcircle(&vertex, &p1, &p2) }
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit_circle, fit_ellipse};
    use crate::lines4::mu;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x6a6d)
    }

    fn close(a: &Vec4, b: &Vec4, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn canonical_pair(h: f64, n: f64, alpha: f64) -> (E4Line, E4Line) {
        let l1 = E4Line::from_dir_point(Quaternion::J, Quaternion::ZERO).unwrap();
        let l2 =
            E4Line::from_dir_point(Quaternion::new(0.0, 0.0, alpha.cos(), alpha.sin()), Quaternion::new(h, n, 0.0, 0.0)).unwrap();
        (l1, l2)
    }

    fn random_surface(r: &mut impl Rng) -> GammaSurface {
        loop {
            let alpha = r.gen_range(0.05..PI - 0.05);
            if alpha.sin() > 0.1 {
                return GammaSurface::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), alpha).unwrap();
            }
        }
    }

    fn random_frame(r: &mut impl Rng) -> Frame4 {
        let axis = Vec3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let rot = Rotation3::from_scaled_axis(axis * r.gen_range(0.0..3.0));
        let t = Vec4::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        Frame4::from_rotation(rot, t)
    }

    #[test]
    fn striction_endpoints_and_midpoint() {
        let g = GammaSurface::new(0.7, -1.3, 1.1).unwrap();
        assert!(close(&g.striction(1.0), &Vec4::zeros(), 1e-15));
        assert!(close(&g.striction(0.0), &Vec4::new(0.7, -1.3, 0.0, 0.0), 1e-15));
        let g = GammaSurface::new(1.0, 1.0, FRAC_PI_2).unwrap();
        assert!(close(&g.striction(0.5), &Vec4::new(0.0, 1.0, 0.0, 0.0), 1e-15));
    }

    #[test]
    fn ruling_directions() {
        let g = GammaSurface::new(0.4, 0.9, 0.8).unwrap();
        assert!(close(&g.ruling_dir(1.0), &Vec4::new(0.0, 0.0, -1.0, 0.0), 1e-15));
        let d0 = g.ruling_dir(0.0);
        let expected = Vec4::new(0.0, 0.0, 0.8f64.cos(), 0.8f64.sin());
        assert!(close(&(d0 / d0.norm()).abs(), &expected.abs(), 1e-15));
        let g = GammaSurface::new(1.0, 1.0, FRAC_PI_2).unwrap();
        // numerator (0, 0, 1/2, 1/2) over the denominator −1/2
        assert!(close(&g.ruling_dir(0.5), &Vec4::new(0.0, 0.0, -1.0, -1.0), 1e-15));
    }

    #[test]
    fn invalid_angles_are_rejected() {
        assert!(GammaSurface::new(1.0, 1.0, 0.0).is_err());
        assert!(GammaSurface::new(1.0, 1.0, PI).is_err());
        assert!(GammaSurface::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn denominator_never_vanishes() {
        let mut r = rng();
        for _ in 0..50 {
            let g = random_surface(&mut r);
            let den = g.den();
            for k in -400..=400 {
                let t = k as f64 * 0.025;
                assert!(den[0] + t * (den[1] + t * den[2]) < 0.0);
            }
        }
    }

    #[test]
    fn parametrization_satisfies_implicit_equations() {
        let mut r = rng();
        for _ in 0..20 {
            let g = random_surface(&mut r).with_frame(random_frame(&mut r));
            for chirality in [Chirality::Displayed, Chirality::Segment] {
                let g = g.with_chirality(chirality);
                for _ in 0..20 {
                    let p = g.point(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
                    assert!(g.implicit(&p).iter().all(|x| x.abs() < 1e-9), "{:?}", g.implicit(&p));
                }
            }
        }
    }

    #[test]
    fn endpoint_is_on_implicit_surface_and_generic_points_are_not() {
        let g = GammaSurface::new(0.8, 1.7, 2.0).unwrap();
        assert!(g.implicit(&Vec4::new(0.8, 1.7, 0.0, 0.0)).iter().all(|x| x.abs() < 1e-12));
        let mut r = rng();
        for _ in 0..50 {
            let p = Vec4::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
            assert!(g.implicit(&p).iter().any(|x| x.abs() > 1e-6));
        }
    }

    #[test]
    fn structural_invariants() {
        let mut r = rng();
        for _ in 0..20 {
            let g = random_surface(&mut r);
            for k in -20..=20 {
                let t = k as f64 * 0.15;
                let (gt, _) = g.tangents(t, 0.0);
                let rt = g.ruling_dir(t);
                assert!(gt.dot(&rt).abs() < 1e-9, "striction meets rulings orthogonally");
                assert_eq!(g.canonical_ruling_dir(t)[0], 0.0);
                assert_eq!(g.canonical_ruling_dir(t)[1], 0.0);
                let s = g.canonical_striction(t);
                assert!(s[2] == 0.0 && s[3] == 0.0, "projection of the striction curve is on the x₁-axis");
            }
        }
    }

    #[test]
    fn canonical_pair_reads_off_parameters() {
        let (h, n, alpha) = (0.6, -1.1, 2.2);
        let (l1, l2) = canonical_pair(h, n, alpha);
        let g = canonicalize_skew_pair(&l1, &l2).unwrap();
        assert!((g.h - h).abs() < 1e-14 && (g.n - n).abs() < 1e-14 && (g.alpha - alpha).abs() < 1e-14);
        assert!((g.frame.rotation - Matrix3::identity()).norm() < 1e-14);
        assert!(g.frame.translation.norm() < 1e-14);
        match classify_segment(&l1, &l2).unwrap() {
            SegmentClass::GenericSkew { surface } => assert_eq!(surface, g),
            other => panic!("unexpected class {other:?}"),
        }
    }

    #[test]
    fn canonicalization_is_invariant_under_rotation() {
        let mut r = rng();
        let (h, n, alpha) = (0.9, 0.4, 0.7);
        let (l1, l2) = canonical_pair(h, n, alpha);
        for _ in 0..10 {
            let axis = Vec3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let rot = Rotation3::from_scaled_axis(axis);
            let frame = Frame4::from_rotation(rot, Vec4::zeros());
            let move_line = |l: &E4Line| {
                let d = frame.apply_dir(&l.dir.to_point());
                let p = frame.apply_point(&l.pedal_point().unwrap().to_point());
                E4Line::from_dir_point(Quaternion::from_point(&d), Quaternion::from_point(&p)).unwrap()
            };
            let g = canonicalize_skew_pair(&move_line(&l1), &move_line(&l2)).unwrap();
            assert!((g.h - h).abs() < 1e-12 && (g.n - n).abs() < 1e-12 && (g.alpha - alpha).abs() < 1e-12);
            assert!((g.frame.rotation - rot.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn segment_surface_carries_the_interpolated_rulings() {
        let mut r = rng();
        for _ in 0..10 {
            let a = E4Line::from_dir_point(
                Quaternion::new(0.0, r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
                Quaternion::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
            )
            .unwrap();
            let b = E4Line::from_dir_point(
                Quaternion::new(0.0, r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
                Quaternion::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
            )
            .unwrap();
            let g = canonicalize_skew_pair(&a, &b).unwrap();
            // ruling endpoints
            assert!(g.ruling(1.0).to_hom().unwrap().proj_eq(&a.to_hom().unwrap(), 1e-10));
            assert!(g.ruling(0.0).to_hom().unwrap().proj_eq(&b.to_hom().unwrap(), 1e-10));
            // every line of the P⁵ segment lies on the surface
            let (ca, cb) = (a.to_hom().unwrap(), b.to_hom().unwrap());
            for k in 0..=10 {
                let t = k as f64 / 10.0;
                let x: Vec<f64> = ca.coords().iter().zip(cb.coords()).map(|(p, q)| t * p + (1.0 - t) * q).collect();
                let line = E4Line::from_hom(&crate::algebra::HomPoint::new(x).unwrap()).unwrap();
                for s in [-2.0, 0.0, 1.5] {
                    let p = line.point_at(s).unwrap();
                    assert!(g.implicit(&p).iter().all(|v| v.abs() < 1e-9), "{:?} {g:?} t={t} s={s}", g.implicit(&p));
                }
            }
            // swapping the inputs describes the same point set
            let swapped = canonicalize_skew_pair(&b, &a).unwrap();
            for _ in 0..10 {
                let p = swapped.point(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                assert!(g.implicit(&p).iter().all(|v| v.abs() < 1e-9));
            }
        }
    }

    #[test]
    fn classification_cases() {
        let x2 = E4Line::from_dir_point(Quaternion::J, Quaternion::ZERO).unwrap();
        let shifted = E4Line::from_dir_point(Quaternion::J, Quaternion::J.scale(4.0)).unwrap();
        assert_eq!(classify_segment(&x2, &shifted).unwrap(), SegmentClass::Identical);

        let x3 = E4Line::from_dir_point(Quaternion::K, Quaternion::ZERO).unwrap();
        match classify_segment(&x2, &x3).unwrap() {
            SegmentClass::ConcurrentPencil { vertex, .. } => assert!(vertex.norm() < 1e-14),
            other => panic!("unexpected class {other:?}"),
        }

        let parallel = E4Line::from_dir_point(Quaternion::J, Quaternion::new(1.0, 2.0, 0.0, 0.0)).unwrap();
        assert_eq!(classify_segment(&x2, &parallel).unwrap().tag(), "parallel_pencil");

        // same projection point but different heights: skew in E⁴
        let lifted = E4Line::from_dir_point(Quaternion::K, Quaternion::scalar(1.0)).unwrap();
        assert_eq!(classify_segment(&x2, &lifted).unwrap().tag(), "generic_skew");

        let tilted = E4Line { dir: Quaternion::new(1.0, 0.0, 1.0, 0.0), mom: Quaternion::ZERO };
        assert!(matches!(classify_segment(&x2, &tilted), Err(Error::NotPure(_))));
    }

    #[test]
    fn concurrent_elements_carry_a_circle() {
        let v = Quaternion::new(0.5, 1.0, 2.0, 3.0);
        let a = E4LineElement::from_dir_point(Quaternion::I, v + Quaternion::I.scale(2.0)).unwrap();
        let b = E4LineElement::from_dir_point(Quaternion::new(0.0, 1.0, 1.0, 0.0), v + Quaternion::new(0.0, -1.0, -1.0, 0.0))
            .unwrap();
        match classify_element_segment(&a, &b).unwrap() {
            SegmentClass::ConcurrentPencil { vertex, circle: Some(c) } => {
                assert!(close(&vertex, &v.to_point(), 1e-12));
                for p in [v.to_point(), a.point().unwrap().to_point(), b.point().unwrap().to_point()] {
                    assert!(((p - c.center).norm() - c.radius).abs() < 1e-12);
                }
            }
            other => panic!("unexpected class {other:?}"),
        }
    }

    #[test]
    fn strip_curves_are_circles_projecting_to_ellipses() {
        let mut r = rng();
        for _ in 0..10 {
            let g = random_surface(&mut r).with_frame(random_frame(&mut r));
            let striction: Vec<Vec<f64>> =
                (0..40).map(|k| g.striction(-4.0 + 0.2 * k as f64).iter().copied().collect()).collect();
            assert!(fit_circle(&striction).unwrap().residual < 1e-9);
            for _ in 0..5 {
                let (l1, l2) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                let pts: Vec<Vec4> = (0..40).map(|k| g.strip_circle_point(-4.0 + 0.2 * k as f64, l1, l2)).collect();
                let full: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().copied().collect()).collect();
                assert!(fit_circle(&full).unwrap().residual < 1e-9);
                let projected: Vec<Vec<f64>> = pts.iter().map(|p| vec![p[1], p[2], p[3]]).collect();
                assert!(fit_ellipse(&projected).unwrap().residual < 1e-9);
            }
        }
        let g = GammaSurface::new(0.8, 0.3, 1.2).unwrap();
        for t in [-1.0, 0.3, 2.0] {
            assert_eq!(g.strip_circle_point(t, 0.0, 0.0), g.striction(t));
        }
    }

    #[test]
    fn ln_round_trip() {
        let mut r = rng();
        for _ in 0..30 {
            let g = random_surface(&mut r).with_frame(random_frame(&mut r)).with_chirality(Chirality::Segment);
            let (t0, u0) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
            let (gt, gu) = g.tangents(t0, u0);
            // random vector orthogonal to the tangent plane
            let mut w = Vec4::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let e1 = gt.normalize();
            let e2 = (gu - e1 * e1.dot(&gu)).normalize();
            w -= e1 * e1.dot(&w) + e2 * e2.dot(&w);
            let (t, u) = g.ln_tangent_params(&w).unwrap();
            assert!((t - t0).abs() < 1e-8 && (u - u0).abs() < 1e-8, "{t} {u} vs {t0} {u0}");
            let (gt, gu) = g.tangents(t, u);
            assert!(w.normalize().dot(&gt).abs() < 1e-9 && w.normalize().dot(&gu).abs() < 1e-9);
        }
    }

    #[test]
    fn ln_rejects_zero_vector() {
        let g = GammaSurface::new(1.0, 1.0, 1.0).unwrap();
        assert!(g.ln_tangent_params(&Vec4::zeros()).is_err());
    }

    #[test]
    fn displacement_examples() {
        let g = GammaSurface::new(1.0, 1.0, FRAC_PI_2).unwrap();
        // t = 1 is the x₂-axis through the origin
        assert!((g.line_symmetric_displacement(1.0, &Quaternion::ZERO)).norm() < 1e-15);
        let image = g.line_symmetric_displacement(1.0, &Quaternion::I);
        assert!((image + Quaternion::I).norm() < 1e-15);
        let j = Quaternion::J;
        assert!((j * Quaternion::I * j.conj() + Quaternion::I).norm() < 1e-15);
    }

    #[test]
    fn darboux_trajectories_are_circles() {
        let mut r = rng();
        for _ in 0..3 {
            let g = random_surface(&mut r).with_frame(random_frame(&mut r));
            for _ in 0..5 {
                let p = Quaternion::new(
                    r.gen_range(-2.0..2.0),
                    r.gen_range(-2.0..2.0),
                    r.gen_range(-2.0..2.0),
                    r.gen_range(-2.0..2.0),
                );
                let orbit: Vec<Vec<f64>> = (0..50)
                    .map(|k| g.line_symmetric_displacement(-3.0 + 0.12 * k as f64, &p).to_point().iter().copied().collect())
                    .collect();
                assert!(fit_circle(&orbit).unwrap().residual < 1e-9);
            }
        }
    }

    #[test]
    fn slice_counts_one_real_two_complex() {
        let g = GammaSurface::new(1.0, 1.0, FRAC_PI_2).unwrap();
        let count = g.degree_slice_check().unwrap();
        assert_eq!((count.real, count.complex), (1, 2), "{count:?}");
        let mut r = rng();
        for _ in 0..20 {
            let g = random_surface(&mut r);
            let count = g.degree_slice_check().unwrap();
            assert_eq!((count.real, count.complex), (1, 2), "{g:?} {count:?}");
        }
    }

    #[test]
    fn real_slice_point_lies_on_surface_and_plane() {
        let mut r = rng();
        for _ in 0..10 {
            let g = random_surface(&mut r);
            let count = g.degree_slice_check().unwrap();
            let real = count.points.iter().find(|p| p.iter().all(|x| x.1.abs() < 1e-9)).unwrap();
            let v = real[4].0;
            if v.abs() < 1e-9 {
                continue;
            }
            let p = Vec4::new(real[0].0 / v, real[1].0 / v, real[2].0 / v, real[3].0 / v);
            assert!((p[0] - (p[2] + p[3] + 1.0)).abs() < 1e-9);
            assert!((p[1] - (p[2] - p[3] - 1.0)).abs() < 1e-9);
            assert!(g.implicit(&p).iter().all(|x| x.abs() < 1e-8), "{:?}", g.implicit(&p));
        }
    }

    /// Independent route: intersect the parametrization with the plane. The
    /// condition is a cubic in `t` whose real roots give the real points.
    #[test]
    fn parametric_slice_oracle_agrees() {
        let mut r = rng();
        for _ in 0..20 {
            let g = random_surface(&mut r);
            let sample = |t: f64| {
                let s = g.canonical_striction(t);
                let d = g.canonical_ruling_dir(t);
                // (R2+R3)(−1−S1) − (1−S0)(R2−R3) after clearing the common denominator
                let den = g.den();
                let dd = den[0] + t * (den[1] + t * den[2]);
                let (s0, s1, r2, r3) = (s[0] * dd, s[1] * dd, d[2] * dd, d[3] * dd);
                (r2 + r3) * (-dd - s1) - (dd - s0) * (r2 - r3)
            };
            // fit the cubic through 4 samples and count its real roots
            let ts: [f64; 4] = [-1.5, -0.5, 0.5, 1.5];
            let m = nalgebra::Matrix4::from_fn(|i, j| ts[i].powi(j as i32));
            let y = nalgebra::Vector4::from_fn(|i, _| sample(ts[i]));
            let c = m.lu().solve(&y).unwrap();
            let roots = Poly::new(c.iter().copied().collect()).roots().unwrap();
            let real = roots.iter().filter(|z| z.im.abs() < 1e-7).count();
            assert_eq!(real, g.degree_slice_check().unwrap().real);
        }
    }

    #[test]
    fn mu_image_of_interpolation_is_the_projected_ruling() {
        let g = canonicalize_skew_pair(&canonical_pair(0.5, 1.0, 1.0).0, &canonical_pair(0.5, 1.0, 1.0).1).unwrap();
        for t in [0.2, 0.5, 0.8] {
            let ruling = g.ruling(t);
            let projected = ruling.project().unwrap();
            let image = mu(&ruling.to_hom().unwrap()).unwrap();
            assert!(image.proj_eq(&projected.item.to_hom(), 1e-12));
            assert!((projected.height - g.striction(t)[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn circumcircle_of_collinear_points_is_none() {
        let a = Vec4::zeros();
        assert!(circumcircle(&a, &Vec4::new(1.0, 0.0, 0.0, 0.0), &Vec4::new(2.0, 0.0, 0.0, 0.0)).is_none());
    }
}
