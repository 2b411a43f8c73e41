//! Lines and line-elements of E⁴ in homogeneous minimal coordinates.
//!
//! A line with direction quaternion `L` and pedal point `F` (closest point to
//! the origin) is stored as `(L, m)` with `m = L̃∘F`. When `L` is pure the line
//! is orthogonal to the x₀-direction and `(L, m)` read as `(dir, mom)` is a
//! point of P⁵ off the generator space `dir = 0`; the Plücker quadric is exactly
//! the set of such lines lying in E³ (x₀ = 0). Line-elements append the scalar
//! `⟨P, L⟩` of the carried point `P` and live in P⁶.
//!
//! [`mu`] projects P⁵ onto the quadric and realizes the orthogonal projection
//! of E⁴ onto E³; [`nu`] does the same for line-elements. The dropped x₀
//! coordinate is kept as a height label ([`HeightLabeled`]).

use serde::{Deserialize, Serialize};

use crate::algebra::{norm, DualVector3, HomPoint, Quaternion, Vec3, Vec4, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::lines3::{LineElement3, PluckerLine};

/// Relative size of the direction block below which a tuple counts as lying in
/// the generator space.
pub const GENERATOR_EPS: f64 = 1e-10;

/// `⟨𝐜,𝐜⟩ < NEAR_GENERATOR_RATIO · ⟨𝐜̄,𝐜̄⟩` raises the near-generator flag of [`mu_flagged`].
pub const NEAR_GENERATOR_RATIO: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct E4Line {
    pub dir: Quaternion,
    pub mom: Quaternion,
}

impl E4Line {
    /// Line through `point` with direction `dir`.
    pub fn from_dir_point(dir: Quaternion, point: Quaternion) -> Result<Self> {
        if dir.is_zero() {
            return Err(Error::InvalidDirection);
        }
        let pedal = point - dir.scale(point.dot(&dir) / dir.norm_sq());
        let mut mom = dir.conj() * pedal;
        // ⟨L, F⟩ = 0 makes the scalar part vanish up to roundoff
        mom.w = 0.0;
        Ok(E4Line { dir, mom })
    }

    /// Reads a P⁵ tuple `(dir, mom)` as a line of the set orthogonal to x₀.
    pub fn from_hom(c: &HomPoint) -> Result<Self> {
        let x = expect_len(c, 6)?;
        let dir = Quaternion::new(0.0, x[0], x[1], x[2]);
        if dir.norm() <= GENERATOR_EPS * c.norm() {
            return Err(Error::FiberUndefined);
        }
        Ok(E4Line { dir, mom: Quaternion::new(0.0, x[3], x[4], x[5]) })
    }

    /// Line of E⁴ at height `height` whose projection to E³ is `line`.
    pub fn lift(line: &PluckerLine, height: f64) -> Self {
        E4Line { dir: Quaternion::pure(&line.dir), mom: Quaternion::pure(&(line.mom - line.dir * height)) }
    }

    /// `L∘m / (L∘L̃)`.
    pub fn pedal_point(&self) -> Result<Quaternion> {
        let n = (self.dir * self.dir.conj()).w;
        if n == 0.0 {
            return Err(Error::InvalidDirection);
        }
        Ok((self.dir * self.mom) / n)
    }

    /// Whether the direction is pure, i.e. the line is orthogonal to x₀.
    pub fn is_conoidal(&self, tol: f64) -> bool {
        self.dir.is_pure(tol)
    }

    fn require_pure(&self) -> Result<()> {
        if self.dir.is_zero() {
            return Err(Error::InvalidDirection);
        }
        if !self.is_conoidal(DEFAULT_TOL) {
            return Err(Error::NotPure(self.dir.w / self.dir.norm()));
        }
        Ok(())
    }

    /// x₀-coordinate of the pedal point, `½ (l∘m + m∘l) / (l∘l̃)`.
    pub fn height(&self) -> Result<f64> {
        self.require_pure()?;
        let l = self.dir;
        Ok(((l * self.mom + self.mom * l).w * 0.5) / (l * l.conj()).w)
    }

    pub fn to_hom(&self) -> Result<HomPoint> {
        self.require_pure()?;
        HomPoint::new(vec![self.dir.x, self.dir.y, self.dir.z, self.mom.x, self.mom.y, self.mom.z])
    }

    /// Orthogonal projection to E³ with the dropped height as label.
    pub fn project(&self) -> Result<HeightLabeled<PluckerLine>> {
        let height = self.height()?;
        let image = mu(&self.to_hom()?)?;
        let x = image.coords();
        Ok(HeightLabeled { item: PluckerLine { dir: Vec3::new(x[0], x[1], x[2]), mom: Vec3::new(x[3], x[4], x[5]) }, height })
    }

    pub fn point_at(&self, s: f64) -> Result<Vec4> {
        Ok((self.pedal_point()? + self.dir.scale(s)).to_point())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct E4LineElement {
    pub dir: Quaternion,
    /// `l + 𝔪`: the scalar part is the element scalar, the pure part the moment.
    pub me: Quaternion,
}

impl E4LineElement {
    pub fn from_dir_point(dir: Quaternion, point: Quaternion) -> Result<Self> {
        let line = E4Line::from_dir_point(dir, point)?;
        let ell = point.dot(&dir);
        Ok(E4LineElement { dir, me: Quaternion::new(ell, line.mom.x, line.mom.y, line.mom.z) })
    }

    pub fn from_hom(c: &HomPoint) -> Result<Self> {
        let x = expect_len(c, 7)?;
        let dir = Quaternion::new(0.0, x[0], x[1], x[2]);
        if dir.norm() <= GENERATOR_EPS * c.norm() {
            return Err(Error::FiberUndefined);
        }
        Ok(E4LineElement { dir, me: Quaternion::new(x[6], x[3], x[4], x[5]) })
    }

    pub fn lift(element: &LineElement3, height: f64) -> Self {
        let line = E4Line::lift(&element.line(), height);
        E4LineElement { dir: line.dir, me: Quaternion::new(element.ell, line.mom.x, line.mom.y, line.mom.z) }
    }

    pub fn line(&self) -> E4Line {
        E4Line { dir: self.dir, mom: Quaternion::new(0.0, self.me.x, self.me.y, self.me.z) }
    }

    pub fn ell(&self) -> f64 {
        self.me.w
    }

    /// The carried point `F + (l / ⟨L,L⟩)·L`.
    pub fn point(&self) -> Result<Quaternion> {
        let pedal = self.line().pedal_point()?;
        Ok(pedal + self.dir.scale(self.ell() / self.dir.norm_sq()))
    }

    pub fn height(&self) -> Result<f64> {
        self.line().height()
    }

    pub fn to_hom(&self) -> Result<HomPoint> {
        self.line().require_pure()?;
        HomPoint::new(vec![self.dir.x, self.dir.y, self.dir.z, self.me.x, self.me.y, self.me.z, self.me.w])
    }

    pub fn project(&self) -> Result<HeightLabeled<LineElement3>> {
        let height = self.height()?;
        let image = nu(&self.to_hom()?)?;
        let x = image.coords();
        Ok(HeightLabeled {
            item: LineElement3 { dir: Vec3::new(x[0], x[1], x[2]), mom: Vec3::new(x[3], x[4], x[5]), ell: x[6] },
            height,
        })
    }
}

/// An E³ object together with the x₀-coordinate it was projected from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightLabeled<T> {
    pub item: T,
    pub height: f64,
}

/// Oriented line of E³: a dual unit vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spear {
    pub dir: Vec3,
    pub mom: Vec3,
}

impl Spear {
    pub fn as_dual(&self) -> DualVector3 {
        DualVector3::new(self.dir, self.mom)
    }

    /// Forgets the orientation.
    pub fn to_line(&self) -> PluckerLine {
        PluckerLine { dir: self.dir, mom: self.mom }
    }

    pub fn reversed(&self) -> Spear {
        Spear { dir: -self.dir, mom: -self.mom }
    }
}

/// Divides by the dual square root of ⟨l̂, l̂⟩.
pub fn spear_normalize(v: &DualVector3) -> Result<Spear> {
    let inv = v.dot(v).sqrt()?.recip().ok_or(Error::NonPositiveDualNorm)?;
    let s = v.scale(inv);
    Ok(Spear { dir: s.dir, mom: s.mom })
}

/// Result of [`mu_flagged`].
#[derive(Debug, Clone, PartialEq)]
pub struct MuImage {
    pub point: HomPoint,
    /// The direction block is tiny against the moment block, so the fiber
    /// direction is numerically ill-defined.
    pub near_generator: bool,
}

fn expect_len(c: &HomPoint, n: usize) -> Result<&[f64]> {
    let x = c.coords();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    Ok(x)
}

/// Axis of the instantaneous screw: (𝐜, 𝐜̄ − ⟨𝐜,𝐜̄⟩/⟨𝐜,𝐜⟩ 𝐜) on the first six
/// coordinates, further coordinates passed through.
pub(crate) fn project_coords(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 6 {
        return Err(Error::DimensionMismatch { expected: 6, got: x.len() });
    }
    let c = Vec3::new(x[0], x[1], x[2]);
    let cbar = Vec3::new(x[3], x[4], x[5]);
    let cc = c.norm_squared();
    if cc == 0.0 || cc.sqrt() <= GENERATOR_EPS * norm(x) {
        return Err(Error::FiberUndefined);
    }
    let a = cbar - c * (c.dot(&cbar) / cc);
    let mut out = x.to_vec();
    out[3] = a.x;
    out[4] = a.y;
    out[5] = a.z;
    Ok(out)
}

/// P⁵ minus the generator space onto the Plücker quadric.
pub fn mu(c: &HomPoint) -> Result<HomPoint> {
    expect_len(c, 6)?;
    HomPoint::new(project_coords(c.coords())?)
}

pub fn mu_flagged(c: &HomPoint) -> Result<MuImage> {
    let point = mu(c)?;
    let x = c.coords();
    let cc = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    let mm = x[3] * x[3] + x[4] * x[4] + x[5] * x[5];
    Ok(MuImage { point, near_generator: cc < NEAR_GENERATOR_RATIO * mm })
}

/// μ evaluated through quaternion products, `(𝔩, 𝔪 + f₀·𝔩)`.
pub fn mu_quaternionic(c: &HomPoint) -> Result<HomPoint> {
    let x = expect_len(c, 6)?;
    let l = Quaternion::new(0.0, x[0], x[1], x[2]);
    let m = Quaternion::new(0.0, x[3], x[4], x[5]);
    let ll = (l * l.conj()).w;
    if ll == 0.0 || ll.sqrt() <= GENERATOR_EPS * c.norm() {
        return Err(Error::FiberUndefined);
    }
    let f0 = 0.5 * (l * m + m * l).w / ll;
    let a = m + l.scale(f0);
    HomPoint::new(vec![l.x, l.y, l.z, a.x, a.y, a.z])
}

/// P⁶ minus the generator space onto the cone over the Plücker quadric.
pub fn nu(c: &HomPoint) -> Result<HomPoint> {
    expect_len(c, 7)?;
    HomPoint::new(project_coords(c.coords())?)
}

/// Two points spanning the fiber of μ (six coordinates) or ν (seven
/// coordinates) through `c`; the second is `(𝐨, 𝐜[, 0])`.
pub fn fiber(c: &HomPoint) -> Result<(HomPoint, HomPoint)> {
    let x = c.coords();
    if !(x.len() == 6 || x.len() == 7) {
        return Err(Error::DimensionMismatch { expected: 6, got: x.len() });
    }
    let dir = Vec3::new(x[0], x[1], x[2]);
    if dir.norm() <= GENERATOR_EPS * c.norm() {
        return Err(Error::FiberUndefined);
    }
    let mut other = vec![0.0; x.len()];
    other[3..6].copy_from_slice(&x[0..3]);
    Ok((c.clone(), HomPoint::new(other)?))
}

/// μ followed by scaling the direction to unit length: a point of the
/// oriented-line model ⟨𝐥,𝐥⟩ = 1, ⟨𝐥,𝐥̄⟩ = 0.
pub fn theta_back_projection(c: &[f64; 6]) -> Result<Spear> {
    let a = project_coords(c)?;
    let dir = Vec3::new(a[0], a[1], a[2]);
    let n = dir.norm();
    Ok(Spear { dir: dir / n, mom: Vec3::new(a[3], a[4], a[5]) / n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines3::plucker_condition_residual;
    use proptest::prelude::*;

    fn hp(c: &[f64]) -> HomPoint {
        HomPoint::from_slice(c).unwrap()
    }

    #[test]
    fn minimal_coordinates() {
        let l = E4Line::from_dir_point(Quaternion::J, Quaternion::ZERO).unwrap();
        assert_eq!(l.mom, Quaternion::ZERO);

        let n = 2.5;
        let l = E4Line::from_dir_point(Quaternion::J, Quaternion::I.scale(n)).unwrap();
        assert_eq!(l.mom, Quaternion::K.scale(n));
        assert_eq!(l.pedal_point().unwrap(), Quaternion::I.scale(n));

        let moved = E4Line::from_dir_point(Quaternion::J, Quaternion::new(0.0, n, 5.0, 0.0)).unwrap();
        assert_eq!(moved.mom, l.mom);

        assert_eq!(E4Line::from_dir_point(Quaternion::ZERO, Quaternion::I), Err(Error::InvalidDirection));
    }

    #[test]
    fn pedal_points() {
        let l = E4Line { dir: Quaternion::J, mom: Quaternion::ZERO };
        assert_eq!(l.pedal_point().unwrap(), Quaternion::ZERO);
        let l = E4Line { dir: Quaternion::J, mom: Quaternion::K.scale(3.0) };
        assert_eq!(l.pedal_point().unwrap(), Quaternion::I.scale(3.0));
        let l = E4Line { dir: Quaternion::I, mom: Quaternion::I };
        assert_eq!(l.pedal_point().unwrap(), Quaternion::scalar(-1.0));
        assert!(E4Line { dir: Quaternion::ZERO, mom: Quaternion::I }.pedal_point().is_err());
    }

    #[test]
    fn heights() {
        let l = E4Line { dir: Quaternion::J, mom: Quaternion::K.scale(3.0) };
        assert_eq!(l.height().unwrap(), 0.0);
        let l = E4Line { dir: Quaternion::I, mom: Quaternion::I };
        assert_eq!(l.height().unwrap(), -1.0);
        let tilted = E4Line { dir: Quaternion::new(1.0, 1.0, 0.0, 0.0), mom: Quaternion::ZERO };
        assert!(matches!(tilted.height(), Err(Error::NotPure(_))));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&hp(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0])).unwrap().coords(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let on = hp(&[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(mu(&on).unwrap(), on);
        assert_eq!(mu(&hp(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0])), Err(Error::FiberUndefined));
        assert!(mu(&hp(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn mu_flags_near_generator_inputs() {
        let far = mu_flagged(&hp(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(!far.near_generator);
        let near = mu_flagged(&hp(&[1e-6, 0.0, 0.0, 0.0, 1.0, 1.0])).unwrap();
        assert!(near.near_generator);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&hp(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 5.0])).unwrap().coords(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 5.0]);
        let on = hp(&[0.0, 2.0, 0.0, 1.0, 0.0, 0.0, -1.0]);
        assert_eq!(nu(&on).unwrap(), on);
        assert_eq!(nu(&hp(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0])), Err(Error::FiberUndefined));
    }

    #[test]
    fn fiber_examples() {
        let (a, b) = fiber(&hp(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0])).unwrap();
        assert_eq!(a.coords(), &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(b.coords(), &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let (_, b) = fiber(&hp(&[1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 4.0])).unwrap();
        assert_eq!(b.coords(), &[0.0, 0.0, 0.0, 1.0, 2.0, 3.0, 0.0]);
        let on = hp(&[0.0, 1.0, 0.0, 0.0, 0.0, 2.0]);
        let (a, _) = fiber(&on).unwrap();
        assert_eq!(mu(&a).unwrap(), on);
    }

    #[test]
    fn projection_examples() {
        let l = E4Line { dir: Quaternion::I, mom: Quaternion::I };
        let p = l.project().unwrap();
        assert_eq!(p.height, -1.0);
        assert_eq!(p.item.dir, Vec3::x());
        assert_eq!(p.item.mom, Vec3::zeros());

        let e3 = E4Line::from_dir_point(Quaternion::new(0.0, 0.0, 1.0, 1.0), Quaternion::new(0.0, 1.0, 2.0, 0.0)).unwrap();
        let p = e3.project().unwrap();
        assert_eq!(p.height, 0.0);
        assert_eq!(p.item.dir, e3.dir.vector());
        assert_eq!(p.item.mom, e3.mom.vector());
    }

    #[test]
    fn theta_examples() {
        let s = theta_back_projection(&[2.0, 0.0, 0.0, 0.0, 2.0, 0.0]).unwrap();
        assert_eq!((s.dir, s.mom), (Vec3::x(), Vec3::y()));
        let s = theta_back_projection(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!((s.dir, s.mom), (Vec3::x(), Vec3::zeros()));
        assert!(theta_back_projection(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn spear_examples() {
        let s = spear_normalize(&DualVector3::new(Vec3::new(2.0, 0.0, 0.0), Vec3::zeros())).unwrap();
        assert_eq!((s.dir, s.mom), (Vec3::x(), Vec3::zeros()));
        let s = spear_normalize(&DualVector3::new(Vec3::x(), Vec3::new(0.0, 2.0, 0.0))).unwrap();
        assert_eq!((s.dir, s.mom), (Vec3::x(), Vec3::new(0.0, 2.0, 0.0)));
        let s = spear_normalize(&DualVector3::new(Vec3::new(2.0, 0.0, 0.0), Vec3::new(0.0, 4.0, 0.0))).unwrap();
        assert_eq!((s.dir, s.mom), (Vec3::x(), Vec3::new(0.0, 2.0, 0.0)));
        assert_eq!(spear_normalize(&DualVector3::new(Vec3::zeros(), Vec3::x())), Err(Error::NonPositiveDualNorm));
        assert_eq!(s.reversed().to_line().dir, -Vec3::x());
    }

    #[test]
    fn element_coordinates() {
        let e = E4LineElement::from_dir_point(Quaternion::J, Quaternion::new(2.0, 1.0, 3.0, 0.0)).unwrap();
        assert_eq!(e.ell(), 3.0);
        assert_eq!(e.point().unwrap(), Quaternion::new(2.0, 1.0, 3.0, 0.0));
        assert_eq!(e.height().unwrap(), 2.0);
        let p = e.project().unwrap();
        assert_eq!(p.height, 2.0);
        assert_eq!(p.item.point().unwrap(), Vec3::new(1.0, 3.0, 0.0));
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-2.0f64..2.0).prop_map(|a| Quaternion::new(a[0], a[1], a[2], a[3]))
    }

    fn pure() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform3(-2.0f64..2.0).prop_map(|a| Quaternion::new(0.0, a[0], a[1], a[2]))
    }

    fn p5() -> impl Strategy<Value = HomPoint> {
        prop::array::uniform6(-1.0f64..1.0)
            .prop_filter("dir block away from zero", |a| (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) > 1e-2)
            .prop_map(|a| hp(&a))
    }

    proptest! {
        #[test]
        fn general_moment_is_pure_and_pedal_round_trips(l in quat(), p in quat()) {
            prop_assume!(l.norm() > 1e-2);
            let g = E4Line::from_dir_point(l, p).unwrap();
            prop_assert!((l.conj() * g.pedal_point().unwrap()).w.abs() < 1e-12);
            let f = g.pedal_point().unwrap();
            let again = E4Line::from_dir_point(l, f).unwrap();
            prop_assert!((again.mom - g.mom).norm() < 1e-10);
            // pedal is the closest point to the origin
            prop_assert!(f.dot(&l).abs() < 1e-10 * (1.0 + p.norm()));
        }

        #[test]
        fn height_matches_pedal_and_construction(l in pure(), f in pure(), h in -3.0f64..3.0) {
            prop_assume!(l.norm() > 1e-2);
            let g = E4Line::from_dir_point(l, Quaternion::scalar(h) + f).unwrap();
            prop_assert!((g.height().unwrap() - h).abs() < 1e-12 * (1.0 + h.abs()));
            prop_assert!((g.height().unwrap() - g.pedal_point().unwrap().w).abs() < 1e-12);
            let plucker = l.x * g.mom.x + l.y * g.mom.y + l.z * g.mom.z;
            prop_assert_eq!(h.abs() < 1e-300, plucker.abs() < 1e-300);
        }

        #[test]
        fn mu_is_idempotent_and_on_quadric(c in p5()) {
            let a = mu(&c).unwrap();
            let x: [f64; 6] = a.coords().try_into().unwrap();
            prop_assert!(plucker_condition_residual(&x).abs() < 1e-12);
            prop_assert!(mu(&a).unwrap().proj_eq(&a, 1e-12));
            prop_assert!(mu_quaternionic(&c).unwrap().proj_eq(&a, 1e-12));
        }

        #[test]
        fn nu_extends_mu(c in p5(), ell in -2.0f64..2.0) {
            let mut x = c.coords().to_vec();
            x.push(0.0);
            let with_zero = nu(&hp(&x)).unwrap();
            let mut expected = mu(&c).unwrap().into_coords();
            expected.push(0.0);
            prop_assert_eq!(with_zero.coords(), &expected[..]);
            x[6] = ell;
            prop_assert_eq!(nu(&hp(&x)).unwrap().coords()[6], ell);
        }

        #[test]
        fn mu_is_constant_on_fibers(c in p5(), lam in -3.0f64..3.0, nu_ in -3.0f64..3.0) {
            let (a, b) = fiber(&c).unwrap();
            prop_assume!(lam.abs() > 1e-2);
            let x: Vec<f64> = a.coords().iter().zip(b.coords()).map(|(p, q)| lam * p + nu_ * q).collect();
            prop_assert!(mu(&hp(&x)).unwrap().proj_eq(&mu(&c).unwrap(), 1e-10));
        }

        #[test]
        fn projection_drops_height(l in pure(), f in pure(), h in -3.0f64..3.0) {
            prop_assume!(l.norm() > 1e-2);
            let g = E4Line::from_dir_point(l, Quaternion::scalar(h) + f).unwrap();
            let p = g.project().unwrap();
            let lifted = E4Line { dir: Quaternion::pure(&p.item.dir), mom: Quaternion::pure(&p.item.mom) };
            let expected = g.pedal_point().unwrap() - Quaternion::scalar(p.height);
            prop_assert!((lifted.pedal_point().unwrap() - expected).norm() < 1e-10);
            prop_assert!((p.height - g.pedal_point().unwrap().w).abs() < 1e-12);
        }

        #[test]
        fn theta_lands_on_oriented_model(c in p5()) {
            let x: [f64; 6] = c.coords().try_into().unwrap();
            let s = theta_back_projection(&x).unwrap();
            prop_assert!((s.dir.norm_squared() - 1.0).abs() < 1e-12);
            prop_assert!(s.dir.dot(&s.mom).abs() < 1e-12);
        }

        #[test]
        fn spears_are_dual_unit(d in prop::array::uniform3(-2.0f64..2.0), m in prop::array::uniform3(-2.0f64..2.0)) {
            let v = DualVector3::new(Vec3::from(d), Vec3::from(m));
            prop_assume!(v.dir.norm() > 1e-2);
            let s = spear_normalize(&v).unwrap();
            let n = s.as_dual().dot(&s.as_dual());
            prop_assert!((n.re - 1.0).abs() < 1e-12 && n.eps.abs() < 1e-10);
        }
    }
}
