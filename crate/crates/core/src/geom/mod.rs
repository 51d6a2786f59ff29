//! Plane geometry over a [`Scalar`] tower, and the optics built on it.

mod inversion;
mod normalize;
mod optics;

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

pub use inversion::{inverse_point, tangent_circle_through};
pub use normalize::{normalize_scene, Similarity};
pub use optics::{
    axis_intersection, on_ab_segment, on_unit_interval, refract, refraction_conic, t_theta_line, AxisHit,
    QuadraticForm,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("refraction constant must be nonzero")]
    ZeroRefractionConstant,
    #[error("radiant point lies on the mirror")]
    RadiantOnMirror,
    #[error("point is not on the mirror")]
    NotOnMirror,
    #[error("refraction conic vanishes identically")]
    DegenerateConic,
    #[error("total internal reflection")]
    TotalInternalReflection,
    #[error("square root not representable in this scalar type")]
    NotRepresentable,
    #[error("point lies on the circle or at its center")]
    AOnCircleOrCenter,
    #[error("point lies on the axis through the radiant and the center")]
    RNotOffAxis,
    #[error("denominator vanishes (tangential ray)")]
    DenominatorZero,
    #[error("radiant coincides with the circle center")]
    AEqualsO,
    #[error("operation needs a finite radiant point")]
    InfiniteRadiant,
    #[error("operation needs a circle mirror")]
    UnsupportedMirror,
}

/// Free vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

/// Nonzero vector, not necessarily normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct Dir2<S>(Vec2<S>);

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    /// `self.x * o.y - self.y * o.x`, which equals `iota(self) . o` up to sign.
    pub fn cross(&self, o: &Self) -> S {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// Rotation by a quarter turn: `(u1, u2) -> (-u2, u1)`.
    pub fn iota(&self) -> Self {
        Vec2::new(-self.y.clone(), self.x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> Vec2<f64> {
        Vec2::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl<S: Scalar> Add for Vec2<S> {
    type Output = Vec2<S>;
    fn add(self, o: Self) -> Self {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl<S: Scalar> Sub for Vec2<S> {
    type Output = Vec2<S>;
    fn sub(self, o: Self) -> Self {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl<S: Scalar> Neg for Vec2<S> {
    type Output = Vec2<S>;
    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<S: Scalar> Mul<S> for Vec2<S> {
    type Output = Vec2<S>;
    fn mul(self, k: S) -> Self {
        Vec2::new(self.x * k.clone(), self.y * k)
    }
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(S::zero(), S::zero())
    }

    /// `self - o`.
    pub fn minus(&self, o: &Self) -> Vec2<S> {
        Vec2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn offset(&self, v: &Vec2<S>) -> Self {
        Point2::new(self.x.clone() + v.x.clone(), self.y.clone() + v.y.clone())
    }

    pub fn dist_sq(&self, o: &Self) -> S {
        self.minus(o).norm_sq()
    }

    pub fn dist_f64(&self, o: &Self) -> f64 {
        self.minus(o).norm_f64()
    }

    pub fn to_f64(&self) -> Point2<f64> {
        Point2::new(self.x.to_f64(), self.y.to_f64())
    }

    pub fn as_vec(&self) -> Vec2<S> {
        Vec2::new(self.x.clone(), self.y.clone())
    }
}

impl<S: Scalar> Dir2<S> {
    pub fn new(v: Vec2<S>) -> Result<Self, GeomError> {
        if v.is_zero() {
            Err(GeomError::ZeroDirection)
        } else {
            Ok(Dir2(v))
        }
    }

    pub fn from_xy(x: S, y: S) -> Result<Self, GeomError> {
        Self::new(Vec2::new(x, y))
    }

    pub fn vec(&self) -> &Vec2<S> {
        &self.0
    }

    pub fn x(&self) -> &S {
        &self.0.x
    }

    pub fn y(&self) -> &S {
        &self.0.y
    }

    pub fn to_f64(&self) -> Dir2<f64> {
        Dir2(self.0.to_f64())
    }
}

impl Dir2<f64> {
    pub fn normalized(&self) -> Dir2<f64> {
        let n = self.0.norm_f64();
        Dir2(Vec2::new(self.0.x / n, self.0.y / n))
    }
}

/// `(u1, u2) -> (-u2, u1)`; `iota(iota(d)) = -d`.
pub fn iota<S: Scalar>(d: &Dir2<S>) -> Dir2<S> {
    Dir2(d.0.iota())
}

/// Line `base + lambda * dir`.
#[derive(Clone, Debug)]
pub struct Line2<S> {
    pub base: Point2<S>,
    pub dir: Dir2<S>,
}

impl<S: Scalar> Line2<S> {
    pub fn new(base: Point2<S>, dir: Dir2<S>) -> Self {
        Line2 { base, dir }
    }

    pub fn through(p: &Point2<S>, q: &Point2<S>) -> Result<Self, GeomError> {
        Ok(Line2::new(p.clone(), Dir2::new(q.minus(p))?))
    }

    pub fn point_at(&self, lambda: &S) -> Point2<S> {
        self.base.offset(&self.dir.vec().scale(lambda))
    }

    /// Signed distance times `|dir|`: zero exactly on the line.
    pub fn side(&self, p: &Point2<S>) -> S {
        self.dir.vec().cross(&p.minus(&self.base))
    }

    /// Euclidean distance from `p`, in floats.
    pub fn distance_f64(&self, p: &Point2<S>) -> f64 {
        self.side(p).to_f64().abs() / self.dir.vec().norm_f64()
    }

    /// Equality as point sets. Exact for rational scalars; otherwise within
    /// `tol` on the sine of the angle between directions and on the distance
    /// of the other base point.
    pub fn coincides(&self, other: &Line2<S>, tol: f64) -> bool {
        let d1 = self.dir.vec();
        let d2 = other.dir.vec();
        if S::EXACT {
            return d1.cross(d2).is_zero() && self.side(&other.base).is_zero();
        }
        let sin = d1.cross(d2).to_f64().abs() / (d1.norm_f64() * d2.norm_f64());
        sin <= tol && self.distance_f64(&other.base) <= tol
    }

    /// Intersection with `other`, or `None` when parallel.
    pub fn intersect(&self, other: &Line2<S>) -> Option<Point2<S>> {
        let d1 = self.dir.vec();
        let d2 = other.dir.vec();
        let den = d1.cross(d2);
        if den.is_zero() {
            return None;
        }
        let lambda = other.base.minus(&self.base).cross(d2) / den;
        Some(self.point_at(&lambda))
    }

    pub fn to_f64(&self) -> Line2<f64> {
        Line2::new(self.base.to_f64(), self.dir.to_f64())
    }
}

impl<S: Scalar> PartialEq for Line2<S> {
    /// Point-set equality; exact for rationals, tolerance `1e-12` for floats.
    fn eq(&self, other: &Self) -> bool {
        self.coincides(other, 1e-12)
    }
}

/// Circle stored by its squared radius, so circles through rational points
/// stay rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Circle2<S> {
    pub center: Point2<S>,
    pub radius_sq: S,
}

impl<S: Scalar> Circle2<S> {
    pub fn new(center: Point2<S>, radius: S) -> Result<Self, GeomError> {
        if !radius.is_positive() {
            return Err(GeomError::NonPositiveRadius);
        }
        Ok(Circle2 { center, radius_sq: radius.clone() * radius })
    }

    pub fn from_radius_sq(center: Point2<S>, radius_sq: S) -> Result<Self, GeomError> {
        if !radius_sq.is_positive() {
            return Err(GeomError::NonPositiveRadius);
        }
        Ok(Circle2 { center, radius_sq })
    }

    /// The radius when representable (always for floats).
    pub fn radius(&self) -> Option<S> {
        self.radius_sq.sqrt_checked()
    }

    /// `|p - center|^2 - radius^2`.
    pub fn power(&self, p: &Point2<S>) -> S {
        p.dist_sq(&self.center) - self.radius_sq.clone()
    }

    pub fn to_f64(&self) -> Circle2<f64> {
        Circle2 { center: self.center.to_f64(), radius_sq: self.radius_sq.to_f64() }
    }
}

impl Circle2<f64> {
    pub fn point_at_angle(&self, theta: f64) -> Point2<f64> {
        let r = self.radius_sq.sqrt();
        Point2::new(self.center.x + r * theta.cos(), self.center.y + r * theta.sin())
    }

    /// Points where `line` meets the circle, in order along `line.dir`; a
    /// tangent line gives one point.
    pub fn intersect_line(&self, line: &Line2<f64>) -> Vec<Point2<f64>> {
        let d = line.dir.normalized();
        let w = line.base.minus(&self.center);
        let b = w.dot(d.vec());
        let disc = b * b - (w.norm_sq() - self.radius_sq);
        if disc < 0.0 {
            return Vec::new();
        }
        let root = disc.sqrt();
        let at = |lambda: f64| line.base.offset(&d.vec().scale(&lambda));
        if root == 0.0 {
            vec![at(-b)]
        } else {
            vec![at(-b - root), at(-b + root)]
        }
    }
}

/// Source of the rays: a point, or a point at infinity given by the
/// direction in which the light travels.
#[derive(Clone, Debug, PartialEq)]
pub enum Radiant<S> {
    Finite(Point2<S>),
    AtInfinity(Dir2<S>),
}

impl<S: Scalar> Radiant<S> {
    /// Vector from `x` towards the source (`A - X` for a finite radiant).
    pub fn towards_source(&self, x: &Point2<S>) -> Vec2<S> {
        match self {
            Radiant::Finite(a) => a.minus(x),
            Radiant::AtInfinity(d) => -d.vec().clone(),
        }
    }

    pub fn to_f64(&self) -> Radiant<f64> {
        match self {
            Radiant::Finite(a) => Radiant::Finite(a.to_f64()),
            Radiant::AtInfinity(d) => Radiant::AtInfinity(d.to_f64()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Mirror<S> {
    Circle(Circle2<S>),
    Line(Line2<S>),
}

impl<S: Scalar> Mirror<S> {
    /// Value of the defining equation: `|X - O|^2 - r^2`, or the cross product
    /// of the line direction with `X - base`.
    pub fn equation(&self, p: &Point2<S>) -> S {
        match self {
            Mirror::Circle(c) => c.power(p),
            Mirror::Line(l) => l.side(p),
        }
    }

    /// Gradient of [`equation`](Self::equation); for circles it points outward.
    pub fn gradient(&self, p: &Point2<S>) -> Vec2<S> {
        match self {
            Mirror::Circle(c) => p.minus(&c.center).scale(&S::two()),
            Mirror::Line(l) => l.dir.vec().iota(),
        }
    }

    /// Whether `p` lies on the mirror: exactly for rationals, within `tol`
    /// distance for floats.
    pub fn contains(&self, p: &Point2<S>, tol: f64) -> bool {
        if S::EXACT {
            return self.equation(p).is_zero();
        }
        match self {
            Mirror::Circle(c) => (p.dist_f64(&c.center) - c.radius_sq.to_f64().sqrt()).abs() <= tol,
            Mirror::Line(l) => l.distance_f64(p) <= tol,
        }
    }

    pub fn to_f64(&self) -> Mirror<f64> {
        match self {
            Mirror::Circle(c) => Mirror::Circle(c.to_f64()),
            Mirror::Line(l) => Mirror::Line(l.to_f64()),
        }
    }
}

impl<S: Scalar> PartialEq for Mirror<S> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Mirror::Circle(a), Mirror::Circle(b)) => a == b,
            (Mirror::Line(a), Mirror::Line(b)) => a == b,
            _ => false,
        }
    }
}

/// Radiant, mirror and refraction constant.
#[derive(Clone, Debug)]
pub struct Scene<S> {
    pub radiant: Radiant<S>,
    pub mirror: Mirror<S>,
    pub n: S,
}

impl<S: Scalar> PartialEq for Scene<S> {
    fn eq(&self, other: &Self) -> bool {
        self.radiant == other.radiant && self.mirror == other.mirror && self.n == other.n
    }
}

/// Minimum distance between a float radiant and the mirror.
pub const MIN_RADIANT_CLEARANCE: f64 = 1e-12;

impl<S: Scalar> Scene<S> {
    pub fn new(radiant: Radiant<S>, mirror: Mirror<S>, n: S) -> Result<Self, GeomError> {
        if n.is_zero() {
            return Err(GeomError::ZeroRefractionConstant);
        }
        if let Radiant::Finite(a) = &radiant {
            if mirror.contains(a, MIN_RADIANT_CLEARANCE) {
                return Err(GeomError::RadiantOnMirror);
            }
        }
        Ok(Scene { radiant, mirror, n })
    }

    /// The same scene with refraction constant `n`.
    pub fn with_n(&self, n: S) -> Result<Self, GeomError> {
        Scene::new(self.radiant.clone(), self.mirror.clone(), n)
    }

    pub fn finite_radiant(&self) -> Result<&Point2<S>, GeomError> {
        match &self.radiant {
            Radiant::Finite(a) => Ok(a),
            Radiant::AtInfinity(_) => Err(GeomError::InfiniteRadiant),
        }
    }

    pub fn circle(&self) -> Result<&Circle2<S>, GeomError> {
        match &self.mirror {
            Mirror::Circle(c) => Ok(c),
            Mirror::Line(_) => Err(GeomError::UnsupportedMirror),
        }
    }

    pub fn to_f64(&self) -> Scene<f64> {
        Scene { radiant: self.radiant.to_f64(), mirror: self.mirror.to_f64(), n: self.n.to_f64() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::scalar::{q, Q};

    fn pq(x: Q, y: Q) -> Point2<Q> {
        Point2::new(x, y)
    }

    #[test]
    fn iota_examples() {
        let d = Dir2::from_xy(1.0, 0.0).unwrap();
        assert_eq!(iota(&d), Dir2::from_xy(0.0, 1.0).unwrap());
        assert_eq!(iota(&iota(&d)), Dir2::from_xy(-1.0, 0.0).unwrap());
        assert_eq!(iota(&Dir2::from_xy(3.0, 4.0).unwrap()).vec(), &Vec2::new(-4.0, 3.0));
    }

    #[test]
    fn line_point_set_equality() {
        let l1 = Line2::new(pq(q(0, 1), q(0, 1)), Dir2::from_xy(q(1, 1), q(2, 1)).unwrap());
        let l2 = Line2::new(pq(q(1, 1), q(2, 1)), Dir2::from_xy(q(-3, 1), q(-6, 1)).unwrap());
        let l3 = Line2::new(pq(q(1, 1), q(3, 1)), Dir2::from_xy(q(1, 1), q(2, 1)).unwrap());
        assert_eq!(l1, l2);
        assert_ne!(l1, l3);
        assert_eq!(l1.intersect(&l3), None);
    }

    #[test]
    fn scene_validation() {
        let circle = Mirror::Circle(Circle2::new(pq(q(1, 1), q(0, 1)), q(1, 3)).unwrap());
        let a = Radiant::Finite(pq(q(2, 3), q(0, 1)));
        assert_eq!(Scene::new(a, circle.clone(), q(1, 2)), Err(GeomError::RadiantOnMirror));
        let a = Radiant::Finite(Point2::origin());
        assert_eq!(Scene::new(a, circle, Q::zero()), Err(GeomError::ZeroRefractionConstant));
        assert_eq!(Dir2::from_xy(0.0, 0.0), Err(GeomError::ZeroDirection));
        assert_eq!(Circle2::new(Point2::origin(), -1.0), Err(GeomError::NonPositiveRadius));
    }
}
