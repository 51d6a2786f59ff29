use super::{Dir2, GeomError, Line2, Point2, Scene, Vec2};
use crate::scalar::Scalar;

/// `a*l1^2 + b*l1*l2 + c*l2^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> QuadraticForm<S> {
    pub fn eval(&self, l: &Vec2<S>) -> S {
        self.a.clone() * l.x.clone() * l.x.clone()
            + self.b.clone() * l.x.clone() * l.y.clone()
            + self.c.clone() * l.y.clone() * l.y.clone()
    }

    pub fn coeff_norm(&self) -> f64 {
        self.a.to_f64().abs() + self.b.to_f64().abs() + self.c.to_f64().abs()
    }

    /// `|Q(l / |l|)| / coeff_norm`, the scale-free residual of a direction.
    pub fn relative_residual(&self, l: &Vec2<S>) -> f64 {
        let l = l.to_f64();
        let n = l.norm_sq();
        let q = QuadraticForm { a: self.a.to_f64(), b: self.b.to_f64(), c: self.c.to_f64() };
        q.eval(&l).abs() / (n * q.coeff_norm())
    }
}

/// The squared Snell relation at `x` as a quadratic form in the refracted
/// direction `l`:
///
/// `|l|^2 ((A-X).w)^2 - n^2 |A-X|^2 (l.w)^2`, with `w = iota(normal)`.
///
/// Its two projective roots are the refracted directions for `n` and `-n`.
/// For a radiant at infinity `A - X` is replaced by the reversed light
/// direction.
pub fn refraction_conic<S: Scalar>(
    scene: &Scene<S>,
    x: &Point2<S>,
    normal: &Dir2<S>,
) -> Result<QuadraticForm<S>, GeomError> {
    let u = scene.radiant.towards_source(x);
    if u.is_zero() {
        return Err(GeomError::RadiantOnMirror);
    }
    let w = normal.vec().iota();
    let uw = u.dot(&w);
    let k = uw.clone() * uw;
    let m = scene.n.clone() * scene.n.clone() * u.norm_sq();
    let form = QuadraticForm {
        a: k.clone() - m.clone() * w.x.clone() * w.x.clone(),
        b: -(S::two() * m.clone() * w.x.clone() * w.y.clone()),
        c: k - m * w.y.clone() * w.y.clone(),
    };
    if form.a.is_zero() && form.b.is_zero() && form.c.is_zero() {
        return Err(GeomError::DegenerateConic);
    }
    Ok(form)
}

/// The refracted line `R_n(X)` at a mirror point `x`.
///
/// With `N` the mirror gradient, `U` the vector towards the source,
/// `p = U . iota(N)` and `sigma = sgn(U . N)`, the direction is
/// `sqrt(D) N + sigma sgn(n) p iota(N)` where
/// `D = n^2 |U|^2 |N|^2 - p^2`; `D < 0` is total internal reflection.
/// Only `sqrt(D)` is needed, so reflection (`n = -1`, `D = (U.N)^2`) stays
/// exact over the rationals.
pub fn refract<S: Scalar>(scene: &Scene<S>, x: &Point2<S>) -> Result<Line2<S>, GeomError> {
    if !scene.mirror.contains(x, 1e-9) {
        return Err(GeomError::NotOnMirror);
    }
    let u = scene.radiant.towards_source(x);
    if u.is_zero() {
        return Err(GeomError::RadiantOnMirror);
    }
    let grad = scene.mirror.gradient(x);
    if grad.is_zero() {
        return Err(GeomError::NotOnMirror);
    }
    let sigma = if u.dot(&grad).is_negative() { -S::one() } else { S::one() };
    let sgn_n = scene.n.signum();
    let ig = grad.iota();
    let p = u.dot(&ig);
    let disc = scene.n.clone() * scene.n.clone() * u.norm_sq() * grad.norm_sq() - p.clone() * p.clone();
    if disc.is_negative() {
        return Err(GeomError::TotalInternalReflection);
    }
    let root = disc.sqrt_checked().ok_or(GeomError::NotRepresentable)?;
    let dir = grad.scale(&root) + ig.scale(&(sigma * sgn_n * p));
    Ok(Line2::new(x.clone(), Dir2::new(dir)?))
}

/// Result of intersecting a refracted ray with the x-axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxisHit {
    At(f64),
    /// No refracted ray at this angle.
    NoRay,
}

fn sgn(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn radicand(r: f64, n: f64, theta: f64) -> f64 {
    n * n * (1.0 + r * r + 2.0 * r * theta.cos()) - theta.sin().powi(2)
}

/// Crossing of the refracted ray at `X = (1, 0) + r (cos t, sin t)` with the
/// x-axis, for the normalized scene `A = (0, 0)`, `O = (1, 0)`:
///
/// `x_int = sgn(n) r / (sgn(n) cos t + sigma sqrt(n^2 (1 + r^2 + 2 r cos t) - sin^2 t)) + 1`
///
/// with `sigma = sgn(-r - cos t)`. Rays along the axis itself (`sin t = 0`)
/// and rays parallel to it give [`GeomError::DenominatorZero`].
pub fn axis_intersection(r: f64, n: f64, theta: f64) -> Result<AxisHit, GeomError> {
    let rad = radicand(r, n, theta);
    if rad < 0.0 {
        return Ok(AxisHit::NoRay);
    }
    let sigma = sgn(-r - theta.cos());
    let den = sgn(n) * theta.cos() + sigma * rad.sqrt();
    if den.abs() < 1e-12 || theta.sin().abs() < 1e-12 {
        return Err(GeomError::DenominatorZero);
    }
    Ok(AxisHit::At(sgn(n) * r / den + 1.0))
}

/// Branch predicate: crossing strictly inside `(0, 1)`.
pub fn on_unit_interval(x_int: f64) -> bool {
    0.0 < x_int && x_int < 1.0
}

/// Branch predicate: crossing strictly inside the segment from `A = 0` to
/// the inverse point `B = 1 - r^2`.
pub fn on_ab_segment(x_int: f64, r: f64) -> bool {
    0.0 < x_int && x_int < 1.0 - r * r
}

/// The refracted line through `X(t)` built from the rotation
/// `T_t = [[c, -s], [s, c]]` with `c = sigma sqrt(radicand)`, `s = sgn(n) sin t`,
/// applied to the outward normal. `None` when no ray exists.
pub fn t_theta_line(r: f64, n: f64, theta: f64) -> Option<Line2<f64>> {
    let rad = radicand(r, n, theta);
    if rad < 0.0 {
        return None;
    }
    let c = sgn(-r - theta.cos()) * rad.sqrt();
    let s = sgn(n) * theta.sin();
    let (ct, st) = (theta.cos(), theta.sin());
    let dir = Dir2::from_xy(c * ct - s * st, s * ct + c * st).ok()?;
    Some(Line2::new(Point2::new(1.0 + r * ct, r * st), dir))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::geom::{Circle2, Mirror, Radiant};
    use crate::scalar::{q, Q};

    fn scene_q(r: Q, n: Q) -> Scene<Q> {
        Scene::new(
            Radiant::Finite(Point2::origin()),
            Mirror::Circle(Circle2::new(Point2::new(q(1, 1), q(0, 1)), r).unwrap()),
            n,
        )
        .unwrap()
    }

    #[test]
    fn normal_incidence_is_undeviated() {
        let s = scene_q(q(1, 3), q(1, 2));
        let x = Point2::new(q(2, 3), q(0, 1));
        let line = refract(&s, &x).unwrap();
        let axis = Line2::new(Point2::origin(), Dir2::from_xy(q(1, 1), q(0, 1)).unwrap());
        assert_eq!(line, axis);
        let normal = Dir2::new(s.mirror.gradient(&x)).unwrap();
        let conic = refraction_conic(&s, &x, &normal).unwrap();
        assert!(conic.eval(&Vec2::new(q(1, 1), q(0, 1))).is_zero());
    }

    #[test]
    fn total_internal_reflection_at_top() {
        let s = scene_q(q(1, 3), q(1, 2)).to_f64();
        let x = Point2::new(1.0, 1.0 / 3.0);
        assert_eq!(refract(&s, &x).unwrap_err(), GeomError::TotalInternalReflection);
        assert_eq!(axis_intersection(1.0 / 3.0, 0.5, std::f64::consts::FRAC_PI_2), Ok(AxisHit::NoRay));
    }

    #[test]
    fn reflection_is_exact() {
        let s = scene_q(q(1, 3), q(-1, 1));
        // (1 - 1/3 * 3/5, 1/3 * 4/5) lies on the circle
        let x = Point2::new(q(4, 5), q(4, 15));
        let line = refract(&s, &x).unwrap();
        let u = Point2::<Q>::origin().minus(&x);
        let nrm = s.mirror.gradient(&x);
        let d = line.dir.vec();
        // equal angles: |cos(u, N)| = |cos(d, N)| via squared cosines
        let lhs = u.dot(&nrm) * u.dot(&nrm) * d.norm_sq();
        let rhs = d.dot(&nrm) * d.dot(&nrm) * u.norm_sq();
        assert_eq!(lhs, rhs);
        assert!(d.cross(&u) != Q::zero());
    }

    #[test]
    fn axis_crossing_closed_form() {
        let theta = std::f64::consts::FRAC_PI_2;
        let AxisHit::At(x) = axis_intersection(1.0 / 3.0, 2.0, theta).unwrap() else { panic!() };
        assert!((x - (1.0 - 1.0 / 31f64.sqrt())).abs() < 1e-12);
        let s = scene_q(q(1, 3), q(2, 1)).to_f64();
        let line = refract(&s, &Point2::new(1.0, 1.0 / 3.0)).unwrap();
        let axis = Line2::new(Point2::origin(), Dir2::from_xy(1.0, 0.0).unwrap());
        let hit = line.intersect(&axis).unwrap();
        assert!((hit.x - x).abs() < 1e-12);
        assert_eq!(axis_intersection(1.0 / 3.0, 0.5, 0.0), Err(GeomError::DenominatorZero));
    }

    #[test]
    fn infinite_radiant_uses_light_direction() {
        let s = Scene::new(
            Radiant::AtInfinity(Dir2::from_xy(1.0, 0.0).unwrap()),
            Mirror::Circle(Circle2::new(Point2::origin(), 1.0).unwrap()),
            1.0,
        )
        .unwrap();
        let x = Point2::new(-0.6, 0.8);
        let line = refract(&s, &x).unwrap();
        let expected = Line2::new(x, Dir2::from_xy(1.0, 0.0).unwrap());
        assert!(line.coincides(&expected, 1e-12));
    }
}
