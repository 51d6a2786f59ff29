//! Cartesian ovals `±|A - M| + s |B - M| = t`.

use crate::geom::{inverse_point, Dir2, GeomError, Line2, Mirror, Point2, Radiant, Scene, Vec2};
use crate::poly::{var_list, QPoly};
use crate::scalar::{Scalar, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OvalError {
    #[error("|n| = 1 gives a degenerate oval for a line mirror")]
    AbsNEqualsOne,
    #[error("radiant point lies on the mirror line")]
    AOnLine,
    #[error("point is not on the oval branch")]
    MNotOnOval,
    #[error("point coincides with a focus")]
    MAtFocus,
    #[error("no circle scene produces this oval")]
    NoConsistentScene,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Sign in front of `|A - M|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign<S: Scalar>(self) -> S {
        match self {
            Branch::Plus => S::one(),
            Branch::Minus => -S::one(),
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// The branch `sign |A - M| + s |B - M| = t`. Nothing forces `t > 0`; a
/// branch may have no real points.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianOval<S> {
    pub a: Point2<S>,
    pub b: Point2<S>,
    pub s: S,
    pub t: S,
    pub branch: Branch,
}

/// Integer-coefficient quartic in `x, y` vanishing on all four sign
/// combinations of an oval; quadratic when `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OvalQuartic(pub QPoly);

impl OvalQuartic {
    pub fn poly(&self) -> &QPoly {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.total_degree()
    }

    /// `|G(p)| / |G|_1` with `|G|_1` the sum of absolute coefficients,
    /// after scaling `p` into the unit box.
    pub fn relative_residual(&self, p: &Point2<f64>) -> f64 {
        let scale = p.x.abs().max(p.y.abs()).max(1.0);
        let v = self.0.eval_f64(&[p.x, p.y]);
        v.abs() / (self.0.coeff_norm1() * scale.powi(self.degree() as i32))
    }
}

/// Tolerance on the metric residual for points accepted as oval points.
pub const ON_OVAL_TOL: f64 = 1e-8;

impl<S: Scalar> CartesianOval<S> {
    pub fn new(a: Point2<S>, b: Point2<S>, s: S, t: S, branch: Branch) -> Self {
        CartesianOval { a, b, s, t, branch }
    }

    pub fn with_branch(&self, branch: Branch) -> Self {
        CartesianOval { branch, ..self.clone() }
    }

    pub fn to_f64(&self) -> CartesianOval<f64> {
        CartesianOval {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            s: self.s.to_f64(),
            t: self.t.to_f64(),
            branch: self.branch,
        }
    }

    /// `sign |A - M| + s |B - M| - t`.
    pub fn residual(&self, m: &Point2<f64>) -> f64 {
        let o = self.to_f64();
        o.branch.sign::<f64>() * o.a.dist_f64(m) + o.s * o.b.dist_f64(m) - o.t
    }
}

/// Expands `(|A-M|^2 - s^2 |B-M|^2 + t^2)^2 - 4 t^2 |A-M|^2` and removes the
/// content.
pub fn quartic_closure(oval: &CartesianOval<Q>) -> OvalQuartic {
    let vars = var_list(&["x", "y"]);
    let x = QPoly::var(vars.clone(), "x");
    let y = QPoly::var(vars.clone(), "y");
    let c = |v: &Q| QPoly::constant(vars.clone(), v.clone());
    let dist_sq = |p: &Point2<Q>| {
        let dx = &x - &c(&p.x);
        let dy = &y - &c(&p.y);
        &dx * &dx + &dy * &dy
    };
    let da = dist_sq(&oval.a);
    let db = dist_sq(&oval.b);
    let s2 = oval.s.clone() * oval.s.clone();
    let t2 = oval.t.clone() * oval.t.clone();
    let inner = &da - &db.scale(&s2) + c(&t2);
    let g = &inner * &inner - da.scale(&(t2 * Q::from_i64(4)));
    OvalQuartic(g.primitive())
}

fn sqrt_or<S: Scalar>(v: S) -> Result<S, GeomError> {
    v.sqrt_checked().ok_or(GeomError::NotRepresentable)
}

/// Both ovals whose normals are the refracted rays of a circle scene:
/// foci `A` and its inverse `B`, `s = |A-O| / r`, `t = |A-O| |A-B| / (r |n|)`.
/// Returned as `[Plus, Minus]`.
pub fn from_circle_scene<S: Scalar>(scene: &Scene<S>) -> Result<[CartesianOval<S>; 2], OvalError> {
    let a = scene.finite_radiant()?;
    let circle = scene.circle()?;
    let b = inverse_point(a, circle)?;
    let ao = sqrt_or(a.dist_sq(&circle.center))?;
    let ab = sqrt_or(a.dist_sq(&b))?;
    let r = sqrt_or(circle.radius_sq.clone())?;
    let s = ao.clone() / r.clone();
    let t = ao * ab / (r * scene.n.abs());
    let plus = CartesianOval::new(a.clone(), b, s, t, Branch::Plus);
    Ok([plus.clone(), plus.with_branch(Branch::Minus)])
}

/// The oval for a line mirror: `B` is the reflection of `A`, `s = 1`,
/// `t = |A-B| / |n|`, branch `+` when `|n| < 1` and `-` when `|n| > 1`.
pub fn from_line_scene<S: Scalar>(scene: &Scene<S>) -> Result<CartesianOval<S>, OvalError> {
    let a = scene.finite_radiant()?;
    let Mirror::Line(line) = &scene.mirror else {
        return Err(GeomError::UnsupportedMirror.into());
    };
    let n_abs = scene.n.abs();
    if n_abs == S::one() {
        return Err(OvalError::AbsNEqualsOne);
    }
    if line.side(a).is_zero() {
        return Err(OvalError::AOnLine);
    }
    let d = line.dir.vec();
    let k = a.minus(&line.base).dot(d) / d.norm_sq();
    let foot = line.point_at(&k);
    let b = Point2::new(S::two() * foot.x - a.x.clone(), S::two() * foot.y - a.y.clone());
    let t = sqrt_or(a.dist_sq(&b))? / n_abs.clone();
    let branch = if n_abs < S::one() { Branch::Plus } else { Branch::Minus };
    Ok(CartesianOval::new(a.clone(), b, S::one(), t, branch))
}

/// Gradient of `sign |A - M| + s |B - M|` at `m`.
pub fn oval_gradient(oval: &CartesianOval<f64>, m: &Point2<f64>) -> Result<Vec2<f64>, OvalError> {
    let ua = m.minus(&oval.a);
    let ub = m.minus(&oval.b);
    let (la, lb) = (ua.norm_f64(), ub.norm_f64());
    if la == 0.0 || (lb == 0.0 && oval.s != 0.0) {
        return Err(OvalError::MAtFocus);
    }
    let mut g = ua.scale(&(oval.branch.sign::<f64>() / la));
    if oval.s != 0.0 {
        g = g + ub.scale(&(oval.s / lb));
    }
    Ok(g)
}

/// The normal to the oval at `m`, which must lie on the branch within
/// [`ON_OVAL_TOL`] (scaled by `max(1, |t|)`).
pub fn normal_line<S: Scalar>(oval: &CartesianOval<S>, m: &Point2<S>) -> Result<Line2<f64>, OvalError> {
    let o = oval.to_f64();
    let m = m.to_f64();
    if m == o.a || (m == o.b && o.s != 0.0) {
        return Err(OvalError::MAtFocus);
    }
    if o.residual(&m).abs() > ON_OVAL_TOL * o.t.abs().max(1.0) {
        return Err(OvalError::MNotOnOval);
    }
    let g = oval_gradient(&o, &m)?;
    Ok(Line2::new(m, Dir2::new(g)?))
}

/// `sin(alpha) / sin(beta)`, where `alpha` and `beta` are the angles between
/// `dir` and the lines from `m` to the foci `a` and `b`.
pub fn sine_ratio(a: &Point2<f64>, b: &Point2<f64>, m: &Point2<f64>, dir: &Vec2<f64>) -> f64 {
    let sin = |p: &Point2<f64>| {
        let u = p.minus(m);
        u.cross(dir).abs() / (u.norm_f64() * dir.norm_f64())
    };
    sin(a) / sin(b)
}

/// A circle scene whose ovals include `oval`: `O` on the ray from `A`
/// through `B` with `O - A = s^2 / (s^2 - 1) (B - A)`, `r = |A-O| / s`,
/// `n = s |A-B| / t > 0`.
pub fn invert_to_scene<S: Scalar>(oval: &CartesianOval<S>) -> Result<Scene<S>, OvalError> {
    let s = &oval.s;
    if !s.is_positive() || *s == S::one() || !oval.t.is_positive() || oval.a == oval.b {
        return Err(OvalError::NoConsistentScene);
    }
    let s2 = s.clone() * s.clone();
    let k = s2.clone() / (s2 - S::one());
    let ab = oval.b.minus(&oval.a);
    let o = oval.a.offset(&ab.scale(&k));
    let ab_len = sqrt_or(ab.norm_sq())?;
    let r = k.abs() * ab_len.clone() / s.clone();
    let n = s.clone() * ab_len / oval.t.clone();
    let circle = crate::geom::Circle2::new(o, r)?;
    Ok(Scene::new(Radiant::Finite(oval.a.clone()), Mirror::Circle(circle), n)?)
}

const SCAN_STEPS: usize = 2048;

/// Points of the branch, found along `count` rays from the midpoint of the
/// foci by scanning for sign changes of the metric residual and bisecting.
/// Every returned point has residual below `1e-10`; an empty branch gives an
/// empty list.
pub fn sample_branch<S: Scalar>(oval: &CartesianOval<S>, count: usize) -> Vec<Point2<f64>> {
    let o = oval.to_f64();
    let c = Point2::new((o.a.x + o.b.x) / 2.0, (o.a.y + o.b.y) / 2.0);
    let d = o.a.dist_f64(&o.b);
    let e = o.branch.sign::<f64>();
    let growth = (e + o.s).abs();
    let spread = (1.0 + o.s.abs()) * d / 2.0 + o.t.abs();
    let reach = if growth > 1e-12 { spread / growth } else { 10.0 * (d + o.t.abs()) };
    let reach = reach.max(1e-9) * 1.01;
    let mut out = Vec::new();
    for k in 0..count.max(1) {
        let phi = std::f64::consts::TAU * k as f64 / count.max(1) as f64;
        let (dx, dy) = (phi.cos(), phi.sin());
        let at = |rho: f64| Point2::new(c.x + rho * dx, c.y + rho * dy);
        let f = |rho: f64| o.residual(&at(rho));
        let mut prev = (0.0, f(0.0));
        if prev.1 == 0.0 {
            out.push(at(0.0));
        }
        for i in 1..=SCAN_STEPS {
            let rho = reach * i as f64 / SCAN_STEPS as f64;
            let cur = (rho, f(rho));
            if cur.1 == 0.0 {
                out.push(at(rho));
            } else if prev.1 != 0.0 && (prev.1 < 0.0) != (cur.1 < 0.0) {
                let (mut lo, mut hi) = (prev.0, cur.0);
                let lo_neg = prev.1 < 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if (f(mid) < 0.0) == lo_neg {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let rho = if f(lo).abs() < f(hi).abs() { lo } else { hi };
                if f(rho).abs() < 1e-10 {
                    out.push(at(rho));
                }
            }
            prev = cur;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Circle2;
    use crate::poly::parse_poly;
    use crate::scalar::q;

    fn pq(x: Q, y: Q) -> Point2<Q> {
        Point2::new(x, y)
    }

    fn circle_scene(r: Q, n: Q) -> Scene<Q> {
        let c = Circle2::new(pq(q(1, 1), q(0, 1)), r).unwrap();
        Scene::new(Radiant::Finite(Point2::origin()), Mirror::Circle(c), n).unwrap()
    }

    // (-72 (x^2 + y^2) + 144 x + 192)^2 - 9216 (x^2 + y^2)
    fn printed_quartic() -> QPoly {
        let vars = var_list(&["x", "y"]);
        let x = QPoly::var(vars.clone(), "x");
        let y = QPoly::var(vars.clone(), "y");
        let rr = &x * &x + &y * &y;
        let inner = rr.scale(&q(-72, 1)) + x.scale(&q(144, 1)) + QPoly::constant(vars, q(192, 1));
        &inner * &inner - rr.scale(&q(9216, 1))
    }

    #[test]
    fn quartic_of_small_circle_scene() {
        let [oval, _] = from_circle_scene(&circle_scene(q(1, 3), q(1, 2))).unwrap();
        assert_eq!(oval.b, pq(q(8, 9), q(0, 1)));
        assert_eq!((oval.s.clone(), oval.t.clone()), (q(3, 1), q(16, 3)));
        let g = quartic_closure(&oval);
        assert!(g.poly().is_scalar_multiple_of(&printed_quartic()));
        assert_eq!(g.degree(), 4);
    }

    #[test]
    fn half_radius_does_not_give_printed_quartic() {
        let [oval, _] = from_circle_scene(&circle_scene(q(1, 2), q(1, 2))).unwrap();
        assert!(!quartic_closure(&oval).poly().is_scalar_multiple_of(&printed_quartic()));
    }

    #[test]
    fn second_circle_example() {
        let [oval, _] = from_circle_scene(&circle_scene(q(2, 3), q(2, 3))).unwrap();
        assert_eq!(oval.b, pq(q(5, 9), q(0, 1)));
        assert_eq!((oval.s.clone(), oval.t.clone()), (q(3, 2), q(5, 4)));
        let back = invert_to_scene(&oval).unwrap();
        assert_eq!(back, circle_scene(q(2, 3), q(2, 3)));
    }

    #[test]
    fn circle_and_line_degenerations() {
        let o = CartesianOval::new(Point2::origin(), pq(q(1, 1), q(0, 1)), q(0, 1), q(2, 1), Branch::Plus);
        let g = quartic_closure(&o);
        let circle = parse_poly("x^2 + y^2 - 4", &["x", "y"]).unwrap();
        assert!(g.poly().is_scalar_multiple_of(&(&circle * &circle)));
        let o1 = CartesianOval { s: q(1, 1), ..o.clone() };
        assert_eq!(quartic_closure(&o1).degree(), 2);
        let o2 = CartesianOval { s: q(2, 1), ..o };
        assert_eq!(quartic_closure(&o2).degree(), 4);
    }

    #[test]
    fn line_scene_ovals() {
        let line = Line2::new(pq(q(1, 1), q(0, 1)), Dir2::from_xy(q(0, 1), q(1, 1)).unwrap());
        let scene = Scene::new(Radiant::Finite(Point2::origin()), Mirror::Line(line), q(1, 2)).unwrap();
        let oval = from_line_scene(&scene).unwrap();
        assert_eq!(oval.b, pq(q(2, 1), q(0, 1)));
        assert_eq!((oval.s.clone(), oval.t.clone(), oval.branch), (q(1, 1), q(4, 1), Branch::Plus));
        let dense = from_line_scene(&scene.with_n(q(-3, 1)).unwrap()).unwrap();
        assert_eq!(dense.branch, Branch::Minus);
        assert_eq!(from_line_scene(&scene.with_n(q(-1, 1)).unwrap()), Err(OvalError::AbsNEqualsOne));
        // exactly one sign choice has real points
        assert!(!sample_branch(&oval, 32).is_empty());
        assert!(sample_branch(&oval.with_branch(Branch::Minus), 32).is_empty());
        assert!(!sample_branch(&dense, 32).is_empty());
        assert!(sample_branch(&dense.with_branch(Branch::Plus), 32).is_empty());
    }

    #[test]
    fn inverse_problem() {
        let o = CartesianOval::new(Point2::origin(), pq(q(1, 1), q(0, 1)), q(2, 1), q(3, 1), Branch::Plus);
        let scene = invert_to_scene(&o).unwrap();
        let c = scene.circle().unwrap();
        assert_eq!(c.center, pq(q(4, 3), q(0, 1)));
        assert_eq!(c.radius(), Some(q(2, 3)));
        assert_eq!(scene.n, q(2, 3));
        let [back, _] = from_circle_scene(&scene).unwrap();
        assert_eq!(back, o);
        let unit = CartesianOval { s: q(1, 1), ..o };
        assert_eq!(invert_to_scene(&unit), Err(OvalError::NoConsistentScene));
    }

    #[test]
    fn samples_of_circle_case() {
        let o = CartesianOval::new(Point2::new(1.0, 2.0), Point2::new(3.0, 2.0), 0.0, 1.5, Branch::Plus);
        let pts = sample_branch(&o, 64);
        assert_eq!(pts.len(), 64);
        for p in pts {
            assert!((p.dist_f64(&o.a) - 1.5).abs() < 1e-10);
        }
    }

    #[test]
    fn normal_on_axis_and_sine_ratio() {
        let [plus, _] = from_circle_scene(&circle_scene(q(1, 3), q(1, 2)).to_f64()).unwrap();
        let pts = sample_branch(&plus, 48);
        assert!(!pts.is_empty());
        for m in &pts {
            let line = normal_line(&plus, m).unwrap();
            if m.y.abs() < 1e-12 {
                assert!(line.dir.y().abs() < 1e-9);
                continue;
            }
            let ratio = sine_ratio(&plus.a, &plus.b, m, line.dir.vec());
            assert!((ratio - plus.s).abs() < 1e-9, "{ratio}");
        }
        let off = Point2::new(0.1, 0.1);
        assert_eq!(normal_line(&plus, &off), Err(OvalError::MNotOnOval));
        assert_eq!(normal_line(&plus, &plus.a), Err(OvalError::MAtFocus));
    }
}
