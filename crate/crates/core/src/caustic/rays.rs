use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use crate::geom::{refract, refraction_conic, Dir2, Line2, Mirror, Point2, Scene};
use crate::scalar::Scalar;

type Sampler = Arc<dyn Fn(f64) -> Option<Line2<f64>> + Send + Sync>;

/// A one-parameter family of lines `theta -> line`, with the parameter
/// intervals on which a line exists.
#[derive(Clone)]
pub struct RayFamily {
    scene: Option<Scene<f64>>,
    sampler: Sampler,
    validity: Vec<(f64, f64)>,
}

impl std::fmt::Debug for RayFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RayFamily").field("scene", &self.scene).field("validity", &self.validity).finish()
    }
}

const VALIDITY_GRID: usize = 4096;

/// Mirror point at parameter `theta`: `O + r (cos, sin)` on a circle, and
/// `base + tan((theta - pi) / 2) dir` on a line.
pub fn mirror_point(mirror: &Mirror<f64>, theta: f64) -> Point2<f64> {
    match mirror {
        Mirror::Circle(c) => c.point_at_angle(theta),
        Mirror::Line(l) => l.point_at(&((theta - PI) / 2.0).tan()),
    }
}

impl RayFamily {
    /// The refracted rays of `scene` over the mirror parameter `theta`.
    pub fn from_scene<S: Scalar>(scene: &Scene<S>) -> Self {
        let scene = scene.to_f64();
        let domain = match scene.mirror {
            Mirror::Circle(_) => (0.0, TAU),
            Mirror::Line(_) => (1e-6, TAU - 1e-6),
        };
        let s = scene.clone();
        let sampler: Sampler = Arc::new(move |theta| refract(&s, &mirror_point(&s.mirror, theta)).ok());
        let validity = validity_intervals(&sampler, domain);
        RayFamily { scene: Some(scene), sampler, validity }
    }

    /// A family given by an arbitrary sampler over `domain`.
    pub fn from_fn(domain: (f64, f64), f: impl Fn(f64) -> Option<Line2<f64>> + Send + Sync + 'static) -> Self {
        let sampler: Sampler = Arc::new(f);
        let validity = validity_intervals(&sampler, domain);
        RayFamily { scene: None, sampler, validity }
    }

    pub fn line(&self, theta: f64) -> Option<Line2<f64>> {
        (self.sampler)(theta)
    }

    pub fn scene(&self) -> Option<&Scene<f64>> {
        self.scene.as_ref()
    }

    /// Maximal parameter intervals on which lines exist, to grid resolution
    /// with endpoints refined by bisection.
    pub fn validity(&self) -> &[(f64, f64)] {
        &self.validity
    }
}

fn validity_intervals(sampler: &Sampler, (lo, hi): (f64, f64)) -> Vec<(f64, f64)> {
    let at = |i: usize| lo + (hi - lo) * i as f64 / VALIDITY_GRID as f64;
    let valid = |theta: f64| sampler(theta).is_some();
    // boundary between an invalid `bad` and a valid `good` parameter
    let refine = |mut bad: f64, mut good: f64| {
        for _ in 0..60 {
            let mid = 0.5 * (bad + good);
            if valid(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        good
    };
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut prev_valid = false;
    for i in 0..=VALIDITY_GRID {
        let theta = if i == VALIDITY_GRID { hi - (hi - lo) * 1e-12 } else { at(i) };
        let v = valid(theta);
        match (prev_valid, v) {
            (false, true) => start = Some(if i == 0 { theta } else { refine(at(i - 1), theta) }),
            (true, false) => out.push((start.take().expect("open interval"), refine(theta, at(i - 1)))),
            _ => {}
        }
        prev_valid = v;
    }
    if let Some(s) = start {
        out.push((s, hi - (hi - lo) * 1e-12));
    }
    out
}

/// Adjacent-ray intersections rejected above this condition number.
pub const MAX_CONDITION: f64 = 1e8;

/// Intersections of consecutive lines at spacing `width / count` inside each
/// validity interval. They converge to the envelope as the spacing shrinks.
pub fn numeric_envelope(family: &RayFamily, count: usize) -> Vec<Point2<f64>> {
    let mut out = Vec::new();
    if count < 2 {
        return out;
    }
    for &(a, b) in family.validity() {
        let delta = (b - a) / count as f64;
        let mut prev: Option<Line2<f64>> = None;
        for k in 0..count {
            let line = family.line(a + (k as f64 + 0.5) * delta);
            if let (Some(p), Some(l)) = (&prev, &line) {
                if let Some(x) = intersect_conditioned(p, l) {
                    out.push(x);
                }
            }
            prev = line;
        }
    }
    out
}

fn intersect_conditioned(a: &Line2<f64>, b: &Line2<f64>) -> Option<Point2<f64>> {
    let (da, db) = (a.dir.normalized(), b.dir.normalized());
    let sin = da.vec().cross(db.vec()).abs();
    if sin == 0.0 || 1.0 / sin > MAX_CONDITION {
        return None;
    }
    Line2::new(a.base.clone(), da).intersect(&Line2::new(b.base.clone(), db))
}

/// Relative residual of `line` (through mirror point `x`) in the squared
/// Snell relation of `scene`.
pub fn snell_residual(scene: &Scene<f64>, x: &Point2<f64>, line: &Line2<f64>) -> Option<f64> {
    let normal = Dir2::new(scene.mirror.gradient(x)).ok()?;
    let conic = refraction_conic(scene, x, &normal).ok()?;
    Some(conic.relative_residual(line.dir.vec()))
}
