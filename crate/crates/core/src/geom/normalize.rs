use super::{Circle2, Dir2, GeomError, Line2, Mirror, Point2, Radiant, Scene, Vec2};
use crate::scalar::Scalar;

/// Orientation-preserving similarity `p -> conj(w) (p - origin) / |w|^2`
/// in complex notation: it sends `origin` to `(0, 0)` and `origin + w` to
/// `(1, 0)`. Rational inputs give rational images.
#[derive(Clone, Debug, PartialEq)]
pub struct Similarity<S> {
    pub origin: Point2<S>,
    pub w: Vec2<S>,
}

impl<S: Scalar> Similarity<S> {
    pub fn identity() -> Self {
        Similarity { origin: Point2::origin(), w: Vec2::new(S::one(), S::zero()) }
    }

    /// Squared scale factor `1 / |w|^2`.
    pub fn scale_sq(&self) -> S {
        S::one() / self.w.norm_sq()
    }

    pub fn apply_vec(&self, v: &Vec2<S>) -> Vec2<S> {
        let k = self.w.norm_sq();
        Vec2::new(self.w.dot(v) / k.clone(), self.w.cross(v) / k)
    }

    pub fn apply(&self, p: &Point2<S>) -> Point2<S> {
        let v = self.apply_vec(&p.minus(&self.origin));
        Point2::new(v.x, v.y)
    }

    pub fn invert_vec(&self, v: &Vec2<S>) -> Vec2<S> {
        let w = &self.w;
        Vec2::new(
            w.x.clone() * v.x.clone() - w.y.clone() * v.y.clone(),
            w.y.clone() * v.x.clone() + w.x.clone() * v.y.clone(),
        )
    }

    pub fn invert(&self, p: &Point2<S>) -> Point2<S> {
        self.origin.offset(&self.invert_vec(&p.as_vec()))
    }

    fn map_scene(&self, scene: &Scene<S>, fwd: bool) -> Scene<S> {
        let pt = |p: &Point2<S>| if fwd { self.apply(p) } else { self.invert(p) };
        let dir = |d: &Dir2<S>| {
            let v = if fwd { self.apply_vec(d.vec()) } else { self.invert_vec(d.vec()) };
            Dir2::new(v).expect("similarities are injective")
        };
        let k = if fwd { self.scale_sq() } else { self.w.norm_sq() };
        let radiant = match &scene.radiant {
            Radiant::Finite(a) => Radiant::Finite(pt(a)),
            Radiant::AtInfinity(d) => Radiant::AtInfinity(dir(d)),
        };
        let mirror = match &scene.mirror {
            Mirror::Circle(c) => Mirror::Circle(Circle2 { center: pt(&c.center), radius_sq: c.radius_sq.clone() * k }),
            Mirror::Line(l) => Mirror::Line(Line2::new(pt(&l.base), dir(&l.dir))),
        };
        Scene { radiant, mirror, n: scene.n.clone() }
    }

    pub fn apply_scene(&self, scene: &Scene<S>) -> Scene<S> {
        self.map_scene(scene, true)
    }

    pub fn invert_scene(&self, scene: &Scene<S>) -> Scene<S> {
        self.map_scene(scene, false)
    }
}

/// Moves a finite-radiant circle scene to `A = (0, 0)`, `O = (1, 0)`.
pub fn normalize_scene<S: Scalar>(scene: &Scene<S>) -> Result<(Scene<S>, Similarity<S>), GeomError> {
    let a = scene.finite_radiant()?;
    let c = scene.circle()?;
    let w = c.center.minus(a);
    if w.is_zero() {
        return Err(GeomError::AEqualsO);
    }
    let sim = Similarity { origin: a.clone(), w };
    Ok((sim.apply_scene(scene), sim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    fn scene(a: Point2<Q>, o: Point2<Q>, r: Q) -> Scene<Q> {
        Scene::new(Radiant::Finite(a), Mirror::Circle(Circle2::new(o, r).unwrap()), q(1, 2)).unwrap()
    }

    #[test]
    fn normalized_scene_is_fixed() {
        let s = scene(Point2::origin(), Point2::new(q(1, 1), q(0, 1)), q(1, 3));
        let (t, sim) = normalize_scene(&s).unwrap();
        assert_eq!(t, s);
        assert_eq!(sim, Similarity::identity());
    }

    #[test]
    fn rotated_and_scaled() {
        let s = scene(Point2::new(q(1, 1), q(1, 1)), Point2::new(q(1, 1), q(3, 1)), q(1, 1));
        let (t, sim) = normalize_scene(&s).unwrap();
        let c = t.circle().unwrap();
        assert_eq!(c.center, Point2::new(q(1, 1), q(0, 1)));
        assert_eq!(c.radius(), Some(q(1, 2)));
        assert_eq!(t.finite_radiant().unwrap(), &Point2::origin());
        assert_eq!(sim.invert_scene(&t), s);
    }

    #[test]
    fn radiant_at_center_rejected() {
        let mut s = scene(Point2::origin(), Point2::new(q(1, 1), q(0, 1)), q(1, 3));
        s.radiant = Radiant::Finite(Point2::new(q(1, 1), q(0, 1)));
        assert_eq!(normalize_scene(&s).unwrap_err(), GeomError::AEqualsO);
    }
}
