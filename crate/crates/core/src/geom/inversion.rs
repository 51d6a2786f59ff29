use super::{Circle2, GeomError, Point2};
use crate::scalar::Scalar;

/// The inverse `B` of `a` in `circle`: the point of the ray from `a`
/// through the center `O` with `|A - O| |B - O| = r^2`, given by
/// `B = A + (1 - r^2 / |A - O|^2) (O - A)`.
pub fn inverse_point<S: Scalar>(a: &Point2<S>, circle: &Circle2<S>) -> Result<Point2<S>, GeomError> {
    let ao = circle.center.minus(a);
    let d2 = ao.norm_sq();
    if d2.is_zero() || circle.power(a).is_zero() {
        return Err(GeomError::AOnCircleOrCenter);
    }
    let k = S::one() - circle.radius_sq.clone() / d2;
    Ok(a.offset(&ao.scale(&k)))
}

/// The circle through `a` that is tangent at `r` to the line from `o` to
/// `r`. Its center is `E = R + lambda iota(R - O)` with `lambda` fixed by
/// `|E - A| = |E - R|`.
pub fn tangent_circle_through<S: Scalar>(
    a: &Point2<S>,
    r: &Point2<S>,
    o: &Point2<S>,
) -> Result<Circle2<S>, GeomError> {
    if a == r {
        return Err(GeomError::RNotOffAxis);
    }
    let w = r.minus(o).iota();
    let ra = r.minus(a);
    let den = S::two() * w.dot(&ra);
    if den.is_zero() {
        return Err(GeomError::RNotOffAxis);
    }
    let lambda = -(ra.norm_sq() / den);
    let e = r.offset(&w.scale(&lambda));
    let radius_sq = e.dist_sq(r);
    Circle2::from_radius_sq(e, radius_sq)
}
