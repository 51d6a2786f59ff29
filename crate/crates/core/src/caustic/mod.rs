//! Caustics by refraction at a circle: the envelope of the refracted rays,
//! computed symbolically as a resultant, as the evolute of the Cartesian
//! ovals, and numerically from adjacent rays.

mod evolute;
mod family;
mod rays;
mod verify;

pub use evolute::{
    curvature_centers, evolute_eliminate, implicit_curvature_center, implicit_curvature_centers, implicit_points,
    REFEREE_POINTS, REFEREE_TOL,
};
pub use family::{
    build_family, circle_point, envelope_caustic, envelope_resultant, strip_spurious, CausticResult, Param,
    StrippedFactor,
};
pub use rays::{mirror_point, numeric_envelope, snell_residual, RayFamily, MAX_CONDITION};
pub use verify::{cross_verify, CrossReport, FactorReport, NumericReport, Timings, ENVELOPE_SAMPLES, ENVELOPE_TOL};

use crate::geom::{GeomError, Point2};
use crate::oval::OvalError;
use crate::poly::{MPoly, PolyError, QPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CausticError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Oval(#[from] OvalError),
    #[error("no eliminant factor vanishes on the numeric curvature centers")]
    EliminationCollapse,
    #[error("envelope and evolute pipelines disagree")]
    PipelineMismatch { envelope: Box<QPoly>, evolute: Box<QPoly> },
}

/// `|E(p)| / (|E|_1 max(1, |p|_inf)^deg E)`.
pub fn scaled_residual(e: &MPoly<f64>, p: &Point2<f64>) -> f64 {
    let scale = p.x.abs().max(p.y.abs()).max(1.0);
    e.eval_f64(&[p.x, p.y]).abs() / (e.coeff_norm1() * scale.powi(e.total_degree() as i32))
}
