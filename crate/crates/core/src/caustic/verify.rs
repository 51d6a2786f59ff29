use std::time::Instant;

use num_traits::{One, Signed};
use serde::Serialize;

use super::{envelope_caustic, evolute_eliminate, numeric_envelope, scaled_residual, CausticError, RayFamily};
use crate::geom::{normalize_scene, GeomError, Scene};
use crate::oval::{from_circle_scene, quartic_closure};
use crate::poly::{squarefree_part, to_text, QPoly};
use crate::scalar::{format_rational, Q};

/// Adjacent-ray samples per validity interval in [`cross_verify`].
pub const ENVELOPE_SAMPLES: usize = 1024;
/// Bound on the scaled residual of numeric envelope points.
pub const ENVELOPE_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub label: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub n: f64,
    pub points: usize,
    pub max_residual: f64,
}

/// Outcome of [`cross_verify`].
#[derive(Debug, Clone, Serialize)]
pub struct CrossReport {
    pub r: String,
    pub n: String,
    pub raw_degree: u32,
    pub raw_terms: usize,
    pub stripped: Vec<FactorReport>,
    pub content: String,
    pub caustic_multiplicity: u32,
    pub reconstructs: bool,
    pub caustic_degree: u32,
    pub caustic_terms: usize,
    pub evolute_degree: u32,
    pub evolute_terms: usize,
    /// Primitive parts agree.
    pub exact_match: bool,
    /// Squarefree parts agree; the criterion used when `|n| = 1`.
    pub radical_match: bool,
    pub unit_n: bool,
    pub numeric: Vec<NumericReport>,
    pub timings_ms: Timings,
    pub caustic: String,
    #[serde(skip)]
    pub caustic_poly: QPoly,
    #[serde(skip)]
    pub raw_resultant: QPoly,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub envelope: u128,
    pub evolute: u128,
    pub numeric: u128,
}

impl CrossReport {
    pub fn numeric_ok(&self) -> bool {
        self.numeric.iter().all(|r| r.max_residual < ENVELOPE_TOL)
    }

    pub fn passed(&self) -> bool {
        (self.exact_match || self.unit_n && self.radical_match) && self.reconstructs && self.numeric_ok()
    }
}

/// Computes the caustic of a rational circle scene twice, from the envelope
/// resultant of the ray family and from the evolute of the oval quartic, in
/// the normalized frame `A = (0, 0)`, `O = (1, 0)`; then checks numeric
/// envelope points of the `n` and `-n` ray families against the result.
///
/// For `|n| = 1` the oval quartic is singular and agreement of the
/// squarefree parts is accepted.
pub fn cross_verify(scene: &Scene<Q>) -> Result<CrossReport, CausticError> {
    let (normal, _) = normalize_scene(scene)?;
    let r = normal.circle()?.radius().ok_or(GeomError::NotRepresentable)?;
    let n = normal.n.clone();

    let clock = Instant::now();
    let env = envelope_caustic(&r, &n)?;
    let t_env = clock.elapsed().as_millis();

    let clock = Instant::now();
    let [oval, _] = from_circle_scene(&normal)?;
    let quartic = quartic_closure(&oval);
    let evolute = evolute_eliminate(quartic.poly())?;
    let t_evo = clock.elapsed().as_millis();

    let caustic = env.caustic_poly.primitive();
    let evolute = evolute.with_vars(caustic.var_arc())?;
    let exact_match = caustic == evolute;
    let radical_match = exact_match || squarefree_part(&caustic) == squarefree_part(&evolute);
    let unit_n = n.abs() == Q::one();
    if !(exact_match || unit_n && radical_match) {
        return Err(CausticError::PipelineMismatch { envelope: Box::new(caustic), evolute: Box::new(evolute) });
    }

    let clock = Instant::now();
    let target = caustic.to_f64();
    let mut numeric = Vec::new();
    for sign in [Q::one(), -Q::one()] {
        let fam = RayFamily::from_scene(&normal.with_n(n.clone() * sign)?);
        let pts = numeric_envelope(&fam, ENVELOPE_SAMPLES);
        let max_residual = pts.iter().map(|p| scaled_residual(&target, p)).fold(0.0, f64::max);
        numeric.push(NumericReport { n: fam.scene().expect("scene family").n, points: pts.len(), max_residual });
    }
    let t_num = clock.elapsed().as_millis();

    Ok(CrossReport {
        r: format_rational(&r),
        n: format_rational(&n),
        raw_degree: env.raw_resultant.total_degree(),
        raw_terms: env.raw_resultant.len(),
        stripped: env
            .stripped
            .iter()
            .map(|f| FactorReport { label: f.label.clone(), multiplicity: f.multiplicity })
            .collect(),
        content: format_rational(&env.content),
        caustic_multiplicity: env.caustic_multiplicity,
        reconstructs: env.reconstructs(),
        caustic_degree: caustic.total_degree(),
        caustic_terms: caustic.len(),
        evolute_degree: evolute.total_degree(),
        evolute_terms: evolute.len(),
        exact_match,
        radical_match,
        unit_n,
        numeric,
        timings_ms: Timings { envelope: t_env, evolute: t_evo, numeric: t_num },
        caustic: to_text(&caustic),
        caustic_poly: caustic,
        raw_resultant: env.raw_resultant,
    })
}
