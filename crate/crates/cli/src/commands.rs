use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use caustica::caustic::{
    build_family, cross_verify, envelope_caustic, envelope_resultant, mirror_point, numeric_envelope,
    scaled_residual, snell_residual, strip_spurious, CausticError, CrossReport, Param, RayFamily, ENVELOPE_SAMPLES,
    ENVELOPE_TOL,
};
use caustica::geom::{
    inverse_point, normalize_scene, refract, tangent_circle_through, GeomError, Line2, Mirror, Point2, Radiant, Scene,
};
use caustica::oval::{
    from_circle_scene, from_line_scene, normal_line, quartic_closure, sample_branch, sine_ratio, CartesianOval,
    OvalError, OvalQuartic,
};
use caustica::poly::{to_json, to_text};
use caustica::scalar::{format_rational, Scalar};
use caustica::Q;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::{ConfigError, SceneConfig};
use crate::render::{render_layers, render_svg, Layers};

/// Exit status for failed checks.
pub const EXIT_CHECKS_FAILED: i32 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for scenes a command cannot handle.
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Oval(#[from] OvalError),
    #[error(transparent)]
    Caustic(#[from] CausticError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Io { .. } | CliError::Usage(_) => EXIT_INPUT,
            _ => EXIT_UNSUPPORTED,
        }
    }
}

/// Options shared by all subcommands.
#[derive(Clone, Debug)]
pub struct Options {
    pub scene: PathBuf,
    pub out: PathBuf,
    pub specialize: Option<(Q, Q)>,
    pub symbolic: bool,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
}

pub fn load_config(path: &Path) -> Result<SceneConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    SceneConfig::parse(&text).map_err(|source| CliError::Config { path: path.into(), source })
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(path)
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<PathBuf, CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    write(dir, name, &text)
}

/// `r=<p/q>,n=<p/q>`.
pub fn parse_specialize(text: &str) -> Result<(Q, Q), String> {
    let (mut r, mut n) = (None, None);
    for part in text.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{part}`"))?;
        let v = caustica::scalar::parse_rational(value).ok_or_else(|| format!("invalid rational `{value}`"))?;
        match key.trim() {
            "r" => r = Some(v),
            "n" => n = Some(v),
            other => return Err(format!("unknown parameter `{other}`")),
        }
    }
    match (r, n) {
        (Some(r), Some(n)) => Ok((r, n)),
        _ => Err("both r and n are required".into()),
    }
}

fn point_json(p: &Point2<Q>) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

fn oval_json(o: &CartesianOval<Q>, quartic: &OvalQuartic) -> serde_json::Value {
    json!({
        "a": point_json(&o.a),
        "b": point_json(&o.b),
        "s": format_rational(&o.s),
        "t": format_rational(&o.t),
        "branch": o.branch,
        "degree": quartic.degree(),
        "quartic": to_json(quartic.poly()),
    })
}

/// Writes the closing quartic of the scene's ovals as `ovals.poly`, its
/// parameters as `ovals.json` and a figure as `ovals.svg`.
pub fn cmd_ovals(opts: &Options) -> Result<i32, CliError> {
    let cfg = load_config(&opts.scene)?;
    let scene = cfg.scene()?;
    let ovals: Vec<CartesianOval<Q>> = match scene.mirror {
        Mirror::Circle(_) => from_circle_scene(&scene)?.to_vec(),
        Mirror::Line(_) => vec![from_line_scene(&scene)?],
    };
    let quartic = quartic_closure(&ovals[0]);
    let poly = write(&opts.out, "ovals.poly", &format!("{}\n", to_text(quartic.poly())))?;
    let params: Vec<_> = ovals.iter().map(|o| oval_json(o, &quartic)).collect();
    write_json(&opts.out, "ovals.json", &params)?;
    let layers = Layers { rays: false, caustic: false, ovals: true };
    write(&opts.out, "ovals.svg", &render_layers(&scene, &cfg.render, layers))?;
    println!("degree {} quartic written to {}", quartic.degree(), poly.display());
    Ok(0)
}

pub fn cmd_render(opts: &Options) -> Result<i32, CliError> {
    let cfg = load_config(&opts.scene)?;
    let mut spec = cfg.render.clone();
    if let Some(k) = opts.samples {
        spec.samples = k;
    }
    let path = write(&opts.out, "render.svg", &render_svg(&cfg.scene()?, &spec))?;
    println!("{}", path.display());
    Ok(0)
}

/// A reference run of the full symbolic elimination took this long.
pub const SYMBOLIC_WARNING: &str = "warning: --symbolic eliminates t with r and n left symbolic; \
     a reference run of this elimination took 2 hours, 19 minutes and 26 seconds";

/// The caustic of a circle scene, in the normalized frame `A = (0, 0)`,
/// `O = (1, 0)`. Exits 0 only when the envelope and evolute computations agree
/// and the numeric envelope points lie on the result.
pub fn cmd_caustic(opts: &Options) -> Result<i32, CliError> {
    let cfg = load_config(&opts.scene)?;
    if opts.symbolic {
        eprintln!("{SYMBOLIC_WARNING}");
    }
    let scene = match &opts.specialize {
        Some((r, n)) => SceneConfig::normalized(r.clone(), n.clone()).scene()?,
        None => cfg.scene()?,
    };
    scene.circle()?;
    scene.finite_radiant()?;
    let report = match cross_verify(&scene) {
        Ok(report) => report,
        Err(CausticError::PipelineMismatch { envelope, evolute }) => {
            write(&opts.out, "envelope.poly", &format!("{}\n", to_text(&envelope)))?;
            write(&opts.out, "evolute.poly", &format!("{}\n", to_text(&evolute)))?;
            eprintln!("envelope and evolute polynomials disagree; both written to {}", opts.out.display());
            return Ok(EXIT_CHECKS_FAILED);
        }
        Err(e) => return Err(e.into()),
    };
    write(&opts.out, "raw.poly", &format!("{}\n", to_text(&report.raw_resultant)))?;
    write(&opts.out, "caustic.poly", &format!("{}\n", to_text(&report.caustic_poly)))?;
    let mut doc = json!({
        "frame": "A = (0, 0), O = (1, 0)",
        "passed": report.passed(),
        "report": report,
        "caustic_json": to_json(&report.caustic_poly),
    });
    if opts.symbolic {
        doc["symbolic"] = symbolic_run(&report, &opts.out)?;
    }
    write_json(&opts.out, "caustic.json", &doc)?;
    print_summary(&report);
    Ok(if report.passed() { 0 } else { EXIT_CHECKS_FAILED })
}

fn print_summary(report: &CrossReport) {
    println!(
        "r = {}, n = {}: caustic degree {} ({} terms), evolute degree {} ({} terms), {}",
        report.r,
        report.n,
        report.caustic_degree,
        report.caustic_terms,
        report.evolute_degree,
        report.evolute_terms,
        if report.exact_match { "exact match" } else if report.radical_match { "radical match" } else { "MISMATCH" }
    );
    for f in &report.stripped {
        println!("  {}^{}", f.label, f.multiplicity);
    }
    for nr in &report.numeric {
        println!("  n = {}: {} numeric points, max scaled residual {:.3e}", nr.n, nr.points, nr.max_residual);
    }
}

fn symbolic_run(report: &CrossReport, out: &Path) -> Result<serde_json::Value, CliError> {
    let clock = Instant::now();
    let f = build_family(&Param::Symbol, &Param::Symbol);
    let res = strip_spurious(envelope_resultant(&f, "t")?);
    let elapsed = clock.elapsed().as_secs_f64();
    write(out, "symbolic_raw.poly", &format!("{}\n", to_text(&res.raw_resultant)))?;
    let r = caustica::scalar::parse_rational(&report.r).expect("report rational");
    let n = caustica::scalar::parse_rational(&report.n).expect("report rational");
    let spec = res.raw_resultant.evaluate(&[("r", r), ("n", n)]).compact();
    let agrees = spec.is_scalar_multiple_of(&report.raw_resultant.with_vars(spec.var_arc()).unwrap_or(spec.clone()));
    Ok(json!({
        "seconds": elapsed,
        "terms": res.raw_resultant.len(),
        "degree": res.raw_resultant.total_degree(),
        "specialization_matches": agrees,
    }))
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// `None` when skipped.
    pub passed: Option<bool>,
    pub count: usize,
    pub worst: f64,
    pub bound: f64,
    pub note: String,
}

impl Check {
    fn measured(name: &'static str, count: usize, worst: f64, bound: f64) -> Check {
        Check { name, passed: Some(count > 0 && worst <= bound), count, worst, bound, note: String::new() }
    }

    fn skipped(name: &'static str, note: impl Into<String>) -> Check {
        Check { name, passed: None, count: 0, worst: 0.0, bound: 0.0, note: note.into() }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub degenerate: Option<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Parameters spread over the validity intervals of `fam`, about `count` in
/// total, at interval midpoints.
fn spread(fam: &RayFamily, count: usize) -> Vec<f64> {
    let total: f64 = fam.validity().iter().map(|(a, b)| b - a).sum();
    let mut out = Vec::new();
    for &(a, b) in fam.validity() {
        let m = ((count as f64) * (b - a) / total).ceil() as usize;
        out.extend((0..m).map(|k| a + (b - a) * (k as f64 + 0.5) / m as f64));
    }
    out
}

fn snell_check(scene: &Scene<f64>, count: usize, tol: f64) -> Check {
    let (mut n_rays, mut worst) = (0, 0.0f64);
    for n in [scene.n.abs(), -scene.n.abs()] {
        let s = scene.with_n(n).expect("nonzero n");
        let fam = RayFamily::from_scene(&s);
        for theta in spread(&fam, count) {
            let x = mirror_point(&s.mirror, theta);
            if let Some(res) = fam.line(theta).and_then(|l| snell_residual(&s, &x, &l)) {
                worst = worst.max(res);
                n_rays += 1;
            }
        }
    }
    Check::measured("snell", n_rays, worst, tol)
}

/// Rational point of the circle at stereographic parameter `u`.
fn circle_point_q(center: &Point2<Q>, r: &Q, u: &Q) -> Point2<Q> {
    let d = Q::one() + u * u;
    Point2::new(&center.x + r * (Q::one() - u * u) / &d, &center.y + r * Q::from_i64(2) * u / d)
}

fn tangent_circle_check(scene: &Scene<Q>, seed: u64) -> Check {
    const NAME: &str = "inverse_on_tangent_circle";
    let (Ok(a), Ok(circle)) = (scene.finite_radiant(), scene.circle()) else {
        return Check::skipped(NAME, "needs a finite radiant and a circle");
    };
    let Some(r) = circle.radius() else {
        return Check::skipped(NAME, "radius is not rational");
    };
    let Ok(b) = inverse_point(a, circle) else {
        return Check::skipped(NAME, "radiant at the center");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut count, mut failures) = (0, 0);
    while count < 32 {
        let u = caustica::scalar::q(rng.gen_range(-200..=200), rng.gen_range(1..=50));
        let pt = circle_point_q(&circle.center, &r, &u);
        let Ok(c) = tangent_circle_through(a, &pt, &circle.center) else { continue };
        count += 1;
        if !c.power(&b).is_zero() {
            failures += 1;
        }
    }
    Check { passed: Some(failures == 0), ..Check::measured(NAME, count, failures as f64, 0.0) }
}

fn scene_ovals(scene: &Scene<f64>) -> Result<Vec<CartesianOval<f64>>, OvalError> {
    Ok(match scene.mirror {
        Mirror::Circle(_) => from_circle_scene(scene)?.to_vec(),
        Mirror::Line(_) => vec![from_line_scene(scene)?],
    })
}

fn sine_ratio_check(ovals: &[CartesianOval<f64>], tol: f64) -> Check {
    let (mut count, mut worst) = (0, 0.0f64);
    for oval in ovals {
        for m in sample_branch(oval, 64) {
            let Ok(line) = normal_line(oval, &m) else { continue };
            let d = line.dir.vec();
            let sin = |p: &Point2<f64>| p.minus(&m).cross(d).abs() / p.dist_f64(&m);
            if sin(&oval.a) < 1e-6 || sin(&oval.b) < 1e-6 {
                continue;
            }
            worst = worst.max((sine_ratio(&oval.a, &oval.b, &m, d) - oval.s.abs()).abs());
            count += 1;
        }
    }
    Check::measured("sine_ratio", count, worst, tol)
}

fn mirror_hits(mirror: &Mirror<f64>, line: &Line2<f64>) -> Vec<Point2<f64>> {
    match mirror {
        Mirror::Circle(c) => c.intersect_line(line),
        Mirror::Line(l) => {
            let sin = l.dir.normalized().vec().cross(line.dir.normalized().vec());
            if sin.abs() < 1e-9 {
                return Vec::new();
            }
            l.intersect(line).into_iter().collect()
        }
    }
}

fn normals_check(scene: &Scene<f64>, ovals: &[CartesianOval<f64>], tol: f64) -> Check {
    let (mut count, mut misses) = (0, 0);
    for oval in ovals {
        for m in sample_branch(oval, 32) {
            let Ok(normal) = normal_line(oval, &m) else { continue };
            let hits = mirror_hits(&scene.mirror, &normal);
            // a normal parallel to a line mirror is the ray from its point at infinity
            if hits.is_empty() && matches!(scene.mirror, Mirror::Line(_)) {
                continue;
            }
            count += 1;
            let hit = hits.into_iter().any(|x| {
                [scene.n, -scene.n].iter().any(|&n| {
                    let s = scene.with_n(n).expect("nonzero n");
                    refract(&s, &x).is_ok_and(|ray| ray.coincides(&normal, tol))
                })
            });
            if !hit {
                misses += 1;
            }
        }
    }
    Check { passed: Some(count > 0 && misses == 0), ..Check::measured("normals_are_rays", count, misses as f64, 0.0) }
}

fn envelope_check(scene: &Scene<Q>, tol: f64) -> Result<Check, CliError> {
    const NAME: &str = "numeric_envelope";
    if scene.circle().is_err() || scene.finite_radiant().is_err() {
        return Ok(Check::skipped(NAME, "needs a finite radiant and a circle"));
    }
    let (normal, _) = normalize_scene(scene)?;
    let Some(r) = normal.circle()?.radius() else {
        return Ok(Check::skipped(NAME, "normalized radius is not rational"));
    };
    let caustic = envelope_caustic(&r, &normal.n)?.caustic_poly.to_f64();
    let nf = normal.to_f64();
    let (mut count, mut worst) = (0, 0.0f64);
    for n in [nf.n, -nf.n] {
        for p in numeric_envelope(&RayFamily::from_scene(&nf.with_n(n)?), ENVELOPE_SAMPLES) {
            worst = worst.max(scaled_residual(&caustic, &p));
            count += 1;
        }
    }
    Ok(Check::measured(NAME, count, worst, tol))
}

pub fn verify_scene(scene: &Scene<Q>, samples: usize, tol: Option<f64>, seed: u64) -> Result<VerifyReport, CliError> {
    let sf = scene.to_f64();
    let mut checks = vec![snell_check(&sf, samples, tol.unwrap_or(1e-9)), tangent_circle_check(scene, seed)];
    let finite = matches!(scene.radiant, Radiant::Finite(_));
    match scene_ovals(&sf) {
        Ok(ovals) if finite => {
            checks.push(sine_ratio_check(&ovals, tol.unwrap_or(1e-9)));
            checks.push(normals_check(&sf, &ovals, tol.unwrap_or(1e-7)));
        }
        Ok(_) => {}
        Err(e) => {
            checks.push(Check::skipped("sine_ratio", e.to_string()));
            checks.push(Check::skipped("normals_are_rays", e.to_string()));
        }
    }
    checks.push(envelope_check(scene, tol.unwrap_or(ENVELOPE_TOL))?);
    let degenerate = (scene.n.abs() == Q::one()).then(|| {
        "|n| = 1: reflection; the oval quartic is singular and caustic factors may repeat".to_string()
    });
    let passed = checks.iter().all(|c| c.passed != Some(false));
    Ok(VerifyReport { degenerate, checks, passed })
}

pub fn cmd_verify(opts: &Options) -> Result<i32, CliError> {
    let cfg = load_config(&opts.scene)?;
    let report = verify_scene(&cfg.scene()?, opts.samples.unwrap_or(256), opts.tol, opts.seed)?;
    let path = write_json(&opts.out, "verify.json", &report)?;
    for c in &report.checks {
        let status = match c.passed {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "skip",
        };
        println!("{status:4} {:26} n={:<5} worst={:.3e} bound={:.1e} {}", c.name, c.count, c.worst, c.bound, c.note);
    }
    if let Some(d) = &report.degenerate {
        println!("degenerate: {d}");
    }
    println!("{}", path.display());
    Ok(if report.passed { 0 } else { EXIT_CHECKS_FAILED })
}
