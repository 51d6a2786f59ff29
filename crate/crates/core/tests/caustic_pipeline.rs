use caustica::caustic::{
    build_family, cross_verify, envelope_caustic, numeric_envelope, scaled_residual, strip_spurious, CausticResult,
    Param, RayFamily,
};
use caustica::geom::{Circle2, Mirror, Point2, Radiant, Scene};
use caustica::poly::{parse_poly, squarefree_part, QPoly};
use caustica::scalar::q;
use caustica::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn flip_y(p: &QPoly) -> QPoly {
    p.substitute("y", &-QPoly::var(p.var_arc(), "y"))
}

fn random_pairs(seed: u64, count: usize) -> Vec<(Q, Q)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let den: i64 = rng.gen_range(3..=9);
            let r = q(rng.gen_range(1..den), den);
            let den: i64 = rng.gen_range(3..=9);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            (r, q(sign * rng.gen_range(1..den), den))
        })
        .collect()
}

#[test]
fn caustic_depends_on_n_squared_and_is_symmetric() {
    let (r, n) = (q(2, 5), q(3, 7));
    let plus = envelope_caustic(&r, &n).unwrap();
    let minus = envelope_caustic(&r, &-n.clone()).unwrap();
    assert_eq!(plus.caustic_poly, minus.caustic_poly);
    assert_eq!(plus.raw_resultant, minus.raw_resultant);
    assert_eq!(flip_y(&plus.caustic_poly), plus.caustic_poly);
    assert_eq!(plus.caustic_poly.total_degree(), 12);
}

#[test]
fn listed_factors_divide_at_random_parameters() {
    for (r, n) in random_pairs(7, 3) {
        let res = envelope_caustic(&r, &n).unwrap();
        assert!(res.reconstructs(), "({r}, {n})");
        for f in &res.stripped {
            if !f.base.is_constant() {
                assert!(f.multiplicity >= 1, "({r}, {n}) {}", f.label);
                assert!(res.raw_resultant.exact_div(&f.base).is_ok());
            }
        }
        assert!(!res.caustic_poly.is_constant());
    }
}

#[test]
fn stripping_a_synthetic_product() {
    let vars = ["x", "y"];
    let circle = parse_poly("x^2 - 2*x + 1 + y^2 - 1/9", &vars).unwrap();
    let y = parse_poly("y", &vars).unwrap();
    let core = parse_poly("x^3 + y^2 + 5", &vars).unwrap();
    let raw = &(&core * &circle.pow(2)) * &y.pow(3);
    let raw = raw.scale(&q(7, 1));
    let res = strip_spurious(CausticResult {
        raw_resultant: raw.clone(),
        stripped: Vec::new(),
        content: Q::from_integer(1.into()),
        caustic_poly: raw,
        caustic_multiplicity: 1,
        specialized_at: Some((q(1, 3), q(1, 2))),
    });
    assert!(res.reconstructs());
    let mult = |label: &str| res.stripped.iter().find(|f| f.label == label).unwrap().multiplicity;
    assert_eq!(mult("y"), 3);
    assert_eq!(mult("(x-1)^2+y^2-r^2"), 2);
    assert_eq!(mult("n"), 0);
    assert!(res.caustic_poly.is_scalar_multiple_of(&core));
}

#[test]
fn symbolic_family_has_all_parameters() {
    let f = build_family(&Param::Symbol, &Param::Value(q(1, 2)));
    assert_eq!(f.vars(), ["x", "y", "t", "r"]);
    assert_eq!(f.degree_in("t"), 6);
    let spec = build_family(&Param::Value(q(1, 3)), &Param::Value(q(1, 2)));
    assert!(f.evaluate(&[("r", q(1, 3))]).compact().is_scalar_multiple_of(&spec));
}

#[test]
fn numeric_points_lie_on_caustic() {
    let (r, n) = (q(2, 5), q(3, 7));
    let target = envelope_caustic(&r, &n).unwrap().caustic_poly.to_f64();
    let c = Circle2::new(Point2::new(1.0, 0.0), 0.4).unwrap();
    for nf in [3.0 / 7.0, -3.0 / 7.0] {
        let scene = Scene::new(Radiant::Finite(Point2::origin()), Mirror::Circle(c.clone()), nf).unwrap();
        let pts = numeric_envelope(&RayFamily::from_scene(&scene), 1024);
        assert!(pts.len() > 100);
        for p in pts {
            assert!(scaled_residual(&target, &p) < 1e-5, "{p:?}");
        }
    }
}

#[test]
fn reflection_pipelines_share_radical() {
    let c = Circle2::new(Point2::new(q(3, 1), q(2, 1)), q(2, 3)).unwrap();
    let scene = Scene::new(Radiant::Finite(Point2::new(q(1, 1), q(2, 1))), Mirror::Circle(c), q(-1, 1)).unwrap();
    let report = cross_verify(&scene).unwrap();
    assert!(report.unit_n && report.radical_match);
    assert!(report.passed(), "{report:?}");
    let tangents = parse_poly("x^2 - 8*y^2", &["x", "y"]).unwrap();
    let caustic = report.caustic_poly.clone();
    assert!(caustic.exact_div(&tangents.pow(3)).is_ok());
    assert!(squarefree_part(&caustic).exact_div(&tangents.pow(2)).is_err());
    assert!(!caustic.is_zero());
}

