use num_traits::One;

use super::CausticError;
use crate::geom::Point2;
use crate::poly::{content_in_vars, parse_poly, squarefree_decomposition, sylvester_resultant, var_list, PolyError, QPoly};
use crate::scalar::{Scalar, Q};

/// A scene parameter: a rational value or a free symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Value(Q),
    Symbol,
}

impl Param {
    fn poly(&self, vars: &std::sync::Arc<[String]>, name: &str) -> QPoly {
        match self {
            Param::Value(v) => QPoly::constant(vars.clone(), v.clone()),
            Param::Symbol => QPoly::var(vars.clone(), name),
        }
    }
}

/// Point of the circle of radius `r` about `(1, 0)` at parameter `t`:
/// `(1 + 2 r t / (1 + t^2), r (t^2 - 1) / (1 + t^2))`. `t = 0` is the
/// bottom point; the top point is only reached as `t -> infinity`.
pub fn circle_point(r: &Q, t: &Q) -> Point2<Q> {
    let d = Q::one() + t * t;
    Point2::new(Q::one() + Q::from_i64(2) * r * t / &d, r * (t * t - Q::one()) / d)
}

/// The family polynomial of the normalized scene `A = (0, 0)`, `O = (1, 0)`
/// in `x, y, t` (plus `r`, `n` when symbolic):
///
/// `|Y - R|^2 ((A - R) . iota(N))^2 - n^2 |A - R|^2 ((Y - R) . iota(N))^2`
///
/// with `R = R(t)` from [`circle_point`] and `N = R - O`. Denominators are
/// cleared and the content with respect to `x, y` (powers of `1 + t^2`) is
/// divided out.
pub fn build_family(r: &Param, n: &Param) -> QPoly {
    let mut names = vec!["x", "y", "t"];
    if *r == Param::Symbol {
        names.push("r");
    }
    if *n == Param::Symbol {
        names.push("n");
    }
    let vars = var_list(&names);
    let x = QPoly::var(vars.clone(), "x");
    let y = QPoly::var(vars.clone(), "y");
    let t = QPoly::var(vars.clone(), "t");
    let rp = r.poly(&vars, "r");
    let np = n.poly(&vars, "n");
    let one = QPoly::one(vars.clone());
    let two = QPoly::constant(vars.clone(), Q::from_i64(2));
    let tt = &t * &t;
    let d = &one + &tt;
    // (1 + t^2) R and (1 + t^2) N / r
    let px = &d + &(&(&two * &rp) * &t);
    let py = &rp * &(&tt - &one);
    let nx = &two * &t;
    let ny = &tt - &one;
    let (ix, iy) = (-&ny, nx);
    // A = 0, so (1 + t^2)(A - R) = -P
    let dot_a = -(&(&px * &ix) + &(&py * &iy));
    let yx = &(&d * &x) - &px;
    let yy = &(&d * &y) - &py;
    let dot_y = &(&yx * &ix) + &(&yy * &iy);
    let dist_y = &(&yx * &yx) + &(&yy * &yy);
    let dist_a = &(&px * &px) + &(&py * &py);
    let raw = &(&dist_y * &(&dot_a * &dot_a)) - &(&(&(&np * &np) * &dist_a) * &(&dot_y * &dot_y));
    let content = content_in_vars(&raw, &["x", "y"]);
    raw.exact_div(&content).expect("content divides").primitive()
}

/// One of the known spurious factors, `base^multiplicity`; `label` names the
/// unspecialized base.
#[derive(Debug, Clone, PartialEq)]
pub struct StrippedFactor {
    pub label: String,
    pub base: QPoly,
    pub multiplicity: u32,
}

/// Envelope resultant and its factor bookkeeping:
/// `raw_resultant = content * caustic_poly^caustic_multiplicity * prod base^multiplicity`.
#[derive(Debug, Clone, PartialEq)]
pub struct CausticResult {
    pub raw_resultant: QPoly,
    pub stripped: Vec<StrippedFactor>,
    pub content: Q,
    pub caustic_poly: QPoly,
    pub caustic_multiplicity: u32,
    pub specialized_at: Option<(Q, Q)>,
}

impl CausticResult {
    /// Whether the bookkeeping identity holds exactly.
    pub fn reconstructs(&self) -> bool {
        let mut acc = self.caustic_poly.pow(self.caustic_multiplicity).scale(&self.content);
        for f in &self.stripped {
            acc = &acc * &f.base.pow(f.multiplicity);
        }
        acc == self.raw_resultant
    }
}

/// `res_v(F, dF/dv)`, primitive. The stripping fields are left trivial.
pub fn envelope_resultant(f: &QPoly, v: &str) -> Result<CausticResult, CausticError> {
    if f.degree_in(v) == 0 {
        return Err(PolyError::BothConstantInV(v.to_string()).into());
    }
    let raw = sylvester_resultant(f, &f.derivative(v), v)?;
    if raw.is_zero() {
        return Err(PolyError::ZeroResultant.into());
    }
    let raw = raw.primitive().compact();
    Ok(CausticResult {
        caustic_poly: raw.clone(),
        raw_resultant: raw,
        stripped: Vec::new(),
        content: Q::one(),
        caustic_multiplicity: 1,
        specialized_at: None,
    })
}

const SPURIOUS: [(&str, &str); 6] = [
    ("n", "n"),
    ("r-1", "r - 1"),
    ("r+1", "r + 1"),
    ("y", "y"),
    ("(x-1)^2+y^2-r^2", "x^2 - 2*x + 1 + y^2 - r^2"),
    ("(x-1)^2*(r^2*n^2+n^2-1)-(y-r)^2", "x^2*r^2*n^2 - 2*x*r^2*n^2 + r^2*n^2 + x^2*n^2 - 2*x*n^2 + n^2 - x^2 + 2*x - 1 - y^2 + 2*y*r - r^2"),
];

/// Divides the raw resultant by each known spurious factor as often as it
/// goes, records the multiplicities, and splits what is left into content and
/// a primitive caustic polynomial. Factors that specialize to constants are
/// recorded with multiplicity 0 and end up in the content.
pub fn strip_spurious(result: CausticResult) -> CausticResult {
    let raw = result.raw_resultant.clone();
    let mut rest = raw.clone();
    let mut stripped = Vec::new();
    for (label, text) in SPURIOUS {
        let full = parse_poly(text, &["x", "y", "r", "n"]).expect("factor text");
        let base = match &result.specialized_at {
            Some((r, n)) => full.evaluate(&[("r", r.clone()), ("n", n.clone())]),
            None => full,
        };
        let base = base.compact();
        let mut multiplicity = 0;
        if !base.is_constant() {
            let base = base.primitive();
            while let Ok(q) = rest.exact_div(&base) {
                rest = q;
                multiplicity += 1;
            }
            let base = base.with_vars(raw.var_arc()).unwrap_or(base);
            stripped.push(StrippedFactor { label: label.to_string(), base, multiplicity });
        } else {
            let one = QPoly::one(raw.var_arc());
            stripped.push(StrippedFactor { label: label.to_string(), base: one, multiplicity: 0 });
        }
    }
    let (content, prim) = rest.content_and_primitive().expect("nonzero resultant");
    let (caustic_poly, caustic_multiplicity) = match (&result.specialized_at, prim.is_constant()) {
        (Some(_), false) => single_power(&prim),
        _ => (prim, 1),
    };
    CausticResult { raw_resultant: raw, stripped, content, caustic_poly, caustic_multiplicity, ..result }
}

/// `(g, m)` when `p = g^m` with `g` squarefree; otherwise `(p, 1)`.
fn single_power(p: &QPoly) -> (QPoly, u32) {
    match squarefree_decomposition(p).as_slice() {
        [(g, m)] if g.pow(*m) == *p => (g.clone(), *m),
        _ => (p.clone(), 1),
    }
}

/// Builds the specialized family at `(r, n)`, takes its envelope resultant
/// and strips the spurious factors.
pub fn envelope_caustic(r: &Q, n: &Q) -> Result<CausticResult, CausticError> {
    let f = build_family(&Param::Value(r.clone()), &Param::Value(n.clone()));
    let mut res = envelope_resultant(&f, "t")?;
    res.specialized_at = Some((r.clone(), n.clone()));
    Ok(strip_spurious(res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::geom::{refract, Circle2, Mirror, Radiant, Scene};
    use crate::scalar::q;

    #[test]
    fn bottom_point_at_zero() {
        assert_eq!(circle_point(&q(1, 3), &Q::zero()), Point2::new(q(1, 1), q(-1, 3)));
        let p = circle_point(&q(1, 3), &q(2, 7));
        let circle = Circle2::new(Point2::new(q(1, 1), q(0, 1)), q(1, 3)).unwrap();
        assert!(circle.power(&p).is_zero());
    }

    #[test]
    fn family_vanishes_on_refracted_lines() {
        let (r, n) = (q(1, 3), q(1, 2));
        let f = build_family(&Param::Value(r.clone()), &Param::Value(n.clone()));
        assert_eq!(f.vars(), ["x", "y", "t"]);
        let scene = Scene::new(
            Radiant::Finite(Point2::origin()),
            Mirror::Circle(Circle2::new(Point2::new(q(1, 1), q(0, 1)), r.clone()).unwrap()),
            n,
        )
        .unwrap()
        .to_f64();
        let mut hits = 0;
        // refraction exists near t = 1 and t = -1, the axis points
        for k in -10..10 {
            let t0 = q(if k < 0 { -40 - 2 * k - 1 } else { 40 + 2 * k + 1 }, 40);
            let x0 = circle_point(&r, &t0).to_f64();
            let Ok(line) = refract(&scene, &x0) else { continue };
            let ft = f.evaluate(&[("t", t0)]).to_f64();
            for lam in [-2.0, -0.5, 0.7, 3.0] {
                let p = line.point_at(&lam);
                let v = ft.eval_f64(&[p.x, p.y, 0.0]);
                assert!(v.abs() < 1e-9 * ft.coeff_norm1(), "t0 {k}: {v}");
            }
            hits += 1;
        }
        assert!(hits >= 10);
    }

    #[test]
    fn family_symmetry_under_reflection() {
        // y -> -y is t -> 1/t on the circle
        let f = build_family(&Param::Value(q(2, 5)), &Param::Value(q(3, 4)));
        let deg = f.degree_in("t") as usize;
        let mut coeffs = f.coeffs_in("t");
        coeffs.resize(deg + 1, QPoly::zero(f.var_arc()));
        coeffs.reverse();
        let minus_y = -QPoly::var(f.var_arc(), "y");
        let flipped: Vec<QPoly> = coeffs.iter().map(|c| c.substitute("y", &minus_y)).collect();
        let g = QPoly::from_coeffs_in(f.var_arc(), "t", &flipped);
        assert!(g.is_scalar_multiple_of(&f));
    }

    #[test]
    fn symbolic_family_specializes() {
        let sym = build_family(&Param::Symbol, &Param::Symbol);
        assert_eq!(sym.vars(), ["x", "y", "t", "r", "n"]);
        let (r, n) = (q(1, 3), q(-1, 2));
        let spec = build_family(&Param::Value(r.clone()), &Param::Value(n.clone()));
        let at = sym.evaluate(&[("r", r), ("n", n)]).compact();
        assert!(at.is_scalar_multiple_of(&spec.with_vars(at.var_arc()).unwrap()));
    }

    #[test]
    fn parabola_envelope() {
        let f = parse_poly("-2*t*x - y + 2*t^3 + t", &["x", "y", "t"]).unwrap();
        let res = envelope_resultant(&f, "t").unwrap();
        let cusp = parse_poly("16*x^3 - 24*x^2 + 12*x - 2 - 27*y^2", &["x", "y"]).unwrap();
        assert!(res.raw_resultant.exact_div(&cusp).unwrap().is_constant());
        let flat = parse_poly("x + y", &["x", "y", "t"]).unwrap();
        assert!(matches!(
            envelope_resultant(&flat, "t"),
            Err(CausticError::Poly(PolyError::BothConstantInV(_)))
        ));
    }
}
