use super::CausticError;
use crate::geom::Point2;
use crate::oval::{sample_branch, CartesianOval};
use crate::poly::{eliminate_two_raw, gcd, squarefree_decomposition, var_list, MPoly, Monomial, PolyError, QPoly};
use crate::scalar::Scalar;

/// Number of curvature centers used to referee candidate factors.
pub const REFEREE_POINTS: usize = 20;
/// Distance-like residual `|E| / |grad E|` below which a center is on `E`.
pub const REFEREE_TOL: f64 = 1e-6;

/// Copies a curve in `(x, y)` or `(x0, y0)` into the variables
/// `x0, y0, x, y`, as `x0, y0`.
fn as_curve_in_x0y0(g: &QPoly) -> Result<QPoly, PolyError> {
    let (ix, iy) = match (g.var_index("x0"), g.var_index("y0")) {
        (Some(a), Some(b)) => (Some(a), Some(b)),
        _ => (g.var_index("x"), g.var_index("y")),
    };
    let vars = var_list(&["x0", "y0", "x", "y"]);
    let mut terms = Vec::with_capacity(g.len());
    for (m, c) in g.terms() {
        let e = m.exps();
        for (k, &d) in e.iter().enumerate() {
            if d > 0 && Some(k) != ix && Some(k) != iy {
                return Err(PolyError::UnknownVariable(g.vars()[k].clone()));
            }
        }
        let get = |i: Option<usize>| i.map_or(0, |i| e[i]);
        terms.push((Monomial::new(vec![get(ix), get(iy), 0, 0]), c.clone()));
    }
    Ok(MPoly::from_terms(vars, terms))
}

/// The evolute of the plane curve `g = 0` (variables `x, y` or `x0, y0`) as a
/// primitive polynomial in `x, y`.
///
/// With `G = g(x0, y0)` and `H = (x0 - x) G_y0 - (y0 - y) G_x0` (the point
/// `(x, y)` lies on the normal at `(x0, y0)`), the centers of curvature solve
/// `G = H = J = 0` for `J` the Jacobian determinant of `(G, H)` in
/// `(x0, y0)`. Both elimination orders are run; the squarefree factors of
/// their gcd that vanish on numeric curvature centers of `g` are kept.
pub fn evolute_eliminate(g: &QPoly) -> Result<QPoly, CausticError> {
    let big_g = as_curve_in_x0y0(g)?;
    let gx = big_g.derivative("x0");
    let gy = big_g.derivative("y0");
    let x0 = QPoly::var(big_g.var_arc(), "x0");
    let y0 = QPoly::var(big_g.var_arc(), "y0");
    let x = QPoly::var(big_g.var_arc(), "x");
    let y = QPoly::var(big_g.var_arc(), "y");
    let h = &(&(&x0 - &x) * &gy) - &(&(&y0 - &y) * &gx);
    let j = &(&gx * &h.derivative("y0")) - &(&gy * &h.derivative("x0"));
    let (first, second) = rayon::join(
        || eliminate_two_raw(&big_g, &h, &j, "y0", "x0"),
        || eliminate_two_raw(&big_g, &h, &j, "x0", "y0"),
    );
    let combined = match (first, second) {
        (Ok(a), Ok(b)) => gcd(&a, &b),
        (Ok(a), Err(_)) | (Err(_), Ok(a)) => a,
        (Err(e), Err(_)) => return Err(e.into()),
    };
    let xy = var_list(&["x", "y"]);
    let combined = combined.compact().with_vars(xy.clone())?;
    let centers: Vec<Point2<f64>> = implicit_curvature_centers(&as_xy_f64(&big_g), REFEREE_POINTS);
    if centers.is_empty() {
        return Err(CausticError::EliminationCollapse);
    }
    let mut kept = QPoly::one(xy);
    let mut any = false;
    for (piece, _) in squarefree_decomposition(&combined) {
        if centers.iter().all(|c| on_curve(&piece, c)) {
            kept = &kept * &piece;
            any = true;
        }
    }
    if !any {
        return Err(CausticError::EliminationCollapse);
    }
    Ok(kept.primitive())
}

fn as_xy_f64(big_g: &QPoly) -> MPoly<f64> {
    let terms = big_g.terms().iter().map(|(m, c)| (Monomial::new(m.exps()[..2].to_vec()), c.to_f64()));
    MPoly::from_terms(var_list(&["x", "y"]), terms)
}

/// `|E(c)| <= REFEREE_TOL |grad E(c)|`, allowing for the rounding error of
/// evaluating `E` in floats (relevant near cusps, where the gradient is
/// small).
fn on_curve(e: &QPoly, c: &Point2<f64>) -> bool {
    let ef = e.to_f64();
    let at = [c.x, c.y];
    let v = ef.eval_f64(&at);
    let grad = ef.derivative("x").eval_f64(&at).hypot(ef.derivative("y").eval_f64(&at));
    let magnitude: f64 = ef
        .terms()
        .iter()
        .map(|(m, k)| k.abs() * c.x.abs().powi(m.exps()[0] as i32) * c.y.abs().powi(m.exps()[1] as i32))
        .sum();
    v.abs() <= REFEREE_TOL * grad + 1e-10 * magnitude
}

/// Center of curvature of the curve `g = 0` at its point `p`:
/// `p - grad g |grad g|^2 / K` with
/// `K = g_y^2 g_xx - 2 g_x g_y g_xy + g_x^2 g_yy`. `None` at inflections and
/// singular points.
pub fn implicit_curvature_center(g: &MPoly<f64>, p: &Point2<f64>) -> Option<Point2<f64>> {
    let at = |q: &MPoly<f64>| q.eval_f64(&[p.x, p.y]);
    let gx = g.derivative("x");
    let gy = g.derivative("y");
    let (hxx, hxy, hyy) = (at(&gx.derivative("x")), at(&gx.derivative("y")), at(&gy.derivative("y")));
    let (gx, gy) = (at(&gx), at(&gy));
    curvature_center_from(p, gx, gy, hxx, hxy, hyy)
}

fn curvature_center_from(p: &Point2<f64>, gx: f64, gy: f64, hxx: f64, hxy: f64, hyy: f64) -> Option<Point2<f64>> {
    let n2 = gx * gx + gy * gy;
    let k = gy * gy * hxx - 2.0 * gx * gy * hxy + gx * gx * hyy;
    let scale = n2 * (hxx.abs() + 2.0 * hxy.abs() + hyy.abs());
    if n2 == 0.0 || k.abs() <= 1e-12 * scale {
        return None;
    }
    Some(Point2::new(p.x - gx * n2 / k, p.y - gy * n2 / k))
}

/// Real points of `g = 0` on rays from the origin, refined by bisection.
pub fn implicit_points(g: &MPoly<f64>, directions: usize) -> Vec<Point2<f64>> {
    let deg = g.total_degree() as i32;
    let mut out = Vec::new();
    for k in 0..directions {
        // irrational offset keeps rays off the coordinate axes
        let phi = std::f64::consts::TAU * (k as f64 + 0.1234) / directions as f64;
        let (c, s) = (phi.cos(), phi.sin());
        // coefficients in rho of g(rho c, rho s)
        let mut coef = vec![0.0; deg as usize + 1];
        for (m, v) in g.terms() {
            let e = m.exps();
            coef[(e[0] + e[1]) as usize] += v * c.powi(e[0] as i32) * s.powi(e[1] as i32);
        }
        let lead = coef.iter().rposition(|v| v.abs() > 1e-12 * coef.iter().map(|v| v.abs()).sum::<f64>());
        let Some(lead) = lead else { continue };
        if lead == 0 {
            continue;
        }
        let bound = (1.0 + coef[..lead].iter().map(|v| (v / coef[lead]).abs()).fold(0.0, f64::max)).min(1e6);
        let f = |rho: f64| coef.iter().rev().fold(0.0, |acc, v| acc * rho + v);
        const STEPS: usize = 8192;
        let mut prev = (0.0, f(0.0));
        for i in 1..=STEPS {
            let rho = bound * i as f64 / STEPS as f64;
            let cur = (rho, f(rho));
            if (prev.1 < 0.0) != (cur.1 < 0.0) {
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
                let rho = 0.5 * (lo + hi);
                out.push(Point2::new(rho * c, rho * s));
            }
            prev = cur;
        }
    }
    out
}

/// Up to `count` curvature centers of `g = 0`, from points spread over the
/// real curve.
pub fn implicit_curvature_centers(g: &MPoly<f64>, count: usize) -> Vec<Point2<f64>> {
    let pts = implicit_points(g, count.max(1) * 2);
    let centers: Vec<Point2<f64>> = pts.iter().filter_map(|p| implicit_curvature_center(g, p)).collect();
    spread(centers, count)
}

fn spread<T: Clone>(items: Vec<T>, count: usize) -> Vec<T> {
    if items.len() <= count {
        return items;
    }
    (0..count).map(|i| items[i * items.len() / count].clone()).collect()
}

/// Centers of curvature at `count` sampled points of an oval branch, from the
/// metric form `sign |M - A| + s |M - B|` of the curve. Inflection points are
/// skipped.
pub fn curvature_centers<S: Scalar>(oval: &CartesianOval<S>, count: usize) -> Vec<Point2<f64>> {
    let o = oval.to_f64();
    let e = o.branch.sign::<f64>();
    let mut out = Vec::new();
    for m in sample_branch(&o, count) {
        let (mut gx, mut gy, mut hxx, mut hxy, mut hyy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (focus, w) in [(&o.a, e), (&o.b, o.s)] {
            if w == 0.0 {
                continue;
            }
            let u = m.minus(focus);
            let l = u.norm_f64();
            if l == 0.0 {
                continue;
            }
            let (ux, uy) = (u.x / l, u.y / l);
            gx += w * ux;
            gy += w * uy;
            hxx += w * (1.0 - ux * ux) / l;
            hxy -= w * ux * uy / l;
            hyy += w * (1.0 - uy * uy) / l;
        }
        if let Some(c) = curvature_center_from(&m, gx, gy, hxx, hxy, hyy) {
            out.push(c);
        }
    }
    out
}
