//! Sylvester resultants by fraction-free elimination, and two-variable
//! elimination by iterated resultants.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::gcd::{content_in_var, from_upoly, squarefree_part};
use super::univariate;
use super::{MPoly, PolyError, QPoly, ZPoly};
use crate::scalar::Q;

/// The classical Sylvester matrix of `f` and `g` with respect to one
/// variable. Entries are polynomials in the remaining variables.
#[derive(Clone, Debug)]
pub struct SylvesterMatrix {
    var: String,
    rows: Vec<Vec<QPoly>>,
}

impl SylvesterMatrix {
    pub fn new(f: &QPoly, g: &QPoly, var: &str) -> Result<Self, PolyError> {
        let (f, g) = MPoly::align(f, g);
        let Some(idx) = f.var_index(var) else {
            return Err(PolyError::BothConstantInV(var.to_string()));
        };
        let m = f.degree_idx(idx) as usize;
        let n = g.degree_idx(idx) as usize;
        if m == 0 && n == 0 {
            return Err(PolyError::BothConstantInV(var.to_string()));
        }
        let a = f.coeffs_idx(idx);
        let b = g.coeffs_idx(idx);
        let size = m + n;
        let zero = QPoly::zero(f.var_arc());
        let mut rows = vec![vec![zero; size]; size];
        for i in 0..n {
            for k in 0..=m {
                rows[i][i + k] = a[m - k].clone();
            }
        }
        for i in 0..m {
            for k in 0..=n {
                rows[n + i][i + k] = b[n - k].clone();
            }
        }
        Ok(SylvesterMatrix { var: var.to_string(), rows })
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &QPoly {
        &self.rows[i][j]
    }

    /// Determinant by Bareiss elimination over the integer polynomial ring.
    ///
    /// Each row is scaled to integer coefficients first; the scales are
    /// divided out at the end.
    pub fn determinant(&self) -> QPoly {
        let n = self.size();
        let vars = self.rows[0][0].var_arc();
        let mut scale = Q::one();
        let mut m: Vec<Vec<ZPoly>> = Vec::with_capacity(n);
        for row in &self.rows {
            let mut l = BigInt::one();
            for e in row {
                let (_, el) = e.to_integer();
                l = num_integer::Integer::lcm(&l, &el);
            }
            let lq = Q::from_integer(l.clone());
            scale *= &lq;
            m.push(row.iter().map(|e| e.scale(&lq).map_coeffs(|c| c.to_integer())).collect());
        }
        let det = bareiss(m, vars);
        QPoly::from_integer(&det).scale(&scale.recip())
    }
}

fn bareiss(mut m: Vec<Vec<ZPoly>>, vars: std::sync::Arc<[String]>) -> ZPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev = ZPoly::one(vars.clone());
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return ZPoly::zero(vars);
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        let prev_ref = &prev;
        bottom.par_iter_mut().for_each(|row| {
            let lead = std::mem::replace(&mut row[k], ZPoly::zero(pivot.var_arc()));
            row[k + 1..].par_iter_mut().zip(&pivot_row[k + 1..]).for_each(|(e, pk)| {
                let mut v = pivot * &*e;
                if !lead.is_zero() && !pk.is_zero() {
                    v = &v - &(&lead * pk);
                }
                // Sylvester's identity makes every division exact
                *e = v.exact_div(prev_ref).expect("Bareiss division must be exact");
            });
        });
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `res_v(f, g)`, the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &QPoly, g: &QPoly, var: &str) -> Result<QPoly, PolyError> {
    let mat = SylvesterMatrix::new(f, g, var)?;
    Ok(mat.determinant())
}

/// Removes from `p` the factors that depend on `v` alone. Such factors of an
/// intermediate resultant come from base points shared by the whole family
/// and would make the next resultant vanish identically.
fn deflate(p: &QPoly, v: usize) -> QPoly {
    let c = content_in_var(p, v);
    if univariate::degree(&c).unwrap_or(0) == 0 {
        return p.clone();
    }
    p.exact_div(&from_upoly(p.var_arc(), v, &c)).expect("content divides")
}

/// `res_v(res_u(f, g), res_u(f, h))` after base-point deflation, primitive
/// but not squarefree-reduced.
pub fn eliminate_two_raw(f: &QPoly, g: &QPoly, h: &QPoly, u: &str, v: &str) -> Result<QPoly, PolyError> {
    let r1 = sylvester_resultant(f, g, u)?;
    let r2 = sylvester_resultant(f, h, u)?;
    if r1.is_zero() || r2.is_zero() {
        return Err(PolyError::ZeroResultant);
    }
    let (r1, r2) = MPoly::align(&r1, &r2);
    let Some(vi) = r1.var_index(v) else {
        return Err(PolyError::BothConstantInV(v.to_string()));
    };
    let r1 = deflate(&r1, vi);
    let r2 = deflate(&r2, vi);
    let r = sylvester_resultant(&r1, &r2, v)?;
    if r.is_zero() {
        return Err(PolyError::ZeroResultant);
    }
    Ok(r.primitive())
}

/// Eliminates `u` then `v` from `f = g = h = 0`; returns the squarefree
/// primitive part. The true eliminant divides the result; extraneous factors
/// are possible.
pub fn eliminate_two(f: &QPoly, g: &QPoly, h: &QPoly, u: &str, v: &str) -> Result<QPoly, PolyError> {
    let raw = eliminate_two_raw(f, g, h, u, v)?;
    Ok(squarefree_part(&raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> QPoly {
        parse_poly(s, &["x", "y", "t"]).unwrap()
    }

    #[test]
    fn linear_substitution() {
        let r = sylvester_resultant(&p("t^2 - x"), &p("t - y"), "t").unwrap();
        assert_eq!(r, p("y^2 - x"));
    }

    #[test]
    fn parabola_envelope() {
        let f = p("2*t^3 + t - y - 2*t*x");
        let r = sylvester_resultant(&f, &f.derivative("t"), "t").unwrap();
        // 2(2x - 1)^3 - 27y^2 expanded
        assert!(r.is_scalar_multiple_of(&p("16*x^3 - 24*x^2 + 12*x - 2 - 27*y^2")));
    }

    #[test]
    fn constant_cases() {
        assert_eq!(
            sylvester_resultant(&p("x + 1"), &p("y"), "t"),
            Err(PolyError::BothConstantInV("t".into()))
        );
        // constant first argument: res = f^deg(g)
        assert_eq!(sylvester_resultant(&p("x"), &p("t^3 + 1"), "t").unwrap(), p("x^3"));
        assert!(sylvester_resultant(&p("t - x"), &p("t^2 - x^2"), "t").unwrap().is_zero());
    }

    #[test]
    fn degenerate_elimination() {
        let vars = ["x", "y", "u", "v"];
        let f = parse_poly("u - x", &vars).unwrap();
        let g = parse_poly("v - y", &vars).unwrap();
        let h = parse_poly("u + v - x - y", &vars).unwrap();
        assert_eq!(eliminate_two(&f, &g, &h, "u", "v"), Err(PolyError::ZeroResultant));
    }

    #[test]
    fn circle_line_elimination() {
        // u^2 + v^2 = 1, u = x, v = y  gives  x^2 + y^2 - 1
        let vars = ["x", "y", "u", "v"];
        let f = parse_poly("u^2 + v^2 - 1", &vars).unwrap();
        let g = parse_poly("u - x", &vars).unwrap();
        let h = parse_poly("v - y", &vars).unwrap();
        let e = eliminate_two(&f, &g, &h, "u", "v").unwrap();
        assert!(e.is_scalar_multiple_of(&parse_poly("x^2 + y^2 - 1", &vars).unwrap()));
    }
}
