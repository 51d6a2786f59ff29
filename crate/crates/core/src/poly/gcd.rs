//! Multivariate gcd and squarefree decomposition over the rationals.
//!
//! The core is dense evaluation/interpolation in one variable at a time
//! (Brown's scheme): images at `x = a` are computed recursively, rescaled by
//! the gcd of the leading coefficients, interpolated, and accepted only
//! after exact trial division. Over the rationals it runs modulo word-sized
//! primes with Chinese remaindering; the direct rational recursion is kept
//! as a fallback when the prime list is exhausted.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{with_modulus, Fp, PRIMES};
use super::univariate::{self, UPoly};
use super::{Field, MPoly, Monomial, QPoly};
use crate::scalar::Q;

/// Greatest common divisor, primitive (see
/// [`content_and_primitive`](MPoly::content_and_primitive)). `gcd(0, 0) = 0`.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (a, b) = MPoly::align(a, b);
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let (a, b) = (a.primitive(), b.primitive());
    let active = active_vars(&a, &b);
    if active.is_empty() {
        return QPoly::one(a.var_arc());
    }
    if let Some(g) = modular_gcd(&a, &b, &active) {
        return g;
    }
    gcd_rec(&a, &b, &active).primitive()
}

fn active_vars<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> Vec<usize> {
    let mut active = a.used_vars();
    for v in b.used_vars() {
        if !active.contains(&v) {
            active.push(v);
        }
    }
    active.sort_unstable();
    active
}

/// Gcd of many polynomials.
pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a QPoly>) -> Option<QPoly> {
    let mut acc: Option<QPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.primitive(),
            Some(g) => {
                if g.is_constant() && !g.is_zero() {
                    return Some(g);
                }
                gcd(&g, p)
            }
        });
    }
    acc
}

/// Gcd of primitive integer polynomials from images modulo successive
/// primes. `None` if the primes run out before the result stabilizes.
fn modular_gcd(a: &QPoly, b: &QPoly, active: &[usize]) -> Option<QPoly> {
    let vars = a.var_arc();
    let za = a.map_coeffs(|c| c.numer().clone());
    let zb = b.map_coeffs(|c| c.numer().clone());
    let lca = za.leading_coeff().expect("nonzero").clone();
    let lcb = zb.leading_coeff().expect("nonzero").clone();
    let gamma = lca.gcd(&lcb);

    let mut best: Option<Monomial> = None;
    let mut residues: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<QPoly> = None;
    for &p in PRIMES.iter() {
        let image = with_modulus(p, || {
            if Fp::from_bigint(&lca).is_zero() || Fp::from_bigint(&lcb).is_zero() {
                return None;
            }
            let ap = za.map_coeffs(Fp::from_bigint);
            let bp = zb.map_coeffs(Fp::from_bigint);
            let g = gcd_rec(&ap, &bp, active);
            let lc = *g.leading_coeff().expect("nonzero");
            let g = g.scale(&(Fp::from_bigint(&gamma) / lc));
            Some(g.terms().iter().map(|(m, c)| (m.clone(), c.0)).collect::<Vec<_>>())
        });
        let Some(image) = image else { continue };
        let lm = image[0].0.clone();
        if lm.is_one() {
            return Some(QPoly::one(vars));
        }
        match &best {
            Some(b) if lm > *b => continue,
            Some(b) if lm < *b => {
                residues.clear();
                modulus = BigInt::one();
                previous = None;
                best = Some(lm);
            }
            None => best = Some(lm),
            _ => {}
        }
        crt_combine(&mut residues, &mut modulus, &image, p);
        let half = &modulus >> 1;
        let candidate = MPoly::from_terms(
            vars.clone(),
            residues.iter().map(|(m, r)| {
                let v = if r > &half { r - &modulus } else { r.clone() };
                (m.clone(), Q::from_integer(v))
            }),
        );
        if previous.as_ref() == Some(&candidate) {
            let g = candidate.primitive();
            if a.exact_div(&g).is_ok() && b.exact_div(&g).is_ok() {
                return Some(g);
            }
        }
        previous = Some(candidate);
    }
    None
}

fn crt_combine(residues: &mut BTreeMap<Monomial, BigInt>, modulus: &mut BigInt, image: &[(Monomial, u64)], p: u64) {
    let image: BTreeMap<&Monomial, u64> = image.iter().map(|(m, c)| (m, *c)).collect();
    let mut keys: Vec<Monomial> = residues.keys().cloned().collect();
    keys.extend(image.keys().map(|m| (*m).clone()));
    keys.sort();
    keys.dedup();
    let m_big = modulus.clone();
    with_modulus(p, || {
        let m_inv = Fp::from_bigint(&m_big).inv();
        for k in keys {
            let a = residues.get(&k).cloned().unwrap_or_default();
            let b = Fp(image.get(&k).copied().unwrap_or(0));
            let t = (b - Fp::from_bigint(&a)) * m_inv;
            let v = a + &m_big * BigInt::from(t.0);
            if v.is_zero() {
                residues.remove(&k);
            } else {
                residues.insert(k, v);
            }
        }
    });
    *modulus *= BigInt::from(p);
}

pub(crate) fn to_upoly<F: Field>(p: &MPoly<F>, idx: usize) -> UPoly<F> {
    let mut out: UPoly<F> = vec![F::zero(); p.degree_idx(idx) as usize + 1];
    for (m, c) in p.terms() {
        let k = m.exps()[idx] as usize;
        out[k] = out[k].clone() + c.clone();
    }
    univariate::trim(&mut out);
    out
}

pub(crate) fn from_upoly<F: Field>(vars: Arc<[String]>, idx: usize, u: &[F]) -> MPoly<F> {
    let n = vars.len();
    let terms = u.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let mut e = vec![0; n];
        e[idx] = k as u32;
        (Monomial::new(e), c.clone())
    });
    MPoly::from_terms(vars, terms)
}

/// Groups the terms of `p` by their monomial in all variables but `x`; each
/// group's coefficient is univariate in `x`.
fn split_by_rest<F: Field>(p: &MPoly<F>, x: usize) -> BTreeMap<Monomial, UPoly<F>> {
    let mut groups: BTreeMap<Monomial, UPoly<F>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut e = m.exps().to_vec();
        let k = e[x] as usize;
        e[x] = 0;
        let slot = groups.entry(Monomial::new(e)).or_default();
        if slot.len() <= k {
            slot.resize(k + 1, F::zero());
        }
        slot[k] = slot[k].clone() + c.clone();
    }
    groups
}

fn content_in<F: Field>(groups: &BTreeMap<Monomial, UPoly<F>>) -> UPoly<F> {
    let mut g: UPoly<F> = Vec::new();
    for u in groups.values() {
        g = univariate::gcd(&g, u);
        if univariate::degree(&g) == Some(0) {
            break;
        }
    }
    g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in every variable
/// except `v`; a univariate polynomial in `v`.
pub(crate) fn content_in_var(p: &QPoly, v: usize) -> UPoly {
    content_in(&split_by_rest(p, v))
}

/// Content of `p` viewed as a polynomial in the variables `names`: the
/// primitive gcd of its coefficients, which involve only the other variables.
pub fn content_in_vars(p: &QPoly, names: &[&str]) -> QPoly {
    let idx: Vec<usize> = names.iter().filter_map(|n| p.var_index(n)).collect();
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, Q)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut key = vec![0; p.vars().len()];
        let mut rest = m.exps().to_vec();
        for &i in &idx {
            key[i] = rest[i];
            rest[i] = 0;
        }
        groups.entry(Monomial::new(key)).or_default().push((Monomial::new(rest), c.clone()));
    }
    let coeffs: Vec<QPoly> = groups.into_values().map(|t| MPoly::from_terms(p.var_arc(), t)).collect();
    gcd_all(coeffs.iter()).unwrap_or_else(|| QPoly::zero(p.var_arc()))
}

/// Gcd up to a nonzero scalar of nonzero `a`, `b` whose variables lie in
/// `active`.
fn gcd_rec<F: Field>(a: &MPoly<F>, b: &MPoly<F>, active: &[usize]) -> MPoly<F> {
    let vars = a.var_arc();
    if active.is_empty() {
        return MPoly::one(vars);
    }
    let x = *active.last().expect("nonempty");
    if active.len() == 1 {
        let g = univariate::gcd(&to_upoly(a, x), &to_upoly(b, x));
        return from_upoly(vars, x, &g);
    }
    let rest = &active[..active.len() - 1];

    let ca = content_in(&split_by_rest(a, x));
    let cb = content_in(&split_by_rest(b, x));
    let content = univariate::gcd(&ca, &cb);
    let pa = a.exact_div(&from_upoly(vars.clone(), x, &ca)).expect("content divides");
    let pb = b.exact_div(&from_upoly(vars.clone(), x, &cb)).expect("content divides");

    let lead = |p: &MPoly<F>| -> UPoly<F> {
        split_by_rest(p, x).into_iter().next_back().map(|(_, u)| u).expect("nonzero")
    };
    let lca = lead(&pa);
    let lcb = lead(&pb);
    let gamma = univariate::gcd(&lca, &lcb);
    let bound = univariate::degree(&gamma).unwrap_or(0)
        + pa.degree_idx(x).min(pb.degree_idx(x)) as usize;

    let mut xs: Vec<F> = Vec::new();
    let mut images: Vec<MPoly<F>> = Vec::new();
    let mut best: Option<Monomial> = None;
    let content_poly = from_upoly(vars.clone(), x, &content);

    for k in 0i64.. {
        // 0, 1, -1, 2, -2, ...
        let v = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        let at = F::from_i64(v).expect("small integer");
        if univariate::eval(&lca, &at).is_zero() || univariate::eval(&lcb, &at).is_zero() {
            continue;
        }
        let ia = pa.evaluate_idx(&[(x, at.clone())]);
        let ib = pb.evaluate_idx(&[(x, at.clone())]);
        let g = gcd_rec(&ia, &ib, rest);
        if g.is_constant() {
            return content_poly;
        }
        let (lm, lc) = g.leading_term().cloned().expect("nonzero");
        match &best {
            Some(b) if lm > *b => continue,
            Some(b) if lm < *b => {
                xs.clear();
                images.clear();
                best = Some(lm);
            }
            None => best = Some(lm),
            _ => {}
        }
        let scale = univariate::eval(&gamma, &at) / lc;
        xs.push(at);
        images.push(g.scale(&scale));

        let n = xs.len();
        let candidate = if n > bound + 1 {
            Some(interpolate_images(&vars, x, &xs, &images))
        } else if n >= 2 {
            // early termination: the first n-1 images must predict the last
            let prev = interpolate_images(&vars, x, &xs[..n - 1], &images[..n - 1]);
            let predicted = prev.evaluate_idx(&[(x, xs[n - 1].clone())]);
            (predicted == images[n - 1]).then_some(prev)
        } else {
            None
        };
        if let Some(h) = candidate {
            let hc = content_in(&split_by_rest(&h, x));
            let Ok(h) = h.exact_div(&from_upoly(vars.clone(), x, &hc)) else {
                continue;
            };
            if pa.exact_div(&h).is_ok() && pb.exact_div(&h).is_ok() {
                return &h * &content_poly;
            }
        }
    }
    unreachable!("evaluation points are unbounded")
}

fn interpolate_images<F: Field>(vars: &Arc<[String]>, x: usize, xs: &[F], images: &[MPoly<F>]) -> MPoly<F> {
    let mut support: Vec<Monomial> = images.iter().flat_map(|img| img.terms().iter().map(|(m, _)| m.clone())).collect();
    support.sort();
    support.dedup();
    let mut terms = Vec::new();
    for m in &support {
        let ys: Vec<F> = images.iter().map(|img| img.coeff_of(m)).collect();
        let u = univariate::interpolate(xs, &ys);
        for (k, c) in u.into_iter().enumerate() {
            if !c.is_zero() {
                let mut e = m.exps().to_vec();
                e[x] = k as u32;
                terms.push((Monomial::new(e), c));
            }
        }
    }
    MPoly::from_terms(vars.clone(), terms)
}

/// Squarefree decomposition `f = c * prod factor^mult` with primitive,
/// pairwise coprime factors. Constants are omitted.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, u32)> {
    let used = f.used_vars();
    let Some(&y) = used.first() else {
        return Vec::new();
    };
    let coeffs = f.coeffs_idx(y);
    let content = gcd_all(coeffs.iter().filter(|c| !c.is_zero())).expect("nonzero");
    let pp = f.exact_div(&content).expect("content divides");
    let mut out = yun(&pp, y);
    if !content.is_constant() {
        out.extend(squarefree_decomposition(&content));
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

fn yun(f: &QPoly, y: usize) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative_idx(y);
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative_idx(y);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.primitive(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative_idx(y);
        i += 1;
    }
    out
}

/// Product of the distinct irreducible-up-to-squarefree factors, primitive.
pub fn squarefree_part(f: &QPoly) -> QPoly {
    if f.is_zero() {
        return f.clone();
    }
    squarefree_decomposition(f)
        .into_iter()
        .fold(QPoly::one(f.var_arc()), |acc, (g, _)| &acc * &g)
        .primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> QPoly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn bivariate_gcd() {
        let g = p("x^2 + y^2 - 3*x*y + 1");
        let a = &g * &p("x - y + 2");
        let b = &g * &p("x*y + 5");
        assert_eq!(gcd(&a, &b), g.primitive());
    }

    #[test]
    fn gcd_with_content_factors() {
        // common factor (x + 1) depends on x only
        let a = &p("x + 1") * &p("x*y + y^2 + 3");
        let b = &p("x + 1") * &p("x - 7*y");
        assert_eq!(gcd(&a, &b), p("x + 1"));
        assert!(gcd(&p("x + y"), &p("x - y")).is_constant());
    }

    #[test]
    fn trivariate_gcd() {
        let g = p("x*z - y^2 + z + 2");
        let a = &g * &p("x + y + z");
        let b = &g.pow(2) * &p("z - 3*x");
        assert_eq!(gcd(&a, &b), g.primitive());
    }

    #[test]
    fn rational_fallback_agrees() {
        let g = p("3*x^2*y - y^2 + 5*z");
        let a = &g * &p("x - y^3 + 2");
        let b = &g * &p("x*z + 5*y");
        let active = active_vars(&a, &b);
        assert_eq!(gcd_rec(&a, &b, &active).primitive(), g.primitive());
        assert_eq!(modular_gcd(&a.primitive(), &b.primitive(), &active), Some(g.primitive()));
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        let g = p("123456789012345678901234567890*x^3 - 98765432109876543210987654321*y + 1");
        let a = &g * &p("x*y - 7");
        let b = &g * &p("x + 11*y^2");
        assert_eq!(gcd(&a, &b), g.primitive());
    }

    #[test]
    fn yun_splits_multiplicities() {
        let c = p("x^2 - 2*x + y^2 + 1");
        let e = p("x^3 - y^2 + x*y");
        let f = &(&c.pow(2) * &e) * &p("y + 2").pow(3);
        let mut parts = squarefree_decomposition(&f);
        parts.sort_by_key(|(_, m)| *m);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (e.primitive(), 1));
        assert_eq!(parts[1], (c.primitive(), 2));
        assert_eq!(parts[2], (p("y + 2"), 3));
        assert_eq!(squarefree_part(&f), (&(&c * &e) * &p("y + 2")).primitive());
    }

    #[test]
    fn squarefree_of_x_only_content() {
        let f = &p("x - 1").pow(2) * &p("y - x");
        let parts = squarefree_decomposition(&f);
        assert!(parts.contains(&(p("x - 1"), 2)));
        assert!(parts.contains(&(p("-x + y").primitive(), 1)));
    }
}
