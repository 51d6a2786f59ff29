//! Dense univariate helpers over the rationals (index = power).


use super::Field;

/// Dense coefficient vector, index = power.
pub type UPoly<F = crate::scalar::Q> = Vec<F>;

pub fn trim<F: Field>(p: &mut UPoly<F>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree<F: Field>(p: &[F]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn monic<F: Field>(mut p: UPoly<F>) -> UPoly<F> {
    trim(&mut p);
    if let Some(lc) = p.last().cloned() {
        if !lc.is_one() {
            let inv = F::one() / lc;
            for c in p.iter_mut() {
                *c = c.clone() * inv.clone();
            }
        }
    }
    p
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn div_rem<F: Field>(a: &[F], b: &[F]) -> (UPoly<F>, UPoly<F>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: UPoly<F> = a.to_vec();
    trim(&mut r);
    let mut q = vec![F::zero(); r.len().saturating_sub(db).max(1)];
    let inv = F::one() / b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = r[dr].clone() * inv.clone();
        let shift = dr - db;
        for (i, bc) in b[..db].iter().enumerate() {
            if !bc.is_zero() {
                r[i + shift] = r[i + shift].clone() - f.clone() * bc.clone();
            }
        }
        q[shift] = f;
        r.truncate(dr);
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem<F: Field>(a: &[F], b: &[F]) -> UPoly<F> {
    div_rem(a, b).1
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &[F], b: &[F]) -> UPoly<F> {
    let mut a = monic(a.to_vec());
    let mut b = monic(b.to_vec());
    while !b.is_empty() {
        let r = monic(rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

pub fn eval<F: Field>(p: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

pub fn mul<F: Field>(a: &[F], b: &[F]) -> UPoly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

/// Newton interpolation through `(xs[i], ys[i])`; `xs` pairwise distinct.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UPoly<F> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<F> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - level].clone());
        }
    }
    // expand sum dd[k] * prod_{j<k} (x - xs[j]) by Horner
    let mut out: UPoly<F> = vec![F::zero()];
    for k in (0..n).rev() {
        let mut next = vec![F::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + c.clone();
            next[i] = next[i].clone() - c.clone() * xs[k].clone();
        }
        next[0] = next[0].clone() + dd[k].clone();
        out = next;
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    fn p(c: &[i64]) -> UPoly {
        c.iter().map(|&v| q(v, 1)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[-3, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(gcd(&a, &[]), monic(a.clone()));
        assert_eq!(gcd(&p(&[2, 1]), &p(&[3, 1])), p(&[1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, 0, -2, 5]);
        let xs: Vec<Q> = (0..4).map(|i| q(i, 1)).collect();
        let ys: Vec<Q> = xs.iter().map(|x| eval(&f, x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 0, 1]);
        let (qq, r) = div_rem(&a, &p(&[-1, 1]));
        assert_eq!(qq, p(&[1, 1, 1]));
        assert!(r.is_empty());
    }
}
