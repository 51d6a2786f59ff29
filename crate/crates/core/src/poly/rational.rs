use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, PolyError};
use crate::scalar::{Scalar, Q};

/// Polynomials over the rationals: the exact tower.
pub type QPoly = MPoly<Q>;
/// Polynomials over the integers, used inside fraction-free elimination.
pub type ZPoly = MPoly<BigInt>;

impl MPoly<Q> {
    /// Splits `p = content * primitive` where `primitive` has coprime integer
    /// coefficients and a positive leading (grevlex) coefficient.
    pub fn content_and_primitive(&self) -> Result<(Q, QPoly), PolyError> {
        let Some(lc) = self.leading_coeff() else {
            return Err(PolyError::ZeroPoly);
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in self.terms() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if lc.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        Ok((content, prim))
    }

    /// Primitive part; zero maps to zero.
    pub fn primitive(&self) -> QPoly {
        match self.content_and_primitive() {
            Ok((_, p)) => p,
            Err(_) => self.clone(),
        }
    }

    /// Equality up to a nonzero rational factor.
    pub fn is_scalar_multiple_of(&self, other: &QPoly) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.primitive() == other.primitive(),
            _ => false,
        }
    }

    /// `self * scale` with integer coefficients, `scale` the lcm of the
    /// denominators.
    pub fn to_integer(&self) -> (ZPoly, BigInt) {
        let mut l = BigInt::one();
        for (_, c) in self.terms() {
            l = l.lcm(c.denom());
        }
        let z = self.map_coeffs(|c| c.numer() * (&l / c.denom()));
        (z, l)
    }

    pub fn from_integer(z: &ZPoly) -> QPoly {
        z.map_coeffs(|c| Q::from_integer(c.clone()))
    }

    pub fn to_f64(&self) -> MPoly<f64> {
        self.map_coeffs(Scalar::to_f64)
    }

    /// Sum of absolute coefficient values, as a float.
    pub fn coeff_norm1(&self) -> f64 {
        self.terms().iter().map(|(_, c)| Scalar::to_f64(c).abs()).sum()
    }

    /// Evaluates at a float point given in variable order.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        eval_f64_terms(self.terms().iter().map(|(m, c)| (m.exps(), Scalar::to_f64(c))), point)
    }
}

impl MPoly<f64> {
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        eval_f64_terms(self.terms().iter().map(|(m, c)| (m.exps(), *c)), point)
    }

    pub fn coeff_norm1(&self) -> f64 {
        self.terms().iter().map(|(_, c)| c.abs()).sum()
    }
}

fn eval_f64_terms<'a>(terms: impl Iterator<Item = (&'a [u32], f64)>, point: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (e, c) in terms {
        let mut t = c;
        for (x, &k) in point.iter().zip(e) {
            if k > 0 {
                t *= x.powi(k as i32);
            }
        }
        acc += t;
    }
    acc
}
