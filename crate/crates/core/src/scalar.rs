//! Scalar towers.
//!
//! Geometry and oval code is generic over [`Scalar`]: the same routines run on
//! exact rationals (where the identities are algebraic and must hold exactly)
//! and on `f32`/`f64` (where trigonometric sampling is involved).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the exact tower.
pub type Q = BigRational;

/// A field element usable by the geometry layer.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` for exact towers, where equality tests are exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_f64_lossy(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Square root when representable in this tower (always for floats with
    /// non-negative input, only for perfect squares for rationals).
    fn sqrt_checked(&self) -> Option<Self>;

    /// Zero test: exact for rationals, `|self| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                assert!(den != 0, "zero denominator");
                num as $t / den as $t
            }

            fn from_f64_lossy(v: f64) -> Self {
                v as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn sqrt_checked(&self) -> Option<Self> {
                if *self < 0.0 {
                    None
                } else {
                    Some(Float::sqrt(*self))
                }
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64_lossy(v: f64) -> Self {
        BigRational::from_f64(v).unwrap_or_else(BigRational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator/denominator too large for a direct conversion
            let n = self.numer().bits() as i64;
            let d = self.denom().bits() as i64;
            let shift = (n - d).clamp(-1000, 1000);
            let scaled = if shift >= 0 {
                self / BigRational::from_integer(BigInt::one() << shift as usize)
            } else {
                self * BigRational::from_integer(BigInt::one() << (-shift) as usize)
            };
            ToPrimitive::to_f64(&scaled).unwrap_or(0.0) * 2f64.powi(shift as i32)
        })
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal (`"0.25"`, `"-1.5e-3"`)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Option<Q> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(i) = s.parse::<BigInt>() {
        return Some(BigRational::from_integer(i));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Q> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -value } else { value })
}

/// Prints a rational as `p/q`, or `p` when integral.
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Convenience constructor for rationals in tests and examples.
pub fn q(num: i64, den: i64) -> Q {
    Q::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(q(4, 9).sqrt_checked(), Some(q(2, 3)));
        assert_eq!(q(2, 1).sqrt_checked(), None);
        assert_eq!(q(-1, 4).sqrt_checked(), None);
        assert_eq!(4.0f64.sqrt_checked(), Some(2.0));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/3"), Some(q(1, 3)));
        assert_eq!(parse_rational(" -2/4 "), Some(q(-1, 2)));
        assert_eq!(parse_rational("0.25"), Some(q(1, 4)));
        assert_eq!(parse_rational("-1.5e-1"), Some(q(-3, 20)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn format_roundtrip() {
        for v in [q(1, 3), q(-7, 2), q(5, 1), q(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&v)), Some(v));
        }
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = BigRational::from_integer(BigInt::from(3) << 2000usize)
            / BigRational::from_integer(BigInt::one() << 2000usize);
        assert!((Scalar::to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
