use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};

/// Coefficient ring of an [`MPoly`](super::MPoly).
///
/// Ring operations come from [`Num`]; `div_exact` is the only division the
/// polynomial layer uses, so integer coefficients are never truncated.
pub trait Coeff:
    Clone + Debug + PartialEq + Num + FromPrimitive + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    /// `Some(q)` with `self == q * d`, or `None` if no such `q` exists.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Coeff for BigRational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}

impl Coeff for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl Coeff for f64 {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (*d != 0.0).then(|| self / d)
    }
}

impl Coeff for f32 {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (*d != 0.0).then(|| self / d)
    }
}

/// Coefficient rings in which every nonzero element is invertible, so `/`
/// is exact division.
pub trait Field: Coeff {}

impl Field for BigRational {}
impl Field for f64 {}
impl Field for super::modp::Fp {}
