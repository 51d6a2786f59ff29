//! Arithmetic modulo a word-sized prime.
//!
//! The modulus is per-thread state set by [`with_modulus`]; [`Fp`] values
//! are only meaningful inside that scope. This keeps a single instantiation
//! of the generic polynomial code for all primes.

use std::cell::Cell;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

use super::Coeff;

thread_local! {
    static MODULUS: Cell<u64> = const { Cell::new(0) };
}

/// 62-bit primes used for modular reconstruction.
pub const PRIMES: [u64; 48] = [
    4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387761,
    4611686018427387751, 4611686018427387737, 4611686018427387733, 4611686018427387709,
    4611686018427387701, 4611686018427387631, 4611686018427387617, 4611686018427387587,
    4611686018427387461, 4611686018427387421, 4611686018427387409, 4611686018427387329,
    4611686018427387323, 4611686018427387301, 4611686018427387271, 4611686018427387241,
    4611686018427387139, 4611686018427387131, 4611686018427387127, 4611686018427387113,
    4611686018427387091, 4611686018427387073, 4611686018427386981, 4611686018427386923,
    4611686018427386911, 4611686018427386903, 4611686018427386897, 4611686018427386887,
    4611686018427386707, 4611686018427386663, 4611686018427386611, 4611686018427386551,
    4611686018427386471, 4611686018427386389, 4611686018427386351, 4611686018427386329,
    4611686018427386323, 4611686018427386309, 4611686018427386287, 4611686018427386231,
    4611686018427386207, 4611686018427386203, 4611686018427386201, 4611686018427386081,
];

/// Runs `f` with the thread's modulus set to `p`, restoring the previous one.
pub fn with_modulus<R>(p: u64, f: impl FnOnce() -> R) -> R {
    let old = MODULUS.with(|m| m.replace(p));
    let out = f();
    MODULUS.with(|m| m.set(old));
    out
}

fn modulus() -> u64 {
    let p = MODULUS.with(|m| m.get());
    debug_assert!(p > 1, "Fp used outside with_modulus");
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(pub u64);

impl Fp {
    pub fn from_bigint(v: &BigInt) -> Fp {
        let p = BigInt::from(modulus());
        Fp(v.mod_floor(&p).to_u64().expect("reduced"))
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Fp {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(modulus() - 2)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let p = modulus();
        let s = self.0 + o.0;
        Fp(if s >= p { s - p } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        let p = modulus();
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + p - o.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 * o.0 as u128) % modulus() as u128) as u64)
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fp) -> Fp {
        self * o.inv()
    }
}

impl Rem for Fp {
    type Output = Fp;
    fn rem(self, _: Fp) -> Fp {
        Fp(0)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(modulus() - self.0)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp(1)
    }
}

impl Num for Fp {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Fp, Self::FromStrRadixErr> {
        let v = i64::from_str_radix(s, radix)?;
        Ok(Fp::from_i64(v).expect("always representable"))
    }
}

impl FromPrimitive for Fp {
    fn from_i64(v: i64) -> Option<Fp> {
        let p = modulus() as i128;
        Some(Fp((v as i128).rem_euclid(p) as u64))
    }
    fn from_u64(v: u64) -> Option<Fp> {
        Some(Fp(v % modulus()))
    }
}

impl Coeff for Fp {
    fn div_exact(&self, d: &Fp) -> Option<Fp> {
        (d.0 != 0).then(|| *self / *d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        with_modulus(PRIMES[0], || {
            let a = Fp::from_i64(-5).unwrap();
            let b = Fp::from_i64(7).unwrap();
            assert_eq!((a + b).0, 2);
            assert_eq!(a * b, -Fp(35));
            assert_eq!(((a / b) * b), a);
            assert_eq!(Fp::from_bigint(&BigInt::from(-1)), -Fp(1));
        });
    }
}
