//! The coefficient-field abstraction shared by every exact computation.
//!
//! Cyclotomic numbers need their conductor and p-adic numbers need their
//! prime and precision before a zero or one can be built, so the constants
//! are produced from an existing element (`zero_like`, `one_like`) rather than
//! from `num_traits::Zero`/`One`. Plain scalars (`BigRational`, `f32`, `f64`,
//! `Complex<T>`) implement the trait by ignoring `self`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::Rational;

/// A commutative field (or a faithful approximation of one) that admits an
/// embedding of the rationals.
#[allow(clippy::wrong_self_convention)]
pub trait Field:
    Clone + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self;

    /// Image of `r` under the canonical embedding of Q.
    fn from_rational_like(&self, r: &Rational) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, `None` for zero (or a non-unit at the available precision).
    fn try_inv(&self) -> Option<Self>;

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|inv| self.clone() * inv)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            fn zero_like(&self) -> Self {
                0.0
            }

            fn one_like(&self) -> Self {
                1.0
            }

            fn from_rational_like(&self, r: &Rational) -> Self {
                rational_to_float::<$t>(r)
            }

            fn is_zero(&self) -> bool {
                *self == 0.0
            }

            fn try_inv(&self) -> Option<Self> {
                if *self == 0.0 {
                    None
                } else {
                    Some(1.0 / *self)
                }
            }
        }
    };
}

float_field!(f32);
float_field!(f64);

impl<T: Float + Debug> Field for Complex<T> {
    fn zero_like(&self) -> Self {
        Complex::new(T::zero(), T::zero())
    }

    fn one_like(&self) -> Self {
        Complex::new(T::one(), T::zero())
    }

    fn from_rational_like(&self, r: &Rational) -> Self {
        Complex::new(rational_to_float::<T>(r), T::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn try_inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
}

/// Nearest float to a rational; large numerators and denominators are
/// scaled down together so that neither overflows on conversion.
pub fn rational_to_float<T: Float>(r: &Rational) -> T {
    let num = r.numer();
    let den = r.denom();
    match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => T::from(n / d).unwrap_or_else(T::nan),
        _ => {
            let shift = num.bits().max(den.bits()).saturating_sub(1000);
            let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
            T::from(n / d).unwrap_or_else(T::nan)
        }
    }
}
