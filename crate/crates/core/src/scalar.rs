//! Scalar abstractions.
//!
//! [`Real`] is the base floating point type (`f32` or `f64`) that the whole
//! crate is generic over. [`Scalar`] is the smaller set of operations that
//! closed-form geometric formulas need, implemented both for the base type
//! and for [`Dual`] numbers over it, so the same formula can be evaluated
//! plainly or differentiated exactly.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FloatConst, FromPrimitive};

use crate::dual::Dual;

/// Floating point base type.
pub trait Real: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static {
    /// Lossless-enough conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Arithmetic closed under the elementary functions used by chart formulas.
pub trait Scalar<T: Real>:
    Copy + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// Embeds a constant.
    fn cst(v: T) -> Self;
    /// The value part, with all infinitesimal parts dropped.
    fn re(&self) -> T;

    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn atan(self) -> Self;

    fn zero() -> Self {
        Self::cst(T::zero())
    }

    fn one() -> Self {
        Self::cst(T::one())
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn sq(self) -> Self {
        self * self
    }
}

impl<T: Real> Scalar<T> for T {
    #[inline]
    fn cst(v: T) -> Self {
        v
    }
    #[inline]
    fn re(&self) -> T {
        *self
    }
    #[inline]
    fn exp(self) -> Self {
        Float::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        Float::ln(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
    #[inline]
    fn sin(self) -> Self {
        Float::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        Float::cos(self)
    }
    #[inline]
    fn tan(self) -> Self {
        Float::tan(self)
    }
    #[inline]
    fn atan(self) -> Self {
        Float::atan(self)
    }
}

impl<T: Real, S: Scalar<T>> Scalar<T> for Dual<S> {
    #[inline]
    fn cst(v: T) -> Self {
        Dual::new(S::cst(v), S::zero())
    }
    #[inline]
    fn re(&self) -> T {
        self.re.re()
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, e * self.eps)
    }
    fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.eps / self.re)
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (S::cst(T::lit(2.0)) * s))
    }
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.re.cos() * self.eps)
    }
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -(self.re.sin() * self.eps))
    }
    fn tan(self) -> Self {
        let t = self.re.tan();
        Dual::new(t, (S::one() + t * t) * self.eps)
    }
    fn atan(self) -> Self {
        Dual::new(self.re.atan(), self.eps / (S::one() + self.re * self.re))
    }
}

/// Converts a constant array into any scalar type.
pub fn lift3<T: Real, S: Scalar<T>>(v: [T; 3]) -> [S; 3] {
    [S::cst(v[0]), S::cst(v[1]), S::cst(v[2])]
}
