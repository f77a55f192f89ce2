//! Forward-mode dual numbers `re + eps·ε` with `ε² = 0`.
//!
//! Duals nest: `Dual<Dual<T>>` carries two independent infinitesimals and its
//! `eps.eps` part is the mixed second derivative along the two seeds.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dual<S> {
    pub re: S,
    pub eps: S,
}

impl<S> Dual<S> {
    #[inline]
    pub const fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }
}

impl<S: Copy + num_traits::Zero> Dual<S> {
    #[inline]
    pub fn constant(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }
}

impl<S: Copy + num_traits::Zero + num_traits::One> Dual<S> {
    /// Independent variable: derivative seed one.
    #[inline]
    pub fn variable(re: S) -> Self {
        Dual { re, eps: S::one() }
    }
}

impl<S: Add<Output = S>> Add for Dual<S> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<S: Sub<Output = S>> Sub for Dual<S> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<S: Copy + Add<Output = S> + Mul<Output = S>> Mul for Dual<S> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<S: Copy + Sub<Output = S> + Mul<Output = S> + Div<Output = S>> Div for Dual<S> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<S: Neg<Output = S>> Neg for Dual<S> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

// Needed so that `Dual<S>` can itself be the inner type of a nested dual.
impl<S: Copy + num_traits::Zero + PartialEq> num_traits::Zero for Dual<S> {
    fn zero() -> Self {
        Dual::new(S::zero(), S::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Copy + num_traits::Zero + num_traits::One + PartialEq> num_traits::One for Dual<S> {
    fn one() -> Self {
        Dual::new(S::one(), S::zero())
    }
}
