//! Field elements the W-equation machinery runs over: exact rationals, or
//! complex floats when some `b_i` is irrational.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{pow2, AppComplex, Rat};

pub trait Scalar: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` exactly when [`Scalar::is_zero_like`] holds.
    fn recip(&self) -> Option<Self>;
    /// Exact zero for rationals; for floats, below the working noise floor.
    fn is_zero_like(&self) -> bool;

    /// Equality, exact or up to the working noise floor relative to the
    /// operands' size.
    fn near(&self, other: &Self) -> bool;

    fn powi(&self, n: i64) -> Option<Self> {
        let mut base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Some(acc)
    }
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rat::recip(self))
    }
    fn is_zero_like(&self) -> bool {
        self.is_zero()
    }
    fn near(&self, other: &Self) -> bool {
        self == other
    }
}

/// `2^{−prec/2}`: the level below which two values at working precision
/// `prec` are treated as equal.
pub(crate) fn noise_floor(prec: usize) -> Rat {
    pow2(-((prec / 2) as i64))
}

impl Scalar for AppComplex {
    fn zero_like(&self) -> Self {
        AppComplex::zero(self.precision())
    }
    fn one_like(&self) -> Self {
        AppComplex::one(self.precision())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        (!self.is_zero_like()).then(|| AppComplex::recip(self))
    }
    fn is_zero_like(&self) -> bool {
        self.abs_le(&noise_floor(self.precision()))
    }
    fn near(&self, other: &Self) -> bool {
        let scale = [self.log2_abs(), other.log2_abs(), 0.0]
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        let tol = noise_floor(self.precision().min(other.precision()))
            * pow2(scale.ceil() as i64);
        (self - other).abs_le(&tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn rational_powers() {
        assert_eq!(rat(2, 3).powi(3), Some(rat(8, 27)));
        assert_eq!(rat(2, 3).powi(-2), Some(rat(9, 4)));
        assert_eq!(rat(0, 1).powi(-1), None);
        assert_eq!(rat(0, 1).powi(0), Some(rat(1, 1)));
    }

    #[test]
    fn complex_nearness_is_relative() {
        let a = AppComplex::from_rat(&rat(1 << 40, 1), 128);
        let b = &a + &AppComplex::from_rats(&rat(0, 1), &pow2(-70), 128);
        assert!(a.near(&b));
        let c = &a + &AppComplex::one(128);
        assert!(!a.near(&c));
        assert!(AppComplex::from_rat(&pow2(-100), 128).is_zero_like());
        assert!(!AppComplex::from_rat(&pow2(-60), 128).is_zero_like());
    }
}
