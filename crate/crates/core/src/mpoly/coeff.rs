use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::{Rational, Surd};

/// Commutative ring operations needed by the polynomial types.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Rings where exact quotients can be computed.
pub trait ExactDiv: Coeff {
    /// `self / other` when `other` divides `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

/// Rings where every non-zero element is invertible.
pub trait Field: ExactDiv {
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        crate::exactnum::rational::int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
}

impl ExactDiv for Rational {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coeff for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn from_i64(n: i64) -> Self {
        Surd::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
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
}

impl ExactDiv for Surd {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.try_div(other).ok()
    }
}

impl Field for Surd {
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}
