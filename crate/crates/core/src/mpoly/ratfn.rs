//! Quotients of multivariate polynomials, without gcd reduction.

use std::fmt;

use super::multipoly::{MultiPoly, Substitution, Var};
use crate::error::{Error, Result};
use crate::exactnum::Surd;

#[derive(Clone, PartialEq)]
pub struct RationalFn {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFn { num, den })
    }

    pub fn poly(p: MultiPoly) -> Self {
        RationalFn { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: impl Into<Surd>) -> Self {
        Self::poly(MultiPoly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator divides the numerator.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFn { num: &self.num + &other.num, den: self.den.clone() };
        }
        RationalFn {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFn {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn scale(&self, k: &Surd) -> Self {
        RationalFn { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn substitute(&self, subs: &Substitution) -> Result<Self> {
        Self::new(self.num.substitute(subs), self.den.substitute(subs))
    }

    /// `f(v + c)`.
    pub fn shift(&self, v: Var, c: i64) -> Self {
        let subs = Substitution::new().poly(v, MultiPoly::var(v) + MultiPoly::int(c));
        RationalFn {
            num: self.num.substitute(&subs),
            den: self.den.substitute(&subs),
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_reduce() {
        let x = MultiPoly::var(Var::X);
        let one = MultiPoly::one();
        // 1/(x-1) - 1/(x+1) = 2/(x^2-1)
        let a = RationalFn::new(one.clone(), &x - &one).unwrap();
        let b = RationalFn::new(one.clone(), &x + &one).unwrap();
        let d = a.sub(&b);
        let target = RationalFn::new(MultiPoly::int(2), &x * &x - one).unwrap();
        assert!(d.sub(&target).is_zero());
        assert_eq!(a.shift(Var::X, 1).den, x);
    }
}
