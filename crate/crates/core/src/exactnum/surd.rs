//! Elements `a + b*sqrt(r)` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// `a + b*sqrt(r)` with `r` a square-free positive integer.
///
/// Rational values always carry `r = 1` and `b = 0`, so they combine with
/// elements of any field. Two irrational values combine only when their
/// radicands agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rational,
    b: Rational,
    r: BigInt,
}

impl Surd {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Surd {
            a,
            b: Rational::zero(),
            r: BigInt::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    /// `a + b*sqrt(t)` for any rational `t >= 0`, brought to canonical form.
    pub fn new(a: Rational, b: Rational, t: &Rational) -> Result<Self> {
        if t.is_negative() {
            return Err(Error::Domain(format!("negative radicand {t}")));
        }
        if b.is_zero() || t.is_zero() {
            return Ok(Self::from_rational(a));
        }
        let m = t.numer() * t.denom();
        let (k, f) = rational::square_free_split(&m);
        let scale = Rational::new(k, t.denom().clone());
        let b = b * scale;
        if f.is_one() {
            return Ok(Self::from_rational(a + b));
        }
        Ok(Surd { a, b, r: f })
    }

    /// `sqrt(t)` as an element of `Q(sqrt(t))`.
    pub fn sqrt_of(t: &Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), t)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn field(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.r.clone()),
            (_, true) => Ok(self.r.clone()),
            _ if self.r == other.r => Ok(self.r.clone()),
            _ => Err(Error::RadicandMismatch {
                lhs: self.r.to_string(),
                rhs: other.r.to_string(),
            }),
        }
    }

    fn build(a: Rational, b: Rational, r: BigInt) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            Surd { a, b, r }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let r = self.field(other)?;
        Ok(Self::build(&self.a + &other.a, &self.b + &other.b, r))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let r = self.field(other)?;
        Ok(Self::build(&self.a - &other.a, &self.b - &other.b, r))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let r = self.field(other)?;
        let rr = Rational::from_integer(r.clone());
        let a = &self.a * &other.a + &self.b * &other.b * rr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(a, b, r))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::build(&self.a * k, &self.b * k, self.r.clone())
    }

    pub fn conj(&self) -> Self {
        Self::build(self.a.clone(), -&self.b, self.r.clone())
    }

    /// `a^2 - b^2 r`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.r.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::build(&self.a / &n, -&self.b / &n, self.r.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Surd::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign, decided without floating point.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 r
        let n = self.norm();
        match sign(&n) {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum().cmp(&0))
    }

    /// The square root inside `Q(sqrt r)` when it exists.
    ///
    /// A non-square rational maps to `Q(sqrt a)` instead.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_rational() {
            return match rational::sqrt_exact(&self.a) {
                Some(s) => Some(Self::from_rational(s)),
                None => Self::sqrt_of(&self.a).ok(),
            };
        }
        let n = rational::sqrt_exact(&self.norm())?;
        let two = rational::int(2);
        for c2 in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if !c2.is_positive() {
                continue;
            }
            if let Some(c) = rational::sqrt_exact(&c2) {
                let d = &self.b / (&c * &two);
                let s = Self::build(c, d, self.r.clone());
                let s = if s.is_negative() { -s } else { s };
                if &(&s * &s) == self {
                    return Some(s);
                }
            }
        }
        None
    }

    /// Rounds `a + b*sqrt(r)` to a double, using `bits` bits for `sqrt(r)`.
    pub fn to_f64_with(&self, bits: u32) -> f64 {
        if self.is_rational() {
            return rational::to_f64(&self.a);
        }
        let rr = Rational::from_integer(self.r.clone());
        let root = rational::sqrt_approx(&rr, bits);
        let sa = sign(&self.a);
        if sa == 0 || sa == sign(&self.b) {
            return rational::to_f64(&(&self.a + &self.b * root));
        }
        // cancellation: use (a^2 - b^2 r) / (a - b sqrt r)
        let den = &self.a - &self.b * root;
        rational::to_f64(&(self.norm() / den))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_with(128)
    }
}

fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for Surd {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let b_abs = self.b.abs();
        let radical = if b_abs.is_one() {
            format!("sqrt({})", self.r)
        } else {
            format!("{}*sqrt({})", b_abs, self.r)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{radical}"),
            (true, true) => write!(f, "-{radical}"),
            (false, false) => write!(f, "{} + {radical}", self.a),
            (false, true) => write!(f, "{} - {radical}", self.a),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Surd> for &Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                self.$try(rhs).expect("surd arithmetic across different quadratic fields")
            }
        }
        impl $trait<Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::build(-&self.a, -&self.b, self.r.clone())
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn s(a: Rational, b: Rational, t: i64) -> Surd {
        Surd::new(a, b, &int(t)).unwrap()
    }

    #[test]
    fn canonical_radicand() {
        let x = Surd::sqrt_of(&int(20)).unwrap();
        assert_eq!(x.radicand(), &BigInt::from(5));
        assert_eq!(x.surd_coeff(), &int(2));
        let y = Surd::sqrt_of(&rat(9, 4)).unwrap();
        assert_eq!(y, Surd::from_rational(rat(3, 2)));
        let z = Surd::sqrt_of(&rat(1, 2)).unwrap();
        assert_eq!(z.radicand(), &BigInt::from(2));
        assert_eq!(z.surd_coeff(), &rat(1, 2));
    }

    #[test]
    fn field_ops() {
        let x = s(int(1), int(2), 3);
        let y = s(rat(1, 2), int(-1), 3);
        let q = x.try_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert!((q.to_f64() - x.to_f64() / y.to_f64()).abs() < 1e-12);
        let w = s(int(0), int(1), 2);
        assert!(matches!(x.try_add(&w), Err(Error::RadicandMismatch { .. })));
        assert!(Surd::zero().recip().is_err());
    }

    #[test]
    fn exact_sign() {
        // 1 - sqrt(2)/1.4142 style near-cancellation
        let x = s(int(99), int(-70), 2);
        assert_eq!(x.signum(), 1);
        let y = s(int(-99), int(70), 2);
        assert_eq!(y.signum(), -1);
        assert_eq!(s(int(3), int(-1), 9).signum(), 0);
    }

    #[test]
    fn float_with_cancellation() {
        let x = s(int(99), int(-70), 2);
        let expect = 1.0 / (99.0 + 70.0 * 2f64.sqrt());
        assert!(((x.to_f64() - expect) / expect).abs() < 1e-15);
    }

    #[test]
    fn sqrt_in_field() {
        // (1 + sqrt 5)^2 = 6 + 2 sqrt 5
        let x = s(int(6), int(2), 5);
        assert_eq!(x.sqrt_exact().unwrap(), s(int(1), int(1), 5));
        let y = s(int(6), int(-2), 5);
        assert_eq!(y.sqrt_exact().unwrap(), s(int(-1), int(1), 5));
        assert!(s(int(1), int(1), 5).sqrt_exact().is_none());
        assert_eq!(Surd::from_int(7).sqrt_exact().unwrap().radicand(), &BigInt::from(7));
    }

    #[test]
    fn display() {
        assert_eq!(s(rat(1, 4), rat(-1, 4), 5).to_string(), "1/4 - 1/4*sqrt(5)");
        assert_eq!(s(int(0), int(1), 5).to_string(), "sqrt(5)");
    }
}
