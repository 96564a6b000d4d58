//! Rational helpers on top of `BigRational`.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// The four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(lhs: &Rational, rhs: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
        ArithOp::Div => {
            if rhs.is_zero() {
                return Err(Error::DivisionByZero);
            }
            lhs / rhs
        }
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `7`, `-3/4`, `0.125` or `1e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Exact rational from a finite double.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
}

fn ldexp(m: f64, e: i64) -> f64 {
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Correctly rounded (ties to even) conversion to `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().clone();
    let k = 55 - (n.bits() as i64 - d.bits() as i64);
    let (q, rem) = if k >= 0 {
        (n << k as usize).div_rem(&d)
    } else {
        n.div_rem(&(d << (-k) as usize))
    };
    let sticky = !rem.is_zero();
    let shift = q.bits() as i64 - 53;
    let mut mant = &q >> shift as usize;
    let low = &q - (&mant << shift as usize);
    let half = BigInt::one() << (shift - 1) as usize;
    let up = match low.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => sticky || mant.is_odd(),
    };
    if up {
        mant += 1;
    }
    let m = mant.to_f64().unwrap_or(f64::INFINITY);
    let v = ldexp(m, shift - k);
    if neg {
        -v
    } else {
        v
    }
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Floor of `sqrt(r) * 2^bits`.
pub fn sqrt_floor_scaled(r: &Rational, bits: u32) -> BigInt {
    let scaled = (r.numer() << (2 * bits as usize)) / r.denom();
    scaled.sqrt()
}

/// A rational approximation of `sqrt(r)` with absolute error below `2^-bits`.
pub fn sqrt_approx(r: &Rational, bits: u32) -> Rational {
    Rational::new(sqrt_floor_scaled(r, bits), BigInt::one() << bits as usize)
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo.clone(), hi.clone())
}

fn simplest_positive(lo: Rational, hi: Rational) -> Rational {
    let fl = floor(&lo);
    let fl_r = Rational::from_integer(fl.clone());
    if fl_r == lo {
        return lo;
    }
    let next = Rational::from_integer(&fl + 1);
    if next <= hi {
        return next;
    }
    let lo_frac = &lo - &fl_r;
    let hi_frac = &hi - &fl_r;
    let inner = simplest_positive(hi_frac.recip(), lo_frac.recip());
    fl_r + inner.recip()
}

/// Splits a non-negative integer as `k^2 * f` with `f` free of small square factors.
pub fn square_free_split(m: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(m.sign() != Sign::Minus);
    let mut rest = m.clone();
    let mut k = BigInt::one();
    if rest.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let mut p: u64 = 2;
    while p < 1 << 17 {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        let bp = BigInt::from(p);
        if !(&rest % &bp).is_zero() {
            p += if p == 2 { 1 } else { 2 };
            continue;
        }
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            k *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        k *= s;
        rest = BigInt::one();
    }
    (k, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("-2.5E2").unwrap(), int(-250));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn float_rounding() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, 2f64.sqrt(), 5e-324] {
            assert_eq!(to_f64(&from_f64(x).unwrap()), x);
        }
        assert_eq!(to_f64(&rat(1, 3)), 1.0 / 3.0);
        assert_eq!(to_f64(&rat(2, 3)), 2.0 / 3.0);
    }

    #[test]
    fn simplest() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(31, 100), &rat(32, 100)), rat(5, 16));
        assert_eq!(simplest_between(&rat(-32, 100), &rat(-31, 100)), rat(-5, 16));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 3)), int(0));
    }

    #[test]
    fn square_free() {
        let (k, f) = square_free_split(&BigInt::from(72));
        assert_eq!((k, f), (BigInt::from(6), BigInt::from(2)));
        let (k, f) = square_free_split(&BigInt::from(401));
        assert_eq!((k, f), (BigInt::from(1), BigInt::from(401)));
    }
}
