//! Dense univariate polynomials over a coefficient ring.

use std::fmt;

use super::coeff::{Coeff, ExactDiv, Field};
use super::multipoly::Var;

/// Ascending coefficients; the leading coefficient is never zero.
#[derive(Clone, PartialEq)]
pub struct UniPoly<C> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(var: Var, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: C) -> Self {
        Self::new(var, vec![c])
    }

    pub fn monomial(var: Var, c: C, deg: usize) -> Self {
        let mut coeffs = vec![C::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(var, coeffs)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::new(self.var, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Self::new(self.var, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var);
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.var, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.var, self.coeffs.iter().map(C::neg).collect())
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&C::from_i64(i as i64)))
            .collect();
        Self::new(self.var, coeffs)
    }
}

impl<C: ExactDiv> UniPoly<C> {
    pub fn div_scalar_exact(&self, k: &C) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(k))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(self.var, coeffs))
    }
}

impl<C: Field> UniPoly<C> {
    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv = divisor.lead().and_then(C::inv).expect("non-zero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.var), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].mul(&inv);
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(d));
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(self.var, quot), Self::new(self.var, rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(C::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm: `(f_i, i)` with `self = c * prod f_i^i`, each `f_i` square-free.
    pub fn square_free(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            dd = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var.name())?,
                _ => write!(f, "({c})*{}^{i}", self.var.name())?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({}: {:?})", self.var.name(), self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;
    use crate::exactnum::Rational;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(Var::X, c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).div_rem(&a), (b.clone(), p(&[])));
        assert_eq!(p(&[0, 0, 3]).derivative(), p(&[0, 6]));
        assert_eq!(p(&[1, 2, 3]).eval(&int(2)), int(17));
    }

    #[test]
    fn yun() {
        // (x-1)^2 (x+2)^3 (x-5)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1]));
        let g = p(&[2, 1]).mul(&p(&[2, 1])).mul(&p(&[2, 1]));
        let h = f.mul(&g).mul(&p(&[-5, 1])).scale(&int(7));
        let sf = h.square_free();
        assert_eq!(sf, vec![(p(&[-5, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }
}
