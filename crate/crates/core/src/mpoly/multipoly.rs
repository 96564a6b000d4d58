//! Sparse multivariate polynomials with surd coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::coeff::{Coeff, ExactDiv};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, Surd};

pub const NVARS: usize = 6;

/// Polynomial variables, listed from highest to lowest in the term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    U,
    E,
    P,
    /// A free symbol standing for a square root.
    S,
    /// The Casimir value, kept symbolic before substitution.
    K,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::U, Var::E, Var::P, Var::S, Var::K];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::U => "u",
            Var::E => "E",
            Var::P => "p",
            Var::S => "s",
            Var::K => "K",
        }
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(m))
    }

    pub fn with(&self, v: Var, e: u16) -> Self {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Surd>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Surd::one())
    }

    pub fn constant(c: impl Into<Surd>) -> Self {
        Self::term(c.into(), Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Surd::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Surd::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Surd, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Surd)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Surd) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Surd)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Surd {
        self.terms.get(m).cloned().unwrap_or_else(Surd::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Surd)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Surd> {
        self.is_constant()
            .then(|| self.coeff(&Monomial::one()))
    }

    pub fn degree(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.degree(v) > 0
    }

    pub fn scale(&self, k: &Surd) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        self.scale(&Surd::from_rational(k.clone()))
    }

    pub fn mul_monomial(&self, c: &Surd, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variables by polynomials; unbound variables stay.
    pub fn substitute(&self, subs: &Substitution) -> Self {
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); NVARS];
        for v in Var::ALL {
            if let Some(q) = &subs.0[v.index()] {
                let d = self.degree(v) as usize;
                let mut pw = Vec::with_capacity(d + 1);
                pw.push(Self::one());
                for i in 1..=d {
                    let next = &pw[i - 1] * q;
                    pw.push(next);
                }
                powers[v.index()] = pw;
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = *m;
            let mut factor = Self::constant(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 && subs.0[v.index()].is_some() {
                    kept = kept.with(v, 0);
                    factor = &factor * &powers[v.index()][e as usize];
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), &fc);
            }
        }
        out
    }

    /// Evaluates with every variable present bound to a scalar.
    pub fn evaluate(&self, point: &[(Var, Surd)]) -> Result<Surd> {
        let mut subs = Substitution::new();
        for (v, x) in point {
            subs = subs.scalar(*v, x.clone());
        }
        let r = self.substitute(&subs);
        r.constant_value().ok_or_else(|| {
            let free: Vec<_> = Var::ALL
                .iter()
                .filter(|v| r.contains(**v))
                .map(|v| v.name())
                .collect();
            Error::InvalidInput(format!("unbound variables {free:?}"))
        })
    }

    /// Floating-point evaluation; `point` is indexed by `Var::index`.
    pub fn eval_f64(&self, point: &[f64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64() * mono_f64(m, point))
            .sum()
    }

    /// Sum of absolute term values, a scale for relative residuals.
    pub fn abs_scale(&self, point: &[f64; NVARS]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| (c.to_f64() * mono_f64(m, point)).abs())
            .sum()
    }

    /// Views the polynomial as univariate in `v`.
    pub fn collect(&self, v: Var) -> UniPoly<MultiPoly> {
        let d = self.degree(v) as usize;
        let mut coeffs = vec![Self::zero(); d + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(v) as usize].add_term(m.with(v, 0), c);
        }
        UniPoly::new(v, coeffs)
    }

    pub fn from_collected(p: &UniPoly<MultiPoly>) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            for (m, x) in &c.terms {
                out.add_term(m.with(p.var(), m.exp(p.var()) + i as u16), x);
            }
        }
        out
    }

    /// Univariate view with scalar coefficients, if only `v` occurs.
    pub fn to_univariate(&self, v: Var) -> Option<UniPoly<Surd>> {
        let d = self.degree(v) as usize;
        let mut coeffs = vec![Surd::zero(); d + 1];
        for (m, c) in &self.terms {
            if m.with(v, 0) != Monomial::one() {
                return None;
            }
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Some(UniPoly::new(v, coeffs))
    }

    pub fn from_univariate(p: &UniPoly<Surd>) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(p.var(), i as u16), c.clone())),
        )
    }

    /// Exact quotient by leading-term division.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c.try_div(lc).ok()?;
            rem = &rem - &divisor.mul_monomial(&qc, &qm);
            q.add_term(qm, &qc);
        }
        Some(q)
    }
}

fn mono_f64(m: &Monomial, point: &[f64; NVARS]) -> f64 {
    m.0.iter()
        .zip(point)
        .filter(|(e, _)| **e > 0)
        .map(|(&e, &x)| x.powi(e as i32))
        .product()
}

/// Variable bindings for `MultiPoly::substitute`.
#[derive(Debug, Clone, Default)]
pub struct Substitution([Option<MultiPoly>; NVARS]);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn poly(mut self, v: Var, q: MultiPoly) -> Self {
        self.0[v.index()] = Some(q);
        self
    }

    pub fn scalar(self, v: Var, x: impl Into<Surd>) -> Self {
        self.poly(v, MultiPoly::constant(x.into()))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let simple = c.is_rational();
            match (m.degree(), simple) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "{c}*{m}")?,
                (_, false) => write!(f, "({c})*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn from_i64(n: i64) -> Self {
        MultiPoly::int(n)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
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

impl ExactDiv for MultiPoly {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn u() -> MultiPoly {
        MultiPoly::var(Var::U)
    }

    #[test]
    fn expand_and_order() {
        let p = (x() + u()).pow(2);
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&Monomial([1, 1, 0, 0, 0, 0])), Surd::from_int(2));
        let (lm, _) = p.leading_term().unwrap();
        assert_eq!(*lm, Monomial::var(Var::X, 2));
        assert_eq!(p.to_string(), "1*x^2 + 2*x*u + 1*u^2");
    }

    #[test]
    fn substitute_and_evaluate() {
        let p = &x() * &x() - &u();
        let q = p.substitute(&Substitution::new().poly(Var::X, u() + MultiPoly::int(1)));
        assert_eq!(q, u().pow(2) + u() + MultiPoly::int(1));
        let v = p
            .evaluate(&[(Var::X, Surd::from_rational(rat(1, 2))), (Var::U, Surd::from_int(3))])
            .unwrap();
        assert_eq!(v, Surd::from_rational(rat(-11, 4)));
        assert!(p.evaluate(&[(Var::X, Surd::one())]).is_err());
    }

    #[test]
    fn collect_round_trip() {
        let p = (x() + u() + MultiPoly::var(Var::E)).pow(3);
        let c = p.collect(Var::U);
        assert_eq!(c.degree(), Some(3));
        assert_eq!(MultiPoly::from_collected(&c), p);
    }

    #[test]
    fn exact_division() {
        let a = x() + u() * MultiPoly::int(2);
        let b = x() - u() + MultiPoly::int(3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!((&prod + &MultiPoly::int(1)).div_exact(&b).is_none());
    }
}
