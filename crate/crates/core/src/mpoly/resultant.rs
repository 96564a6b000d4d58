//! Sylvester resultants via fraction-free elimination.

use super::coeff::{Coeff, ExactDiv};
use super::multipoly::{MultiPoly, Var};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

pub fn sylvester_matrix<C: Coeff>(p: &UniPoly<C>, q: &UniPoly<C>) -> Vec<Vec<C>> {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![C::zero(); size];
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![C::zero(); size];
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn determinant_bareiss<C: ExactDiv>(mut a: Vec<Vec<C>>) -> Result<C> {
    let n = a.len();
    if n == 0 {
        return Ok(C::one());
    }
    let mut sign = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(C::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Domain("inexact division in fraction-free elimination".into())
                })?;
            }
            a[i][k] = C::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// `res_v(p, q)` for polynomials collected in `v`.
pub fn resultant(p: &UniPoly<MultiPoly>, q: &UniPoly<MultiPoly>) -> Result<MultiPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidInput("resultant of a zero polynomial".into()));
    }
    let (m, n) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    match (m, n) {
        (0, 0) => Err(Error::InvalidInput(format!(
            "both polynomials are constant in {}",
            p.var().name()
        ))),
        (0, _) => Ok(p.coeff(0).pow(n as u32)),
        (_, 0) => Ok(q.coeff(0).pow(m as u32)),
        _ => determinant_bareiss(sylvester_matrix(p, q)),
    }
}

/// Eliminates `v` from two multivariate polynomials.
pub fn resultant_in(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly> {
    resultant(&p.collect(v), &q.collect(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Surd;

    #[test]
    fn circle_and_line() {
        // x^2 + u^2 - 1 and x - u, eliminate u: 2x^2 - 1
        let x = MultiPoly::var(Var::X);
        let u = MultiPoly::var(Var::U);
        let c = &(&x * &x + &u * &u) - &MultiPoly::int(1);
        let l = &x - &u;
        let r = resultant_in(&c, &l, Var::U).unwrap();
        assert_eq!(r, &(&x * &x).scale(&Surd::from_int(2)) - &MultiPoly::int(1));
    }

    #[test]
    fn constant_cases() {
        let x = MultiPoly::var(Var::X);
        let u = MultiPoly::var(Var::U);
        let r = resultant_in(&MultiPoly::int(3), &(&u * &u), Var::U).unwrap();
        assert_eq!(r, MultiPoly::int(9));
        assert!(resultant_in(&x, &MultiPoly::int(2), Var::U).is_err());
    }
}
