//! Closed-form `u` branches and energy formulas for the curved oscillator.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, square_free_split};
use crate::exactnum::{Rational, Surd};
use crate::params::ModelParams;

/// Which energy formula: `N = 2p + 1` or `N = 2p + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const ALL: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// `N(p)`.
    pub fn level(self, p: u32) -> i64 {
        match self {
            Parity::Even => 2 * p as i64 + 1,
            Parity::Odd => 2 * p as i64 + 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Sign in front of the square root in the energy formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SqrtSign {
    /// `E = hbar^2 kappa N^2 / 2 - (hbar N / 2) sqrt(hbar^2 kappa^2 + 4 omega^2)`.
    Minus,
    /// The same with `+` before the root.
    Plus,
}

impl SqrtSign {
    pub const ALL: [SqrtSign; 2] = [SqrtSign::Minus, SqrtSign::Plus];

    pub fn name(self) -> &'static str {
        match self {
            SqrtSign::Minus => "minus",
            SqrtSign::Plus => "plus",
        }
    }
}

impl fmt::Display for SqrtSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `hbar^2 kappa^2 + 4 omega^2`.
pub fn energy_radicand(params: &ModelParams) -> Rational {
    let hk = &params.hbar * &params.kappa;
    &hk * &hk + int(4) * &params.omega_sq
}

/// Square-free integer `t` with every closed-form quantity in `Q(sqrt t)`.
pub fn field_radicand(params: &ModelParams) -> BigInt {
    let t = energy_radicand(params);
    square_free_split(&(t.numer() * t.denom())).1
}

/// Energy formula for raw parameters (no positivity requirement on `omega^2`).
pub fn energy_from(
    hbar: &Rational,
    kappa: &Rational,
    omega_sq: &Rational,
    p: u32,
    parity: Parity,
    sign: SqrtSign,
) -> Result<Surd> {
    let n = int(parity.level(p));
    let hk = hbar * kappa;
    let root = Surd::sqrt_of(&(&hk * &hk + int(4) * omega_sq))?;
    let first = Surd::from_rational(hbar * hbar * kappa * &n * &n / int(2));
    let second = root.scale(&(hbar * &n / int(2)));
    Ok(match sign {
        SqrtSign::Minus => &first - &second,
        SqrtSign::Plus => &first + &second,
    })
}

pub fn energy_closed_form(p: u32, params: &ModelParams, parity: Parity, sign: SqrtSign) -> Surd {
    energy_from(&params.hbar, &params.kappa, &params.omega_sq, p, parity, sign)
        .expect("radicand is non-negative")
}

/// One of the eight closed-form `u` values.
#[derive(Debug, Clone, PartialEq)]
pub struct UValue {
    /// 1 to 8.
    pub branch: u8,
    pub exact: Option<Surd>,
    /// `None` when the value is complex.
    pub approx: Option<f64>,
}

impl UValue {
    pub fn is_real(&self) -> bool {
        self.approx.is_some()
    }

    pub fn label(&self) -> String {
        format!("u{}", self.branch)
    }
}

fn branch_pair(center: Rational, root: &Surd, den: &Rational) -> (Surd, Surd) {
    let d = root.scale(&den.recip());
    let c = Surd::from_rational(center);
    (&c - &d, &c + &d)
}

/// `u_1 .. u_8` at energy `e`.
pub fn closed_form_u(params: &ModelParams, e: &Surd) -> Result<[UValue; 8]> {
    if params.kappa.is_zero() {
        return Err(Error::InvalidInput("closed-form u needs kappa != 0".into()));
    }
    let h2 = &params.hbar * &params.hbar;
    let k2 = &params.kappa * &params.kappa;
    let t = &h2 * &h2 * &k2 * &k2 + int(4) * &h2 * &k2 * &params.omega_sq;
    let den = int(4) * &h2 * &k2;
    let root_t = Surd::sqrt_of(&t)?;
    let (u1, u2) = branch_pair(rat(1, 4), &root_t, &den);
    let (u4, u3) = branch_pair(rat(3, 4), &root_t, &den);
    let exact = |branch: u8, x: Surd| UValue { branch, approx: Some(x.to_f64()), exact: Some(x) };
    let fixed = [exact(1, u1), exact(2, u2), exact(3, u3), exact(4, u4)];

    let lin = int(8) * &h2 * &k2 * &params.kappa;
    let t_surd = Surd::from_rational(t.clone());
    let radicand = e.scale(&lin).try_add(&t_surd);
    let dependent: [UValue; 4] = match radicand {
        Ok(r) if r.is_negative() => [5, 6, 7, 8].map(|b| UValue { branch: b, exact: None, approx: None }),
        Ok(r) => match r.sqrt_exact() {
            Some(root) => {
                let (u5, u6) = branch_pair(rat(1, 4), &root, &den);
                let (u7, u8) = branch_pair(rat(3, 4), &root, &den);
                [exact(5, u5), exact(6, u6), exact(7, u7), exact(8, u8)]
            }
            None => float_dependent(r.to_f64(), &den),
        },
        Err(_) => {
            let r = e.to_f64() * crate::exactnum::rational::to_f64(&lin)
                + crate::exactnum::rational::to_f64(&t);
            if r < 0.0 {
                [5, 6, 7, 8].map(|b| UValue { branch: b, exact: None, approx: None })
            } else {
                float_dependent(r, &den)
            }
        }
    };
    let [a, b, c, d] = fixed;
    let [f, g, h, i] = dependent;
    Ok([a, b, c, d, f, g, h, i])
}

fn float_dependent(r: f64, den: &Rational) -> [UValue; 4] {
    let d = r.max(0.0).sqrt() / crate::exactnum::rational::to_f64(den);
    let v = |branch: u8, x: f64| UValue { branch, exact: None, approx: Some(x) };
    [v(5, 0.25 - d), v(6, 0.25 + d), v(7, 0.75 - d), v(8, 0.75 + d)]
}
