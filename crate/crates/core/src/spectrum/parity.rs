//! Closed-form ladders of the two energy series as polynomials in `x`, `p`
//! and `S = sqrt(1 + 4 omega^2 / (hbar^2 kappa^2))`.

use num_traits::Zero;

use super::closed_form::Parity;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat};
use crate::exactnum::Surd;
use crate::mpoly::{MultiPoly, Substitution, Var};
use crate::params::ModelParams;

/// Overall constant `12884901888`, without the `hbar^20 kappa^8` factor.
pub const LADDER_CONSTANT: i64 = 12_884_901_888;

/// The ladder of one series as a polynomial in `X`, `P` and `S`.
pub fn ladder_polynomial(parity: Parity) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    let p = MultiPoly::var(Var::P);
    let s = MultiPoly::var(Var::S);
    let c = MultiPoly::int;
    let two_x = &x * &c(2);
    let two_p = &p * &c(2);
    let (tail, hi, lo) = match parity {
        Parity::Even => (&two_x - &two_p - c(1), &two_p + &two_x + c(1), &two_p + &two_x),
        Parity::Odd => (&two_x - &two_p - c(3), &two_p + &two_x + c(2), &two_p + &two_x + c(1)),
    };
    c(LADDER_CONSTANT)
        * &x
        * (&two_x - c(1))
        * (&x - &p - c(1))
        * tail
        * (&s - &two_x)
        * (&s - &two_x + c(1))
        * (&s - hi)
        * (&s - lo)
}

/// `p -> (2p + 1) / 2` applied to the even ladder.
pub fn shifted_even_ladder() -> MultiPoly {
    let half = MultiPoly::var(Var::P) + MultiPoly::constant(rat(1, 2));
    ladder_polynomial(Parity::Even).substitute(&Substitution::new().poly(Var::P, half))
}

/// Whether the shifted even ladder equals the odd ladder.
pub fn parity_identity_holds() -> bool {
    shifted_even_ladder() == ladder_polynomial(Parity::Odd)
}

/// `S` for the given parameters, in `Q(sqrt t)`.
pub fn s_value(params: &ModelParams) -> Result<Surd> {
    if params.kappa.is_zero() {
        return Err(Error::InvalidInput("S needs kappa != 0".into()));
    }
    let hk = &params.hbar * &params.kappa;
    Surd::sqrt_of(&(int(1) + int(4) * &params.omega_sq / (&hk * &hk)))
}

/// The ladder at the given parameters, a polynomial in `X` and `P`.
pub fn ladder_at(params: &ModelParams, parity: Parity) -> Result<MultiPoly> {
    let s = s_value(params)?;
    let h2 = &params.hbar * &params.hbar;
    let k2 = &params.kappa * &params.kappa;
    let scale = num_traits::pow(h2, 10) * num_traits::pow(k2, 4);
    if scale.is_zero() {
        return Err(Error::InvalidInput("degenerate parameters".into()));
    }
    Ok(ladder_polynomial(parity)
        .substitute(&Substitution::new().scalar(Var::S, s))
        .scale_rational(&scale))
}
