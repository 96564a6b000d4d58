//! Model parameters shared by the classical, algebraic and numerical modules.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};

/// How the curvature `kappa` relates to the nonlinearity `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum CurvatureConvention {
    /// `kappa = -lambda`.
    #[default]
    KappaMinusLambda,
    /// `kappa = lambda`.
    KappaPlusLambda,
}

impl CurvatureConvention {
    pub const ALL: [CurvatureConvention; 2] = [Self::KappaMinusLambda, Self::KappaPlusLambda];

    pub fn sign(self) -> i64 {
        match self {
            Self::KappaMinusLambda => -1,
            Self::KappaPlusLambda => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::KappaMinusLambda => "kappa=-lambda",
            Self::KappaPlusLambda => "kappa=+lambda",
        }
    }
}

impl fmt::Display for CurvatureConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurvatureConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kappa=-lambda" | "minus" | "kappa-minus-lambda" => Ok(Self::KappaMinusLambda),
            "kappa=+lambda" | "plus" | "kappa-plus-lambda" => Ok(Self::KappaPlusLambda),
            _ => Err(Error::InvalidInput(format!("unknown convention {s:?}"))),
        }
    }
}

/// Exact model parameters: `hbar`, curvature `kappa`, and `omega^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelParams {
    pub hbar: Rational,
    pub kappa: Rational,
    pub omega_sq: Rational,
    pub convention: CurvatureConvention,
}

impl ModelParams {
    pub fn new(hbar: Rational, kappa: Rational, omega_sq: Rational) -> Result<Self> {
        Self::with_convention(hbar, kappa, omega_sq, CurvatureConvention::default())
    }

    pub fn with_convention(
        hbar: Rational,
        kappa: Rational,
        omega_sq: Rational,
        convention: CurvatureConvention,
    ) -> Result<Self> {
        if !hbar.is_positive() {
            return Err(Error::InvalidInput(format!("hbar must be positive, got {hbar}")));
        }
        if !omega_sq.is_positive() {
            return Err(Error::InvalidInput(format!("omega^2 must be positive, got {omega_sq}")));
        }
        Ok(ModelParams { hbar, kappa, omega_sq, convention })
    }

    pub fn from_lambda(
        hbar: Rational,
        lambda: Rational,
        omega_sq: Rational,
        convention: CurvatureConvention,
    ) -> Result<Self> {
        let kappa = lambda * rational::int(convention.sign());
        Self::with_convention(hbar, kappa, omega_sq, convention)
    }

    /// Integer shorthand `(hbar, kappa, omega^2)`.
    pub fn ints(hbar: i64, kappa: i64, omega_sq: i64) -> Result<Self> {
        Self::new(rational::int(hbar), rational::int(kappa), rational::int(omega_sq))
    }

    pub fn lambda(&self) -> Rational {
        &self.kappa * rational::int(self.convention.sign())
    }

    pub fn is_flat(&self) -> bool {
        self.kappa.is_zero()
    }

    pub fn hbar_f64(&self) -> f64 {
        rational::to_f64(&self.hbar)
    }

    pub fn kappa_f64(&self) -> f64 {
        rational::to_f64(&self.kappa)
    }

    pub fn lambda_f64(&self) -> f64 {
        rational::to_f64(&self.lambda())
    }

    pub fn omega_sq_f64(&self) -> f64 {
        rational::to_f64(&self.omega_sq)
    }

    pub fn omega_f64(&self) -> f64 {
        self.omega_sq_f64().sqrt()
    }

    /// Same physical system read under the other curvature convention.
    pub fn reinterpreted(&self, convention: CurvatureConvention) -> Self {
        let lambda = self.lambda();
        ModelParams {
            kappa: lambda * rational::int(convention.sign()),
            convention,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        let p = ModelParams::from_lambda(
            rational::int(1),
            rational::rat(1, 10),
            rational::int(1),
            CurvatureConvention::KappaMinusLambda,
        )
        .unwrap();
        assert_eq!(p.kappa, rational::rat(-1, 10));
        assert_eq!(p.lambda(), rational::rat(1, 10));
        let q = p.reinterpreted(CurvatureConvention::KappaPlusLambda);
        assert_eq!(q.kappa, rational::rat(1, 10));
        assert_eq!(q.lambda(), p.lambda());
        assert!(ModelParams::ints(0, 1, 1).is_err());
        assert!(ModelParams::ints(1, 1, 0).is_err());
    }
}
