//! Algebra coefficients and the Casimir for the curved oscillator.

use crate::error::{Error, Result};
use crate::exactnum::rational::int;
use crate::exactnum::{Rational, Surd};
use crate::mpoly::{MultiPoly, Var};
use crate::params::ModelParams;

/// Coefficients of a quadratic associative algebra, polynomial in the energy `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticAlgebraSpec {
    pub alpha: Surd,
    pub gamma: Surd,
    pub a: Surd,
    pub delta: MultiPoly,
    pub epsilon: MultiPoly,
    pub d: MultiPoly,
    pub zeta: MultiPoly,
    pub z: MultiPoly,
}

impl QuadraticAlgebraSpec {
    /// Checks that only `E` occurs, with degree at most 1 in `delta, epsilon, d`
    /// and at most 2 in `zeta, z`.
    pub fn validate(&self) -> Result<()> {
        let only_e = |p: &MultiPoly| Var::ALL.iter().all(|&v| v == Var::E || !p.contains(v));
        let bounded = [
            ("delta", &self.delta, 1),
            ("epsilon", &self.epsilon, 1),
            ("d", &self.d, 1),
            ("zeta", &self.zeta, 2),
            ("z", &self.z, 2),
        ];
        for (name, p, max) in bounded {
            if !only_e(p) || p.degree(Var::E) > max {
                return Err(Error::InvalidInput(format!(
                    "{name} must be a polynomial of degree <= {max} in E, got {p}"
                )));
            }
        }
        Ok(())
    }

    pub fn gamma_is_zero(&self) -> bool {
        self.gamma.is_zero()
    }
}

/// `K(E) = k0 + k1 E + k2 E^2 + k3 E^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirPoly {
    pub k: [Surd; 4],
}

impl CasimirPoly {
    pub fn as_poly(&self) -> MultiPoly {
        let e = MultiPoly::var(Var::E);
        self.k
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(), |acc, (i, c)| acc + e.pow(i as u32).scale(c))
    }

    pub fn eval(&self, e: &Surd) -> Surd {
        self.k
            .iter()
            .rev()
            .fold(Surd::zero(), |acc, c| &(&acc * e) + c)
    }
}

fn konst(r: Rational) -> MultiPoly {
    MultiPoly::constant(r)
}

/// Algebra and Casimir of the curved oscillator at the given parameters.
pub fn model_quantum_spec(params: &ModelParams) -> (QuadraticAlgebraSpec, CasimirPoly) {
    let h2 = &params.hbar * &params.hbar;
    let h4 = &h2 * &h2;
    let h6 = &h4 * &h2;
    let k = &params.kappa;
    let w2 = &params.omega_sq;
    let e = MultiPoly::var(Var::E);

    let alpha = Surd::from_rational(int(8) * &h2);
    let gamma = Surd::from_rational(int(8) * &h2 * k);
    let delta = e.scale_rational(&(int(-16) * &h2)) + konst(int(-8) * &h4 * k);
    let epsilon = konst(int(16) * &h2 * (w2 - &h2 * k * k));
    let zeta = e.scale_rational(&(int(16) * &h4 * k)) + konst(int(8) * &h4 * w2);
    let d = konst(int(16) * &h4);
    let z = e.scale_rational(&(int(-16) * &h4));
    let spec = QuadraticAlgebraSpec {
        alpha,
        gamma,
        a: Surd::zero(),
        delta,
        epsilon,
        d,
        zeta,
        z,
    };
    let casimir = CasimirPoly {
        k: [
            Surd::from_rational(int(-32) * &h6 * w2),
            Surd::from_rational(int(-96) * &h6 * k),
            Surd::from_rational(int(-48) * &h4),
            Surd::zero(),
        ],
    };
    (spec, casimir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_parameters() {
        let (spec, k) = model_quantum_spec(&ModelParams::ints(1, 1, 1).unwrap());
        assert_eq!(spec.gamma, Surd::from_int(8));
        assert!(spec.epsilon.is_zero());
        let e = MultiPoly::var(Var::E);
        let expect = e.pow(2).scale(&Surd::from_int(-48)) - e.scale(&Surd::from_int(96)) - MultiPoly::int(32);
        assert_eq!(k.as_poly(), expect);
        spec.validate().unwrap();
    }

    #[test]
    fn flat_and_negative_curvature() {
        let (spec, _) = model_quantum_spec(&ModelParams::ints(1, 0, 1).unwrap());
        assert!(spec.gamma_is_zero());
        assert_eq!(spec.epsilon, MultiPoly::int(16));
        let (spec, _) = model_quantum_spec(&ModelParams::ints(1, -1, 4).unwrap());
        let e = MultiPoly::var(Var::E);
        assert_eq!(spec.delta, (e.scale(&Surd::from_int(2)) - MultiPoly::int(1)).scale(&Surd::from_int(-8)));
        assert_eq!(spec.zeta, MultiPoly::int(32) - e.scale(&Surd::from_int(16)));
    }
}
