//! Deformed-oscillator realisation `A(N)`, `b(N)`, `rho(N)` of a quadratic algebra.
//!
//! All functions are expressed in `n = x + u`, with `x` the lattice index
//! (`Var::X`) and `u` the representation parameter (`Var::U`).

use serde::Serialize;

use super::model::QuadraticAlgebraSpec;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat};
use crate::exactnum::Surd;
use crate::mpoly::{MultiPoly, RationalFn, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LadderBranch {
    GammaNonzero,
    /// `gamma = 0` with a constant `epsilon > 0`.
    GammaZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderRealization {
    pub a_of_n: MultiPoly,
    pub b_of_n: RationalFn,
    pub rho_of_n: RationalFn,
    pub branch: LadderBranch,
    /// `sqrt(epsilon)` on the `gamma = 0` branch.
    pub sqrt_epsilon: Option<Surd>,
}

/// `x + u`.
pub fn lattice_n() -> MultiPoly {
    MultiPoly::var(Var::X) + MultiPoly::var(Var::U)
}

fn s(r: crate::exactnum::Rational) -> Surd {
    Surd::from_rational(r)
}

/// The constant `epsilon > 0` required on the `gamma = 0` branch.
pub fn gamma_zero_sqrt_epsilon(spec: &QuadraticAlgebraSpec) -> Result<Surd> {
    let eps = spec.epsilon.constant_value().ok_or_else(|| {
        Error::UnsupportedBranch("gamma = 0 with an energy-dependent epsilon".into())
    })?;
    if !eps.is_positive() {
        return Err(Error::UnsupportedBranch(format!(
            "gamma = 0 requires epsilon > 0, got {eps}"
        )));
    }
    eps.sqrt_exact()
        .ok_or_else(|| Error::UnsupportedBranch(format!("sqrt({eps}) is not a quadratic surd")))
}

pub fn build_ladder(spec: &QuadraticAlgebraSpec) -> Result<LadderRealization> {
    spec.validate()?;
    let n = lattice_n();
    let n2 = n.pow(2);
    if spec.gamma_is_zero() {
        let root = gamma_zero_sqrt_epsilon(spec)?;
        let eps = &root * &root;
        let a_of_n = n.scale(&root);
        let b = -&n2.scale(&spec.alpha)
            - (&spec.delta * &n).scale(&root.recip()?)
            - spec.zeta.scale(&eps.recip()?);
        return Ok(LadderRealization {
            a_of_n,
            b_of_n: RationalFn::poly(b),
            rho_of_n: RationalFn::constant(Surd::one()),
            branch: LadderBranch::GammaZero,
            sqrt_epsilon: Some(root),
        });
    }
    let g = &spec.gamma;
    let g2 = g * g;
    let g4 = &g2 * &g2;
    let quarter = MultiPoly::constant(rat(1, 4));
    let n2q = &n2 - &quarter;
    let a_of_n = (&n2q - &spec.epsilon.scale(&g2.recip()?)).scale(&(g * &s(rat(1, 2))));

    let alpha = MultiPoly::constant(spec.alpha.clone());
    let gamma = MultiPoly::constant(g.clone());
    let poly_part = n2q.scale(&(-&spec.alpha * s(rat(1, 4))))
        + (&alpha * &spec.epsilon - &spec.delta * &gamma).scale(&(&g2 * &s(int(2))).recip()?);
    let pole_num = &alpha * &spec.epsilon.pow(2) - (&spec.epsilon * &spec.delta * &gamma).scale(&Surd::from_int(2))
        + (&MultiPoly::constant(g2.clone()) * &spec.zeta).scale(&Surd::from_int(4));
    let b_of_n = RationalFn::poly(poly_part).sub(&RationalFn::new(pole_num, n2q.scale(&(&g4 * &s(int(4)))))?);

    let rho_den = (&n * &(&n + &MultiPoly::one()) * (&n.scale(&Surd::from_int(2)) + MultiPoly::one()).pow(2))
        .scale(&(g.pow(8) * s(int(3 * 4096))));
    let rho_of_n = RationalFn::new(MultiPoly::one(), rho_den)?;
    Ok(LadderRealization {
        a_of_n,
        b_of_n,
        rho_of_n,
        branch: LadderBranch::GammaNonzero,
        sqrt_epsilon: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use crate::qalgebra::model::model_quantum_spec;

    #[test]
    fn unit_model_a() {
        let (spec, _) = model_quantum_spec(&ModelParams::ints(1, 1, 1).unwrap());
        let l = build_ladder(&spec).unwrap();
        let n = lattice_n();
        let expect = (n.pow(2) - MultiPoly::constant(rat(1, 4))).scale(&Surd::from_int(4));
        assert_eq!(l.a_of_n, expect);
        assert_eq!(l.branch, LadderBranch::GammaNonzero);
    }

    #[test]
    fn gamma_zero_example() {
        let spec = QuadraticAlgebraSpec {
            alpha: Surd::from_int(8),
            gamma: Surd::zero(),
            a: Surd::zero(),
            delta: MultiPoly::zero(),
            epsilon: MultiPoly::int(16),
            d: MultiPoly::zero(),
            zeta: MultiPoly::zero(),
            z: MultiPoly::zero(),
        };
        let l = build_ladder(&spec).unwrap();
        let n = lattice_n();
        assert_eq!(l.a_of_n, n.scale(&Surd::from_int(4)));
        assert_eq!(l.b_of_n.as_poly().unwrap(), n.pow(2).scale(&Surd::from_int(-8)));
        let bad = QuadraticAlgebraSpec { epsilon: MultiPoly::int(-1), ..spec };
        assert!(matches!(build_ladder(&bad), Err(Error::UnsupportedBranch(_))));
    }
}
