//! Structure functions `Phi(x, u, E)` of the deformed oscillator.

use num_traits::Zero;
use serde::Serialize;

use super::ladder::{gamma_zero_sqrt_epsilon, lattice_n, LadderBranch};
use super::model::{model_quantum_spec, CasimirPoly, QuadraticAlgebraSpec};
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat};
use crate::exactnum::{Rational, Surd};
use crate::mpoly::{MultiPoly, Var};
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Provenance {
    /// Assembled from the algebra coefficients.
    BuiltGeneric,
    /// The fully expanded model polynomial, transcribed term by term.
    Expanded,
    /// The product of four quadratic factors in `x + u`.
    Factorized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureFunction {
    pub phi: MultiPoly,
    pub branch: LadderBranch,
    pub provenance: Provenance,
}

impl StructureFunction {
    pub fn eval(&self, x: &Surd, u: &Surd, e: &Surd) -> Result<Surd> {
        self.phi
            .evaluate(&[(Var::X, x.clone()), (Var::U, u.clone()), (Var::E, e.clone())])
    }

    pub fn eval_f64(&self, x: f64, u: f64, e: f64) -> f64 {
        let mut pt = [0.0; crate::mpoly::NVARS];
        pt[Var::X.index()] = x;
        pt[Var::U.index()] = u;
        pt[Var::E.index()] = e;
        self.phi.eval_f64(&pt)
    }
}

/// Variants of the `gamma != 0` assembly formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GenericVariant {
    /// Weight the `(2n-3)^2 (2n-1)^4 (2n+1)^2` term by `3 alpha^2 + 4 a gamma` (otherwise by 1).
    pub weighted_octic: bool,
    /// Sign of the linear term in the factor `-1 +- 12 n + 12 n^2`.
    pub linear_sign: i8,
}

impl Default for GenericVariant {
    fn default() -> Self {
        GenericVariant { weighted_octic: true, linear_sign: -1 }
    }
}

impl GenericVariant {
    /// Unit weight and `+12 n`.
    pub fn unweighted_plus() -> Self {
        GenericVariant { weighted_octic: false, linear_sign: 1 }
    }
}

/// Coefficient of `n^4` on the `gamma = 0` branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum QuarticCoefficient {
    #[default]
    AlphaSquared,
    AlphaFourth,
}

fn k(c: impl Into<Surd>) -> MultiPoly {
    MultiPoly::constant(c)
}

fn q(n: i64, d: i64) -> MultiPoly {
    MultiPoly::constant(rat(n, d))
}

/// Builds `Phi` from the algebra and the Casimir value (a polynomial in `E`,
/// or the free symbol `Var::K`).
pub fn build_phi_generic(
    spec: &QuadraticAlgebraSpec,
    casimir: &MultiPoly,
    variant: GenericVariant,
) -> Result<MultiPoly> {
    spec.validate()?;
    if spec.gamma_is_zero() {
        return Err(Error::InvalidInput("generic assembly needs gamma != 0".into()));
    }
    let n = lattice_n();
    let one = MultiPoly::one();
    let two_n = n.scale(&Surd::from_int(2));
    let m1 = &two_n - &one;
    let m3 = &two_n - &k(int(3));
    let p1 = &two_n + &one;
    let (al, ga, a) = (k(spec.alpha.clone()), k(spec.gamma.clone()), k(spec.a.clone()));
    let (de, ep, d, ze, z) = (&spec.delta, &spec.epsilon, &spec.d, &spec.zeta, &spec.z);
    let g = |e: u32| ga.pow(e);
    let c = |v: i64| k(int(v));

    let t1 = &c(-3072) * &g(6) * casimir * m1.pow(2);
    let t2 = &c(-48)
        * &g(6)
        * (&al.pow(2) * ep - &al * de * &ga + &a * ep * &ga - d * &g(2))
        * &m3
        * m1.pow(4)
        * &p1;
    let weight = if variant.weighted_octic {
        &c(3) * &al.pow(2) + &c(4) * &a * &ga
    } else {
        one.clone()
    };
    let t3 = weight * g(8) * m3.pow(2) * m1.pow(4) * p1.pow(2);
    let t4 = &c(768) * (&al * &ep.pow(2) - &c(2) * de * ep * &ga + &c(4) * &g(2) * ze).pow(2);
    let lin = &c(-1) + &c(12 * variant.linear_sign as i64) * &n + &c(12) * &n.pow(2);
    let t5 = &c(32)
        * &g(4)
        * m1.pow(2)
        * lin
        * (&c(3) * &al.pow(2) * &ep.pow(2) - &c(6) * &al * de * ep * &ga
            + &c(2) * &a * &ep.pow(2) * &ga
            + &c(2) * &de.pow(2) * &g(2)
            - &c(4) * d * ep * &g(2)
            + &c(8) * &g(3) * z
            + &c(4) * &al * &g(2) * ze);
    let t6 = &c(-256)
        * &g(2)
        * m1.pow(2)
        * (&c(3) * &al.pow(2) * &ep.pow(3) - &c(9) * &al * de * &ep.pow(2) * &ga
            + &a * &ep.pow(3) * &ga
            + &c(6) * &de.pow(2) * ep * &g(2)
            - &c(3) * d * &ep.pow(2) * &g(2)
            + &c(2) * &de.pow(2) * &g(4)
            + &c(2) * d * ep * &g(4)
            + &c(12) * ep * &g(3) * z
            - &c(4) * &g(5) * z
            + &c(12) * &al * ep * &g(2) * ze
            - &c(12) * de * &g(3) * ze
            + &c(4) * &al * &g(4) * ze);
    Ok(t1 + t2 + t3 + t4 + t5 + t6)
}

/// `Phi` on the `gamma = 0` branch.
pub fn build_phi_gamma_zero(
    spec: &QuadraticAlgebraSpec,
    casimir: &MultiPoly,
    quartic: QuarticCoefficient,
) -> Result<MultiPoly> {
    spec.validate()?;
    if !spec.gamma_is_zero() {
        return Err(Error::InvalidInput("gamma = 0 assembly called with gamma != 0".into()));
    }
    let r = gamma_zero_sqrt_epsilon(spec)?;
    let eps = &r * &r;
    let ir = k(r.recip()?);
    let ie = k(eps.recip()?);
    let ie_r = &ie * &ir;
    let rr = k(r.clone());
    let n = lattice_n();
    let (al, a) = (k(spec.alpha.clone()), k(spec.a.clone()));
    let (de, d, ze, z) = (&spec.delta, &spec.d, &spec.zeta, &spec.z);
    let c = |v: i64| k(int(v));

    let c0 = &q(1, 4) * (&(-casimir) * &ie - z * &ir - &(de * ze) * &ie_r + &ze.pow(2) * &ie.pow(2));
    let c1 = &q(-1, 12)
        * (&c(3) * d - &a * &rr - &c(3) * &al * de * &ir + &c(3) * &de.pow(2) * &ie
            - &c(6) * z * &ir
            + &c(6) * &al * ze * &ie
            - &c(6) * de * ze * &ie_r);
    let c2 = &q(1, 4)
        * (al.pow(2) + d - &a * &rr - &c(3) * &al * de * &ir + &de.pow(2) * &ie
            + &c(2) * &al * ze * &ie);
    let c3 = &q(-1, 6) * (&c(3) * &al.pow(2) - &a * &rr - &c(3) * &al * de * &ir);
    let c4 = match quartic {
        QuarticCoefficient::AlphaSquared => &q(1, 4) * &al.pow(2),
        QuarticCoefficient::AlphaFourth => &q(1, 4) * &al.pow(4),
    };
    Ok(c0 + c1 * &n + c2 * n.pow(2) + c3 * n.pow(3) + c4 * n.pow(4))
}

/// Structure function for a general algebra, dispatching on `gamma`.
pub fn build_structure_function(spec: &QuadraticAlgebraSpec, casimir: &CasimirPoly) -> Result<StructureFunction> {
    let kpoly = casimir.as_poly();
    let (phi, branch) = if spec.gamma_is_zero() {
        (
            build_phi_gamma_zero(spec, &kpoly, QuarticCoefficient::default())?,
            LadderBranch::GammaZero,
        )
    } else {
        (
            build_phi_generic(spec, &kpoly, GenericVariant::default())?,
            LadderBranch::GammaNonzero,
        )
    };
    Ok(StructureFunction {
        phi,
        branch,
        provenance: Provenance::BuiltGeneric,
    })
}

/// Structure function of the curved oscillator from its algebra.
pub fn model_structure_function(params: &ModelParams) -> Result<StructureFunction> {
    let (spec, casimir) = model_quantum_spec(params);
    build_structure_function(&spec, &casimir)
}

struct ModelConsts {
    h2: Rational,
    h4: Rational,
    kappa: Rational,
    w2: Rational,
}

impl ModelConsts {
    fn new(p: &ModelParams) -> Self {
        let h2 = &p.hbar * &p.hbar;
        ModelConsts {
            h4: &h2 * &h2,
            h2,
            kappa: p.kappa.clone(),
            w2: p.omega_sq.clone(),
        }
    }
}

/// The expanded model polynomial, term by term.
pub fn expanded_phi(params: &ModelParams) -> Result<StructureFunction> {
    if params.kappa.is_zero() {
        return Err(Error::InvalidInput("the expanded form needs kappa != 0".into()));
    }
    let m = ModelConsts::new(params);
    let n = lattice_n();
    let one = MultiPoly::one();
    let e = MultiPoly::var(Var::E);
    let c = |v: i64| k(int(v));
    let r = |v: Rational| k(v);
    let two_n = n.scale(&Surd::from_int(2));
    let m1 = &two_n - &one;
    let m3 = &two_n - &c(3);
    let p1 = &two_n + &one;

    let a8 = r(int(8) * &m.h2);
    let g = r(int(8) * &m.h2 * &m.kappa);
    let d16 = r(int(16) * &m.h4);
    let eps = r(int(16) * &m.h2 * &m.w2 - int(16) * &m.h4 * &m.kappa * &m.kappa);
    let dlt = e.scale_rational(&(int(16) * &m.h2)) + r(int(8) * &m.h4 * &m.kappa);
    let zt = e.scale_rational(&(&m.kappa * int(16) * &m.h4)) + r(int(8) * &m.h4 * &m.w2);
    let z16 = e.scale_rational(&(int(16) * &m.h4));
    let gp = |p: u32| g.pow(p);

    let t1 = &c(3072)
        * &gp(6)
        * &d16
        * (&c(3) * &e.pow(2) + r(int(2) * &m.h2 * &m.w2) + e.scale_rational(&(int(6) * &m.kappa * &m.h2)))
        * m1.pow(2);
    let t2 = &c(-48)
        * &gp(6)
        * (&a8.pow(2) * &eps + &a8 * &g * &dlt - &gp(2) * &d16)
        * &m3
        * m1.pow(4)
        * &p1;
    let t3 = &c(3) * &a8.pow(2) * &gp(8) * m3.pow(2) * m1.pow(4) * p1.pow(2);
    let t4 = &c(768) * (&a8 * &eps.pow(2) + &c(2) * &dlt * &eps * &g + &c(4) * &gp(2) * &zt).pow(2);
    let t5 = &c(32)
        * &gp(4)
        * m1.pow(2)
        * (&c(-1) - &c(12) * &n + &c(12) * &n.pow(2))
        * (&c(3) * &a8.pow(2) * &eps.pow(2)
            + &c(6) * &a8 * &g * &dlt * &eps
            + &c(2) * &gp(2) * &dlt.pow(2)
            - &c(4) * &gp(2) * &d16 * &eps
            - &c(8) * &gp(3) * &z16
            + &c(4) * &a8 * &gp(2) * &zt);
    let t6 = &c(-256)
        * &gp(2)
        * m1.pow(2)
        * (&c(3) * &a8.pow(2) * &eps.pow(3)
            + &c(9) * &a8 * &g * &dlt * &eps.pow(2)
            + &c(6) * &dlt.pow(2) * &eps * &gp(2)
            - &c(3) * &d16 * &eps.pow(2) * &gp(2)
            + &c(2) * &dlt.pow(2) * &gp(4)
            + &c(2) * &d16 * &eps * &gp(4)
            - &c(12) * &eps * &gp(3) * &z16
            + &c(4) * &gp(5) * &z16
            + &c(12) * &a8 * &gp(2) * &eps * &zt
            + &c(12) * &dlt * &gp(3) * &zt
            + &c(4) * &a8 * &gp(4) * &zt);
    Ok(StructureFunction {
        phi: t1 + t2 + t3 + t4 + t5 + t6,
        branch: LadderBranch::GammaNonzero,
        provenance: Provenance::Expanded,
    })
}

/// The four quadratic factors in `n = x + u`, without the overall constant.
pub fn model_factors(params: &ModelParams) -> [MultiPoly; 4] {
    let m = ModelConsts::new(params);
    let n = lattice_n();
    let e = MultiPoly::var(Var::E);
    let hk2 = &m.h2 * &m.kappa * &m.kappa;
    let quad = |lin: i64| {
        n.pow(2).scale_rational(&(int(4) * &hk2)) + n.scale_rational(&(int(lin) * &hk2))
    };
    let w2 = k(m.w2.clone());
    let ek = e.scale_rational(&(int(-2) * &m.kappa));
    let two_hk2 = k(int(2) * &hk2);
    [
        &two_hk2 - &w2 + quad(-6),
        &ek + &two_hk2 - &w2 + quad(-6),
        -&w2 + quad(-2),
        &ek - &w2 + quad(-2),
    ]
}

/// `3221225472 hbar^12` times the product of the four factors.
pub fn factorized_phi(params: &ModelParams) -> Result<StructureFunction> {
    if params.kappa.is_zero() {
        return Err(Error::InvalidInput("the factorized form needs kappa != 0".into()));
    }
    let m = ModelConsts::new(params);
    let h12 = m.h4.clone() * &m.h4 * &m.h4;
    let [f1, f2, f3, f4] = model_factors(params);
    let phi = (f1 * f2 * f3 * f4).scale_rational(&(int(3_221_225_472) * h12));
    Ok(StructureFunction {
        phi,
        branch: LadderBranch::GammaNonzero,
        provenance: Provenance::Factorized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expanded_equals_factorized() {
        let p = ModelParams::ints(1, 1, 1).unwrap();
        assert_eq!(expanded_phi(&p).unwrap().phi, factorized_phi(&p).unwrap().phi);
    }

    #[test]
    fn model_degrees() {
        let p = ModelParams::ints(1, -1, 4).unwrap();
        let phi = model_structure_function(&p).unwrap().phi;
        assert_eq!(phi.degree(Var::X), 8);
        assert_eq!(phi.degree(Var::U), 8);
        assert_eq!(phi.degree(Var::E), 2);
    }

    #[test]
    fn flat_branch_roots() {
        // hbar = omega = 1, kappa = 0: Phi(0) vanishes at u = 1/4 and at 2E = 4u - 1
        let p = ModelParams::ints(1, 0, 1).unwrap();
        let sf = model_structure_function(&p).unwrap();
        assert_eq!(sf.branch, LadderBranch::GammaZero);
        let u = Surd::from_rational(rat(1, 4));
        let v = sf.eval(&Surd::zero(), &u, &Surd::from_int(7)).unwrap();
        assert!(v.is_zero());
        let e = Surd::from_rational(rat(7, 2));
        let v = sf.eval(&Surd::zero(), &Surd::from_int(2), &e).unwrap();
        assert!(v.is_zero());
    }
}
