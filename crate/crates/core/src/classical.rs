//! Classical integrals of motion and finite-difference Poisson brackets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{CurvatureConvention, ModelParams};

/// Floating-point view of the parameters used in phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalParams {
    pub lambda: f64,
    pub kappa: f64,
    pub omega_sq: f64,
}

impl ClassicalParams {
    pub fn new(lambda: f64, omega_sq: f64, convention: CurvatureConvention) -> Self {
        ClassicalParams {
            lambda,
            kappa: lambda * convention.sign() as f64,
            omega_sq,
        }
    }
}

impl From<&ModelParams> for ClassicalParams {
    fn from(p: &ModelParams) -> Self {
        ClassicalParams {
            lambda: p.lambda_f64(),
            kappa: p.kappa_f64(),
            omega_sq: p.omega_sq_f64(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

impl PhasePoint {
    pub fn new(x: f64, y: f64, px: f64, py: f64) -> Self {
        PhasePoint { x, y, px, py }
    }

    fn shifted(&self, i: usize, h: f64) -> Self {
        let mut z = [self.x, self.y, self.px, self.py];
        z[i] += h;
        PhasePoint::new(z[0], z[1], z[2], z[3])
    }

    pub fn metric_factor(&self, lambda: f64) -> f64 {
        1.0 + lambda * (self.x * self.x + self.y * self.y)
    }
}

/// Values of the integrals and constraints at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalInvariantSet {
    pub h: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub c: [f64; 5],
    pub f1: f64,
    pub f2: f64,
}

fn check_domain(pt: &PhasePoint, lambda: f64) -> Result<f64> {
    let f = pt.metric_factor(lambda);
    if f > 0.0 {
        Ok(f)
    } else {
        Err(Error::Domain(format!(
            "1 + lambda r^2 = {f} at ({}, {})",
            pt.x, pt.y
        )))
    }
}

pub fn eval_observables(pt: &PhasePoint, params: &ClassicalParams) -> Result<ClassicalInvariantSet> {
    let f = check_domain(pt, params.lambda)?;
    let w2 = params.omega_sq;
    let PhasePoint { x, y, px, py } = *pt;
    let h1 = 0.5 * (f * px * px + w2 * x * x / f);
    let h2 = 0.5 * (f * py * py + w2 * y * y / f);
    let l = x * py - y * px;
    let h3 = 0.5 * l * l;
    let radial = x * px + y * py;
    let h = 0.5 * (px * px + py * py + params.lambda * radial * radial)
        + 0.5 * w2 * (x * x + y * y) / f;
    let c5 = f * px * py + w2 * x * y / f;
    let f1 = h - (h1 + h2 + 0.5 * params.kappa * l * l);
    let f2 = 2.0 * h1 * h2 - 0.5 * w2 * l * l - 0.5 * c5 * c5;
    Ok(ClassicalInvariantSet {
        h,
        h1,
        h2,
        h3,
        c: [h, h1, h2, l, c5],
        f1,
        f2,
    })
}

/// Phase-space functions, including nested brackets with their own step.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    X,
    Y,
    Px,
    Py,
    H,
    H1,
    H2,
    H3,
    C4,
    C5,
    /// `2 H1`.
    A,
    /// `2 H3`.
    B,
    Bracket(Box<Observable>, Box<Observable>, f64),
}

impl Observable {
    pub fn c(i: usize) -> Observable {
        match i {
            1 => Observable::H,
            2 => Observable::H1,
            3 => Observable::H2,
            4 => Observable::C4,
            5 => Observable::C5,
            _ => panic!("C{i} is not defined"),
        }
    }

    pub fn bracket(f: Observable, g: Observable, step: f64) -> Observable {
        Observable::Bracket(Box::new(f), Box::new(g), step)
    }

    pub fn eval(&self, pt: &PhasePoint, params: &ClassicalParams) -> Result<f64> {
        let v = match self {
            Observable::X => pt.x,
            Observable::Y => pt.y,
            Observable::Px => pt.px,
            Observable::Py => pt.py,
            Observable::Bracket(f, g, h) => return poisson_bracket(f, g, pt, params, *h),
            _ => {
                let s = eval_observables(pt, params)?;
                match self {
                    Observable::H => s.h,
                    Observable::H1 => s.h1,
                    Observable::H2 => s.h2,
                    Observable::H3 => s.h3,
                    Observable::C4 => s.c[3],
                    Observable::C5 => s.c[4],
                    Observable::A => 2.0 * s.h1,
                    Observable::B => 2.0 * s.h3,
                    _ => unreachable!(),
                }
            }
        };
        Ok(v)
    }
}

/// Central difference with one Richardson level.
fn partial(f: &Observable, pt: &PhasePoint, params: &ClassicalParams, i: usize, h: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> {
        let plus = f.eval(&pt.shifted(i, h), params)?;
        let minus = f.eval(&pt.shifted(i, -h), params)?;
        Ok((plus - minus) / (2.0 * h))
    };
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `{f, g}` with the canonical pairs `(x, px)` and `(y, py)`.
pub fn poisson_bracket(
    f: &Observable,
    g: &Observable,
    pt: &PhasePoint,
    params: &ClassicalParams,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidInput(format!("finite-difference step {step}")));
    }
    let mut total = 0.0;
    for (q, p) in [(0, 2), (1, 3)] {
        let fq = partial(f, pt, params, q, step)?;
        let gp = partial(g, pt, params, p, step)?;
        let fp = partial(f, pt, params, p, step)?;
        let gq = partial(g, pt, params, q, step)?;
        total += fq * gp - fp * gq;
    }
    Ok(total)
}

/// Finite-difference steps by nesting depth, innermost first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepSchedule {
    pub single: f64,
    pub nested: [f64; 3],
}

impl Default for StepSchedule {
    fn default() -> Self {
        StepSchedule {
            single: 1e-5,
            nested: [1e-4, 2e-3, 2e-2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalTolerances {
    pub algebra: f64,
    pub conservation: f64,
    pub constraint: f64,
}

impl Default for ClassicalTolerances {
    fn default() -> Self {
        ClassicalTolerances {
            algebra: 1e-5,
            conservation: 1e-6,
            constraint: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRow {
    pub identity: String,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionResiduals {
    pub convention: CurvatureConvention,
    pub kappa: f64,
    pub rows: Vec<ResidualRow>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonReport {
    pub lambda: f64,
    pub omega_sq: f64,
    pub n_points: usize,
    pub seed: u64,
    pub conventions: Vec<ConventionResiduals>,
    /// The convention whose residuals all vanish, when exactly one does.
    pub recorded: Option<CurvatureConvention>,
}

/// Uniform points in `|x|,|y| <= 0.5`, `|px|,|py| <= 1` with a positive metric factor.
pub fn sample_points(lambda: f64, n: usize, seed: u64) -> Vec<PhasePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0usize;
    while out.len() < n && tries < 1000 * n.max(1) {
        tries += 1;
        let pt = PhasePoint::new(
            rng.gen_range(-0.5..=0.5),
            rng.gen_range(-0.5..=0.5),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        // keep the widest stencil inside the domain
        let margin = 0.1;
        let far = PhasePoint::new(
            pt.x.abs() + margin,
            pt.y.abs() + margin,
            pt.px,
            pt.py,
        );
        if pt.metric_factor(lambda) > 0.0 && far.metric_factor(lambda) > 0.0 {
            out.push(pt);
        }
    }
    out
}

type Check = (&'static str, f64, Box<dyn Fn(&PhasePoint) -> Result<f64> + Sync>);

fn checks(params: ClassicalParams, steps: StepSchedule, tol: ClassicalTolerances) -> Vec<Check> {
    use Observable as O;
    let k = params.kappa;
    let w2 = params.omega_sq;
    let h = steps.single;
    let [s0, s1, s2] = steps.nested;
    let alpha = -8.0;
    let gamma = -8.0 * k;
    let eps = -16.0 * w2;
    let p = params;
    let pb = move |f: O, g: O, pt: &PhasePoint| poisson_bracket(&f, &g, pt, &p, h);
    let obs = move |f: O, pt: &PhasePoint| f.eval(pt, &p);
    let c = move |i: usize, pt: &PhasePoint| Observable::c(i).eval(pt, &p);
    let ab = move |step: f64| O::bracket(O::A, O::B, step);

    let mut v: Vec<Check> = vec![
        (
            "H = H1 + H2 - lambda H3",
            tol.constraint,
            Box::new(move |pt| {
                let s = eval_observables(pt, &p)?;
                Ok(s.h - (s.h1 + s.h2 - p.lambda * s.h3))
            }),
        ),
        ("F1", tol.constraint, Box::new(move |pt| Ok(eval_observables(pt, &p)?.f1))),
        ("F2", tol.constraint, Box::new(move |pt| Ok(eval_observables(pt, &p)?.f2))),
        ("{H,A}", tol.conservation, Box::new(move |pt| pb(O::H, O::A, pt))),
        ("{H,B}", tol.conservation, Box::new(move |pt| pb(O::H, O::B, pt))),
        (
            "{C2,C4} = -C5",
            tol.algebra,
            Box::new(move |pt| Ok(pb(O::c(2), O::c(4), pt)? + c(5, pt)?)),
        ),
        (
            "{C2,C3} = kappa C4 C5",
            tol.algebra,
            Box::new(move |pt| Ok(pb(O::c(2), O::c(3), pt)? - k * c(4, pt)? * c(5, pt)?)),
        ),
        (
            "{C2,C5} = omega^2 C4 + 2 kappa C2 C4",
            tol.algebra,
            Box::new(move |pt| {
                let rhs = w2 * c(4, pt)? + 2.0 * k * c(2, pt)? * c(4, pt)?;
                Ok(pb(O::c(2), O::c(5), pt)? - rhs)
            }),
        ),
        (
            "{C3,C4} = C5",
            tol.algebra,
            Box::new(move |pt| Ok(pb(O::c(3), O::c(4), pt)? - c(5, pt)?)),
        ),
        (
            "{C3,C5} = -omega^2 C4 - 2 kappa C3 C4",
            tol.algebra,
            Box::new(move |pt| {
                let rhs = -w2 * c(4, pt)? - 2.0 * k * c(3, pt)? * c(4, pt)?;
                Ok(pb(O::c(3), O::c(5), pt)? - rhs)
            }),
        ),
        (
            "{C4,C5} = 2 C3 - 2 C2",
            tol.algebra,
            Box::new(move |pt| Ok(pb(O::c(4), O::c(5), pt)? - 2.0 * (c(3, pt)? - c(2, pt)?))),
        ),
        (
            "{A,C} = alpha A^2 + 2 gamma A B + delta A + epsilon B",
            tol.algebra,
            Box::new(move |pt| {
                let (a, b) = (obs(O::A, pt)?, obs(O::B, pt)?);
                let delta = 16.0 * obs(O::H, pt)?;
                let lhs = poisson_bracket(&O::A, &ab(s0), pt, &p, s1)?;
                Ok(lhs - (alpha * a * a + 2.0 * gamma * a * b + delta * a + eps * b))
            }),
        ),
        (
            "{B,C} = -gamma B^2 - 2 alpha A B - delta B",
            tol.algebra,
            Box::new(move |pt| {
                let (a, b) = (obs(O::A, pt)?, obs(O::B, pt)?);
                let delta = 16.0 * obs(O::H, pt)?;
                let lhs = poisson_bracket(&O::B, &ab(s0), pt, &p, s1)?;
                Ok(lhs - (-gamma * b * b - 2.0 * alpha * a * b - delta * b))
            }),
        ),
        (
            "{A,{B,C}} = {B,{A,C}}",
            tol.algebra,
            Box::new(move |pt| {
                let bc = O::bracket(O::B, ab(s0), s1);
                let ac = O::bracket(O::A, ab(s0), s1);
                Ok(poisson_bracket(&O::A, &bc, pt, &p, s2)? - poisson_bracket(&O::B, &ac, pt, &p, s2)?)
            }),
        ),
        (
            "Casimir K = 0",
            tol.algebra,
            Box::new(move |pt| {
                let (a, b) = (obs(O::A, pt)?, obs(O::B, pt)?);
                let cc = pb(O::A, O::B, pt)?;
                let delta = 16.0 * obs(O::H, pt)?;
                Ok(cc * cc - 2.0 * alpha * a * a * b - 2.0 * gamma * a * b * b - 2.0 * delta * a * b - eps * b * b)
            }),
        ),
    ];
    v.push((
        "antisymmetry",
        tol.conservation,
        Box::new(move |pt| {
            let set = [O::H, O::A, O::B, O::c(4), O::c(5), O::X, O::Py];
            let mut worst: f64 = 0.0;
            for (i, f) in set.iter().enumerate() {
                for g in &set[i + 1..] {
                    let r = pb(f.clone(), g.clone(), pt)? + pb(g.clone(), f.clone(), pt)?;
                    worst = worst.max(r.abs());
                }
            }
            Ok(worst)
        }),
    ));
    v
}

fn residuals_for(
    points: &[PhasePoint],
    params: ClassicalParams,
    convention: CurvatureConvention,
    steps: StepSchedule,
    tol: ClassicalTolerances,
) -> Result<ConventionResiduals> {
    let mut rows = Vec::new();
    for (name, tol, check) in checks(params, steps, tol) {
        let values = points
            .par_iter()
            .map(|pt| check(pt).map(f64::abs))
            .collect::<Result<Vec<f64>>>()?;
        let max_abs = values.iter().cloned().fold(0.0, f64::max);
        let mean_abs = values.iter().sum::<f64>() / values.len().max(1) as f64;
        rows.push(ResidualRow {
            identity: name.to_string(),
            max_abs,
            mean_abs,
            tol,
            pass: max_abs < tol,
        });
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(ConventionResiduals {
        convention,
        kappa: params.kappa,
        rows,
        all_pass,
    })
}

/// Checks the quadratic Poisson algebra under both curvature conventions.
pub fn verify_quadratic_poisson(
    lambda: f64,
    omega_sq: f64,
    n_points: usize,
    seed: u64,
) -> Result<PoissonReport> {
    verify_quadratic_poisson_with(
        lambda,
        omega_sq,
        n_points,
        seed,
        StepSchedule::default(),
        ClassicalTolerances::default(),
    )
}

pub fn verify_quadratic_poisson_with(
    lambda: f64,
    omega_sq: f64,
    n_points: usize,
    seed: u64,
    steps: StepSchedule,
    tol: ClassicalTolerances,
) -> Result<PoissonReport> {
    if n_points == 0 {
        return Err(Error::InvalidInput("need at least one sample point".into()));
    }
    if !(omega_sq > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("lambda={lambda}, omega^2={omega_sq}")));
    }
    let points = sample_points(lambda, n_points, seed);
    if points.len() < n_points {
        return Err(Error::Domain("could not sample enough points inside the metric domain".into()));
    }
    let conventions = CurvatureConvention::ALL
        .iter()
        .map(|&c| residuals_for(&points, ClassicalParams::new(lambda, omega_sq, c), c, steps, tol))
        .collect::<Result<Vec<_>>>()?;
    let passing: Vec<_> = conventions.iter().filter(|c| c.all_pass).collect();
    let recorded = match passing.as_slice() {
        [one] => Some(one.convention),
        _ if lambda == 0.0 && !passing.is_empty() => Some(CurvatureConvention::default()),
        _ => None,
    };
    Ok(PoissonReport {
        lambda,
        omega_sq,
        n_points,
        seed,
        conventions,
        recorded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ClassicalParams {
        ClassicalParams::new(1.0, 1.0, CurvatureConvention::KappaMinusLambda)
    }

    #[test]
    fn origin_and_kinetic_point() {
        let s = eval_observables(&PhasePoint::new(0.0, 0.0, 0.0, 0.0), &params()).unwrap();
        assert_eq!((s.h, s.h1, s.h2, s.h3), (0.0, 0.0, 0.0, 0.0));
        let s = eval_observables(&PhasePoint::new(0.0, 0.0, 1.0, 0.0), &params()).unwrap();
        assert_eq!((s.h, s.h1, s.h2, s.h3), (0.5, 0.5, 0.0, 0.0));
    }

    #[test]
    fn canonical_pair() {
        let pt = PhasePoint::new(0.2, -0.1, 0.3, 0.7);
        let v = poisson_bracket(&Observable::X, &Observable::Px, &pt, &params(), 1e-5).unwrap();
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn domain_violation() {
        let p = ClassicalParams::new(-1.0, 1.0, CurvatureConvention::KappaMinusLambda);
        assert!(eval_observables(&PhasePoint::new(1.0, 0.5, 0.0, 0.0), &p).is_err());
    }

    #[test]
    fn constraints_vanish_pointwise() {
        for pt in sample_points(1.0, 50, 3) {
            let s = eval_observables(&pt, &params()).unwrap();
            assert!(s.f1.abs() < 1e-12 && s.f2.abs() < 1e-12);
        }
    }
}
