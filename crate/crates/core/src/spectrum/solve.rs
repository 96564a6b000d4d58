//! Fock-cutoff solutions `Phi(0, u, E) = Phi(p + 1, u, E) = 0`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::closed_form::{closed_form_u, energy_closed_form, field_radicand, Parity, SqrtSign};
use crate::error::{Error, Result};
use crate::exactnum::rational::int;
use crate::exactnum::Surd;
use crate::mpoly::{resultant_in, real_roots, MultiPoly, RootOptions, Substitution, UniPoly, Var, NVARS};
use crate::params::ModelParams;
use crate::qalgebra::model_structure_function;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SolveMode {
    ClosedForm,
    Generic,
}

impl std::str::FromStr for SolveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" | "closed-form" => Ok(SolveMode::ClosedForm),
            "generic" => Ok(SolveMode::Generic),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct LineFlags {
    pub phi0_zero: bool,
    pub phi_p1_zero: bool,
    pub all_positive: bool,
    pub matches_closed_form: bool,
    /// `u`, `E` and the ladder are exact.
    pub exact: bool,
    /// A repeated root in `u` or `E`, or a cutoff system without isolated solutions.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumLine {
    pub p: u32,
    /// `u1` .. `u8`, or `generic` when no closed-form branch matches.
    pub u_branch: String,
    pub u: Option<Surd>,
    pub u_f64: f64,
    pub e: Option<Surd>,
    pub e_f64: f64,
    /// `Phi(1) .. Phi(p)`.
    pub phi: Vec<f64>,
    pub phi_exact: Option<Vec<Surd>>,
    /// Energy formula reproduced by `E`, if any.
    pub formula: Option<(Parity, SqrtSign)>,
    pub flags: LineFlags,
}

impl SpectrumLine {
    /// Cutoff equations and positivity all hold.
    pub fn admissible(&self) -> bool {
        self.flags.phi0_zero && self.flags.phi_p1_zero && self.flags.all_positive
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Zero test for `Phi(0)`, `Phi(p + 1)` on the float path, relative to the term scale.
    pub residual_tol: f64,
    /// Energies and ladders closer than this are the same line.
    pub dedup_tol: f64,
    /// Branch labelling tolerance.
    pub branch_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { residual_tol: 1e-10, dedup_tol: 1e-10, branch_tol: 1e-9 }
    }
}

fn same_field(xs: &[&Surd]) -> bool {
    let mut r = None;
    for x in xs.iter().filter(|x| !x.is_rational()) {
        match r {
            None => r = Some(x.radicand()),
            Some(t) if t != x.radicand() => return false,
            _ => {}
        }
    }
    true
}

fn point(x: f64, u: f64, e: f64) -> [f64; NVARS] {
    let mut pt = [0.0; NVARS];
    pt[Var::X.index()] = x;
    pt[Var::U.index()] = u;
    pt[Var::E.index()] = e;
    pt
}

/// Evaluates the ladder and the cutoff conditions for one `(u, E)`.
fn build_line(
    phi: &MultiPoly,
    p: u32,
    u: (Option<Surd>, f64),
    e: (Option<Surd>, f64),
    opts: &SolveOptions,
) -> SpectrumLine {
    let (u_exact, u_f64) = u;
    let (e_exact, e_f64) = e;
    let exact_inputs = match (&u_exact, &e_exact) {
        (Some(a), Some(b)) if same_field(&[a, b]) => Some((a.clone(), b.clone())),
        _ => None,
    };
    let mut flags = LineFlags::default();
    let mut phi_exact = None;
    let values: Vec<f64>;
    if let Some((ue, ee)) = exact_inputs {
        let along = phi.substitute(&Substitution::new().scalar(Var::U, ue).scalar(Var::E, ee));
        let at = |x: u32| {
            along
                .evaluate(&[(Var::X, Surd::from_int(x as i64))])
                .expect("only x remains")
        };
        let ladder: Vec<Surd> = (0..=p + 1).map(at).collect();
        flags.phi0_zero = ladder[0].is_zero();
        flags.phi_p1_zero = ladder[p as usize + 1].is_zero();
        flags.all_positive = ladder[1..=p as usize].iter().all(Surd::is_positive);
        flags.exact = true;
        values = ladder[1..=p as usize].iter().map(Surd::to_f64).collect();
        phi_exact = Some(ladder[1..=p as usize].to_vec());
    } else {
        let eval = |x: u32| {
            let pt = point(x as f64, u_f64, e_f64);
            (phi.eval_f64(&pt), phi.abs_scale(&pt))
        };
        let small = |(v, s): (f64, f64)| v.abs() <= opts.residual_tol * s.max(f64::MIN_POSITIVE);
        flags.phi0_zero = small(eval(0));
        flags.phi_p1_zero = small(eval(p + 1));
        let ladder: Vec<(f64, f64)> = (1..=p).map(eval).collect();
        flags.all_positive = ladder.iter().all(|&(v, s)| v > opts.residual_tol * s);
        values = ladder.iter().map(|&(v, _)| v).collect();
    }
    SpectrumLine {
        p,
        u_branch: "generic".into(),
        u: u_exact,
        u_f64,
        e: e_exact,
        e_f64,
        phi: values,
        phi_exact,
        formula: None,
        flags,
    }
}

/// Labels the branch and the energy formula of a line.
fn classify(line: &mut SpectrumLine, params: &ModelParams, opts: &SolveOptions) {
    for parity in Parity::ALL {
        for sign in SqrtSign::ALL {
            let f = energy_closed_form(line.p, params, parity, sign);
            let hit = match &line.e {
                Some(e) if same_field(&[e, &f]) => e == &f,
                _ => (f.to_f64() - line.e_f64).abs() <= opts.dedup_tol * (1.0 + f.to_f64().abs()),
            };
            if hit && line.formula.is_none() {
                line.formula = Some((parity, sign));
                line.flags.matches_closed_form = true;
            }
        }
    }
    if line.u_branch != "generic" {
        return;
    }
    let e = line.e.clone().unwrap_or_else(|| {
        Surd::from_rational(crate::exactnum::rational::from_f64(line.e_f64).unwrap_or_else(|_| int(0)))
    });
    if let Ok(us) = closed_form_u(params, &e) {
        for u in us.iter() {
            let hit = match (&u.exact, &line.u) {
                (Some(a), Some(b)) if same_field(&[a, b]) => a == b,
                _ => u
                    .approx
                    .is_some_and(|v| (v - line.u_f64).abs() <= opts.branch_tol * (1.0 + v.abs())),
            };
            if hit {
                line.u_branch = u.label();
                break;
            }
        }
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Keeps one line per `(E, ladder)`; repeated hits mark the survivor degenerate.
/// `u1` < ... < `u8` < `generic`.
fn branch_rank(label: &str) -> u32 {
    label.strip_prefix('u').and_then(|n| n.parse().ok()).unwrap_or(u32::MAX)
}

fn dedup(lines: Vec<SpectrumLine>, tol: f64) -> Vec<SpectrumLine> {
    let mut out: Vec<SpectrumLine> = Vec::new();
    for line in lines {
        let dup = out.iter_mut().find(|o| {
            o.p == line.p
                && close(o.e_f64, line.e_f64, tol)
                && o.phi.len() == line.phi.len()
                && o.phi.iter().zip(&line.phi).all(|(a, b)| close(*a, *b, tol))
        });
        match dup {
            Some(o) => {
                let other_u = line.u_f64;
                if branch_rank(&line.u_branch) < branch_rank(&o.u_branch) {
                    let degenerate = o.flags.degenerate;
                    *o = line;
                    o.flags.degenerate = degenerate;
                }
                if !close(o.u_f64, other_u, tol) {
                    o.flags.degenerate = true;
                }
            }
            None => out.push(line),
        }
    }
    out
}

fn sort_lines(lines: &mut [SpectrumLine]) {
    lines.sort_by(|a, b| {
        a.p.cmp(&b.p)
            .then(a.e_f64.total_cmp(&b.e_f64))
            .then(a.u_f64.total_cmp(&b.u_f64))
            .then(a.u_branch.cmp(&b.u_branch))
    });
}

fn closed_form_lines(phi: &MultiPoly, params: &ModelParams, p: u32, opts: &SolveOptions) -> Result<Vec<SpectrumLine>> {
    let mut lines = Vec::new();
    for parity in Parity::ALL {
        for sign in SqrtSign::ALL {
            let e = energy_closed_form(p, params, parity, sign);
            let e_f64 = e.to_f64();
            for u in closed_form_u(params, &e)?.iter().filter(|u| u.is_real()) {
                let mut line = build_line(phi, p, (u.exact.clone(), u.approx.unwrap()), (Some(e.clone()), e_f64), opts);
                if !(line.flags.phi0_zero && line.flags.phi_p1_zero) {
                    continue;
                }
                line.u_branch = u.label();
                line.formula = Some((parity, sign));
                line.flags.matches_closed_form = true;
                lines.push(line);
            }
        }
    }
    let mut lines = dedup(lines, opts.dedup_tol);
    sort_lines(&mut lines);
    Ok(lines)
}

fn fix_x(phi: &MultiPoly, x: i64) -> MultiPoly {
    phi.substitute(&Substitution::new().scalar(Var::X, Surd::from_int(x)))
}

fn univariate(p: &MultiPoly, v: Var) -> Option<UniPoly<Surd>> {
    p.to_univariate(v).filter(|q| !q.is_zero())
}

fn generic_lines(phi: &MultiPoly, params: &ModelParams, p: u32, opts: &SolveOptions) -> Result<Vec<SpectrumLine>> {
    let f0 = fix_x(phi, 0);
    let f1 = fix_x(phi, p as i64 + 1);
    let res = resultant_in(&f0, &f1, Var::U)?;
    if res.is_zero() {
        // no isolated solutions: fall back to the closed-form candidates
        let mut lines = if params.kappa.is_zero() {
            Vec::new()
        } else {
            closed_form_lines(phi, params, p, opts)?
        };
        for l in &mut lines {
            l.flags.degenerate = true;
        }
        return Ok(lines);
    }
    let Some(res_e) = univariate(&res, Var::E) else {
        return Ok(Vec::new());
    };
    if res_e.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut root_opts = RootOptions::with_tol(1e-30);
    root_opts.radicands = vec![field_radicand(params)];
    let mut lines = Vec::new();
    for er in real_roots(&res_e, &root_opts)? {
        let e_f64 = er.approx();
        let e_val = er.value();
        let subs = Substitution::new().scalar(Var::E, e_val.clone());
        let (Some(g0), Some(g1)) = (univariate(&f0.substitute(&subs), Var::U), univariate(&f1.substitute(&subs), Var::U)) else {
            continue;
        };
        let candidates = if er.exact.is_some() {
            let g = g0.gcd(&g1);
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            real_roots(&g, &root_opts)?
        } else {
            real_roots(&g0, &root_opts)?
        };
        for ur in candidates {
            let u_exact = er.exact.as_ref().and(ur.exact.clone());
            let mut line = build_line(phi, p, (u_exact, ur.approx()), (er.exact.clone(), e_f64), opts);
            if !(line.flags.phi0_zero && line.flags.phi_p1_zero) {
                continue;
            }
            line.flags.degenerate = er.multiplicity > 1 || ur.multiplicity > 1;
            if !params.kappa.is_zero() {
                classify(&mut line, params, opts);
            }
            lines.push(line);
        }
    }
    let mut lines = dedup(lines, opts.dedup_tol);
    sort_lines(&mut lines);
    Ok(lines)
}

/// Solutions for `p = 0 .. p_max`, ordered by `(p, E, u)`.
pub fn solve_spectrum(params: &ModelParams, p_max: u32, mode: SolveMode) -> Result<Vec<SpectrumLine>> {
    solve_spectrum_with(params, p_max, mode, &SolveOptions::default())
}

pub fn solve_spectrum_with(
    params: &ModelParams,
    p_max: u32,
    mode: SolveMode,
    opts: &SolveOptions,
) -> Result<Vec<SpectrumLine>> {
    let phi = model_structure_function(params)?.phi;
    let per_p: Vec<Result<Vec<SpectrumLine>>> = (0..=p_max)
        .into_par_iter()
        .map(|p| match mode {
            SolveMode::ClosedForm => closed_form_lines(&phi, params, p, opts),
            SolveMode::Generic => generic_lines(&phi, params, p, opts),
        })
        .collect();
    let mut out = Vec::new();
    for r in per_p {
        out.extend(r?);
    }
    Ok(out)
}

/// `sqrt(Phi(1)) .. sqrt(Phi(p))`.
pub fn ladder_amplitudes(line: &SpectrumLine) -> Result<Vec<f64>> {
    line.phi
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v < 0.0 {
                Err(Error::Domain(format!("Phi({}) = {v} is negative", i + 1)))
            } else {
                Ok(v.sqrt())
            }
        })
        .collect()
}

/// The exact energy formula value, if the line has one.
pub fn formula_energy(line: &SpectrumLine, params: &ModelParams) -> Option<Surd> {
    line.formula
        .map(|(parity, sign)| energy_closed_form(line.p, params, parity, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ModelParams {
        ModelParams::ints(1, 1, 1).unwrap()
    }

    #[test]
    fn p0_closed_form_even_line() {
        let lines = solve_spectrum(&unit(), 0, SolveMode::ClosedForm).unwrap();
        let want = energy_closed_form(0, &unit(), Parity::Even, SqrtSign::Minus);
        let l = lines
            .iter()
            .find(|l| l.e.as_ref() == Some(&want) && l.u_branch == "u1")
            .expect("u1 line at p = 0");
        assert!(l.admissible() && l.phi.is_empty() && l.flags.exact);
        assert!(ladder_amplitudes(l).unwrap().is_empty());
    }

    #[test]
    fn p1_ladder_value() {
        let lines = solve_spectrum(&unit(), 1, SolveMode::ClosedForm).unwrap();
        let want = energy_closed_form(1, &unit(), Parity::Even, SqrtSign::Minus);
        let l = lines
            .iter()
            .find(|l| l.p == 1 && l.e.as_ref() == Some(&want) && l.u_branch == "u1")
            .unwrap();
        assert!(l.admissible());
        let amp = ladder_amplitudes(l).unwrap();
        assert_eq!(amp.len(), 1);
        assert!((amp[0] * amp[0] - l.phi[0]).abs() <= 1e-15 * l.phi[0]);
    }

    #[test]
    fn generic_contains_closed_form() {
        let cf = solve_spectrum(&unit(), 3, SolveMode::ClosedForm).unwrap();
        let gen = solve_spectrum(&unit(), 3, SolveMode::Generic).unwrap();
        for l in cf.iter().filter(|l| l.admissible()) {
            assert!(
                gen.iter().any(|g| g.p == l.p && (g.e_f64 - l.e_f64).abs() < 1e-10),
                "missing p={} E={}",
                l.p,
                l.e_f64
            );
        }
    }
}
