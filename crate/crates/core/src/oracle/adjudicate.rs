//! Matching algebraic energies against the oracle spectrum under each
//! curvature convention and square-root sign.

use std::collections::BTreeMap;

use serde::Serialize;

use super::solver::{oracle_spectrum, GridSpec, OracleSpectrum};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::params::{CurvatureConvention, ModelParams};
use crate::spectrum::{solve_spectrum, Parity, SolveMode, SpectrumLine, SqrtSign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Convention {
    pub curvature: CurvatureConvention,
    pub sqrt_sign: SqrtSign,
}

impl Convention {
    pub fn all() -> Vec<Convention> {
        CurvatureConvention::ALL
            .iter()
            .flat_map(|&curvature| SqrtSign::ALL.iter().map(move |&sqrt_sign| Convention { curvature, sqrt_sign }))
            .collect()
    }

    pub fn name(&self) -> String {
        format!("{}, {} sqrt sign", self.curvature.name(), self.sqrt_sign.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdjudicationOptions {
    /// Match tolerance in units of the Richardson estimate.
    pub tol_factor: f64,
    /// Floor for the estimate, relative to `max(|E|, 1)`.
    pub rel_floor: f64,
    pub p_max: u32,
}

impl Default for AdjudicationOptions {
    fn default() -> Self {
        AdjudicationOptions { tol_factor: 3.0, rel_floor: 1e-12, p_max: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LineStatus {
    Matched,
    Unmatched,
    /// Above the energy up to which the oracle spectrum is complete.
    OutOfRange,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearestLevel {
    pub e: f64,
    pub m: i32,
    pub level: usize,
    pub convergence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineMatch {
    pub p: u32,
    pub parity: Parity,
    pub branch: String,
    pub e: f64,
    pub nearest: Option<NearestLevel>,
    pub diff: Option<f64>,
    pub tol: Option<f64>,
    pub status: LineStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesStop {
    pub parity: Parity,
    pub branch: String,
    /// First `p` not compared.
    pub p: u32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionReport {
    pub convention: Convention,
    pub name: String,
    pub kappa: f64,
    pub lines: Vec<LineMatch>,
    pub evaluated: usize,
    pub matched: usize,
    pub stops: Vec<SeriesStop>,
    /// At least one line compared and every compared line matched.
    pub all_matched: bool,
}

impl ConventionReport {
    pub fn unmatched(&self) -> impl Iterator<Item = &LineMatch> {
        self.lines.iter().filter(|l| l.status == LineStatus::Unmatched)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjudicationReport {
    pub hbar: f64,
    pub lambda: f64,
    pub omega_sq: f64,
    pub complete_below: f64,
    pub conventions: Vec<ConventionReport>,
    pub winner: Option<Convention>,
    pub winner_name: Option<String>,
    /// Exactly one convention matched.
    pub unique: bool,
}

fn nearest(numeric: &OracleSpectrum, e: f64) -> Option<NearestLevel> {
    numeric
        .levels
        .iter()
        .filter(|l| l.bound)
        .min_by(|a, b| (a.e - e).abs().total_cmp(&(b.e - e).abs()))
        .map(|l| NearestLevel { e: l.e, m: l.m, level: l.level, convergence: l.convergence })
}

/// `dE/dN` of the closed-form energy at level `n`.
fn energy_slope(convention: Convention, kappa: f64, numeric: &OracleSpectrum, n: i64) -> f64 {
    let h = numeric.hbar;
    let root = (h * h * kappa * kappa + 4.0 * numeric.omega_sq).sqrt();
    let sign = match convention.sqrt_sign {
        SqrtSign::Minus => -1.0,
        SqrtSign::Plus => 1.0,
    };
    h * h * kappa * n as f64 + sign * 0.5 * h * root
}

fn report_for(
    convention: Convention,
    kappa: f64,
    lines: &[SpectrumLine],
    numeric: &OracleSpectrum,
    opts: &AdjudicationOptions,
) -> ConventionReport {
    // series keyed by (parity, branch), each a map p -> energies
    let mut series: BTreeMap<(Parity, String), BTreeMap<u32, Vec<f64>>> = BTreeMap::new();
    for l in lines.iter().filter(|l| l.admissible()) {
        let Some((parity, sign)) = l.formula else { continue };
        if sign != convention.sqrt_sign {
            continue;
        }
        series
            .entry((parity, l.u_branch.clone()))
            .or_default()
            .entry(l.p)
            .or_default()
            .push(l.e_f64);
    }
    let mut out = Vec::new();
    let mut stops = Vec::new();
    for ((parity, branch), by_p) in &series {
        let first = *by_p.keys().next().expect("non-empty series");
        let mut p = first;
        loop {
            let stop = |reason: String| SeriesStop { parity: *parity, branch: branch.clone(), p, reason };
            let Some(es) = by_p.get(&p) else {
                if p <= opts.p_max {
                    stops.push(stop(format!("no admissible line at p = {p}")));
                } else {
                    stops.push(stop("p_max reached".into()));
                }
                break;
            };
            let e = es[0];
            if e < 0.0 {
                stops.push(stop(format!("E = {e} below the potential minimum")));
                break;
            }
            let n = parity.level(p);
            if energy_slope(convention, kappa, numeric, n) <= 0.0 {
                stops.push(stop(format!("E = {e} past the turnover of the energy at N = {n}")));
                break;
            }
            if let Some(v) = numeric.potential_limit {
                if e >= v {
                    stops.push(stop(format!("E = {e} at or above the potential limit {v}")));
                    break;
                }
            }
            let near = nearest(numeric, e);
            let line = if e >= numeric.complete_below {
                LineMatch { p, parity: *parity, branch: branch.clone(), e, nearest: near, diff: None, tol: None, status: LineStatus::OutOfRange }
            } else {
                let (diff, tol, status) = match &near {
                    Some(n) => {
                        let est = n.convergence.max(opts.rel_floor * n.e.abs().max(1.0));
                        let tol = opts.tol_factor * est;
                        let d = e - n.e;
                        let st = if d.abs() <= tol { LineStatus::Matched } else { LineStatus::Unmatched };
                        (Some(d), Some(tol), st)
                    }
                    None => (None, None, LineStatus::Unmatched),
                };
                LineMatch { p, parity: *parity, branch: branch.clone(), e, nearest: near, diff, tol, status }
            };
            out.push(line);
            p += 1;
        }
    }
    out.sort_by(|a, b| a.e.total_cmp(&b.e).then(a.p.cmp(&b.p)).then(a.branch.cmp(&b.branch)));
    let evaluated = out.iter().filter(|l| l.status != LineStatus::OutOfRange).count();
    let matched = out.iter().filter(|l| l.status == LineStatus::Matched).count();
    ConventionReport {
        convention,
        name: convention.name(),
        kappa,
        lines: out,
        evaluated,
        matched,
        stops,
        all_matched: evaluated > 0 && matched == evaluated,
    }
}

/// Compares algebraic lines, grouped by convention, with one oracle spectrum.
pub fn adjudicate(
    algebraic: &[(Convention, f64, Vec<SpectrumLine>)],
    numeric: &OracleSpectrum,
    opts: &AdjudicationOptions,
) -> AdjudicationReport {
    let conventions: Vec<ConventionReport> = algebraic
        .iter()
        .map(|(c, kappa, lines)| report_for(*c, *kappa, lines, numeric, opts))
        .collect();
    let winners: Vec<Convention> = conventions.iter().filter(|r| r.all_matched).map(|r| r.convention).collect();
    let unique = winners.len() == 1;
    let winner = unique.then(|| winners[0]);
    AdjudicationReport {
        hbar: numeric.hbar,
        lambda: numeric.lambda,
        omega_sq: numeric.omega_sq,
        complete_below: numeric.complete_below,
        conventions,
        winner,
        winner_name: winner.map(|c| c.name()),
        unique,
    }
}

/// Builds the closed-form lines for every convention, runs the oracle and adjudicates.
pub fn adjudicate_params(
    hbar: &Rational,
    lambda: &Rational,
    omega_sq: &Rational,
    grid: &GridSpec,
    k_lowest: usize,
    opts: &AdjudicationOptions,
) -> Result<AdjudicationReport> {
    use num_traits::Zero;
    if lambda.is_zero() {
        return Err(Error::InvalidInput("adjudication needs lambda != 0".into()));
    }
    let physical = ModelParams::from_lambda(hbar.clone(), lambda.clone(), omega_sq.clone(), CurvatureConvention::default())?;
    let numeric = oracle_spectrum(&physical, grid, k_lowest)?;
    let mut algebraic = Vec::new();
    for c in Convention::all() {
        let params = ModelParams::from_lambda(hbar.clone(), lambda.clone(), omega_sq.clone(), c.curvature)?;
        let lines = solve_spectrum(&params, opts.p_max, SolveMode::ClosedForm)?;
        algebraic.push((c, params.kappa_f64(), lines));
    }
    Ok(adjudicate(&algebraic, &numeric, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::radial::RadialModel;
    use crate::oracle::solver::oracle_spectrum_for;

    #[test]
    fn empty_input_gives_empty_report() {
        let model = RadialModel::new(1.0, 0.0, 1.0).unwrap();
        let numeric = oracle_spectrum_for(&model, &GridSpec { m_max: 1, ..GridSpec::default() }, 2).unwrap();
        let r = adjudicate(&[], &numeric, &AdjudicationOptions::default());
        assert!(r.conventions.is_empty() && r.winner.is_none() && !r.unique);
    }
}
