//! `casimir-spectra`: command-line front end for the classical checks, the
//! structure-function identity, Fock-cutoff spectra and the numerical oracle.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use casimir_core::classical::{verify_quadratic_poisson_with, ClassicalTolerances, StepSchedule};
use casimir_core::error::Error as CoreError;
use casimir_core::exactnum::parse_rational;
use casimir_core::oracle::{adjudicate_params, oracle_spectrum, AdjudicationOptions, GridSpec};
use casimir_core::params::{CurvatureConvention, ModelParams};
use casimir_core::qalgebra::verify_phi_identity;
use casimir_core::spectrum::{
    ladder_amplitudes, solve_spectrum_with, SolveMode, SolveOptions, SpectrumLine,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use output::{format_f64, opt_f64, to_json, Table, SCHEMA};

#[derive(Parser)]
#[command(name = "casimir-spectra", version, about = "Quadratic-algebra spectra of the curved 2D oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-difference check of the classical quadratic Poisson algebra.
    VerifyClassical {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for the algebra residuals.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        /// Step of the single-bracket central differences.
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact comparison of the built, expanded and factorized structure functions.
    VerifyIdentity {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Fock-cutoff solutions for p = 0 .. p_max.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        p_max: u32,
        #[arg(long, value_enum, default_value_t = Mode::ClosedForm)]
        mode: Mode,
        /// Keep only this u-branch (u1 .. u8 or generic).
        #[arg(long)]
        branch: Option<String>,
        /// Drop lines failing a cutoff or positivity.
        #[arg(long)]
        admissible_only: bool,
        #[command(flatten)]
        tol: SolveTolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Ladder Phi(0) .. Phi(p + 1) and amplitudes for one p.
    Ladder {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value = "u1")]
        branch: String,
        #[command(flatten)]
        tol: SolveTolArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Finite-difference spectrum of the quantum Hamiltonian.
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Matches closed-form energies against the oracle under every convention.
    Adjudicate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 12)]
        p_max: u32,
        /// Match tolerance in units of the Richardson estimate.
        #[arg(long, default_value_t = 3.0)]
        tol_factor: f64,
        #[arg(long, default_value_t = 1e-12)]
        rel_floor: f64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    hbar: String,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "kappa", required_unless_present = "kappa")]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// kappa=-lambda or kappa=+lambda.
    #[arg(long, default_value = "kappa=-lambda")]
    convention: String,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "omega_sq", required_unless_present = "omega_sq")]
    omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    omega_sq: Option<String>,
}

impl ParamArgs {
    fn model(&self) -> Result<ModelParams, CoreError> {
        let hbar = parse_rational(&self.hbar)?;
        let convention: CurvatureConvention = self.convention.parse()?;
        let omega_sq = match (&self.omega, &self.omega_sq) {
            (Some(w), None) => {
                let w = parse_rational(w)?;
                &w * &w
            }
            (None, Some(w2)) => parse_rational(w2)?,
            _ => return Err(CoreError::InvalidInput("give exactly one of --omega, --omega-sq".into())),
        };
        match (&self.lambda, &self.kappa) {
            (Some(l), None) => ModelParams::from_lambda(hbar, parse_rational(l)?, omega_sq, convention),
            (None, Some(k)) => ModelParams::with_convention(hbar, parse_rational(k)?, omega_sq, convention),
            _ => Err(CoreError::InvalidInput("give exactly one of --lambda, --kappa".into())),
        }
    }
}

#[derive(Args)]
struct SolveTolArgs {
    #[arg(long, default_value_t = 1e-10)]
    residual_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    dedup_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    branch_tol: f64,
}

impl SolveTolArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions { residual_tol: self.residual_tol, dedup_tol: self.dedup_tol, branch_tol: self.branch_tol }
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 512)]
    n_r: usize,
    /// Wall radius; adaptive when omitted.
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 9)]
    m_max: u32,
    #[arg(long, default_value_t = 3)]
    refinements: usize,
    /// Eigenvalues per angular sector.
    #[arg(long, default_value_t = 5)]
    k_lowest: usize,
}

impl GridArgs {
    fn spec(&self) -> GridSpec {
        GridSpec { n_r: self.n_r, r_max: self.r_max, m_max: self.m_max, refinement_levels: self.refinements }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    ClosedForm,
    Generic,
}

impl From<Mode> for SolveMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::ClosedForm => SolveMode::ClosedForm,
            Mode::Generic => SolveMode::Generic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the payload here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Payload plus whether every checked invariant held.
struct Report {
    json: Value,
    table: Table,
    ok: bool,
}

fn params_json(p: &ModelParams) -> Value {
    json!({
        "hbar": p.hbar.to_string(),
        "kappa": p.kappa.to_string(),
        "lambda": p.lambda().to_string(),
        "omega_sq": p.omega_sq.to_string(),
        "convention": p.convention.name(),
    })
}

fn envelope(command: &str, params: &ModelParams, payload: Map<String, Value>) -> Value {
    let mut root = Map::new();
    root.insert("schema".into(), json!(SCHEMA));
    root.insert("command".into(), json!(command));
    root.insert("params".into(), params_json(params));
    root.extend(payload);
    Value::Object(root)
}

fn single(key: &str, v: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(key.into(), v);
    m
}

fn line_json(l: &SpectrumLine) -> Value {
    json!({
        "p": l.p,
        "u_branch": l.u_branch,
        "u": l.u_f64,
        "u_exact": l.u.as_ref().map(|s| s.to_string()),
        "E": l.e_f64,
        "E_exact": l.e.as_ref().map(|s| s.to_string()),
        "phi": l.phi,
        "phi_exact": l.phi_exact.as_ref().map(|v| v.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
        "formula": l.formula.map(|(parity, sign)| format!("{}, {} sqrt sign", parity.name(), sign.name())),
        "admissible": l.admissible(),
        "flags": {
            "phi0_zero": l.flags.phi0_zero,
            "phiP1_zero": l.flags.phi_p1_zero,
            "all_positive": l.flags.all_positive,
            "matches_closed_form": l.flags.matches_closed_form,
            "exact": l.flags.exact,
            "degenerate": l.flags.degenerate,
        },
    })
}

fn line_table(lines: &[SpectrumLine]) -> Table {
    let mut t = Table::new(&[
        "p", "u_branch", "u", "u_exact", "E", "E_exact", "formula", "admissible", "phi0_zero", "phiP1_zero",
        "all_positive", "matches_closed_form", "exact", "degenerate", "phi",
    ]);
    for l in lines {
        t.push(vec![
            l.p.to_string(),
            l.u_branch.clone(),
            format_f64(l.u_f64),
            l.u.as_ref().map(|s| s.to_string()).unwrap_or_default(),
            format_f64(l.e_f64),
            l.e.as_ref().map(|s| s.to_string()).unwrap_or_default(),
            l.formula.map(|(a, b)| format!("{} {}", a.name(), b.name())).unwrap_or_default(),
            l.admissible().to_string(),
            l.flags.phi0_zero.to_string(),
            l.flags.phi_p1_zero.to_string(),
            l.flags.all_positive.to_string(),
            l.flags.matches_closed_form.to_string(),
            l.flags.exact.to_string(),
            l.flags.degenerate.to_string(),
            l.phi.iter().map(|x| format_f64(*x)).collect::<Vec<_>>().join(" "),
        ]);
    }
    t
}

fn core_err(e: CoreError) -> anyhow::Error {
    anyhow::Error::new(e)
}

fn verify_classical(params: &ModelParams, points: usize, seed: u64, tol: f64, step: f64) -> anyhow::Result<Report> {
    let steps = StepSchedule { single: step, ..StepSchedule::default() };
    let tols = ClassicalTolerances { algebra: tol, ..ClassicalTolerances::default() };
    let r = verify_quadratic_poisson_with(params.lambda_f64(), params.omega_sq_f64(), points, seed, steps, tols)
        .map_err(core_err)?;
    let requested = r
        .conventions
        .iter()
        .find(|c| c.convention == params.convention)
        .ok_or_else(|| anyhow!("missing convention in report"))?;
    let ok = requested.all_pass;
    let mut t = Table::new(&["convention", "identity", "max_abs", "mean_abs", "tol", "pass"]);
    for c in &r.conventions {
        for row in &c.rows {
            t.push(vec![
                c.convention.name().into(),
                row.identity.clone(),
                format_f64(row.max_abs),
                format_f64(row.mean_abs),
                format_f64(row.tol),
                row.pass.to_string(),
            ]);
        }
    }
    let mut payload = single("report", serde_json::to_value(&r)?);
    payload.insert("requested_convention_passes".into(), json!(ok));
    Ok(Report { json: envelope("verify-classical", params, payload), table: t, ok })
}

fn verify_identity(params: &ModelParams) -> anyhow::Result<Report> {
    let r = verify_phi_identity(params).map_err(core_err)?;
    let mut t = Table::new(&["lhs", "rhs", "proportional", "ratio", "ratio_positive", "mismatches"]);
    for c in [&r.built_vs_factorized, &r.expanded_vs_factorized, &r.built_vs_expanded, &r.unweighted_plus_vs_factorized] {
        t.push(vec![
            c.lhs.clone(),
            c.rhs.clone(),
            c.proportional.to_string(),
            c.ratio.clone().unwrap_or_default(),
            c.ratio_positive.to_string(),
            c.mismatches.len().to_string(),
        ]);
    }
    let ok = r.identity_holds;
    Ok(Report { json: envelope("verify-identity", params, single("report", serde_json::to_value(&r)?)), table: t, ok })
}

fn spectrum(
    params: &ModelParams,
    p_max: u32,
    mode: Mode,
    branch: Option<&str>,
    admissible_only: bool,
    opts: &SolveOptions,
) -> anyhow::Result<Report> {
    let lines = solve_spectrum_with(params, p_max, mode.into(), opts).map_err(core_err)?;
    // generic mode must recover every closed-form line
    let mut missing = Vec::new();
    if mode == Mode::Generic {
        let reference = solve_spectrum_with(params, p_max, SolveMode::ClosedForm, opts).map_err(core_err)?;
        for r in reference.iter().filter(|l| l.admissible()) {
            let found = lines.iter().any(|l| {
                l.p == r.p && (l.e_f64 - r.e_f64).abs() <= opts.dedup_tol * r.e_f64.abs().max(1.0)
            });
            if !found {
                missing.push(json!({"p": r.p, "u_branch": r.u_branch, "E": r.e_f64}));
            }
        }
    }
    let kept: Vec<SpectrumLine> = lines
        .into_iter()
        .filter(|l| branch.is_none_or(|b| l.u_branch == b))
        .filter(|l| !admissible_only || l.admissible())
        .collect();
    let ok = missing.is_empty();
    let mut payload = single("mode", json!(match mode { Mode::ClosedForm => "closed-form", Mode::Generic => "generic" }));
    payload.insert("p_max".into(), json!(p_max));
    payload.insert("lines".into(), Value::Array(kept.iter().map(line_json).collect()));
    if mode == Mode::Generic {
        payload.insert("missing_closed_form".into(), Value::Array(missing));
    }
    Ok(Report { json: envelope("spectrum", params, payload), table: line_table(&kept), ok })
}

fn ladder(params: &ModelParams, p: u32, branch: &str, opts: &SolveOptions) -> anyhow::Result<Report> {
    let lines: Vec<SpectrumLine> = solve_spectrum_with(params, p, SolveMode::ClosedForm, opts)
        .map_err(core_err)?
        .into_iter()
        .filter(|l| l.p == p && l.u_branch == branch)
        .collect();
    let mut t = Table::new(&["p", "u_branch", "E", "x", "phi", "amplitude"]);
    let mut entries = Vec::new();
    for l in &lines {
        let amps = ladder_amplitudes(l).ok();
        let mut full = vec![0.0];
        full.extend(&l.phi);
        full.push(0.0);
        for (x, v) in full.iter().enumerate() {
            let amp = if x == 0 || x == full.len() - 1 { Some(0.0) } else { amps.as_ref().map(|a| a[x - 1]) };
            t.push(vec![
                l.p.to_string(),
                l.u_branch.clone(),
                format_f64(l.e_f64),
                x.to_string(),
                format_f64(*v),
                opt_f64(amp),
            ]);
        }
        let mut e = line_json(l);
        e["phi_full"] = json!(full);
        e["amplitudes"] = json!(amps);
        entries.push(e);
    }
    let mut payload = single("p", json!(p));
    payload.insert("u_branch".into(), json!(branch));
    payload.insert("lines".into(), Value::Array(entries));
    Ok(Report { json: envelope("ladder", params, payload), table: t, ok: true })
}

fn oracle(params: &ModelParams, grid: &GridArgs) -> anyhow::Result<Report> {
    let s = oracle_spectrum(params, &grid.spec(), grid.k_lowest).map_err(core_err)?;
    let mut t = Table::new(&["E", "m", "level", "convergence", "order", "bound", "raw"]);
    for l in &s.levels {
        t.push(vec![
            format_f64(l.e),
            l.m.to_string(),
            l.level.to_string(),
            format_f64(l.convergence),
            opt_f64(l.order),
            l.bound.to_string(),
            l.raw.iter().map(|x| format_f64(*x)).collect::<Vec<_>>().join(" "),
        ]);
    }
    let ok = s.all_decayed();
    Ok(Report { json: envelope("oracle", params, single("spectrum", serde_json::to_value(&s)?)), table: t, ok })
}

fn adjudicate(params: &ModelParams, grid: &GridArgs, opts: &AdjudicationOptions) -> anyhow::Result<Report> {
    let r = adjudicate_params(&params.hbar, &params.lambda(), &params.omega_sq, &grid.spec(), grid.k_lowest, opts)
        .map_err(core_err)?;
    let mut t = Table::new(&["convention", "p", "parity", "u_branch", "E", "nearest_E", "m", "level", "diff", "tol", "status"]);
    for c in &r.conventions {
        for l in &c.lines {
            t.push(vec![
                c.name.clone(),
                l.p.to_string(),
                l.parity.name().into(),
                l.branch.clone(),
                format_f64(l.e),
                opt_f64(l.nearest.as_ref().map(|n| n.e)),
                l.nearest.as_ref().map(|n| n.m.to_string()).unwrap_or_default(),
                l.nearest.as_ref().map(|n| n.level.to_string()).unwrap_or_default(),
                opt_f64(l.diff),
                opt_f64(l.tol),
                format!("{:?}", l.status),
            ]);
        }
    }
    let ok = r.unique;
    Ok(Report { json: envelope("adjudicate", params, single("report", serde_json::to_value(&r)?)), table: t, ok })
}

fn emit(report: &Report, out: &OutArgs) -> anyhow::Result<()> {
    let text = match out.format {
        Format::Json => to_json(&report.json),
        Format::Csv => report.table.to_csv()?,
    };
    match &out.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let started = Instant::now();
    let (name, report, out) = match &cli.command {
        Command::VerifyClassical { params, points, seed, tol, step, out } => {
            let p = params.model().map_err(core_err)?;
            ("verify-classical", verify_classical(&p, *points, *seed, *tol, *step)?, out)
        }
        Command::VerifyIdentity { params, out } => {
            let p = params.model().map_err(core_err)?;
            ("verify-identity", verify_identity(&p)?, out)
        }
        Command::Spectrum { params, p_max, mode, branch, admissible_only, tol, out } => {
            let p = params.model().map_err(core_err)?;
            ("spectrum", spectrum(&p, *p_max, *mode, branch.as_deref(), *admissible_only, &tol.options())?, out)
        }
        Command::Ladder { params, p: cut, branch, tol, out } => {
            let p = params.model().map_err(core_err)?;
            ("ladder", ladder(&p, *cut, branch, &tol.options())?, out)
        }
        Command::Oracle { params, grid, out } => {
            let p = params.model().map_err(core_err)?;
            ("oracle", oracle(&p, grid)?, out)
        }
        Command::Adjudicate { params, grid, p_max, tol_factor, rel_floor, out } => {
            let p = params.model().map_err(core_err)?;
            let opts = AdjudicationOptions { tol_factor: *tol_factor, rel_floor: *rel_floor, p_max: *p_max };
            ("adjudicate", adjudicate(&p, grid, &opts)?, out)
        }
    };
    emit(&report, out)?;
    eprintln!(
        "casimir-spectra {name}: {} in {:.2?}",
        if report.ok { "ok" } else { "invariant violated" },
        started.elapsed()
    );
    Ok(report.ok)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::NonConvergence(_)) | None => 1,
        Some(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
