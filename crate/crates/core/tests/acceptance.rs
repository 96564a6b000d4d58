//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use casimir_core::classical::verify_quadratic_poisson;
use casimir_core::exactnum::rational::{int, rat, to_f64};
use casimir_core::exactnum::{Rational, Surd};
use casimir_core::mpoly::{real_roots, RootOptions, Substitution, Var};
use casimir_core::oracle::{
    adjudicate_params, oracle_spectrum_for, AdjudicationOptions, GridSpec, RadialModel,
};
use casimir_core::params::ModelParams;
use casimir_core::qalgebra::{model_structure_function, verify_phi_identity};
use casimir_core::spectrum::{parity_identity_holds, solve_spectrum, SolveMode, SpectrumLine};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64) -> Rational {
    int(n)
}

fn params(hbar: i64, kappa: i64, omega_sq: i64) -> ModelParams {
    ModelParams::ints(hbar, kappa, omega_sq).expect("valid parameters")
}

fn identity() -> Outcome {
    let mut notes = Vec::new();
    for (h, k, w2) in [(1, 1, 1), (1, -1, 4), (2, 1, 9)] {
        let t = Instant::now();
        let r = verify_phi_identity(&params(h, k, w2)).map_err(|e| e.to_string())?;
        for c in [&r.built_vs_factorized, &r.expanded_vs_factorized, &r.built_vs_expanded] {
            ensure(c.proportional && c.ratio_positive, || {
                let terms: Vec<String> = c
                    .mismatches
                    .iter()
                    .take(5)
                    .map(|m| format!("{}: {} vs {}", m.monomial, m.lhs, m.rhs_scaled))
                    .collect();
                format!("({h},{k},{w2}) {} vs {}: {}", c.lhs, c.rhs, terms.join("; "))
            })?;
        }
        ensure(r.identity_holds, || format!("({h},{k},{w2}) identity flag false"))?;
        let dt = t.elapsed();
        ensure(dt < Duration::from_secs(5), || format!("({h},{k},{w2}) took {dt:.2?}"))?;
        notes.push(format!("({h},{k},{w2}) c={}", r.built_vs_factorized.ratio.clone().unwrap_or_default()));
    }
    Ok(notes.join(", "))
}

/// `1/4 -+ sqrt(t) / (4 hbar^2 kappa^2)` and `3/4 +- ...` in the listed order.
fn transcribed_u_exact(hbar: &Rational, kappa: &Rational, omega_sq: &Rational) -> Vec<Surd> {
    let h2k2 = hbar * hbar * kappa * kappa;
    let t = &h2k2 * &h2k2 + q(4) * &h2k2 * omega_sq;
    let b = Rational::new(1.into(), 4.into()) / &h2k2;
    [(rat(1, 4), -1), (rat(1, 4), 1), (rat(3, 4), 1), (rat(3, 4), -1)]
        .into_iter()
        .map(|(a, s)| Surd::new(a, &b * q(s), &t).expect("surd"))
        .collect()
}

fn transcribed_u_energy(h: f64, k: f64, w2: f64, e: f64) -> [f64; 4] {
    let root = (8.0 * h * h * e * k * k * k + h.powi(4) * k.powi(4) + 4.0 * h * h * k * k * w2).sqrt();
    let d = root / (4.0 * h * h * k * k);
    [0.25 - d, 0.25 + d, 0.75 - d, 0.75 + d]
}

fn u_roots() -> Outcome {
    let mut checked = 0;
    for (h, k, w2) in [(1, 1, 1), (1, -1, 4), (2, 1, 9)] {
        let p = params(h, k, w2);
        let phi = model_structure_function(&p).map_err(|e| e.to_string())?.phi;
        let exact_u = transcribed_u_exact(&q(h), &q(k), &q(w2));
        let radicand = exact_u[0].radicand().clone();
        let at_x0 = phi.substitute(&Substitution::new().scalar(Var::X, Surd::zero()));
        // five energies with 8 hbar^2 kappa^3 E + t > 0 and distinct from 0
        let energies = [rat(1, 3), rat(1, 1), rat(5, 2), rat(7, 1), rat(12, 1)];
        for e in energies.map(|e| e * q(k.signum())) {
            let uni = at_x0
                .substitute(&Substitution::new().scalar(Var::E, Surd::from_rational(e.clone())))
                .to_univariate(Var::U)
                .ok_or("Phi(0, u, E) is not univariate in u")?;
            let opts = RootOptions { radicands: vec![radicand.clone()], ..RootOptions::default() };
            let roots = real_roots(&uni, &opts).map_err(|e| e.to_string())?;
            for (i, want) in exact_u.iter().enumerate() {
                let hit = roots.iter().any(|r| r.exact.as_ref() == Some(want));
                ensure(hit, || format!("({h},{k},{w2}) E={e}: u{} = {want} not an exact root", i + 1))?;
            }
            let ef = to_f64(&e);
            let approx: Vec<f64> = roots.iter().map(|r| r.approx()).collect();
            for (i, want) in transcribed_u_energy(h as f64, k as f64, w2 as f64, ef).iter().enumerate() {
                ensure(want.is_finite(), || format!("u{} complex at E={e}", i + 5))?;
                let best = approx.iter().map(|x| (x - want).abs()).fold(f64::INFINITY, f64::min);
                ensure(best <= 1e-12 * want.abs().max(1.0), || {
                    format!("({h},{k},{w2}) E={e}: u{} = {want} off by {best:e}", i + 5)
                })?;
            }
            let mult: usize = roots.iter().map(|r| r.multiplicity).sum();
            ensure(mult == uni.degree().unwrap_or(0), || format!("({h},{k},{w2}) E={e}: complex roots present"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (params, E) pairs, u1..u4 exact, u5..u8 within 1e-12"))
}

/// `hbar^2 kappa N^2 / 2 - (hbar^2 N / 2) sqrt(kappa^2 + 4 omega^2 / hbar^2)`.
fn closed_form_energy(h: f64, k: f64, w2: f64, n: f64) -> f64 {
    h * h * k * n * n / 2.0 - h * h * n / 2.0 * (k * k + 4.0 * w2 / (h * h)).sqrt()
}

fn energies() -> Outcome {
    let mut found = 0;
    for (h, k, w2) in [(1, 1, 1), (1, -1, 4)] {
        let p = params(h, k, w2);
        let generic = solve_spectrum(&p, 10, SolveMode::Generic).map_err(|e| e.to_string())?;
        // the minus-sign energies sit on u1 for kappa > 0 and on u2 for kappa < 0
        let branch = if k > 0 { "u1" } else { "u2" };
        for pp in 0..=10u32 {
            for n in [2 * pp + 1, 2 * pp + 2] {
                let want = closed_form_energy(h as f64, k as f64, w2 as f64, n as f64);
                let hit = generic.iter().any(|l| {
                    l.p == pp
                        && l.u_branch == branch
                        && l.flags.phi0_zero
                        && l.flags.phi_p1_zero
                        && (l.e_f64 - want).abs() <= 1e-10 * want.abs().max(1.0)
                });
                ensure(hit, || format!("({h},{k},{w2}) p={pp} N={n}: no {branch} line at E={want}"))?;
                found += 1;
            }
        }
        let closed = solve_spectrum(&p, 10, SolveMode::ClosedForm).map_err(|e| e.to_string())?;
        for c in closed.iter().filter(|l| l.admissible()) {
            let hit = generic
                .iter()
                .any(|l| l.p == c.p && (l.e_f64 - c.e_f64).abs() <= 1e-10 * c.e_f64.abs().max(1.0));
            ensure(hit, || format!("({h},{k},{w2}) closed-form line p={} E={} missing", c.p, c.e_f64))?;
        }
    }
    Ok(format!("{found} closed-form energies recovered by the resultant solve"))
}

/// Closed-form ladder at level `x` for the even (`odd = false`) or odd series.
fn closed_form_ladder(h: f64, k: f64, w2: f64, p: f64, x: f64, odd: bool) -> f64 {
    let s = (4.0 * w2 / (h * h * k * k) + 1.0).sqrt();
    let c = 12_884_901_888.0 * h.powi(20) * k.powi(8);
    if odd {
        c * x * (2.0 * x - 1.0) * (x - p - 1.0) * (2.0 * x - 2.0 * p - 3.0)
            * (s - 2.0 * x) * (s - 2.0 * x + 1.0) * (s - 2.0 * p - 2.0 * x - 2.0) * (s - 2.0 * p - 2.0 * x - 1.0)
    } else {
        c * x * (2.0 * x - 1.0) * (x - p - 1.0) * (2.0 * x - 2.0 * p - 1.0)
            * (s - 2.0 * x) * (s - 2.0 * x + 1.0) * (s - 2.0 * p - 2.0 * x - 1.0) * (s - 2.0 * p - 2.0 * x)
    }
}

fn u1_line(lines: &[SpectrumLine], p: u32, e: f64) -> Option<&SpectrumLine> {
    lines
        .iter()
        .find(|l| l.p == p && l.u_branch == "u1" && (l.e_f64 - e).abs() <= 1e-10 * e.abs().max(1.0))
}

fn positivity() -> Outcome {
    let p = params(1, 1, 1);
    let lines = solve_spectrum(&p, 10, SolveMode::ClosedForm).map_err(|e| e.to_string())?;
    let mut count = 0;
    let mut phi1 = f64::NAN;
    for pp in 0..=10u32 {
        for (n, odd) in [(2 * pp + 1, false), (2 * pp + 2, true)] {
            let e = closed_form_energy(1.0, 1.0, 1.0, n as f64);
            let l = u1_line(&lines, pp, e).ok_or_else(|| format!("no u1 line at p={pp} N={n}"))?;
            ensure(l.flags.exact && l.flags.phi0_zero && l.flags.phi_p1_zero, || {
                format!("p={pp} N={n}: cutoffs not exactly zero")
            })?;
            let exact = l.phi_exact.as_ref().ok_or("ladder not exact")?;
            ensure(exact.iter().all(Surd::is_positive), || format!("p={pp} N={n}: ladder not positive"))?;
            for (i, v) in l.phi.iter().enumerate() {
                let want = closed_form_ladder(1.0, 1.0, 1.0, pp as f64, (i + 1) as f64, odd);
                ensure((v - want).abs() <= 1e-9 * want.abs(), || {
                    format!("p={pp} N={n} x={}: {v} vs closed form {want}", i + 1)
                })?;
            }
            if pp == 1 && !odd {
                phi1 = l.phi[0] / 12_884_901_888.0;
            }
            count += 1;
        }
    }
    ensure((phi1 - 1.4227).abs() < 1e-4, || format!("Phi(1)/C = {phi1}"))?;
    Ok(format!("{count} u1 ladders positive, Phi(1)/C = {phi1:.5} at p=1"))
}

fn parity() -> Outcome {
    ensure(parity_identity_holds(), || "exact shift identity fails".into())?;
    // independent float check of the shift p -> p + 1/2 at scattered points
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let x = 0.37 + 0.113 * i as f64;
        let p = 0.5 * (i % 7) as f64 + 0.21;
        let w2 = 0.3 + 0.05 * i as f64;
        let even = closed_form_ladder(1.0, 1.0, w2, p + 0.5, x, false);
        let odd = closed_form_ladder(1.0, 1.0, w2, p, x, true);
        worst = worst.max((even - odd).abs() / odd.abs().max(1.0));
    }
    ensure(worst < 1e-12, || format!("float shift check off by {worst:e}"))?;
    Ok(format!("exact polynomial identity, float check {worst:.1e}"))
}

fn classical() -> Outcome {
    let mut notes = Vec::new();
    for (lambda, w2) in [(1.0, 1.0), (-0.5, 2.0)] {
        let r = verify_quadratic_poisson(lambda, w2, 100, 7).map_err(|e| e.to_string())?;
        let c = r
            .conventions
            .iter()
            .find(|c| Some(c.convention) == r.recorded)
            .ok_or_else(|| format!("lambda={lambda}: no convention passes"))?;
        for row in &c.rows {
            ensure(row.max_abs < 1e-5, || format!("lambda={lambda} {}: {:e}", row.identity, row.max_abs))?;
        }
        let worst = c.rows.iter().map(|r| r.max_abs).fold(0.0, f64::max);
        notes.push(format!("lambda={lambda}: {} rows, max {worst:.1e} ({})", c.rows.len(), c.convention));
    }
    Ok(notes.join("; "))
}

fn oracle_flat() -> Outcome {
    let model = RadialModel::new(1.0, 0.0, 1.0).map_err(|e| e.to_string())?;
    let grid = GridSpec { n_r: 512, m_max: 3, ..GridSpec::default() };
    let s = oracle_spectrum_for(&model, &grid, 3).map_err(|e| e.to_string())?;
    let got = s.lowest(6);
    for (e, want) in got.iter().zip([1.0, 2.0, 2.0, 3.0, 3.0, 3.0]) {
        ensure((e - want).abs() <= 0.01 * want, || format!("{e} vs {want}"))?;
    }
    let worst = got
        .iter()
        .zip([1.0, 2.0, 2.0, 3.0, 3.0, 3.0])
        .map(|(e, w)| (e - w).abs() / w)
        .fold(0.0, f64::max);
    Ok(format!("six lowest within {worst:.1e} relative"))
}

fn adjudication() -> Outcome {
    let grid = GridSpec { n_r: 512, m_max: 9, ..GridSpec::default() };
    let opts = AdjudicationOptions::default();
    let mut notes = Vec::new();
    let mut winners = Vec::new();
    for lambda in [rat(1, 1000), rat(-1, 1000), rat(1, 10)] {
        let r = adjudicate_params(&q(1), &lambda, &q(1), &grid, 5, &opts).map_err(|e| e.to_string())?;
        let name = r.winner_name.clone().ok_or_else(|| {
            let counts: Vec<String> =
                r.conventions.iter().map(|c| format!("{}: {}/{}", c.name, c.matched, c.evaluated)).collect();
            format!("lambda={lambda}: no unique convention ({})", counts.join(", "))
        })?;
        ensure(r.unique, || format!("lambda={lambda}: winner not unique"))?;
        let w = r.conventions.iter().find(|c| Some(c.convention) == r.winner).ok_or("winner missing")?;
        ensure(w.unmatched().next().is_none() && w.evaluated > 0, || format!("lambda={lambda}: unmatched lines"))?;
        notes.push(format!("lambda={lambda}: {}/{} lines", w.matched, w.evaluated));
        winners.push(name);
    }
    winners.dedup();
    ensure(winners.len() == 1, || format!("winner changes with lambda: {winners:?}"))?;
    Ok(format!("{} ({})", winners[0], notes.join(", ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "structure-function identity", limit: Duration::from_secs(15), run: identity },
        Criterion { id: 2, name: "u-roots", limit: Duration::from_secs(5), run: u_roots },
        Criterion { id: 3, name: "energies (generic solve)", limit: Duration::from_secs(60), run: energies },
        Criterion { id: 4, name: "ladder positivity", limit: Duration::from_secs(10), run: positivity },
        Criterion { id: 5, name: "parity identity", limit: Duration::from_secs(1), run: parity },
        Criterion { id: 6, name: "classical algebra", limit: Duration::from_secs(10), run: classical },
        Criterion { id: 7, name: "oracle flat limit", limit: Duration::from_secs(60), run: oracle_flat },
        Criterion { id: 8, name: "adjudication", limit: Duration::from_secs(300), run: adjudication },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let outcome = (c.run)();
        let dt = t.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if dt <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} limit", c.limit)),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {} {:<28} {} in {:>8.2?}  {}",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            dt,
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
