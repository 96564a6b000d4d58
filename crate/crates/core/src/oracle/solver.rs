//! Lowest eigenvalues of every angular sector with Richardson extrapolation
//! over grid refinements and an adaptive box.

use rayon::prelude::*;
use serde::Serialize;

use super::radial::{radial_operator, RadialGrid, RadialModel};
use crate::error::{Error, Result};
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    /// Radial cells on the coarsest grid.
    pub n_r: usize,
    /// Wall radius; chosen adaptively when `None`.
    pub r_max: Option<f64>,
    pub m_max: u32,
    /// Number of grids, each with twice the cells of the previous one.
    pub refinement_levels: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n_r: 512, r_max: None, m_max: 4, refinement_levels: 3 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_r < 64 {
            return Err(Error::InvalidInput(format!("n_r must be at least 64, got {}", self.n_r)));
        }
        if self.refinement_levels == 0 {
            return Err(Error::InvalidInput("at least one refinement level".into()));
        }
        Ok(())
    }
}

/// Tail amplitude below which an eigenfunction counts as decayed.
pub const DECAY_TOL: f64 = 1e-8;
/// Outer fraction of the box inspected by the decay check.
pub const TAIL_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleLevel {
    /// Richardson-extrapolated energy.
    pub e: f64,
    pub m: i32,
    /// Radial index within the sector.
    pub level: usize,
    /// `|E_fine - E_coarse| / 3`.
    pub convergence: f64,
    /// Observed order from the last three grids.
    pub order: Option<f64>,
    /// Eigenvalues on each grid, coarse to fine.
    pub raw: Vec<f64>,
    /// Below the potential limit (always true without one).
    pub bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorInfo {
    pub m: u32,
    pub s_max: f64,
    /// Every bound eigenfunction decayed to the tolerance before the wall.
    pub decayed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSpectrum {
    pub hbar: f64,
    pub lambda: f64,
    pub omega_sq: f64,
    pub grid: GridSpec,
    pub k_lowest: usize,
    /// Sorted by energy; sectors `m != 0` appear for `m` and `-m`.
    pub levels: Vec<OracleLevel>,
    pub sectors: Vec<SectorInfo>,
    /// Every eigenvalue below this energy is in `levels`.
    pub complete_below: f64,
    pub potential_limit: Option<f64>,
    pub continuum_threshold: Option<f64>,
}

impl OracleSpectrum {
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        self.levels.iter().take(k).map(|l| l.e).collect()
    }

    pub fn all_decayed(&self) -> bool {
        self.sectors.iter().all(|s| s.decayed)
    }
}

struct SectorResult {
    levels: Vec<OracleLevel>,
    info: SectorInfo,
    top: f64,
}

fn tail_ratio(v: &[f64], grid: &RadialGrid) -> f64 {
    let peak = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let cut = (1.0 - TAIL_FRACTION) * grid.s_max;
    let tail = v
        .iter()
        .zip(&grid.s)
        .filter(|(_, s)| **s >= cut)
        .fold(0.0f64, |a, (x, _)| a.max(x.abs()));
    if peak > 0.0 {
        tail / peak
    } else {
        1.0
    }
}

fn needs_decay(model: &RadialModel, e: f64) -> bool {
    model.potential_limit().is_none_or(|v| e < v)
}

/// Starting box from the flat turning point of the `k`-th level plus margin.
fn initial_s_max(model: &RadialModel, m: u32, k: usize) -> f64 {
    let omega = model.omega_sq.sqrt();
    let ell = (model.hbar / omega).sqrt();
    let e = model.hbar * omega * (2.0 * k as f64 + m as f64 + 1.0);
    let r_turn = (2.0 * e / model.omega_sq).sqrt();
    let s = r_turn + 8.0 * ell;
    match model.s_limit() {
        Some(lim) => s.min(lim),
        None => s,
    }
}

fn box_for_sector(model: &RadialModel, m: u32, k: usize, n: usize) -> Result<(f64, bool)> {
    let ell = (model.hbar / model.omega_sq.sqrt()).sqrt();
    let cap = 2000.0 * ell;
    let mut s_max = initial_s_max(model, m, k);
    loop {
        let grid = RadialGrid::new(model, n, s_max)?;
        let t = radial_operator(model, m as i32, &grid)?;
        let mut ok = true;
        for e in t.lowest(k)? {
            if !needs_decay(model, e) {
                continue;
            }
            let v = t.eigenvector(e)?;
            if tail_ratio(&v, &grid) > DECAY_TOL {
                ok = false;
                break;
            }
        }
        let at_wall = model.s_limit().is_some_and(|lim| s_max >= lim);
        if ok || at_wall || s_max >= cap {
            return Ok((s_max, ok));
        }
        s_max *= 1.25;
        if let Some(lim) = model.s_limit() {
            s_max = s_max.min(lim);
        }
    }
}

fn solve_sector(model: &RadialModel, m: u32, grid: &GridSpec, k: usize) -> Result<SectorResult> {
    let (s_max, decayed) = match grid.r_max {
        Some(r) => {
            model.check_r_max(r)?;
            (model.s_of_r(r), true)
        }
        None => box_for_sector(model, m, k, grid.n_r)?,
    };
    let mut per_grid: Vec<Vec<f64>> = Vec::with_capacity(grid.refinement_levels);
    for l in 0..grid.refinement_levels {
        let n = grid.n_r << l;
        let g = RadialGrid::new(model, n, s_max)?;
        per_grid.push(radial_operator(model, m as i32, &g)?.lowest(k)?);
    }
    let levels: Vec<OracleLevel> = (0..k)
        .map(|j| {
            let raw: Vec<f64> = per_grid.iter().map(|v| v[j]).collect();
            let (e, convergence) = match raw.len() {
                1 => (raw[0], f64::NAN),
                n => {
                    let d = raw[n - 1] - raw[n - 2];
                    (raw[n - 1] + d / 3.0, d.abs() / 3.0)
                }
            };
            let order = (raw.len() >= 3).then(|| {
                let n = raw.len();
                let q = (raw[n - 3] - raw[n - 2]) / (raw[n - 2] - raw[n - 1]);
                q.abs().log2()
            });
            OracleLevel {
                e,
                m: m as i32,
                level: j,
                convergence,
                order: order.filter(|o| o.is_finite()),
                raw,
                bound: needs_decay(model, e),
            }
        })
        .collect();
    let top = levels.last().map_or(f64::INFINITY, |l| l.e);
    Ok(SectorResult { levels, info: SectorInfo { m, s_max, decayed }, top })
}

/// Oracle spectrum for the physical `lambda` of `params`.
pub fn oracle_spectrum(params: &ModelParams, grid: &GridSpec, k_lowest: usize) -> Result<OracleSpectrum> {
    let model = RadialModel::new(params.hbar_f64(), params.lambda_f64(), params.omega_sq_f64())?;
    oracle_spectrum_for(&model, grid, k_lowest)
}

pub fn oracle_spectrum_for(model: &RadialModel, grid: &GridSpec, k_lowest: usize) -> Result<OracleSpectrum> {
    grid.validate()?;
    if k_lowest == 0 || k_lowest > grid.n_r / 4 {
        return Err(Error::InvalidInput(format!(
            "k_lowest must be in 1..={}, got {k_lowest}",
            grid.n_r / 4
        )));
    }
    let sectors: Vec<Result<SectorResult>> = (0..=grid.m_max + 1)
        .into_par_iter()
        .map(|m| {
            let k = if m == grid.m_max + 1 { 1 } else { k_lowest };
            solve_sector(model, m, grid, k)
        })
        .collect();
    let mut levels = Vec::new();
    let mut infos = Vec::new();
    let mut complete_below = f64::INFINITY;
    for (m, r) in sectors.into_iter().enumerate() {
        let r = r?;
        if m as u32 == grid.m_max + 1 {
            complete_below = complete_below.min(r.levels[0].e);
            continue;
        }
        complete_below = complete_below.min(r.top);
        for l in &r.levels {
            levels.push(l.clone());
            if l.m != 0 {
                levels.push(OracleLevel { m: -l.m, ..l.clone() });
            }
        }
        infos.push(r.info);
    }
    levels.sort_by(|a, b| a.e.total_cmp(&b.e).then(a.m.cmp(&b.m)).then(a.level.cmp(&b.level)));
    Ok(OracleSpectrum {
        hbar: model.hbar,
        lambda: model.lambda,
        omega_sq: model.omega_sq,
        grid: *grid,
        k_lowest,
        levels,
        sectors: infos,
        complete_below,
        potential_limit: model.potential_limit(),
        continuum_threshold: model.continuum_threshold(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_degeneracies() {
        let model = RadialModel::new(1.0, 0.0, 1.0).unwrap();
        let grid = GridSpec { m_max: 3, ..GridSpec::default() };
        let spec = oracle_spectrum_for(&model, &grid, 3).unwrap();
        let want = [1.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0, 4.0];
        for (e, w) in spec.lowest(10).iter().zip(want) {
            assert!((e - w).abs() < 1e-6, "{e} vs {w}");
        }
        assert!(spec.all_decayed());
        for l in &spec.levels {
            let o = l.order.unwrap();
            assert!(o > 1.9, "order {o} at m={} level={}", l.m, l.level);
        }
    }

    #[test]
    fn k_lowest_bound() {
        let model = RadialModel::new(1.0, 0.0, 1.0).unwrap();
        assert!(oracle_spectrum_for(&model, &GridSpec::default(), 129).is_err());
        let small = GridSpec { n_r: 32, ..GridSpec::default() };
        assert!(oracle_spectrum_for(&model, &small, 1).is_err());
    }
}
