//! Radial reduction of the curved oscillator on an angular sector `m`.
//!
//! On `e^{i m phi} R(r)` the Hamiltonian acts as
//! `-(hbar^2/2) [(1 + lambda r^2) R'' + ((1 + lambda r^2)/r + lambda r) R'] + hbar^2 m^2 / (2 r^2) R + V(r) R`
//! with `V = omega^2 r^2 / (2 (1 + lambda r^2))`. In the geodesic radius `s`
//! (`dr/ds = sqrt(1 + lambda r^2)`) this is `-(hbar^2 / 2r) (r R_s)_s + ...`,
//! self-adjoint for the weight `r ds`.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};

/// Physical parameters of the radial problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialModel {
    pub hbar: f64,
    pub lambda: f64,
    pub omega_sq: f64,
}

/// Fraction of the disk radius `1/sqrt(-lambda)` where the wall sits for `lambda < 0`.
pub const SPHERE_WALL_FRACTION: f64 = 0.999;

impl RadialModel {
    pub fn new(hbar: f64, lambda: f64, omega_sq: f64) -> Result<Self> {
        if !(hbar > 0.0 && omega_sq > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "radial model needs hbar > 0 and omega^2 > 0, got hbar={hbar}, omega^2={omega_sq}"
            )));
        }
        Ok(RadialModel { hbar, lambda, omega_sq })
    }

    /// `r(s)`.
    pub fn r_of_s(&self, s: f64) -> f64 {
        let l = self.lambda;
        if l == 0.0 {
            s
        } else if l < 0.0 {
            let k = (-l).sqrt();
            (k * s).sin() / k
        } else {
            let k = l.sqrt();
            (k * s).sinh() / k
        }
    }

    /// `s(r)`.
    pub fn s_of_r(&self, r: f64) -> f64 {
        let l = self.lambda;
        if l == 0.0 {
            r
        } else if l < 0.0 {
            let k = (-l).sqrt();
            (k * r).asin() / k
        } else {
            let k = l.sqrt();
            (k * r).asinh() / k
        }
    }

    pub fn potential(&self, r: f64) -> f64 {
        self.omega_sq * r * r / (2.0 * (1.0 + self.lambda * r * r))
    }

    /// Largest admissible `s` for the wall, `None` when unbounded.
    pub fn s_limit(&self) -> Option<f64> {
        (self.lambda < 0.0).then(|| self.s_of_r(SPHERE_WALL_FRACTION / (-self.lambda).sqrt()))
    }

    /// `omega^2 / (2 lambda)` for `lambda > 0`.
    pub fn potential_limit(&self) -> Option<f64> {
        (self.lambda > 0.0).then(|| self.omega_sq / (2.0 * self.lambda))
    }

    /// Bottom of the continuum, `omega^2 / (2 lambda) + hbar^2 lambda / 8`.
    pub fn continuum_threshold(&self) -> Option<f64> {
        self.potential_limit()
            .map(|v| v + self.hbar * self.hbar * self.lambda / 8.0)
    }

    /// Checks a wall radius `r_max` against the disk `r < 1/sqrt(-lambda)`.
    pub fn check_r_max(&self, r_max: f64) -> Result<()> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidInput(format!("r_max must be positive, got {r_max}")));
        }
        if self.lambda < 0.0 && r_max >= 1.0 / (-self.lambda).sqrt() {
            return Err(Error::Domain(format!(
                "r_max = {r_max} is outside the disk r < {}",
                1.0 / (-self.lambda).sqrt()
            )));
        }
        Ok(())
    }
}

/// Cell-centred grid on `(0, s_max)`: `s_i = (i - 1/2) h`, Dirichlet wall at `s_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub s_max: f64,
    pub h: f64,
    pub s: Vec<f64>,
    pub r: Vec<f64>,
    /// `r` at the cell faces `s = i h`, `i = 0 .. n`.
    pub r_face: Vec<f64>,
}

impl RadialGrid {
    pub fn new(model: &RadialModel, n: usize, s_max: f64) -> Result<Self> {
        if n < 2 || !(s_max > 0.0 && s_max.is_finite()) {
            return Err(Error::InvalidInput(format!("grid with n = {n}, s_max = {s_max}")));
        }
        if let Some(lim) = model.s_limit() {
            if s_max > lim * (1.0 + 1e-12) {
                return Err(Error::Domain(format!("s_max = {s_max} beyond the wall at {lim}")));
            }
        }
        let h = s_max / n as f64;
        let s: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
        let r = s.iter().map(|&x| model.r_of_s(x)).collect();
        let r_face = (0..=n).map(|i| model.r_of_s(i as f64 * h)).collect();
        Ok(RadialGrid { s_max, h, s, r, r_face })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// Symmetrised radial operator on sector `m`, acting on `sqrt(r) R`.
pub fn radial_operator(model: &RadialModel, m: i32, grid: &RadialGrid) -> Result<SymTridiagonal> {
    let n = grid.len();
    let k = model.hbar * model.hbar / (2.0 * grid.h * grid.h);
    let m2 = (m as f64) * (m as f64);
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let ri = grid.r[i];
        let inner = grid.r_face[i];
        // ghost R_{n+1} = -R_n puts the zero on the wall face
        let outer = if i + 1 == n { 2.0 * grid.r_face[n] } else { grid.r_face[i + 1] };
        let centrifugal = model.hbar * model.hbar * m2 / (2.0 * ri * ri);
        diag.push(k * (inner + outer) / ri + centrifugal + model.potential(ri));
        if i + 1 < n {
            off.push(-k * grid.r_face[i + 1] / (ri * grid.r[i + 1]).sqrt());
        }
    }
    SymTridiagonal::new(diag, off)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_round_trip() {
        for lambda in [-0.3, 0.0, 0.2] {
            let m = RadialModel::new(1.0, lambda, 1.0).unwrap();
            for s in [0.1, 0.7, 1.9] {
                assert!((m.s_of_r(m.r_of_s(s)) - s).abs() < 1e-12);
            }
        }
        let sphere = RadialModel::new(1.0, -1.0, 1.0).unwrap();
        assert!(sphere.check_r_max(1.0).is_err());
        assert!(sphere.check_r_max(0.99).is_ok());
        assert!((sphere.r_of_s(sphere.s_limit().unwrap()) - SPHERE_WALL_FRACTION).abs() < 1e-12);
    }

    #[test]
    fn operator_is_symmetric_and_flat_ground_state() {
        let model = RadialModel::new(1.0, 0.0, 1.0).unwrap();
        let grid = RadialGrid::new(&model, 512, 10.0).unwrap();
        let t = radial_operator(&model, 0, &grid).unwrap();
        assert_eq!(t.off.len(), 511);
        let e0 = t.eigenvalue(0).unwrap();
        assert!((e0 - 1.0).abs() < 1e-2, "{e0}");
        let t1 = radial_operator(&model, 1, &grid).unwrap();
        let e1 = t1.eigenvalue(0).unwrap();
        assert!((e1 - 2.0).abs() < 2e-2, "{e1}");
    }
}
