//! Symmetric tridiagonal eigenproblems: Sturm-count bisection for
//! eigenvalues, inverse iteration for eigenvectors.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "tridiagonal shape: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            if q.abs() < tiny {
                q = -tiny;
            }
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::InvalidInput(format!("eigenvalue {k} of a {}x{} matrix", self.len(), self.len())));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = 1e-12 * (lo.abs().max(hi.abs()) + 1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn lowest(&self, k: usize) -> Result<Vec<f64>> {
        (0..k).map(|i| self.eigenvalue(i)).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Unit eigenvector for the eigenvalue closest to `shift`.
    pub fn eigenvector(&self, shift: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        let sigma = shift + 1e-13 * scale;
        let lu = TriLu::factor(self, sigma);
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        normalize(&mut v);
        for _ in 0..6 {
            let mut w = lu.solve(&v);
            normalize(&mut w);
            let converged = residual(self, &w) <= 1e-10 * scale;
            v = w;
            if converged {
                return Ok(v);
            }
        }
        if residual(self, &v) <= 1e-8 * scale {
            Ok(v)
        } else {
            Err(Error::NonConvergence(format!("inverse iteration near {shift}")))
        }
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// `|T v - (v.Tv) v|` for a unit `v`.
fn residual(t: &SymTridiagonal, v: &[f64]) -> f64 {
    let tv = t.mul_vec(v);
    let rq: f64 = tv.iter().zip(v).map(|(a, b)| a * b).sum();
    tv.iter()
        .zip(v)
        .map(|(a, b)| (a - rq * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// LU factors of `T - sigma I` with partial pivoting.
struct TriLu {
    /// Rows of `U`: diagonal, first and second superdiagonal.
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl TriLu {
    fn factor(t: &SymTridiagonal, sigma: f64) -> Self {
        let n = t.len();
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];
        // current row i: (a, b, c) at columns i, i+1, i+2
        let mut a = t.diag[0] - sigma;
        let mut b = if n > 1 { t.off[0] } else { 0.0 };
        let mut c = 0.0;
        let eps = f64::EPSILON * (t.gershgorin().1.abs() + t.gershgorin().0.abs()).max(1.0);
        for i in 0..n {
            if i + 1 == n {
                u0[i] = if a == 0.0 { eps } else { a };
                break;
            }
            let sub = t.off[i];
            let nd = t.diag[i + 1] - sigma;
            let nu = if i + 2 < n { t.off[i + 1] } else { 0.0 };
            if sub.abs() > a.abs() {
                // swap row i with row i + 1
                swapped[i] = true;
                u0[i] = sub;
                u1[i] = nd;
                u2[i] = nu;
                let m = a / sub;
                mult[i] = m;
                a = b - m * nd;
                b = c - m * nu;
            } else {
                let piv = if a == 0.0 { eps } else { a };
                u0[i] = piv;
                u1[i] = b;
                u2[i] = c;
                let m = sub / piv;
                mult[i] = m;
                a = nd - m * b;
                b = nu - m * c;
            }
            c = 0.0;
        }
        TriLu { u0, u1, u2, mult, swapped }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        let mut y = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] -= self.mult[i] * y[i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            if i + 1 < n {
                s -= self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * x[i + 2];
            }
            x[i] = s / self.u0[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Second-difference matrix, eigenvalues `2 - 2 cos(j pi / (n + 1))`.
    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn laplacian_eigenvalues() {
        let n = 50;
        let t = laplacian(n);
        for (j, e) in t.lowest(5).unwrap().iter().enumerate() {
            let want = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - want).abs() < 1e-13, "{e} vs {want}");
        }
        assert_eq!(t.count_below(0.0), 0);
        assert_eq!(t.count_below(4.0), n);
    }

    #[test]
    fn eigenvector_residual() {
        let t = laplacian(40);
        let e = t.eigenvalue(2).unwrap();
        let v = t.eigenvector(e).unwrap();
        let tv = t.mul_vec(&v);
        for (a, b) in tv.iter().zip(&v) {
            assert!((a - e * b).abs() < 1e-10);
        }
        // third mode of the discrete sine basis
        let n = 40.0;
        let s0 = (3.0 * std::f64::consts::PI / (n + 1.0)).sin();
        assert!((v[0].abs() - s0 * (2.0 / (n + 1.0)).sqrt()).abs() < 1e-8);
    }

    #[test]
    fn shape_errors() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(laplacian(3).eigenvalue(3).is_err());
    }
}
