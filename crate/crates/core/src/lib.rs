//! Exact and numerical tools for the spectrum of the harmonic oscillator on
//! two-dimensional spaces of constant curvature.
//!
//! The quantum system is solved algebraically: its quadratic symmetry algebra
//! is realised as a deformed parafermionic oscillator whose structure function
//! is a polynomial, and finite-dimensional unitary representations give the
//! energies. The crate also checks the classical Poisson algebra numerically
//! and computes the spectrum independently with a finite-difference radial
//! solver.

pub mod classical;
pub mod error;
pub mod exactnum;
pub mod mpoly;
pub mod oracle;
pub mod params;
pub mod qalgebra;
pub mod spectrum;

pub use error::{Error, Result};
pub use params::{CurvatureConvention, ModelParams};
