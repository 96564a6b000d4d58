//! Independent finite-difference eigensolver for the curved oscillator and
//! its comparison with the algebraic spectrum.

pub mod adjudicate;
pub mod radial;
pub mod solver;
pub mod tridiag;

pub use adjudicate::{adjudicate, adjudicate_params, AdjudicationOptions, AdjudicationReport, Convention};
pub use radial::{radial_operator, RadialGrid, RadialModel};
pub use solver::{oracle_spectrum, oracle_spectrum_for, GridSpec, OracleLevel, OracleSpectrum};
pub use tridiag::SymTridiagonal;
