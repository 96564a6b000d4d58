//! Finite unitary representations of the deformed oscillator and the energy
//! spectrum they carry.

pub mod closed_form;
pub mod parity;
pub mod solve;

pub use closed_form::{closed_form_u, energy_closed_form, energy_from, Parity, SqrtSign, UValue};
pub use parity::{ladder_at, ladder_polynomial, parity_identity_holds};
pub use solve::{
    formula_energy, ladder_amplitudes, solve_spectrum, solve_spectrum_with, LineFlags, SolveMode,
    SolveOptions, SpectrumLine,
};
