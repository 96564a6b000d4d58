//! Quadratic associative algebras, their deformed-oscillator realisation and
//! the curved-oscillator model.

pub mod identity;
pub mod ladder;
pub mod model;
pub mod structure;

pub use identity::{compare, verify_phi_identity, Comparison, IdentityReport};
pub use ladder::{build_ladder, LadderBranch, LadderRealization};
pub use model::{model_quantum_spec, CasimirPoly, QuadraticAlgebraSpec};
pub use structure::{
    build_structure_function, expanded_phi, factorized_phi, model_structure_function, Provenance,
    StructureFunction,
};
