//! Polynomials: sparse multivariate, dense univariate, real roots and resultants.

pub mod coeff;
pub mod multipoly;
pub mod ratfn;
pub mod resultant;
pub mod roots;
pub mod unipoly;

pub use coeff::{Coeff, ExactDiv, Field};
pub use multipoly::{Monomial, MultiPoly, Substitution, Var, NVARS};
pub use ratfn::RationalFn;
pub use resultant::{resultant, resultant_in};
pub use roots::{real_roots, RealRoot, RootOptions};
pub use unipoly::UniPoly;
