//! Exact scalars: rationals and elements of a real quadratic field.

pub mod rational;
pub mod surd;

pub use rational::{parse_rational, rat_arith, ArithOp, Rational};
pub use surd::Surd;

use crate::error::Result;

/// Applies one field operation to two surds.
pub fn surd_arith(lhs: &Surd, rhs: &Surd, op: ArithOp) -> Result<Surd> {
    match op {
        ArithOp::Add => lhs.try_add(rhs),
        ArithOp::Sub => lhs.try_sub(rhs),
        ArithOp::Mul => lhs.try_mul(rhs),
        ArithOp::Div => lhs.try_div(rhs),
    }
}

/// Converts to `f64` with `bits` of working precision for the radical.
pub fn to_float(x: &Surd, bits: u32) -> f64 {
    x.to_f64_with(bits)
}
