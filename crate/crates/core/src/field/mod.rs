//! Exact arithmetic in ℚ(u₁,…,u_m), points of ℙ¹ over it, and Möbius maps.

mod parse;
pub mod poly;
mod proj;
mod ratfunc;

use thiserror::Error;

pub use parse::Symbols;
pub(crate) use parse::{tokenize, Tok};
pub use poly::{Monomial, Poly, Symbol};
pub use proj::{Mobius, ProjValue};
pub use ratfunc::RatFunc;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("improper solve: constant map equals the target")]
    ImproperSolve,
    #[error("degenerate projective point (0:0)")]
    DegeneratePoint,
    #[error("degenerate Möbius map: denominator is identically zero")]
    DegenerateMobius,
    #[error("exponent out of range")]
    ExponentTooLarge,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
