//! Additive cycles at the level of rational points and one-parameter Möbius
//! curves, with faces, the Connes operator `δ`, and the product structures.

mod formal;
pub mod io;
mod products;
mod ring;
mod term;

use thiserror::Error;

use crate::field::FieldError;
use crate::perm::PermError;

pub use formal::{BoundaryMode, FormalCycle};
pub use products::{
    concat, connes_derivation_check, connes_derivation_check_with, cyclic_shuffle,
    cyclic_shuffle_with, delta_via_shuffles, expand_block, extra_degenerate_concat, mu_push,
    reduced_c2_combination, shuffle_commutes, shuffle_product, totaro_c2, totaro_map, wedge,
    BlockSign, DerivationReport,
};
pub use ring::{ModulusRing, SlotSpace};
pub use term::{Coord, FaceValue, Inadmissible, MobiusCurve, PointCycle, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("improper intersection: {0}")]
    ImproperIntersection(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("slot index {index} out of range 1..={max}")]
    SlotOutOfRange { index: usize, max: usize },
    #[error("expected embedding dimension {expected}, found {found}")]
    EmbeddingDimension { expected: usize, found: usize },
    #[error("invalid modulus ring {0}")]
    InvalidRing(String),
    #[error("a curve needs at least one non-constant box coordinate")]
    NotACurve,
    #[error("product of two curve factors is unsupported")]
    BothCurves,
    #[error("extra-degenerate concatenation takes point cycles only")]
    CurveInput,
    #[error("μ_* requires a decomposable cycle")]
    NotDecomposable,
    #[error("Totaro parameters b1, b2 must be nonzero")]
    ZeroParameter,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
