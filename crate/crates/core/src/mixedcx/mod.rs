//! Mixed complexes over ℚ: validation, totalization, homology and the Connes
//! periodicity sequence, plus finite complexes spanned by cycles.

mod complex;
mod connes;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod oracle;
mod span;

use thiserror::Error;

use crate::cycles::CycleError;

pub use complex::{Axiom, ChainComplex, Homology, MixedComplex, TotalComplex, Violation};
pub use connes::{connes_sequence, default_max_degree, Group, LesMap, LesNode, LesReport, MapKind};
pub use span::{span_builder, SpanComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a mixed complex: {} fails out of degree {}", .0.axiom, .0.degree)]
    Invalid(Violation),
    #[error("d∘d ≠ 0 out of degree {0}")]
    NotAComplex(usize),
    #[error("seed {0} is not reduced")]
    NonReducedSeed(usize),
    #[error("degree {degree} exceeds the cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("an image left the generated span")]
    NotClosed,
}
