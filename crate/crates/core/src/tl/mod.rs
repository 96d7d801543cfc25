//! The Temperley–Lieb category over `Z[δ]`: objects are point counts, morphisms are
//! `Z[δ]`-combinations of planar matchings, closed loops evaluate to `δ`.

mod datum;
mod diagram;
mod morphism;
mod relations;

pub use datum::{tl_cell_datum, TlCellDatum};
pub use diagram::{enumerate_diagrams, half_diagrams, HalfDiagram, Point, TLDiagram};
pub use morphism::TLMorphism;
pub use relations::{relation_suite, RelationCheck};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("object mismatch: first morphism ends at {target}, second starts at {next_source}")]
    ObjectMismatch { target: usize, next_source: usize },
    #[error("generator index {i} out of range for End({n})")]
    IndexOutOfRange { n: usize, i: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("{0} is not a half-diagram")]
    NotHalfDiagram(String),
}
