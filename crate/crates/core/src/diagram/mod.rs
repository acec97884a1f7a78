//! Syntax of the diagram categories: object words, generator cells, layered
//! diagrams, linear combinations and the standard builders.

mod build;
mod cell;
mod layered;
mod morphism;
pub mod random;
mod validate;
mod word;

pub use build::{canonical_cn, d_path, funnel_cn, u_path, word_sum};
pub use cell::Cell;
pub use layered::{Diagram, Step};
pub use morphism::Morphism;
pub use validate::{check_cell, validate, validate_morphism, Category, ValidationReport};
pub use word::{ObjectWord, Strand};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("boundary mismatch in {context}: expected {expected}, found {found}")]
    BoundaryMismatch {
        context: String,
        expected: ObjectWord,
        found: ObjectWord,
    },
    #[error("invalid cell {cell}: {reason}")]
    InvalidCell { cell: String, reason: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("no diagram from {from} to {to}")]
    NoDiagram { from: ObjectWord, to: ObjectWord },
}
