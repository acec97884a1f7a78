//! Temperley-Lieb diagrams: non-crossing pairings, composition with loop
//! removal, the generators `e_i` and the two-dimensional matrix model.

mod algebra;
mod matrix;
mod planar;

pub use algebra::{
    check_tl_presentation, check_tl_presentation_with_loop, e_generator, tl_compose, TLMorphism, TlCheck, TlReport,
};
pub use matrix::{sl2_group, sl2_intertwiner_dim, tl_matrix_rank, tl_to_matrix};
pub use planar::{catalan, tl_basis, PlanarDiagram, Point};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("cannot stack a diagram with {above} bottom points on one with {below} top points")]
    BoundaryMismatch { above: usize, below: usize },
    #[error("generator index {i} out of range for TL_{k}")]
    IndexOutOfRange { i: usize, k: usize },
    #[error("not a non-crossing perfect matching: {0}")]
    NotPlanar(String),
    #[error("cannot parse pairing {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("loop parameters differ: {0} vs {1}")]
    DeltaMismatch(String, String),
}
