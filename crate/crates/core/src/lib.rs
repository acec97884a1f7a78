//! Exact diagrammatic calculus for representation graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactfield`]: cyclotomic scalars and exact matrices.
//! * [`repgraph`]: group module data, intertwiners and representation graphs.
//! * [`diagram`]: object words, generator cells, layered diagrams and morphisms.
//! * [`cn_rewrite`]: the rewriting normalizer for the cyclic-group category.
//! * [`evaluator`]: merge/split systems and the evaluation functor to matrices.
//! * [`tl`]: Temperley-Lieb diagrams and their matrix model.

pub mod cn_rewrite;
pub mod diagram;
pub mod evaluator;
pub mod exactfield;
pub mod repgraph;
pub mod tl;

pub use exactfield::{ExactMatrix, FieldError, Scalar};
