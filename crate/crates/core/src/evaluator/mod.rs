//! Evaluation of diagrams as exact matrices: the choice of merge and split
//! maps, the evaluation functor and the semantic checks built on it.

mod checks;
mod eval;
mod merge;
mod relations;

pub use checks::{
    faithfulness_check, fullness_check, hom_dim_oracle, path_family, schur_scalar, FaithfulnessRow, FullnessRow,
    SchurOutcome,
};
pub use eval::{apply_local, is_equivariant, Evaluator, MatrixMap};
pub use merge::{choose_merge_maps, choose_star_maps, derive_split_maps, MergeSystem};
pub use relations::{check_category_relations, RelationCheck, RelationReport};

use thiserror::Error;

use crate::diagram::{DiagramError, ObjectWord};
use crate::exactfield::FieldError;
use crate::repgraph::{Label, RepGraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no matrix assigned to cell {0}")]
    MissingMatrix(String),
    #[error("diagram is not valid in {category}: {problems}")]
    Invalid { category: String, problems: String },
    #[error("Hom({from}, {to}) is zero although the graph has that edge")]
    EmptyHom { from: String, to: String },
    #[error("Hom({from}, {to}) has dimension {dim}; expected one")]
    MultipleHom { from: String, to: String, dim: usize },
    #[error("merges out of V (x) {node} stack to {stacked} rows but V (x) {node} has dimension {expected}")]
    SplitShape {
        node: Label,
        stacked: usize,
        expected: usize,
    },
    #[error("stacked merges at {0} are singular")]
    Singular(Label),
    #[error("expected a morphism between single strands, found {from} -> {to}")]
    NotSimpleBoundary { from: ObjectWord, to: ObjectWord },
    #[error("Schur condition violated (data corruption): {0}")]
    SchurViolation(String),
    #[error(transparent)]
    Graph(#[from] RepGraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
