//! Representation graphs: module data, intertwiner spaces, graph
//! construction from tensor decompositions, fusion-graph files and walks.

mod builtin;
mod graph;
mod group;
mod label;

pub use builtin::{
    binary_tetrahedral, build_rep_graph, bundled_graph, bundled_graph_names, cyclic, cyclic_natural, group_from_json,
    group_graph, resolve_graph, resolve_group, sl2_module, su2, DATA_PATH_ENV,
};
pub use graph::{load_fusion_graph, DimensionReport, Node, NodeCheck, NodeStatus, Path, RepGraph};
pub use group::{decompose_tensor, intertwiner_basis, intertwiner_basis_modules, ActionKind, GroupData, SimpleModule};
pub use label::Label;

use thiserror::Error;

use crate::exactfield::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepGraphError {
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("generator node {0} is not in the graph")]
    MissingGenerator(Label),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(Label, Label),
    #[error(
        "{to} occurs {multiplicity} times in V (x) {from}; representation graphs must not have multiple parallel edges"
    )]
    MultiEdge {
        from: Label,
        to: Label,
        multiplicity: usize,
    },
    #[error("{v} (x) {a} has dimension {expected} but the simples found account for {found}")]
    DimensionMismatch {
        v: Label,
        a: Label,
        expected: usize,
        found: usize,
    },
    #[error("walks of {steps} steps reach truncation frontier node {node}")]
    Truncation { node: Label, steps: usize },
    #[error("node {0} is unreachable from the generator (graph is not connected)")]
    Unreachable(Label),
    #[error("{count} shortest walks of length {length} reach {node}; expected exactly one")]
    NonUniqueWitness { node: Label, length: usize, count: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid data: {0}")]
    Data(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
