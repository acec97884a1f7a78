use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ObjectWord, Strand};
use crate::repgraph::Label;

/// A generating morphism.
///
/// Merge and split cells are shared by all categories; which side conditions
/// apply (sum modulo `n`, graph adjacency, star on the left) is decided by the
/// category a diagram is validated against.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    Id(Strand),
    /// `left (x) right -> out`
    Merge {
        left: Strand,
        right: Strand,
        out: Strand,
    },
    /// `input -> left (x) right`
    Split {
        input: Strand,
        left: Strand,
        right: Strand,
    },
    /// `star -> c`, the projection onto a summand of the defining object.
    StarDown(Label),
    /// `c -> star`, the inclusion of a summand of the defining object.
    StarUp(Label),
}

impl Cell {
    pub fn merge(left: Strand, right: Strand, out: Strand) -> Self {
        Cell::Merge { left, right, out }
    }

    pub fn split(input: Strand, left: Strand, right: Strand) -> Self {
        Cell::Split { input, left, right }
    }

    pub fn inputs(&self) -> ObjectWord {
        match self {
            Cell::Id(s) => ObjectWord::single(s.clone()),
            Cell::Merge { left, right, .. } => ObjectWord(vec![left.clone(), right.clone()]),
            Cell::Split { input, .. } => ObjectWord::single(input.clone()),
            Cell::StarDown(_) => ObjectWord::single(Strand::Star),
            Cell::StarUp(c) => ObjectWord::single(Strand::Node(c.clone())),
        }
    }

    pub fn outputs(&self) -> ObjectWord {
        match self {
            Cell::Id(s) => ObjectWord::single(s.clone()),
            Cell::Merge { out, .. } => ObjectWord::single(out.clone()),
            Cell::Split { left, right, .. } => ObjectWord(vec![left.clone(), right.clone()]),
            Cell::StarDown(c) => ObjectWord::single(Strand::Node(c.clone())),
            Cell::StarUp(_) => ObjectWord::single(Strand::Star),
        }
    }

    pub fn arity(&self) -> (usize, usize) {
        match self {
            Cell::Id(_) | Cell::StarDown(_) | Cell::StarUp(_) => (1, 1),
            Cell::Merge { .. } => (2, 1),
            Cell::Split { .. } => (1, 2),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Cell::Id(_))
    }

    /// The cell read upside down.
    pub fn mirror(&self) -> Cell {
        match self {
            Cell::Id(s) => Cell::Id(s.clone()),
            Cell::Merge { left, right, out } => Cell::Split {
                input: out.clone(),
                left: left.clone(),
                right: right.clone(),
            },
            Cell::Split { input, left, right } => Cell::Merge {
                left: left.clone(),
                right: right.clone(),
                out: input.clone(),
            },
            Cell::StarDown(c) => Cell::StarUp(c.clone()),
            Cell::StarUp(c) => Cell::StarDown(c.clone()),
        }
    }
}

/// DSL atom syntax: `id[a]`, `m[a,b->c]`, `s[c->a,b]`, `down[c]`, `up[c]`.
impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Id(s) => write!(f, "id[{s}]"),
            Cell::Merge { left, right, out } => write!(f, "m[{left},{right}->{out}]"),
            Cell::Split { input, left, right } => write!(f, "s[{input}->{left},{right}]"),
            Cell::StarDown(c) => write!(f, "down[{c}]"),
            Cell::StarUp(c) => write!(f, "up[{c}]"),
        }
    }
}
