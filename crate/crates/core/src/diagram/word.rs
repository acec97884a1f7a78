use std::fmt;

use serde::{Deserialize, Serialize};

use crate::repgraph::Label;

/// One tensor factor of an object: a node of the graph, or the star object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strand {
    Node(Label),
    Star,
}

impl Strand {
    pub fn node(s: &str) -> Self {
        Strand::Node(Label::from(s))
    }

    pub fn label(&self) -> Option<&Label> {
        match self {
            Strand::Node(l) => Some(l),
            Strand::Star => None,
        }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strand::Node(l) => write!(f, "{l}"),
            Strand::Star => f.write_str("star"),
        }
    }
}

/// A tensor word of strands; the empty word is the monoidal unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectWord(pub Vec<Strand>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        ObjectWord(labels.iter().map(|s| Strand::node(s.as_ref())).collect())
    }

    pub fn single(s: Strand) -> Self {
        ObjectWord(vec![s])
    }

    /// `k` copies of `s`.
    pub fn repeat(s: &Strand, k: usize) -> Self {
        ObjectWord(vec![s.clone(); k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Strand> {
        self.0.iter()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }

    /// Comma-separated form used by the DSL (`1,2,3`; empty for the unit).
    pub fn dsl(&self) -> String {
        self.0.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.dsl())
    }
}

impl FromIterator<Strand> for ObjectWord {
    fn from_iter<I: IntoIterator<Item = Strand>>(iter: I) -> Self {
        ObjectWord(iter.into_iter().collect())
    }
}
