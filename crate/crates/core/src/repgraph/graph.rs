use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::path::Path as FsPath;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Label, RepGraphError};
use crate::exactfield::{parse_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: Label,
    pub dim: Scalar,
}

/// Directed multiplicity-free graph over simple-object labels.
///
/// Nodes are kept sorted by label, so neighbour lists come out in label
/// order and path enumeration is lexicographic for free.
#[derive(Clone, Debug)]
pub struct RepGraph {
    name: String,
    conductor: u32,
    nodes: Vec<Node>,
    index: HashMap<Label, usize>,
    out: Vec<Vec<usize>>,
    generator: Option<Label>,
    defining_dim: Scalar,
    unit: Option<Label>,
    frontier: BTreeSet<Label>,
}

/// A walk `b_0 -> b_1 -> .. -> b_k`; its length is the number of steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub nodes: Vec<Label>,
}

impl Path {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Self {
        Path {
            nodes: labels.iter().map(|s| Label::from(s.as_ref())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() <= 1
    }

    pub fn start(&self) -> &Label {
        &self.nodes[0]
    }

    pub fn end(&self) -> &Label {
        self.nodes.last().expect("paths are nonempty")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.nodes.iter().map(Label::as_str).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeStatus {
    Pass,
    Fail,
    /// Truncation boundary: outgoing edges are known to be incomplete.
    Frontier,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeCheck {
    pub label: Label,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub status: NodeStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub graph: String,
    pub nodes: Vec<NodeCheck>,
}

impl DimensionReport {
    pub fn passed(&self) -> bool {
        self.nodes.iter().all(|n| n.status != NodeStatus::Fail)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(default)]
    name: Option<String>,
    conductor: u32,
    generator: Option<String>,
    #[serde(default)]
    unit: Option<String>,
    #[serde(default)]
    undirected: bool,
    #[serde(default)]
    frontier: Vec<String>,
    nodes: Vec<RawNode>,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    id: String,
    dim: serde_json::Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    to: String,
}

impl RepGraph {
    /// Builds a graph from explicit directed edges. Duplicate edges and
    /// unknown labels are rejected.
    pub fn new(
        name: impl Into<String>,
        conductor: u32,
        nodes: Vec<Node>,
        edges: Vec<(Label, Label)>,
        generator: Option<Label>,
        defining_dim: Option<Scalar>,
        unit: Option<Label>,
    ) -> Result<Self, RepGraphError> {
        let mut nodes = nodes;
        nodes.sort_by(|a, b| a.label.cmp(&b.label));
        let mut index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.label.clone(), i).is_some() {
                return Err(RepGraphError::Data(format!("duplicate node {}", n.label)));
            }
        }
        let lookup = |l: &Label| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| RepGraphError::UnknownLabel(l.clone()))
        };
        let mut out = vec![Vec::new(); nodes.len()];
        for (a, b) in &edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if out[i].contains(&j) {
                return Err(RepGraphError::DuplicateEdge(a.clone(), b.clone()));
            }
            out[i].push(j);
        }
        for o in out.iter_mut() {
            o.sort_unstable();
        }
        if let Some(g) = &generator {
            lookup(g).map_err(|_| RepGraphError::MissingGenerator(g.clone()))?;
        }
        if let Some(u) = &unit {
            lookup(u)?;
        }
        let defining_dim = match (defining_dim, &generator) {
            (Some(d), _) => d,
            (None, Some(g)) => nodes[index[g]].dim.clone(),
            (None, None) => {
                return Err(RepGraphError::Data(
                    "graph without a generator node needs an explicit defining dimension".into(),
                ))
            }
        };
        Ok(RepGraph {
            name: name.into(),
            conductor,
            nodes,
            index,
            out,
            generator,
            defining_dim,
            unit,
            frontier: BTreeSet::new(),
        })
    }

    pub fn with_frontier(mut self, frontier: impl IntoIterator<Item = Label>) -> Result<Self, RepGraphError> {
        for l in frontier {
            self.idx(&l)?;
            self.frontier.insert(l);
        }
        Ok(self)
    }

    /// Parses the JSON fusion-graph format.
    pub fn from_json(text: &str) -> Result<Self, RepGraphError> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| RepGraphError::Parse(e.to_string()))?;
        let generator = raw
            .generator
            .ok_or_else(|| RepGraphError::Parse("missing field `generator`".into()))?;
        let mut nodes = Vec::new();
        for n in raw.nodes {
            let dim = match &n.dim {
                serde_json::Value::Number(x) => {
                    let v = x
                        .as_i64()
                        .ok_or_else(|| RepGraphError::Parse(format!("node {}: dimension must be an integer", n.id)))?;
                    Scalar::from_int(raw.conductor, v)
                }
                serde_json::Value::String(s) => parse_scalar(s, raw.conductor)?,
                _ => return Err(RepGraphError::Parse(format!("node {}: bad dimension", n.id))),
            };
            nodes.push(Node {
                label: Label::new(n.id),
                dim,
            });
        }
        let mut edges: Vec<(Label, Label)> = Vec::new();
        for e in raw.edges {
            let (a, b) = (Label::new(e.from), Label::new(e.to));
            if raw.undirected && a != b {
                if edges.contains(&(b.clone(), a.clone())) {
                    return Err(RepGraphError::DuplicateEdge(a, b));
                }
                edges.push((b.clone(), a.clone()));
            }
            edges.push((a, b));
        }
        let g = RepGraph::new(
            raw.name.unwrap_or_default(),
            raw.conductor,
            nodes,
            edges,
            Some(Label::new(generator)),
            None,
            raw.unit.map(Label::new),
        )?;
        g.with_frontier(raw.frontier.into_iter().map(Label::new))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.nodes.iter().map(|n| &n.label)
    }

    pub fn generator(&self) -> Option<&Label> {
        self.generator.as_ref()
    }

    pub fn require_generator(&self) -> Result<&Label, RepGraphError> {
        self.generator
            .as_ref()
            .ok_or_else(|| RepGraphError::Data(format!("graph {} has no generator node", self.name)))
    }

    pub fn unit(&self) -> Option<&Label> {
        self.unit.as_ref()
    }

    pub fn defining_dim(&self) -> &Scalar {
        &self.defining_dim
    }

    pub fn frontier(&self) -> &BTreeSet<Label> {
        &self.frontier
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.index.contains_key(l)
    }

    fn idx(&self, l: &Label) -> Result<usize, RepGraphError> {
        self.index
            .get(l)
            .copied()
            .ok_or_else(|| RepGraphError::UnknownLabel(l.clone()))
    }

    pub fn dim(&self, l: &Label) -> Result<&Scalar, RepGraphError> {
        Ok(&self.nodes[self.idx(l)?].dim)
    }

    pub fn has_edge(&self, a: &Label, b: &Label) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.out[i].contains(&j),
            _ => false,
        }
    }

    /// Targets of edges out of `a`, in label order.
    pub fn out_neighbors(&self, a: &Label) -> Result<Vec<&Label>, RepGraphError> {
        Ok(self.out[self.idx(a)?].iter().map(|&j| &self.nodes[j].label).collect())
    }

    /// Sources of edges into `b`, in label order.
    pub fn in_neighbors(&self, b: &Label) -> Result<Vec<&Label>, RepGraphError> {
        let j = self.idx(b)?;
        Ok((0..self.nodes.len())
            .filter(|&i| self.out[i].contains(&j))
            .map(|i| &self.nodes[i].label)
            .collect())
    }

    pub fn edges(&self) -> Vec<(Label, Label)> {
        let mut v = Vec::new();
        for (i, outs) in self.out.iter().enumerate() {
            for &j in outs {
                v.push((self.nodes[i].label.clone(), self.nodes[j].label.clone()));
            }
        }
        v
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// True when every edge has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.out
            .iter()
            .enumerate()
            .all(|(i, outs)| outs.iter().all(|&j| self.out[j].contains(&i)))
    }

    /// Every node is reachable from the generator (or the unit, if there is
    /// no generator node) along directed edges.
    pub fn is_connected(&self) -> bool {
        let Some(root) = self.generator.as_ref().or(self.unit.as_ref()) else {
            return self.nodes.len() <= 1;
        };
        let dist = self.bfs(self.index[root]);
        dist.iter().all(Option::is_some)
    }

    fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[from] = Some(0);
        let mut q = VecDeque::from([from]);
        while let Some(i) = q.pop_front() {
            let d = dist[i].unwrap();
            for &j in &self.out[i] {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    q.push_back(j);
                }
            }
        }
        dist
    }

    /// Fails when a walk of fewer than `k` steps from `a` could reach a
    /// frontier node, whose outgoing edges are not all known.
    fn check_truncation(&self, a: usize, k: usize) -> Result<(), RepGraphError> {
        if self.frontier.is_empty() || k == 0 {
            return Ok(());
        }
        let dist = self.bfs(a);
        for l in &self.frontier {
            if let Some(d) = dist[self.index[l]] {
                if d < k {
                    return Err(RepGraphError::Truncation {
                        node: l.clone(),
                        steps: k,
                    });
                }
            }
        }
        Ok(())
    }

    /// All walks of exactly `k` steps from `a` to `b`, in lexicographic
    /// order of their label sequences.
    pub fn enumerate_paths(&self, a: &Label, b: &Label, k: usize) -> Result<Vec<Path>, RepGraphError> {
        let (ia, ib) = (self.idx(a)?, self.idx(b)?);
        self.check_truncation(ia, k)?;
        let n = self.nodes.len();
        // reach[r][i]: some walk of exactly r steps goes from i to b.
        let mut reach = vec![vec![false; n]; k + 1];
        reach[0][ib] = true;
        for r in 1..=k {
            for i in 0..n {
                reach[r][i] = self.out[i].iter().any(|&j| reach[r - 1][j]);
            }
        }
        let mut out = Vec::new();
        let mut stack = vec![ia];
        self.dfs(&reach, k, &mut stack, &mut out);
        Ok(out)
    }

    fn dfs(&self, reach: &[Vec<bool>], left: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        let cur = *stack.last().unwrap();
        if !reach[left][cur] {
            return;
        }
        if left == 0 {
            out.push(Path {
                nodes: stack.iter().map(|&i| self.nodes[i].label.clone()).collect(),
            });
            return;
        }
        for &j in &self.out[cur] {
            stack.push(j);
            self.dfs(reach, left - 1, stack, out);
            stack.pop();
        }
    }

    /// `k`-th power of the adjacency matrix, rows and columns in node order.
    pub fn adjacency_power(&self, k: usize) -> Vec<Vec<BigUint>> {
        let n = self.nodes.len();
        let mut acc: Vec<Vec<BigUint>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigUint::one() } else { BigUint::zero() })
                    .collect()
            })
            .collect();
        for _ in 0..k {
            let mut next = vec![vec![BigUint::zero(); n]; n];
            for (i, row) in acc.iter().enumerate() {
                for (l, v) in row.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for &j in &self.out[l] {
                        next[i][j] += v;
                    }
                }
            }
            acc = next;
        }
        acc
    }

    /// Number of walks of `k` steps from `a` to `b`, by the transfer matrix.
    pub fn walk_count(&self, a: &Label, b: &Label, k: usize) -> Result<BigUint, RepGraphError> {
        let (ia, ib) = (self.idx(a)?, self.idx(b)?);
        let mut row = vec![BigUint::zero(); self.nodes.len()];
        row[ia] = BigUint::one();
        for _ in 0..k {
            let mut next = vec![BigUint::zero(); self.nodes.len()];
            for (l, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for &j in &self.out[l] {
                    next[j] += v;
                }
            }
            row = next;
        }
        Ok(row.swap_remove(ib))
    }

    /// Number of walks of `k` steps from `a` ending at each node, in node
    /// order, found by following every walk one step at a time.
    pub fn walk_tally(&self, a: &Label, k: usize) -> Result<Vec<u64>, RepGraphError> {
        let ia = self.idx(a)?;
        let mut tally = vec![0u64; self.nodes.len()];
        let mut stack = vec![(ia, 0usize)];
        while let Some((i, depth)) = stack.pop() {
            if depth == k {
                tally[i] += 1;
                continue;
            }
            stack.extend(self.out[i].iter().map(|&j| (j, depth + 1)));
        }
        Ok(tally)
    }

    /// Shortest `k` such that some walk of length `k` joins the generator to
    /// `b`, together with that walk. The walk must be unique.
    pub fn minimal_inclusion_length(&self, b: &Label) -> Result<(usize, Path), RepGraphError> {
        let g = self.require_generator()?;
        let ib = self.idx(b)?;
        let dist = self.bfs(self.index[g]);
        let k = dist[ib].ok_or_else(|| RepGraphError::Unreachable(b.clone()))?;
        let paths = self.enumerate_paths(g, b, k)?;
        if paths.len() != 1 {
            return Err(RepGraphError::NonUniqueWitness {
                node: b.clone(),
                length: k,
                count: paths.len(),
            });
        }
        Ok((k, paths.into_iter().next().unwrap()))
    }

    /// Checks `dim(V) dim(a) = sum over edges a -> b of dim(b)` at every node.
    pub fn check_dimension_identity(&self) -> DimensionReport {
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let lhs = &self.defining_dim * &n.dim;
                let mut rhs = Scalar::zero(self.conductor);
                for &j in &self.out[i] {
                    rhs += &self.nodes[j].dim;
                }
                let status = if self.frontier.contains(&n.label) {
                    NodeStatus::Frontier
                } else if lhs == rhs {
                    NodeStatus::Pass
                } else {
                    NodeStatus::Fail
                };
                NodeCheck {
                    label: n.label.clone(),
                    lhs,
                    rhs,
                    status,
                }
            })
            .collect();
        DimensionReport {
            graph: self.name.clone(),
            nodes,
        }
    }
}

/// Reads and parses a fusion-graph file.
pub fn load_fusion_graph(path: &FsPath) -> Result<RepGraph, RepGraphError> {
    let text = std::fs::read_to_string(path).map_err(|e| RepGraphError::Io(format!("{}: {e}", path.display())))?;
    RepGraph::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repgraph::bundled_graph;

    fn e6() -> RepGraph {
        bundled_graph("t_binary_tetrahedral").unwrap()
    }

    #[test]
    fn five_paths() {
        let g = e6();
        let p = g.enumerate_paths(&"1".into(), &"3".into(), 4).unwrap();
        let shown: Vec<String> = p.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown,
            [
                "(1,0,1,2,3)",
                "(1,2,1,2,3)",
                "(1,2,3,2,3)",
                "(1,2,3,4,3)",
                "(1,2,3',2,3)"
            ]
        );
    }

    #[test]
    fn trivial_paths() {
        let g = e6();
        let p = g.enumerate_paths(&"2".into(), &"2".into(), 0).unwrap();
        assert_eq!(p, vec![Path::new(&["2"])]);
        assert!(g.enumerate_paths(&"9".into(), &"2".into(), 0).is_err());
    }

    #[test]
    fn minimal_inclusion() {
        let g = e6();
        assert_eq!(
            g.minimal_inclusion_length(&"4".into()).unwrap(),
            (3, Path::new(&["1", "2", "3", "4"]))
        );
        assert_eq!(g.minimal_inclusion_length(&"1".into()).unwrap(), (0, Path::new(&["1"])));
        assert_eq!(
            g.minimal_inclusion_length(&"0".into()).unwrap(),
            (1, Path::new(&["1", "0"]))
        );
    }

    #[test]
    fn duplicate_edges_rejected() {
        let text = r#"{"conductor":1,"generator":"a","nodes":[{"id":"a","dim":1}],
            "edges":[{"from":"a","to":"a"},{"from":"a","to":"a"}]}"#;
        assert!(matches!(
            RepGraph::from_json(text),
            Err(RepGraphError::DuplicateEdge(..))
        ));
        let text = r#"{"conductor":1,"generator":"a","undirected":true,
            "nodes":[{"id":"a","dim":1},{"id":"b","dim":1}],
            "edges":[{"from":"a","to":"b"},{"from":"b","to":"a"}]}"#;
        assert!(matches!(
            RepGraph::from_json(text),
            Err(RepGraphError::DuplicateEdge(..))
        ));
    }

    #[test]
    fn missing_generator_rejected() {
        let text = r#"{"conductor":1,"nodes":[{"id":"a","dim":1}],"edges":[]}"#;
        assert!(RepGraph::from_json(text).is_err());
        let text = r#"{"conductor":1,"generator":"q","nodes":[{"id":"a","dim":1}],"edges":[]}"#;
        assert!(matches!(
            RepGraph::from_json(text),
            Err(RepGraphError::MissingGenerator(_))
        ));
    }

    #[test]
    fn lonely_node_fails_identity() {
        let text = r#"{"conductor":1,"generator":"a","nodes":[{"id":"a","dim":1}],"edges":[]}"#;
        let g = RepGraph::from_json(text).unwrap();
        let rep = g.check_dimension_identity();
        assert!(!rep.passed());
    }

    #[test]
    fn walk_counts_match_enumeration() {
        let g = e6();
        for a in g.labels() {
            for b in g.labels() {
                for k in 0..=6 {
                    let n = g.enumerate_paths(a, b, k).unwrap().len();
                    assert_eq!(g.walk_count(a, b, k).unwrap(), BigUint::from(n));
                    let i = g.labels().position(|l| l == b).unwrap();
                    assert_eq!(g.walk_tally(a, k).unwrap()[i], n as u64);
                }
            }
        }
    }
}
