use serde::Serialize;

use super::{Cell, Diagram, Morphism, Strand};
use crate::repgraph::{Label, RepGraph};

/// The category a diagram lives in; it fixes the side conditions on cells.
#[derive(Clone, Copy, Debug)]
pub enum Category<'a> {
    /// `C_n^irr`: objects are residues mod `n`, merges add labels.
    CnIrr(u32),
    /// Diagrams over a representation graph with the generator node as `V`.
    Dgrams(&'a RepGraph),
    /// Diagrams over a graph with an extra star object standing for `V`.
    Star(&'a RepGraph),
}

impl Category<'_> {
    pub fn name(&self) -> String {
        match self {
            Category::CnIrr(n) => format!("C_{n}^irr"),
            Category::Dgrams(g) => format!("Dgrams({})", g.name()),
            Category::Star(g) => format!("Dgrams({}, star)", g.name()),
        }
    }

    pub fn graph(&self) -> Option<&RepGraph> {
        match self {
            Category::CnIrr(_) => None,
            Category::Dgrams(g) | Category::Star(g) => Some(g),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

fn residue(s: &Strand, n: u32) -> Option<i64> {
    s.label().and_then(Label::as_int).filter(|v| (0..n as i64).contains(v))
}

/// Checks a single cell's side conditions; `None` means well formed.
pub fn check_cell(cell: &Cell, cat: &Category<'_>) -> Option<String> {
    match cat {
        Category::CnIrr(n) => {
            let n = *n;
            let strands: Vec<Strand> = cell.inputs().0.into_iter().chain(cell.outputs().0).collect();
            if let Some(bad) = strands.iter().find(|s| residue(s, n).is_none()) {
                return Some(format!("{cell}: {bad} is not an object of C_{n}"));
            }
            let sum = |a: &Strand, b: &Strand| (residue(a, n).unwrap() + residue(b, n).unwrap()) % n as i64;
            match cell {
                Cell::Id(_) => None,
                Cell::Merge { left, right, out } => (sum(left, right) != residue(out, n).unwrap())
                    .then(|| format!("{cell}: {left}+{right} is not {out} mod {n}")),
                Cell::Split { input, left, right } => (sum(left, right) != residue(input, n).unwrap())
                    .then(|| format!("{cell}: {left}+{right} is not {input} mod {n}")),
                Cell::StarDown(_) | Cell::StarUp(_) => Some(format!("{cell}: no star object in C_{n}")),
            }
        }
        Category::Dgrams(g) | Category::Star(g) => {
            let star = matches!(cat, Category::Star(_));
            let node = |s: &Strand| -> Option<String> {
                match s {
                    Strand::Node(l) if g.contains(l) => None,
                    Strand::Node(l) => Some(format!("{cell}: unknown node {l}")),
                    Strand::Star if star => None,
                    Strand::Star => Some(format!("{cell}: no star object in {}", cat.name())),
                }
            };
            let gen_ok = |s: &Strand| -> Option<String> {
                match (star, s, g.generator()) {
                    (true, Strand::Star, _) => None,
                    (false, Strand::Node(l), Some(gl)) if l == gl => None,
                    (true, _, _) => Some(format!("{cell}: left strand must be star")),
                    (false, _, Some(gl)) => Some(format!("{cell}: left strand must be the generator {gl}")),
                    (false, _, None) => Some(format!("{cell}: graph has no generator node")),
                }
            };
            let edge = |a: &Strand, b: &Strand| -> Option<String> {
                match (a, b) {
                    (Strand::Node(x), Strand::Node(y)) if g.has_edge(x, y) => None,
                    _ => Some(format!("{cell}: no edge {a} -> {b}")),
                }
            };
            match cell {
                Cell::Id(s) => node(s),
                Cell::Merge { left, right, out } => node(right)
                    .or_else(|| node(out))
                    .or_else(|| gen_ok(left))
                    .or_else(|| edge(right, out)),
                Cell::Split { input, left, right } => node(right)
                    .or_else(|| node(input))
                    .or_else(|| gen_ok(left))
                    .or_else(|| edge(right, input)),
                Cell::StarDown(c) | Cell::StarUp(c) => {
                    if !star {
                        return Some(format!("{cell}: no star object in {}", cat.name()));
                    }
                    match g.unit() {
                        Some(u) if g.has_edge(u, c) => None,
                        Some(u) => Some(format!("{cell}: {c} is not adjacent to the unit {u}")),
                        None => Some(format!("{cell}: graph has no unit node")),
                    }
                }
            }
        }
    }
}

/// Checks every cell of `d` against `cat`. Boundary compatibility holds by
/// construction of [`Diagram`].
pub fn validate(d: &Diagram, cat: &Category<'_>) -> ValidationReport {
    let mut problems = Vec::new();
    for s in d.source().iter() {
        if let Some(p) = check_cell(&Cell::Id(s.clone()), cat) {
            problems.push(p);
        }
    }
    for c in d.cells() {
        if let Some(p) = check_cell(c, cat) {
            problems.push(p);
        }
    }
    ValidationReport { problems }
}

pub fn validate_morphism(m: &Morphism, cat: &Category<'_>) -> ValidationReport {
    let mut problems = Vec::new();
    for s in m.source().iter().chain(m.target().iter()) {
        if let Some(p) = check_cell(&Cell::Id(s.clone()), cat) {
            problems.push(p);
        }
    }
    for (d, _) in m.terms() {
        problems.extend(validate(d, cat).problems);
    }
    problems.dedup();
    ValidationReport { problems }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repgraph::bundled_graph;

    fn n(s: &str) -> Strand {
        Strand::node(s)
    }

    #[test]
    fn cyclic_sums() {
        let ok = Diagram::cell(Cell::merge(n("1"), n("2"), n("3")));
        assert!(validate(&ok, &Category::CnIrr(5)).ok());
        let bad = Diagram::cell(Cell::merge(n("1"), n("2"), n("0")));
        assert!(!validate(&bad, &Category::CnIrr(5)).ok());
        let out_of_range = Diagram::identity(crate::diagram::ObjectWord::from_labels(&["7"]));
        assert!(!validate(&out_of_range, &Category::CnIrr(5)).ok());
    }

    #[test]
    fn graph_adjacency() {
        let g = bundled_graph("t_binary_tetrahedral").unwrap();
        let ok = Diagram::cell(Cell::merge(n("1"), n("1"), n("2")));
        assert!(validate(&ok, &Category::Dgrams(&g)).ok());
        let bad = Diagram::cell(Cell::merge(n("1"), n("4"), n("2")));
        assert!(!validate(&bad, &Category::Dgrams(&g)).ok());
        let not_gen = Diagram::cell(Cell::merge(n("2"), n("1"), n("2")));
        assert!(!validate(&not_gen, &Category::Dgrams(&g)).ok());
    }

    #[test]
    fn star_cells() {
        let g = bundled_graph("t_binary_tetrahedral").unwrap();
        let down = Diagram::cell(Cell::StarDown(Label::new("1")));
        assert!(validate(&down, &Category::Star(&g)).ok());
        assert!(!validate(&down, &Category::Dgrams(&g)).ok());
        let far = Diagram::cell(Cell::StarUp(Label::new("2")));
        assert!(!validate(&far, &Category::Star(&g)).ok());
        let m = Diagram::cell(Cell::merge(Strand::Star, n("1"), n("2")));
        assert!(validate(&m, &Category::Star(&g)).ok());
    }
}
