use std::fmt;

use serde::Serialize;

use super::{Cell, DiagramError, ObjectWord, Strand};

/// A layered string diagram: slices read bottom to top, each a left-to-right
/// row of cells.
///
/// Diagrams are kept in a canonical layering: every generator is pushed as
/// far down as the cells it depends on allow, identity-only slices are
/// dropped and each slice is padded with `Id` cells. Two diagrams that differ
/// only by sliding independent generators past each other therefore compare
/// equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Diagram {
    source: ObjectWord,
    target: ObjectWord,
    slices: Vec<Vec<Cell>>,
}

/// A non-identity cell applied at a given offset of the current word.
pub type Step = (usize, Cell);

impl Diagram {
    pub fn identity(word: ObjectWord) -> Self {
        Diagram {
            target: word.clone(),
            source: word,
            slices: Vec::new(),
        }
    }

    /// The empty diagram on the unit object.
    pub fn empty() -> Self {
        Self::identity(ObjectWord::unit())
    }

    pub fn cell(cell: Cell) -> Self {
        Self::from_steps(cell.inputs(), vec![(0, cell)]).expect("a single cell is well formed")
    }

    /// Builds a diagram from slices; the source is read off the first slice
    /// unless the slice list is empty, in which case `source` is used.
    pub fn from_slices(source: ObjectWord, slices: Vec<Vec<Cell>>) -> Result<Self, DiagramError> {
        let mut cur = source.clone();
        let mut steps = Vec::new();
        for (i, slice) in slices.iter().enumerate() {
            let ins: ObjectWord = slice.iter().flat_map(|c| c.inputs().0).collect();
            if ins != cur {
                return Err(DiagramError::BoundaryMismatch {
                    context: format!("slice {i}"),
                    expected: cur,
                    found: ins,
                });
            }
            let mut offset = 0;
            for c in slice {
                if !c.is_identity() {
                    steps.push((offset, c.clone()));
                }
                offset += c.arity().1;
            }
            cur = slice.iter().flat_map(|c| c.outputs().0).collect();
        }
        Self::from_steps(source, steps)
    }

    /// Builds a diagram by applying `steps` in order to `source`.
    pub fn from_steps(source: ObjectWord, steps: Vec<Step>) -> Result<Self, DiagramError> {
        // Wires get ids; each step records which ids it consumes and creates.
        let mut strands: Vec<Strand> = source.0.clone();
        let mut wire_layer: Vec<usize> = vec![0; strands.len()];
        let mut cur: Vec<usize> = (0..strands.len()).collect();
        let mut placed: Vec<(usize, usize, Cell)> = Vec::with_capacity(steps.len());
        for (i, (off, cell)) in steps.into_iter().enumerate() {
            if cell.is_identity() {
                continue;
            }
            let ins = cell.inputs();
            let nin = ins.len();
            if off + nin > cur.len() {
                return Err(DiagramError::BoundaryMismatch {
                    context: format!("step {i} ({cell}) at offset {off}"),
                    expected: ins,
                    found: cur[off.min(cur.len())..].iter().map(|&w| strands[w].clone()).collect(),
                });
            }
            let found: ObjectWord = cur[off..off + nin].iter().map(|&w| strands[w].clone()).collect();
            if found != ins {
                return Err(DiagramError::BoundaryMismatch {
                    context: format!("step {i} ({cell}) at offset {off}"),
                    expected: ins,
                    found,
                });
            }
            let layer = cur[off..off + nin].iter().map(|&w| wire_layer[w]).max().unwrap_or(0) + 1;
            let first_in = cur[off];
            let new_ids: Vec<usize> = cell
                .outputs()
                .0
                .into_iter()
                .map(|s| {
                    strands.push(s);
                    wire_layer.push(layer);
                    strands.len() - 1
                })
                .collect();
            cur.splice(off..off + nin, new_ids);
            placed.push((layer, first_in, cell));
        }
        let target: ObjectWord = cur.iter().map(|&w| strands[w].clone()).collect();
        let depth = placed.iter().map(|p| p.0).max().unwrap_or(0);
        let mut slices = Vec::with_capacity(depth);
        let mut word: Vec<usize> = (0..source.len()).collect();
        // Replaying the steps layer by layer reproduces the wire ids in order.
        let mut next_id = source.len();
        let mut by_layer: Vec<Vec<(usize, &Cell)>> = vec![Vec::new(); depth + 1];
        for (layer, first_in, cell) in &placed {
            by_layer[*layer].push((*first_in, cell));
        }
        let mut out_ids: Vec<Vec<usize>> = Vec::new();
        for (_, _, cell) in &placed {
            let n = cell.arity().1;
            out_ids.push((next_id..next_id + n).collect());
            next_id += n;
        }
        let mut cell_index = std::collections::HashMap::new();
        for (k, (_, first_in, _)) in placed.iter().enumerate() {
            cell_index.insert(*first_in, k);
        }
        for layer_cells in by_layer.iter().skip(1) {
            let starts: std::collections::HashSet<usize> = layer_cells.iter().map(|(w, _)| *w).collect();
            let mut slice = Vec::new();
            let mut next = Vec::new();
            let mut i = 0;
            while i < word.len() {
                let w = word[i];
                if starts.contains(&w) {
                    let k = cell_index[&w];
                    let cell = &placed[k].2;
                    slice.push(cell.clone());
                    next.extend(out_ids[k].iter().copied());
                    i += cell.arity().0;
                } else {
                    slice.push(Cell::Id(strands[w].clone()));
                    next.push(w);
                    i += 1;
                }
            }
            slices.push(slice);
            word = next;
        }
        Ok(Diagram { source, target, slices })
    }

    pub fn source(&self) -> &ObjectWord {
        &self.source
    }

    pub fn target(&self) -> &ObjectWord {
        &self.target
    }

    pub fn slices(&self) -> &[Vec<Cell>] {
        &self.slices
    }

    pub fn is_identity(&self) -> bool {
        self.slices.is_empty()
    }

    /// The non-identity cells in application order with their offsets.
    pub fn steps(&self) -> Vec<Step> {
        let mut out = Vec::new();
        for slice in &self.slices {
            let mut offset = 0;
            for c in slice {
                if !c.is_identity() {
                    out.push((offset, c.clone()));
                }
                offset += c.arity().1;
            }
        }
        out
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.slices.iter().flatten().filter(|c| !c.is_identity())
    }

    pub fn cell_count(&self) -> usize {
        self.cells().count()
    }

    pub fn merge_count(&self) -> usize {
        self.cells().filter(|c| matches!(c, Cell::Merge { .. })).count()
    }

    pub fn split_count(&self) -> usize {
        self.cells().filter(|c| matches!(c, Cell::Split { .. })).count()
    }

    /// `self` after `g`: `g` is stacked below.
    pub fn compose(&self, g: &Diagram) -> Result<Diagram, DiagramError> {
        if g.target != self.source {
            return Err(DiagramError::BoundaryMismatch {
                context: "compose".into(),
                expected: self.source.clone(),
                found: g.target.clone(),
            });
        }
        let mut steps = g.steps();
        steps.extend(self.steps());
        Diagram::from_steps(g.source.clone(), steps)
    }

    /// Horizontal juxtaposition with `self` on the left.
    pub fn tensor(&self, g: &Diagram) -> Diagram {
        let mut steps = self.steps();
        let shift = self.target.len();
        steps.extend(g.steps().into_iter().map(|(o, c)| (o + shift, c)));
        Diagram::from_steps(self.source.concat(&g.source), steps).expect("tensor of well-formed diagrams")
    }

    /// The diagram read upside down.
    pub fn mirror(&self) -> Diagram {
        let slices: Vec<Vec<Cell>> = self
            .slices
            .iter()
            .rev()
            .map(|s| s.iter().map(Cell::mirror).collect())
            .collect();
        Diagram::from_slices(self.target.clone(), slices).expect("mirror of a well-formed diagram")
    }

    /// DSL text: slices joined by `;` (bottom first), cells by `*`.
    pub fn to_dsl(&self) -> String {
        if self.slices.is_empty() {
            return format!("id[{}]", self.source.dsl());
        }
        let parts: Vec<String> = self
            .slices
            .iter()
            .map(|s| s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" * "))
            .collect();
        parts.join(" ; ")
    }
}

/// Multi-line slice dump, top slice first as in a picture.
impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.source, self.target)?;
        for (i, s) in self.slices.iter().enumerate().rev() {
            let row: Vec<String> = s.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {i:>2}: {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Strand {
        Strand::node(s)
    }

    #[test]
    fn identity_compose() {
        let m = Diagram::cell(Cell::merge(n("1"), n("2"), n("3")));
        let id = Diagram::identity(ObjectWord::from_labels(&["3"]));
        assert_eq!(id.compose(&m).unwrap(), m);
        let id2 = Diagram::identity(ObjectWord::from_labels(&["1", "2"]));
        assert_eq!(m.compose(&id2).unwrap(), m);
    }

    #[test]
    fn interchange_is_canonical() {
        let a = Diagram::cell(Cell::merge(n("1"), n("1"), n("2")));
        let b = Diagram::cell(Cell::split(n("3"), n("1"), n("2")));
        let ida = Diagram::identity(a.source().clone());
        let idb = Diagram::identity(b.source().clone());
        let one = a.tensor(&b);
        let two = Diagram::identity(a.target().clone())
            .tensor(&b)
            .compose(&a.tensor(&idb))
            .unwrap();
        let three = a
            .tensor(&Diagram::identity(b.target().clone()))
            .compose(&ida.tensor(&b))
            .unwrap();
        assert_eq!(one, two);
        assert_eq!(one, three);
        assert_eq!(one.slices().len(), 1);
    }

    #[test]
    fn boundary_mismatch() {
        let m = Diagram::cell(Cell::merge(n("1"), n("2"), n("3")));
        assert!(m.compose(&m).is_err());
        let bad = Diagram::from_slices(
            ObjectWord::from_labels(&["1"]),
            vec![vec![Cell::merge(n("1"), n("1"), n("2"))]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn mirror_round_trip() {
        let s = Diagram::cell(Cell::split(n("2"), n("1"), n("1")));
        let m = Diagram::cell(Cell::merge(n("1"), n("1"), n("2")));
        let d = m.compose(&s).unwrap();
        assert_eq!(d.mirror(), d);
        let t = s.tensor(&Diagram::identity(ObjectWord::from_labels(&["4"])));
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror().source(), t.target());
    }

    #[test]
    fn dsl_text() {
        let m = Diagram::cell(Cell::merge(n("1"), n("1"), n("2")));
        let d = m.tensor(&Diagram::identity(ObjectWord::from_labels(&["3"])));
        assert_eq!(d.to_dsl(), "m[1,1->2] * id[3]");
        assert_eq!(Diagram::empty().to_dsl(), "id[]");
    }
}
