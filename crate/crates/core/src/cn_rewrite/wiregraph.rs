use crate::diagram::{Cell, Diagram, Strand};

/// Where a wire starts or ends. `Port(c, p)` is output `p` of cell `c` at a
/// wire's start and input `p` of cell `c` at its end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum End {
    Source(usize),
    Target(usize),
    Port(usize, usize),
}

#[derive(Clone, Debug)]
struct Wire {
    label: i64,
    from: End,
    to: End,
    alive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Merge,
    Split,
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    ins: Vec<usize>,
    outs: Vec<usize>,
    alive: bool,
}

/// A rewrite site. Cells are indices into the graph's cell table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Redex {
    /// Merge `m` consumes both outputs of split `s`, in order.
    Pop { s: usize, m: usize },
    /// The right output of split `s` is the left input of merge `m`.
    SlideRight { s: usize, m: usize },
    /// The left output of split `s` is the right input of merge `m`.
    SlideLeft { s: usize, m: usize },
    /// The right input of merge `outer` is the output of merge `inner`.
    MergeAssoc { outer: usize, inner: usize },
    /// The right output of split `outer` feeds split `inner`.
    SplitAssoc { outer: usize, inner: usize },
    /// Two neighbouring strands between the merge and split layers.
    Join { left: usize, right: usize },
}

pub(super) struct WireGraph {
    n: i64,
    wires: Vec<Wire>,
    cells: Vec<Node>,
    source: Vec<usize>,
    target: Vec<usize>,
}

impl WireGraph {
    /// The diagram must only contain merges and splits with residue labels.
    pub fn from_diagram(d: &Diagram, n: u32) -> Self {
        let label = |s: &Strand| {
            s.label()
                .and_then(|l| l.as_int())
                .expect("validated C_n diagram has residue labels")
        };
        let mut g = WireGraph {
            n: n as i64,
            wires: Vec::new(),
            cells: Vec::new(),
            source: Vec::new(),
            target: Vec::new(),
        };
        let mut cur: Vec<usize> = Vec::new();
        for (i, s) in d.source().iter().enumerate() {
            let w = g.new_wire(label(s), End::Source(i), End::Target(usize::MAX));
            g.source.push(w);
            cur.push(w);
        }
        for (off, cell) in d.steps() {
            let (kind, nin) = match cell {
                Cell::Merge { .. } => (Kind::Merge, 2),
                Cell::Split { .. } => (Kind::Split, 1),
                _ => unreachable!("validated C_n diagram has only merges and splits"),
            };
            let c = g.cells.len();
            let ins: Vec<usize> = cur[off..off + nin].to_vec();
            for (p, &w) in ins.iter().enumerate() {
                g.wires[w].to = End::Port(c, p);
            }
            g.cells.push(Node {
                kind,
                ins,
                outs: Vec::new(),
                alive: true,
            });
            let outs: Vec<usize> = cell
                .outputs()
                .iter()
                .enumerate()
                .map(|(p, s)| g.new_wire(label(s), End::Port(c, p), End::Target(usize::MAX)))
                .collect();
            g.cells[c].outs = outs.clone();
            cur.splice(off..off + nin, outs);
        }
        for (i, &w) in cur.iter().enumerate() {
            g.wires[w].to = End::Target(i);
            g.target.push(w);
        }
        g
    }

    fn new_wire(&mut self, label: i64, from: End, to: End) -> usize {
        self.wires.push(Wire {
            label: label.rem_euclid(self.n),
            from,
            to,
            alive: true,
        });
        self.wires.len() - 1
    }

    fn set_to(&mut self, w: usize, end: End) {
        self.wires[w].to = end;
        match end {
            End::Target(i) => self.target[i] = w,
            End::Port(c, p) => self.cells[c].ins[p] = w,
            End::Source(_) => unreachable!("a wire cannot end at the source"),
        }
    }

    fn set_from(&mut self, w: usize, end: End) {
        self.wires[w].from = end;
        match end {
            End::Source(i) => self.source[i] = w,
            End::Port(c, p) => self.cells[c].outs[p] = w,
            End::Target(_) => unreachable!("a wire cannot start at the target"),
        }
    }

    fn kill_wire(&mut self, w: usize) {
        self.wires[w].alive = false;
    }

    fn kill_cell(&mut self, c: usize) {
        self.cells[c].alive = false;
    }

    fn split_at(&self, end: End) -> Option<(usize, usize)> {
        match end {
            End::Port(c, p) if self.cells[c].kind == Kind::Split => Some((c, p)),
            _ => None,
        }
    }

    fn merge_at(&self, end: End) -> Option<(usize, usize)> {
        match end {
            End::Port(c, p) if self.cells[c].kind == Kind::Merge => Some((c, p)),
            _ => None,
        }
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().filter(|c| c.alive).count()
    }

    fn live_cells(&self) -> impl Iterator<Item = (usize, &Node)> {
        self.cells.iter().enumerate().filter(|(_, c)| c.alive)
    }

    /// Redexes of the relations proper: pops, slides and reassociations.
    fn local_redexes(&self) -> Vec<Redex> {
        let mut out = Vec::new();
        for (c, node) in self.live_cells() {
            match node.kind {
                Kind::Merge => {
                    let from0 = self.wires[node.ins[0]].from;
                    let from1 = self.wires[node.ins[1]].from;
                    match (self.split_at(from0), self.split_at(from1)) {
                        (Some((s0, 0)), Some((s1, 1))) if s0 == s1 => out.push(Redex::Pop { s: s0, m: c }),
                        (left, right) => {
                            if let Some((s, 1)) = left {
                                out.push(Redex::SlideRight { s, m: c });
                            }
                            if let Some((s, 0)) = right {
                                out.push(Redex::SlideLeft { s, m: c });
                            }
                        }
                    }
                    if let Some((inner, _)) = self.merge_at(from1) {
                        out.push(Redex::MergeAssoc { outer: c, inner });
                    }
                }
                Kind::Split => {
                    if let Some((inner, _)) = self.split_at(self.wires[node.outs[1]].to) {
                        out.push(Redex::SplitAssoc { outer: c, inner });
                    }
                }
            }
        }
        out
    }

    /// Index of the leftmost source strand feeding `w` through merges.
    fn leftmost_leaf(&self, mut w: usize) -> usize {
        loop {
            match self.wires[w].from {
                End::Source(i) => return i,
                End::Port(c, _) => w = self.cells[c].ins[0],
                End::Target(_) => unreachable!(),
            }
        }
    }

    /// Wires leaving the merge layer and entering the split layer, left to
    /// right. Only meaningful once no split feeds a merge.
    fn middle(&self) -> Vec<usize> {
        let mut mids: Vec<(usize, usize)> = self
            .wires
            .iter()
            .enumerate()
            .filter(|(_, w)| w.alive)
            .filter(|(_, w)| {
                let from_ok = matches!(w.from, End::Source(_)) || self.merge_at(w.from).is_some();
                let to_ok = matches!(w.to, End::Target(_)) || self.split_at(w.to).is_some();
                from_ok && to_ok
            })
            .map(|(i, _)| (self.leftmost_leaf(i), i))
            .collect();
        mids.sort();
        mids.into_iter().map(|(_, w)| w).collect()
    }

    /// All redexes; joins are offered only once no split feeds a merge.
    pub fn redexes(&self) -> Vec<Redex> {
        let mut out = self.local_redexes();
        let blocking = out.iter().any(|r| {
            matches!(
                r,
                Redex::Pop { .. } | Redex::SlideLeft { .. } | Redex::SlideRight { .. }
            )
        });
        if !blocking {
            let mid = self.middle();
            for pair in mid.windows(2) {
                out.push(Redex::Join {
                    left: pair[0],
                    right: pair[1],
                });
            }
        }
        out
    }

    pub fn apply(&mut self, r: Redex) {
        match r {
            Redex::Pop { s, m } => {
                let x = self.cells[s].ins[0];
                let (p, q) = (self.cells[s].outs[0], self.cells[s].outs[1]);
                let o = self.cells[m].outs[0];
                let t = self.wires[o].to;
                self.set_to(x, t);
                for w in [p, q, o] {
                    self.kill_wire(w);
                }
                self.kill_cell(s);
                self.kill_cell(m);
            }
            Redex::SlideRight { s, m } => {
                // s: x -> (p, q), m: (q, w) -> o  becomes  m: (x, w) -> y, s: y -> (p, o)
                let x = self.cells[s].ins[0];
                let q = self.cells[s].outs[1];
                let w = self.cells[m].ins[1];
                let o = self.cells[m].outs[0];
                self.set_to(x, End::Port(m, 0));
                let y = self.new_wire(
                    self.wires[x].label + self.wires[w].label,
                    End::Port(m, 0),
                    End::Port(s, 0),
                );
                self.cells[m].outs[0] = y;
                self.cells[s].ins[0] = y;
                self.set_from(o, End::Port(s, 1));
                self.kill_wire(q);
            }
            Redex::SlideLeft { s, m } => {
                // s: x -> (p, q), m: (w, p) -> o  becomes  m: (w, x) -> y, s: y -> (o, q)
                let x = self.cells[s].ins[0];
                let p = self.cells[s].outs[0];
                let w = self.cells[m].ins[0];
                let o = self.cells[m].outs[0];
                self.set_to(x, End::Port(m, 1));
                let y = self.new_wire(
                    self.wires[w].label + self.wires[x].label,
                    End::Port(m, 0),
                    End::Port(s, 0),
                );
                self.cells[m].outs[0] = y;
                self.cells[s].ins[0] = y;
                self.set_from(o, End::Port(s, 0));
                self.kill_wire(p);
            }
            Redex::MergeAssoc { outer, inner } => {
                // outer: (a, r), inner: (b, c) -> r  becomes  inner: (a, b) -> r, outer: (r, c)
                let a = self.cells[outer].ins[0];
                let r = self.cells[outer].ins[1];
                let (b, c) = (self.cells[inner].ins[0], self.cells[inner].ins[1]);
                self.set_to(a, End::Port(inner, 0));
                self.set_to(b, End::Port(inner, 1));
                self.wires[r].label = (self.wires[a].label + self.wires[b].label).rem_euclid(self.n);
                self.set_to(r, End::Port(outer, 0));
                self.set_to(c, End::Port(outer, 1));
            }
            Redex::SplitAssoc { outer, inner } => {
                // outer: x -> (a, r), inner: r -> (b, c)  becomes  outer: x -> (r, c), inner: r -> (a, b)
                let a = self.cells[outer].outs[0];
                let r = self.cells[outer].outs[1];
                let (b, c) = (self.cells[inner].outs[0], self.cells[inner].outs[1]);
                self.wires[r].label = (self.wires[a].label + self.wires[b].label).rem_euclid(self.n);
                self.set_from(r, End::Port(outer, 0));
                self.set_from(c, End::Port(outer, 1));
                self.set_from(a, End::Port(inner, 0));
                self.set_from(b, End::Port(inner, 1));
            }
            Redex::Join { left, right } => {
                // Insert s o m on two neighbouring middle strands.
                let (tl, tr) = (self.wires[left].to, self.wires[right].to);
                let m = self.cells.len();
                self.cells.push(Node {
                    kind: Kind::Merge,
                    ins: vec![left, right],
                    outs: vec![usize::MAX],
                    alive: true,
                });
                let s = self.cells.len();
                self.cells.push(Node {
                    kind: Kind::Split,
                    ins: vec![usize::MAX],
                    outs: vec![usize::MAX, usize::MAX],
                    alive: true,
                });
                self.wires[left].to = End::Port(m, 0);
                self.wires[right].to = End::Port(m, 1);
                let sum = self.wires[left].label + self.wires[right].label;
                let c = self.new_wire(sum, End::Port(m, 0), End::Port(s, 0));
                self.cells[m].outs[0] = c;
                self.cells[s].ins[0] = c;
                let l2 = self.new_wire(self.wires[left].label, End::Port(s, 0), tl);
                let r2 = self.new_wire(self.wires[right].label, End::Port(s, 1), tr);
                self.cells[s].outs = vec![l2, r2];
                self.set_to(l2, tl);
                self.set_to(r2, tr);
            }
        }
    }

    /// Confirms the graph is a left merge comb over the whole source followed
    /// by a left split comb onto the whole target.
    pub fn check_canonical_shape(&self) -> Result<(), String> {
        if let Some(r) = self.local_redexes().first() {
            return Err(format!("redex {r:?} remains"));
        }
        let merges = self.live_cells().filter(|(_, c)| c.kind == Kind::Merge).count();
        let splits = self.live_cells().filter(|(_, c)| c.kind == Kind::Split).count();
        let mid = self.middle().len();
        if self.source.is_empty() && self.target.is_empty() {
            return if merges + splits == 0 {
                Ok(())
            } else {
                Err("cells left on the empty word".into())
            };
        }
        if mid != 1 || merges + 1 != self.source.len() || splits + 1 != self.target.len() {
            return Err(format!(
                "{merges} merges, {splits} splits and {mid} middle strands for {} -> {} strands",
                self.source.len(),
                self.target.len()
            ));
        }
        Ok(())
    }
}
