//! Random well-formed diagrams for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{d_path, u_path, Cell, Diagram, ObjectWord, Strand};
use crate::repgraph::{Label, Path, RepGraph, RepGraphError};

fn residue(v: i64, n: u32) -> Strand {
    Strand::Node(Label::new(v.rem_euclid(n as i64).to_string()))
}

/// A random word of 1 to `max_len` residues mod `n`.
pub fn random_cn_word<R: Rng + ?Sized>(rng: &mut R, n: u32, max_len: usize) -> ObjectWord {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len).map(|_| residue(rng.gen_range(0..n as i64), n)).collect()
}

/// Applies exactly `cells` random merges and splits to `source`, keeping
/// the word between one and five strands.
pub fn random_cn_diagram_from<R: Rng + ?Sized>(rng: &mut R, n: u32, source: &ObjectWord, cells: usize) -> Diagram {
    let nn = n as i64;
    let mut word: Vec<i64> = source
        .iter()
        .map(|s| s.label().and_then(Label::as_int).expect("residue labels"))
        .collect();
    let mut steps = Vec::with_capacity(cells);
    for _ in 0..cells {
        if word.is_empty() {
            break;
        }
        let merge = word.len() >= 2 && (word.len() >= 5 || rng.gen_bool(0.5));
        if merge {
            let i = rng.gen_range(0..word.len() - 1);
            let (a, b) = (word[i], word[i + 1]);
            steps.push((i, Cell::merge(residue(a, n), residue(b, n), residue(a + b, n))));
            word.splice(i..i + 2, [(a + b).rem_euclid(nn)]);
        } else {
            let i = rng.gen_range(0..word.len());
            let c = word[i];
            let x = rng.gen_range(0..nn);
            let y = (c - x).rem_euclid(nn);
            steps.push((i, Cell::split(residue(c, n), residue(x, n), residue(y, n))));
            word.splice(i..i + 1, [x, y]);
        }
    }
    Diagram::from_steps(source.clone(), steps).expect("random steps follow the current word")
}

/// A random `C_n` diagram on a random source of up to three strands with at
/// most `max_cells` cells.
pub fn random_cn_diagram<R: Rng + ?Sized>(rng: &mut R, n: u32, max_cells: usize) -> Diagram {
    let source = random_cn_word(rng, n, 3);
    let cells = rng.gen_range(0..=max_cells);
    random_cn_diagram_from(rng, n, &source, cells)
}

/// A random walk of `steps` steps from `start`.
pub fn random_walk<R: Rng + ?Sized>(
    rng: &mut R,
    graph: &RepGraph,
    start: &Label,
    steps: usize,
) -> Result<Path, RepGraphError> {
    let mut nodes = vec![start.clone()];
    for _ in 0..steps {
        let cur = nodes.last().unwrap();
        let next = graph
            .out_neighbors(cur)?
            .choose(rng)
            .map(|l| (*l).clone())
            .ok_or_else(|| RepGraphError::Data(format!("node {cur} has no out-neighbours")))?;
        nodes.push(next);
    }
    Ok(Path { nodes })
}

/// A random path from the generator to `b` with 1 to `max_strands` strands
/// in its funnel, if any exists.
fn random_path_to<R: Rng + ?Sized>(
    rng: &mut R,
    graph: &RepGraph,
    b: &Label,
    max_strands: usize,
) -> Result<Option<Path>, RepGraphError> {
    let gen = graph.require_generator()?;
    let mut lengths: Vec<usize> = (0..max_strands).collect();
    lengths.shuffle(rng);
    for len in lengths {
        let paths = graph.enumerate_paths(gen, b, len)?;
        if let Some(p) = paths.choose(rng) {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// A random diagram `[a] -> [b]` over a graph with a generator node:
/// a `d_path` from `a` (random when `start` is `None`) onto generator
/// strands, up to `max_ops` random blocks `d_q' u_q` on neighbouring
/// generator strands, and a `u_path` back to a single node.
pub fn random_graph_diagram<R: Rng + ?Sized>(
    rng: &mut R,
    graph: &RepGraph,
    start: Option<&Label>,
    max_ops: usize,
) -> Result<Diagram, RepGraphError> {
    let gen = graph.require_generator()?.clone();
    let g = Strand::Node(gen.clone());
    let first = match start {
        Some(a) => random_path_to(rng, graph, a, 4)?
            .ok_or_else(|| RepGraphError::Data(format!("no short path from the generator to {a}")))?,
        None => {
            let k = rng.gen_range(0..3);
            random_walk(rng, graph, &gen, k)?
        }
    };
    let lift = |e: super::DiagramError| RepGraphError::Data(e.to_string());
    let mut d = d_path(&first).map_err(lift)?;
    let mut k = first.nodes.len();
    for _ in 0..rng.gen_range(0..=max_ops) {
        let r = rng.gen_range(1..=k.min(3));
        let i = rng.gen_range(0..=k - r);
        let q = random_walk(rng, graph, &gen, r - 1)?;
        let c = q.end().clone();
        let room = 5usize.saturating_sub(k - r).clamp(1, 3);
        let q2 = random_path_to(rng, graph, &c, room)?.unwrap_or_else(|| q.clone());
        let block = d_path(&q2)
            .map_err(lift)?
            .compose(&u_path(&q).map_err(lift)?)
            .map_err(lift)?;
        let r2 = q2.nodes.len();
        let full = Diagram::identity(ObjectWord::repeat(&g, i))
            .tensor(&block)
            .tensor(&Diagram::identity(ObjectWord::repeat(&g, k - i - r)));
        d = full.compose(&d).map_err(lift)?;
        k = k - r + r2;
    }
    let last = random_walk(rng, graph, &gen, k - 1)?;
    u_path(&last).map_err(lift)?.compose(&d).map_err(lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate, Category};
    use crate::repgraph::bundled_graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_cn_diagrams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let d = random_cn_diagram(&mut rng, 5, 12);
            assert!(d.cell_count() <= 12);
            assert!(validate(&d, &Category::CnIrr(5)).ok());
        }
    }

    #[test]
    fn random_graph_diagrams_are_valid() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = random_graph_diagram(&mut rng, &graph, None, 3).unwrap();
            assert_eq!(d.source().len(), 1);
            assert_eq!(d.target().len(), 1);
            assert!(validate(&d, &Category::Dgrams(&graph)).ok());
        }
        let a = Label::new("3'");
        let d = random_graph_diagram(&mut rng, &graph, Some(&a), 2).unwrap();
        assert_eq!(d.source(), &ObjectWord::from_labels(&["3'"]));
    }
}
