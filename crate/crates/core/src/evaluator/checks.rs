use serde::Serialize;

use super::{EvalError, Evaluator};
use crate::diagram::{d_path, u_path, Morphism, ObjectWord, Strand};
use crate::exactfield::{ExactMatrix, RowEchelon, Scalar};
use crate::repgraph::{intertwiner_basis, GroupData, Label, Path, RepGraph};

/// Outcome of evaluating a morphism `a -> b` between simples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurOutcome {
    /// `a == b`
    pub same: bool,
    /// The scalar `alpha` with `eval = alpha * id` (zero when `a != b`).
    pub alpha: Scalar,
}

/// Evaluates `m: a -> b` and checks it is zero for `a != b` and a scalar
/// multiple of the identity for `a == b`.
pub fn schur_scalar(ev: &Evaluator<'_>, m: &Morphism) -> Result<SchurOutcome, EvalError> {
    let single = |w: &ObjectWord| w.len() == 1 && matches!(w.0[0], Strand::Node(_));
    if !single(m.source()) || !single(m.target()) {
        return Err(EvalError::NotSimpleBoundary {
            from: m.source().clone(),
            to: m.target().clone(),
        });
    }
    let map = ev.eval_morphism(m)?;
    let zero = Scalar::zero(ev.conductor());
    if m.source() != m.target() {
        if map.matrix.is_zero() {
            return Ok(SchurOutcome {
                same: false,
                alpha: zero,
            });
        }
        return Err(EvalError::SchurViolation(format!(
            "map {} -> {} between different simples is nonzero",
            m.source(),
            m.target()
        )));
    }
    match map.matrix.as_scalar_identity() {
        Some(alpha) => Ok(SchurOutcome { same: true, alpha }),
        None => Err(EvalError::SchurViolation(format!(
            "endomorphism of {} is not a scalar:\n{}",
            m.source(),
            map.matrix
        ))),
    }
}

/// `dim Hom(source, target)` computed directly from the module data.
pub fn hom_dim_oracle(source: &ObjectWord, target: &ObjectWord, group: &GroupData) -> Result<usize, EvalError> {
    Ok(intertwiner_basis(source, target, group)?.len())
}

/// Paths indexing the maps `V^k -> b`: paths of length `k - 1` from the
/// generator to `b`. For `k = 0` the unit word is identified with the unit
/// node, represented by `None`.
pub fn path_family(graph: &RepGraph, b: &Label, k: usize) -> Result<Vec<Option<Path>>, EvalError> {
    if k == 0 {
        return Ok(if graph.unit() == Some(b) {
            vec![None]
        } else {
            Vec::new()
        });
    }
    let gen = graph.require_generator()?;
    Ok(graph.enumerate_paths(gen, b, k - 1)?.into_iter().map(Some).collect())
}

fn up_matrix(ev: &Evaluator<'_>, p: &Option<Path>) -> Result<ExactMatrix, EvalError> {
    match p {
        Some(p) => ev.eval_diagram(&u_path(p)?),
        None => Ok(ExactMatrix::identity(1, ev.conductor())),
    }
}

fn down_matrix(ev: &Evaluator<'_>, p: &Option<Path>) -> Result<ExactMatrix, EvalError> {
    match p {
        Some(p) => ev.eval_diagram(&d_path(p)?),
        None => Ok(ExactMatrix::identity(1, ev.conductor())),
    }
}

fn rank_of(mats: &[ExactMatrix], m: u32) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let mut re = RowEchelon::new(first.rows() * first.cols(), m);
    for mat in mats {
        re.insert(&mat.flatten());
    }
    re.rank()
}

#[derive(Clone, Debug, Serialize)]
pub struct FullnessRow {
    pub k: usize,
    pub node: Label,
    pub paths: usize,
    pub rank: usize,
    pub oracle: usize,
}

impl FullnessRow {
    pub fn passed(&self) -> bool {
        self.paths == self.rank && self.rank == self.oracle
    }
}

/// For each `k <= max_k` and node `b`: the maps `u_p: V^k -> b` are
/// linearly independent and as many as `dim Hom(V^k, b)`.
pub fn fullness_check(ev: &Evaluator<'_>, graph: &RepGraph, max_k: usize) -> Result<Vec<FullnessRow>, EvalError> {
    let gen = Strand::Node(graph.require_generator()?.clone());
    let mut rows = Vec::new();
    for k in 0..=max_k {
        let word = ObjectWord::repeat(&gen, k);
        for b in graph.labels() {
            if graph.frontier().contains(b) {
                continue;
            }
            let mats = path_family(graph, b, k)?
                .iter()
                .map(|p| up_matrix(ev, p))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(FullnessRow {
                k,
                node: b.clone(),
                paths: mats.len(),
                rank: rank_of(&mats, ev.conductor()),
                oracle: hom_dim_oracle(&word, &ObjectWord::single(Strand::Node(b.clone())), ev.group())?,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulnessRow {
    pub k: usize,
    pub l: usize,
    /// `sum_b |P(b)_k| |P(b)_l|`
    pub pairs: usize,
    pub rank: usize,
    pub oracle: usize,
}

impl FaithfulnessRow {
    pub fn passed(&self) -> bool {
        self.pairs == self.rank && self.rank == self.oracle
    }
}

/// For each `k + l <= max_total`: the maps `d_q u_p: V^k -> V^l` over path
/// pairs through a common node are linearly independent and as many as
/// `dim Hom(V^k, V^l)`.
pub fn faithfulness_check(
    ev: &Evaluator<'_>,
    graph: &RepGraph,
    max_total: usize,
) -> Result<Vec<FaithfulnessRow>, EvalError> {
    let gen = Strand::Node(graph.require_generator()?.clone());
    let nodes: Vec<Label> = graph
        .labels()
        .filter(|b| !graph.frontier().contains(*b))
        .cloned()
        .collect();
    // ups[k][i]: matrices of u_p for paths into nodes[i] indexing V^k -> b.
    let mut ups = Vec::with_capacity(max_total + 1);
    let mut downs = Vec::with_capacity(max_total + 1);
    for k in 0..=max_total {
        let mut u_k = Vec::with_capacity(nodes.len());
        let mut d_k = Vec::with_capacity(nodes.len());
        for b in &nodes {
            let fam = path_family(graph, b, k)?;
            u_k.push(fam.iter().map(|p| up_matrix(ev, p)).collect::<Result<Vec<_>, _>>()?);
            d_k.push(fam.iter().map(|p| down_matrix(ev, p)).collect::<Result<Vec<_>, _>>()?);
        }
        ups.push(u_k);
        downs.push(d_k);
    }
    let mut rows = Vec::new();
    for total in 0..=max_total {
        for k in 0..=total {
            let l = total - k;
            let mut mats = Vec::new();
            for i in 0..nodes.len() {
                for u in &ups[k][i] {
                    for d in &downs[l][i] {
                        mats.push(d.mat_mul(u)?);
                    }
                }
            }
            rows.push(FaithfulnessRow {
                k,
                l,
                pairs: mats.len(),
                rank: rank_of(&mats, ev.conductor()),
                oracle: hom_dim_oracle(&ObjectWord::repeat(&gen, k), &ObjectWord::repeat(&gen, l), ev.group())?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Category, Diagram};
    use crate::repgraph::{binary_tetrahedral, bundled_graph, cyclic};

    fn t_eval(graph: &RepGraph) -> Evaluator<'_> {
        Evaluator::new(Category::Dgrams(graph), binary_tetrahedral()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let t = binary_tetrahedral();
        let three = ObjectWord::from_labels(&["3"]);
        let v4 = ObjectWord::from_labels(&["1"; 4]);
        let v5 = ObjectWord::from_labels(&["1"; 5]);
        assert_eq!(hom_dim_oracle(&v5, &three, &t).unwrap(), 5);
        assert_eq!(hom_dim_oracle(&v4, &three, &t).unwrap(), 0);
        let v2 = ObjectWord::from_labels(&["1"; 2]);
        assert_eq!(hom_dim_oracle(&v2, &v2, &t).unwrap(), 2);
        let c3 = cyclic(3).unwrap();
        let w = ObjectWord::from_labels(&["1", "1"]);
        assert_eq!(hom_dim_oracle(&w, &ObjectWord::from_labels(&["2"]), &c3).unwrap(), 1);
    }

    #[test]
    fn schur_on_loops() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = t_eval(&graph);
        let p = Path::new(&["1", "0"]);
        let d = u_path(&p).unwrap().compose(&d_path(&p).unwrap()).unwrap();
        let out = schur_scalar(&ev, &Morphism::from_diagram(d, 24)).unwrap();
        assert!(out.same && out.alpha.is_one());
        let id = Morphism::identity(ObjectWord::from_labels(&["3"]), 24);
        assert!(schur_scalar(&ev, &id).unwrap().alpha.is_one());
        let two = Morphism::from_diagram(Diagram::identity(ObjectWord::from_labels(&["1", "1"])), 24);
        assert!(matches!(
            schur_scalar(&ev, &two),
            Err(EvalError::NotSimpleBoundary { .. })
        ));
    }

    #[test]
    fn fullness_small() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = t_eval(&graph);
        let rows = fullness_check(&ev, &graph, 3).unwrap();
        assert!(rows.iter().all(FullnessRow::passed));
        let r = rows.iter().find(|r| r.k == 2 && r.node.as_str() == "2").unwrap();
        assert_eq!(r.paths, 1);
    }

    #[test]
    fn faithfulness_small() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = t_eval(&graph);
        let rows = faithfulness_check(&ev, &graph, 4).unwrap();
        assert!(rows.iter().all(FaithfulnessRow::passed), "{rows:?}");
        let r = rows.iter().find(|r| r.k == 2 && r.l == 2).unwrap();
        assert_eq!(r.oracle, 2);
    }
}
