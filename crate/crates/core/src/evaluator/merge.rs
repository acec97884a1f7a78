use std::collections::BTreeMap;

use super::EvalError;
use crate::exactfield::{ExactMatrix, FieldError};
use crate::repgraph::{intertwiner_basis_modules, GroupData, Label, RepGraph, RepGraphError, SimpleModule};

/// Merge maps `V (x) a -> b`, the split maps derived from them and, for the
/// star category, the projections of `V` onto its summands and their
/// sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeSystem {
    pub conductor: u32,
    /// Out-neighbours of every node, in label order.
    pub neighbors: BTreeMap<Label, Vec<Label>>,
    /// `merge[(a, b)]: V (x) a -> b`.
    pub merge: BTreeMap<(Label, Label), ExactMatrix>,
    /// `split[(a, b)]: b -> V (x) a`.
    pub split: BTreeMap<(Label, Label), ExactMatrix>,
    /// `project[c]: V -> c`.
    pub project: BTreeMap<Label, ExactMatrix>,
    /// `include[c]: c -> V`.
    pub include: BTreeMap<Label, ExactMatrix>,
}

impl MergeSystem {
    pub fn empty(conductor: u32) -> Self {
        MergeSystem {
            conductor,
            neighbors: BTreeMap::new(),
            merge: BTreeMap::new(),
            split: BTreeMap::new(),
            project: BTreeMap::new(),
            include: BTreeMap::new(),
        }
    }

    /// Merges for every edge and splits for every node off the truncation
    /// frontier.
    pub fn for_graph(group: &GroupData, graph: &RepGraph) -> Result<Self, EvalError> {
        let mut ms = choose_merge_maps(group, graph)?;
        for a in graph.labels() {
            if !graph.frontier().contains(a) {
                derive_split_maps(&mut ms, group, a)?;
            }
        }
        Ok(ms)
    }

    pub fn merge_map(&self, a: &Label, b: &Label) -> Option<&ExactMatrix> {
        self.merge.get(&(a.clone(), b.clone()))
    }

    pub fn split_map(&self, a: &Label, b: &Label) -> Option<&ExactMatrix> {
        self.split.get(&(a.clone(), b.clone()))
    }
}

/// Scales `f` so that its first nonzero entry in row-major order is 1.
fn normalize_first_nonzero(f: ExactMatrix) -> ExactMatrix {
    match f.entries().iter().find(|v| !v.is_zero()) {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            f.scale(&inv)
        }
        None => f,
    }
}

fn unique_hom(group: &GroupData, src: &[&SimpleModule], tgt: &SimpleModule) -> Result<ExactMatrix, EvalError> {
    let basis = intertwiner_basis_modules(group, src, &[tgt]);
    let from = src
        .iter()
        .map(|m| m.label.to_string())
        .collect::<Vec<_>>()
        .join(" (x) ");
    match basis.len() {
        0 => Err(EvalError::EmptyHom {
            from,
            to: tgt.label.to_string(),
        }),
        1 => Ok(normalize_first_nonzero(basis.into_iter().next().unwrap())),
        dim => Err(EvalError::MultipleHom {
            from,
            to: tgt.label.to_string(),
            dim,
        }),
    }
}

/// Picks a merge map for every edge `a -> b`: the group's explicit map when
/// it has one, otherwise the spanning intertwiner scaled so its first
/// nonzero entry is 1.
pub fn choose_merge_maps(group: &GroupData, graph: &RepGraph) -> Result<MergeSystem, EvalError> {
    let v = &group.defining;
    let mut ms = MergeSystem::empty(group.conductor);
    for a in graph.labels() {
        let nbrs: Vec<Label> = graph.out_neighbors(a)?.into_iter().cloned().collect();
        ms.neighbors.insert(a.clone(), nbrs);
    }
    for (a, b) in graph.edges() {
        let ma = group.simple(&a)?;
        let mb = group.simple(&b)?;
        let mat = match group.merge_maps.get(&(a.clone(), b.clone())) {
            Some(given) => {
                if given.shape() != (mb.dim, v.dim * ma.dim) {
                    return Err(RepGraphError::Data(format!(
                        "merge {a} -> {b} is {}x{}, expected {}x{}",
                        given.rows(),
                        given.cols(),
                        mb.dim,
                        v.dim * ma.dim
                    ))
                    .into());
                }
                given.clone()
            }
            None => unique_hom(group, &[v, ma], mb)?,
        };
        ms.merge.insert((a, b), mat);
    }
    Ok(ms)
}

/// Stacks the merges out of `V (x) a` into a square matrix and reads the
/// splits off the column blocks of its inverse, so that `m s = id` for each
/// neighbour and the `s m` sum to the identity.
pub fn derive_split_maps(ms: &mut MergeSystem, group: &GroupData, a: &Label) -> Result<(), EvalError> {
    let nbrs = ms
        .neighbors
        .get(a)
        .cloned()
        .ok_or_else(|| RepGraphError::UnknownLabel(a.clone()))?;
    let mut blocks = Vec::with_capacity(nbrs.len());
    for b in &nbrs {
        let mat = ms
            .merge_map(a, b)
            .ok_or_else(|| EvalError::MissingMatrix(format!("merge {a} -> {b}")))?;
        blocks.push(mat.clone());
    }
    let expected = group.defining.dim * group.simple(a)?.dim;
    let stacked = if blocks.is_empty() {
        ExactMatrix::zeros(0, expected, ms.conductor)
    } else {
        ExactMatrix::vstack(&blocks)?
    };
    if stacked.rows() != expected || stacked.cols() != expected {
        return Err(EvalError::SplitShape {
            node: a.clone(),
            stacked: stacked.rows(),
            expected,
        });
    }
    let inv = stacked.inverse().map_err(|e| match e {
        FieldError::Singular => EvalError::Singular(a.clone()),
        other => other.into(),
    })?;
    let mut offset = 0;
    for (b, block) in nbrs.iter().zip(&blocks) {
        let d = block.rows();
        ms.split.insert((a.clone(), b.clone()), inv.column_block(offset, d));
        offset += d;
    }
    Ok(())
}

/// Projections `V -> c` for the summands `c` adjacent to the unit, and the
/// inclusions obtained from the inverse of their stack.
pub fn choose_star_maps(ms: &mut MergeSystem, group: &GroupData, graph: &RepGraph) -> Result<(), EvalError> {
    let unit = graph
        .unit()
        .ok_or_else(|| RepGraphError::Data(format!("graph {} has no unit node", graph.name())))?;
    let v = &group.defining;
    let cs: Vec<Label> = graph.out_neighbors(unit)?.into_iter().cloned().collect();
    let mut blocks = Vec::with_capacity(cs.len());
    for c in &cs {
        blocks.push(unique_hom(group, &[v], group.simple(c)?)?);
    }
    let stacked = if blocks.is_empty() {
        ExactMatrix::zeros(0, v.dim, ms.conductor)
    } else {
        ExactMatrix::vstack(&blocks)?
    };
    if stacked.rows() != v.dim {
        return Err(EvalError::SplitShape {
            node: unit.clone(),
            stacked: stacked.rows(),
            expected: v.dim,
        });
    }
    let inv = stacked.inverse().map_err(|e| match e {
        FieldError::Singular => EvalError::Singular(unit.clone()),
        other => other.into(),
    })?;
    let mut offset = 0;
    for (c, block) in cs.iter().zip(blocks) {
        let d = block.rows();
        ms.include.insert(c.clone(), inv.column_block(offset, d));
        ms.project.insert(c.clone(), block);
        offset += d;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Scalar;
    use crate::repgraph::{binary_tetrahedral, bundled_graph, cyclic, cyclic_natural, group_graph};

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    fn t_system() -> (GroupData, MergeSystem) {
        let g = binary_tetrahedral();
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ms = MergeSystem::for_graph(&g, &graph).unwrap();
        (g, ms)
    }

    #[test]
    fn explicit_merges_are_used_verbatim() {
        let (g, ms) = t_system();
        assert_eq!(ms.merge_map(&l("1"), &l("2")), g.merge_maps.get(&(l("1"), l("2"))));
        // v_{-1} (x) v_{-1} |-> v_{-2}
        let m12 = ms.merge_map(&l("1"), &l("2")).unwrap();
        assert!(m12.get(0, 0).is_one());
        // v_{-1} (x) v_1 - v_1 (x) v_{-1} |-> 1
        let m10 = ms.merge_map(&l("1"), &l("0")).unwrap();
        assert!((m10.get(0, 1) - m10.get(0, 2)).is_one());
    }

    #[test]
    fn splits_invert_merges() {
        let (_, ms) = t_system();
        for ((a, b), m) in &ms.merge {
            let s = ms.split_map(a, b).unwrap();
            let p = m.mat_mul(s).unwrap();
            assert_eq!(p.as_scalar_identity().map(|c| c.is_one()), Some(true), "{a} -> {b}");
        }
        let s0 = ms.split_map(&l("0"), &l("1")).unwrap();
        assert_eq!(s0, &ExactMatrix::identity(2, 24));
    }

    #[test]
    fn cyclic_merges_are_ones() {
        let g = cyclic(5).unwrap();
        let graph = group_graph(&g).unwrap();
        let ms = MergeSystem::for_graph(&g, &graph).unwrap();
        for (_, m) in ms.merge.iter().chain(ms.split.iter()) {
            assert_eq!(m, &ExactMatrix::identity(1, g.conductor));
        }
    }

    #[test]
    fn star_maps_for_natural_rotation() {
        let g = cyclic_natural(5).unwrap();
        let graph = group_graph(&g).unwrap();
        let mut ms = MergeSystem::for_graph(&g, &graph).unwrap();
        choose_star_maps(&mut ms, &g, &graph).unwrap();
        assert_eq!(ms.project.len(), 2);
        let sum = ms
            .project
            .keys()
            .map(|c| ms.include[c].mat_mul(&ms.project[c]).unwrap())
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        assert_eq!(sum, ExactMatrix::identity(2, g.conductor));
    }

    #[test]
    fn doubled_merge_still_inverts() {
        let (g, mut ms) = t_system();
        let key = (l("1"), l("2"));
        let doubled = ms.merge[&key].scale(&Scalar::from_int(24, 2));
        ms.merge.insert(key.clone(), doubled);
        derive_split_maps(&mut ms, &g, &l("1")).unwrap();
        let p = ms.merge[&key].mat_mul(&ms.split[&key]).unwrap();
        assert!(p.as_scalar_identity().unwrap().is_one());
    }
}
