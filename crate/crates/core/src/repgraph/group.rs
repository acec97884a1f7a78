use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Label, RepGraphError};
use crate::diagram::{ObjectWord, Strand};
use crate::exactfield::{ExactMatrix, RowEchelon, Scalar, SparseRow};

/// How generator matrices act on tensor products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    /// Group elements act diagonally: `g(v (x) w) = gv (x) gw`.
    Group,
    /// Lie algebra elements act by the Leibniz rule: `x(v (x) w) = xv (x) w + v (x) xw`.
    LieAlgebra,
}

/// A module given by explicit generator matrices. `gen_action[i]` is the
/// action of `GroupData::generators[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleModule {
    pub label: Label,
    pub dim: usize,
    /// Optional names of the basis vectors, for display only.
    pub basis: Vec<String>,
    pub gen_action: Vec<ExactMatrix>,
}

#[derive(Clone, Debug)]
pub struct GroupData {
    pub name: String,
    pub conductor: u32,
    pub kind: ActionKind,
    pub generators: Vec<String>,
    pub simples: Vec<SimpleModule>,
    /// The defining object `V`; simple for representation graphs, possibly a
    /// direct sum when used as the star object.
    pub defining: SimpleModule,
    pub unit: Label,
    /// Simples whose tensor product with `V` leaves the truncated family.
    pub frontier: Vec<Label>,
    /// Explicit merge maps `V (x) a -> b` keyed by `(a, b)`, when the data
    /// fixes them; otherwise merges are chosen by normalization.
    pub merge_maps: BTreeMap<(Label, Label), ExactMatrix>,
}

impl GroupData {
    pub fn simple(&self, label: &Label) -> Result<&SimpleModule, RepGraphError> {
        self.simples
            .iter()
            .find(|s| &s.label == label)
            .ok_or_else(|| RepGraphError::UnknownLabel(label.clone()))
    }

    /// True when `V` is one of the simples (rather than a direct sum).
    pub fn defining_is_simple(&self) -> bool {
        self.simples.iter().any(|s| s.label == self.defining.label)
    }

    pub fn module_for(&self, strand: &Strand) -> Result<&SimpleModule, RepGraphError> {
        match strand {
            Strand::Node(l) => self.simple(l),
            Strand::Star => Ok(&self.defining),
        }
    }

    pub fn modules_for(&self, word: &ObjectWord) -> Result<Vec<&SimpleModule>, RepGraphError> {
        word.iter().map(|s| self.module_for(s)).collect()
    }

    /// Matrix of generator `g` on the tensor product of `mods`.
    pub fn rho(&self, mods: &[&SimpleModule], g: usize) -> ExactMatrix {
        let m = self.conductor;
        match self.kind {
            ActionKind::Group => mods
                .iter()
                .fold(ExactMatrix::identity(1, m), |acc, md| acc.kron(&md.gen_action[g])),
            ActionKind::LieAlgebra => {
                let dims: Vec<usize> = mods.iter().map(|md| md.dim).collect();
                let total: usize = dims.iter().product();
                let mut acc = ExactMatrix::zeros(total, total, m);
                for (i, md) in mods.iter().enumerate() {
                    let left: usize = dims[..i].iter().product();
                    let right: usize = dims[i + 1..].iter().product();
                    let term = ExactMatrix::identity(left, m)
                        .kron(&md.gen_action[g])
                        .kron(&ExactMatrix::identity(right, m));
                    acc = acc.add(&term).expect("same shape");
                }
                acc
            }
        }
    }

    pub fn word_dim(&self, word: &ObjectWord) -> Result<usize, RepGraphError> {
        Ok(self.modules_for(word)?.iter().map(|m| m.dim).product())
    }

    /// Checks that every generator matrix is square of the module dimension.
    pub fn validate(&self) -> Result<(), RepGraphError> {
        for md in self.simples.iter().chain(std::iter::once(&self.defining)) {
            if md.gen_action.len() != self.generators.len() {
                return Err(RepGraphError::Data(format!(
                    "module {} has {} generator matrices, expected {}",
                    md.label,
                    md.gen_action.len(),
                    self.generators.len()
                )));
            }
            for (g, mat) in self.generators.iter().zip(&md.gen_action) {
                if mat.shape() != (md.dim, md.dim) {
                    return Err(RepGraphError::Data(format!(
                        "generator {g} on module {} is {}x{}, expected {}x{}",
                        md.label,
                        mat.rows(),
                        mat.cols(),
                        md.dim,
                        md.dim
                    )));
                }
            }
        }
        self.simple(&self.unit)?;
        Ok(())
    }
}

fn diagonal(mat: &ExactMatrix) -> Option<Vec<Scalar>> {
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            if i != j && !mat.get(i, j).is_zero() {
                return None;
            }
        }
    }
    Some((0..mat.rows()).map(|i| mat.get(i, i).clone()).collect())
}

/// Basis of `Hom(src, tgt)` for explicit module lists, found as the
/// nullspace of `F rho_src(g) - rho_tgt(g) F = 0` over all generators.
///
/// Generators acting diagonally on both sides are used up front to discard
/// unknowns joining different weights, which keeps the systems small.
pub fn intertwiner_basis_modules(group: &GroupData, src: &[&SimpleModule], tgt: &[&SimpleModule]) -> Vec<ExactMatrix> {
    let m = group.conductor;
    let s: usize = src.iter().map(|md| md.dim).product();
    let t: usize = tgt.iter().map(|md| md.dim).product();
    let mut allowed = vec![true; t * s];
    let mut dense_gens = Vec::new();
    for g in 0..group.generators.len() {
        let sg = group.rho(src, g);
        let tg = group.rho(tgt, g);
        match (diagonal(&sg), diagonal(&tg)) {
            (Some(sd), Some(td)) => {
                for i in 0..t {
                    for k in 0..s {
                        if td[i] != sd[k] {
                            allowed[i * s + k] = false;
                        }
                    }
                }
            }
            _ => dense_gens.push((sg, tg)),
        }
    }
    let mut var = vec![usize::MAX; t * s];
    let mut owner = Vec::new();
    for (idx, ok) in allowed.iter().enumerate() {
        if *ok {
            var[idx] = owner.len();
            owner.push(idx);
        }
    }
    let mut re = RowEchelon::new(owner.len(), m);
    for (sg, tg) in &dense_gens {
        let s_cols: Vec<Vec<(usize, &Scalar)>> = (0..s)
            .map(|j| {
                (0..s)
                    .filter(|&k| !sg.get(k, j).is_zero())
                    .map(|k| (k, sg.get(k, j)))
                    .collect()
            })
            .collect();
        let t_rows: Vec<Vec<(usize, &Scalar)>> = (0..t)
            .map(|i| {
                (0..t)
                    .filter(|&k| !tg.get(i, k).is_zero())
                    .map(|k| (k, tg.get(i, k)))
                    .collect()
            })
            .collect();
        for i in 0..t {
            for j in 0..s {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for &(k, v) in &s_cols[j] {
                    let x = var[i * s + k];
                    if x != usize::MAX {
                        *acc.entry(x).or_insert_with(|| Scalar::zero(m)) += v;
                    }
                }
                for &(k, v) in &t_rows[i] {
                    let x = var[k * s + j];
                    if x != usize::MAX {
                        *acc.entry(x).or_insert_with(|| Scalar::zero(m)) += &(-v);
                    }
                }
                let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    re.insert(&row);
                }
            }
        }
    }
    re.nullspace()
        .into_iter()
        .map(|x| {
            let mut f = ExactMatrix::zeros(t, s, m);
            for (xi, v) in x.into_iter().enumerate() {
                if !v.is_zero() {
                    let idx = owner[xi];
                    f.set(idx / s, idx % s, v);
                }
            }
            f
        })
        .collect()
}

/// Basis of the equivariant maps from `source` to `target`.
pub fn intertwiner_basis(
    source: &ObjectWord,
    target: &ObjectWord,
    group: &GroupData,
) -> Result<Vec<ExactMatrix>, RepGraphError> {
    let src = group.modules_for(source)?;
    let tgt = group.modules_for(target)?;
    Ok(intertwiner_basis_modules(group, &src, &tgt))
}

/// Multiplicities of the simples in `v (x) a`, together with the total
/// dimension they account for.
pub(crate) fn multiplicities(
    v: &SimpleModule,
    a: &SimpleModule,
    simples: &[SimpleModule],
    group: &GroupData,
) -> (BTreeMap<Label, usize>, usize) {
    let mut out = BTreeMap::new();
    let mut total = 0;
    for b in simples {
        let mult = intertwiner_basis_modules(group, &[v, a], &[b]).len();
        if mult > 0 {
            out.insert(b.label.clone(), mult);
            total += mult * b.dim;
        }
    }
    (out, total)
}

/// Multiplicities of the simples in `v (x) a`. Fails when they do not
/// account for all of `dim(v) dim(a)`, which signals bad module data.
pub fn decompose_tensor(
    v: &SimpleModule,
    a: &SimpleModule,
    simples: &[SimpleModule],
    group: &GroupData,
) -> Result<BTreeMap<Label, usize>, RepGraphError> {
    let (out, total) = multiplicities(v, a, simples, group);
    let expected = v.dim * a.dim;
    if total != expected {
        return Err(RepGraphError::DimensionMismatch {
            v: v.label.clone(),
            a: a.label.clone(),
            expected,
            found: total,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repgraph::builtin;

    #[test]
    fn t_hom_spaces() {
        let t = builtin::binary_tetrahedral();
        let w = |s: &[&str]| ObjectWord::from_labels(s);
        assert_eq!(intertwiner_basis(&w(&["1", "1"]), &w(&["0"]), &t).unwrap().len(), 1);
        assert!(intertwiner_basis(&w(&["1", "0"]), &w(&["4"]), &t).unwrap().is_empty());
        for s in &t.simples {
            let b = intertwiner_basis_modules(&t, &[s], &[s]);
            assert_eq!(b.len(), 1);
            assert!(b[0].as_scalar_identity().is_some());
        }
    }

    #[test]
    fn t_decompositions() {
        let t = builtin::binary_tetrahedral();
        let v = t.simple(&"1".into()).unwrap();
        let d = decompose_tensor(v, t.simple(&"2".into()).unwrap(), &t.simples, &t).unwrap();
        let keys: Vec<&str> = d.keys().map(Label::as_str).collect();
        assert_eq!(keys, ["1", "3", "3'"]);
        assert!(d.values().all(|&m| m == 1));
    }

    #[test]
    fn natural_cyclic_restriction() {
        let c5 = builtin::cyclic_natural(5).unwrap();
        for a in &c5.simples {
            let d = decompose_tensor(&c5.defining, a, &c5.simples, &c5).unwrap();
            let k = a.label.as_int().unwrap();
            let expect: Vec<String> = {
                let mut e = vec![((k + 1) % 5).to_string(), ((k + 4) % 5).to_string()];
                e.sort_by_key(|s| s.parse::<i64>().unwrap());
                e
            };
            let got: Vec<String> = d.keys().map(|l| l.to_string()).collect();
            assert_eq!(got, expect);
        }
    }
}
