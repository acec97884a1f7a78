use std::borrow::Cow;

use serde::Serialize;

use super::merge::choose_star_maps;
use super::{EvalError, MergeSystem};
use crate::diagram::{validate, validate_morphism, Category, Cell, Diagram, Morphism, ObjectWord, Strand};
use crate::exactfield::{ExactMatrix, Scalar};
use crate::repgraph::{cyclic, GroupData, RepGraphError};

/// An evaluated morphism: a matrix from the source word's module to the
/// target word's module, bases ordered lexicographically with the left
/// factor most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixMap {
    pub source: ObjectWord,
    pub target: ObjectWord,
    pub matrix: ExactMatrix,
}

/// The evaluation functor for one category: module data for the strands
/// plus the matrices assigned to merges, splits and star cells.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    category: Category<'a>,
    group: GroupData,
    system: MergeSystem,
}

impl Evaluator<'static> {
    /// `C_n^irr` evaluated on the one-dimensional modules of `C_n`; every
    /// merge and split is the `1x1` identity.
    pub fn cyclic(n: u32) -> Result<Self, EvalError> {
        let group = cyclic(n)?;
        let system = MergeSystem::empty(group.conductor);
        Ok(Evaluator {
            category: Category::CnIrr(n),
            group,
            system,
        })
    }
}

impl<'a> Evaluator<'a> {
    /// Chooses merges, derives splits and, for the star category, the star
    /// projections and inclusions.
    pub fn new(category: Category<'a>, group: GroupData) -> Result<Self, EvalError> {
        let system = match category {
            Category::CnIrr(_) => MergeSystem::empty(group.conductor),
            Category::Dgrams(g) => {
                match g.generator() {
                    Some(gen) if gen == &group.defining.label => {}
                    Some(gen) => {
                        return Err(RepGraphError::Data(format!(
                            "graph generator {gen} is not the defining module {}",
                            group.defining.label
                        ))
                        .into())
                    }
                    None => return Err(RepGraphError::Data(format!("graph {} has no generator node", g.name())).into()),
                }
                MergeSystem::for_graph(&group, g)?
            }
            Category::Star(g) => {
                let mut ms = MergeSystem::for_graph(&group, g)?;
                choose_star_maps(&mut ms, &group, g)?;
                ms
            }
        };
        Ok(Evaluator {
            category,
            group,
            system,
        })
    }

    /// An evaluator with an explicitly supplied merge system, e.g. one with
    /// a deliberately corrupted matrix.
    pub fn with_system(category: Category<'a>, group: GroupData, system: MergeSystem) -> Self {
        Evaluator {
            category,
            group,
            system,
        }
    }

    pub fn category(&self) -> &Category<'a> {
        &self.category
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn system(&self) -> &MergeSystem {
        &self.system
    }

    pub fn conductor(&self) -> u32 {
        self.group.conductor
    }

    pub fn word_dim(&self, word: &ObjectWord) -> Result<usize, EvalError> {
        Ok(self.group.word_dim(word)?)
    }

    fn strand_dim(&self, s: &Strand) -> Result<usize, EvalError> {
        Ok(self.group.module_for(s)?.dim)
    }

    fn cell_matrix(&self, cell: &Cell) -> Result<Cow<'_, ExactMatrix>, EvalError> {
        let m = self.group.conductor;
        let missing = || EvalError::MissingMatrix(cell.to_string());
        let label = |s: &Strand| s.label().cloned().ok_or_else(missing);
        match (cell, &self.category) {
            (Cell::Id(s), _) => Ok(Cow::Owned(ExactMatrix::identity(self.strand_dim(s)?, m))),
            (Cell::Merge { .. } | Cell::Split { .. }, Category::CnIrr(_)) => {
                Ok(Cow::Owned(ExactMatrix::identity(1, m)))
            }
            (Cell::Merge { right, out, .. }, _) => self
                .system
                .merge_map(&label(right)?, &label(out)?)
                .map(Cow::Borrowed)
                .ok_or_else(missing),
            (Cell::Split { input, right, .. }, _) => self
                .system
                .split_map(&label(right)?, &label(input)?)
                .map(Cow::Borrowed)
                .ok_or_else(missing),
            (Cell::StarDown(c), _) => self.system.project.get(c).map(Cow::Borrowed).ok_or_else(missing),
            (Cell::StarUp(c), _) => self.system.include.get(c).map(Cow::Borrowed).ok_or_else(missing),
        }
    }

    /// Evaluates a diagram without validating it first.
    pub fn eval_diagram(&self, d: &Diagram) -> Result<ExactMatrix, EvalError> {
        let mut dims = d
            .source()
            .iter()
            .map(|s| self.strand_dim(s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = ExactMatrix::identity(dims.iter().product(), self.group.conductor);
        for (off, cell) in d.steps() {
            let nin = cell.arity().0;
            let left: usize = dims[..off].iter().product();
            let right: usize = dims[off + nin..].iter().product();
            let mat = self.cell_matrix(&cell)?;
            acc = apply_local(&acc, left, &mat, right);
            let outs = cell
                .outputs()
                .iter()
                .map(|s| self.strand_dim(s))
                .collect::<Result<Vec<_>, _>>()?;
            dims.splice(off..off + nin, outs);
        }
        Ok(acc)
    }

    /// Validates and evaluates a single diagram.
    pub fn eval(&self, d: &Diagram) -> Result<MatrixMap, EvalError> {
        let report = validate(d, &self.category);
        if !report.ok() {
            return Err(EvalError::Invalid {
                category: self.category.name(),
                problems: report.problems.join("; "),
            });
        }
        Ok(MatrixMap {
            source: d.source().clone(),
            target: d.target().clone(),
            matrix: self.eval_diagram(d)?,
        })
    }

    /// Validates and evaluates a linear combination of diagrams.
    pub fn eval_morphism(&self, m: &Morphism) -> Result<MatrixMap, EvalError> {
        let report = validate_morphism(m, &self.category);
        if !report.ok() {
            return Err(EvalError::Invalid {
                category: self.category.name(),
                problems: report.problems.join("; "),
            });
        }
        let rows = self.word_dim(m.target())?;
        let cols = self.word_dim(m.source())?;
        let mut matrix = ExactMatrix::zeros(rows, cols, self.group.conductor);
        for (d, c) in m.terms() {
            matrix = matrix.add(&self.eval_diagram(d)?.scale(c))?;
        }
        Ok(MatrixMap {
            source: m.source().clone(),
            target: m.target().clone(),
            matrix,
        })
    }
}

/// Applies `mat` to the middle factor of `left (x) X (x) right`, i.e.
/// returns `(I_left (x) mat (x) I_right) * acc` without forming the
/// Kronecker product.
pub fn apply_local(acc: &ExactMatrix, left: usize, mat: &ExactMatrix, right: usize) -> ExactMatrix {
    let (yout, xin) = mat.shape();
    assert_eq!(acc.rows(), left * xin * right, "apply_local: row count does not factor");
    let cols = acc.cols();
    let m = crate::exactfield::lcm(acc.conductor(), mat.conductor());
    let mut out = ExactMatrix::zeros(left * yout * right, cols, m);
    for y in 0..yout {
        for x in 0..xin {
            let v = mat.get(y, x);
            if v.is_zero() {
                continue;
            }
            for l in 0..left {
                for r in 0..right {
                    let src = (l * xin + x) * right + r;
                    let dst = (l * yout + y) * right + r;
                    for j in 0..cols {
                        let a = acc.get(src, j);
                        if !a.is_zero() {
                            let prod: Scalar = v * a;
                            *out.get_mut(dst, j) += &prod;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks `F rho_source(g) = rho_target(g) F` for every generator `g`.
pub fn is_equivariant(map: &MatrixMap, group: &GroupData) -> Result<bool, EvalError> {
    let src = group.modules_for(&map.source)?;
    let tgt = group.modules_for(&map.target)?;
    for g in 0..group.generators.len() {
        let lhs = map.matrix.mat_mul(&group.rho(&src, g))?;
        let rhs = group.rho(&tgt, g).mat_mul(&map.matrix)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{u_path, ObjectWord};
    use crate::repgraph::{binary_tetrahedral, bundled_graph, Path};

    #[test]
    fn identity_is_identity() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = Evaluator::new(Category::Dgrams(&graph), binary_tetrahedral()).unwrap();
        let id = Diagram::identity(ObjectWord::from_labels(&["1", "2"]));
        assert_eq!(ev.eval(&id).unwrap().matrix, ExactMatrix::identity(6, 24));
    }

    #[test]
    fn path_to_unit_is_the_explicit_merge() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = Evaluator::new(Category::Dgrams(&graph), binary_tetrahedral()).unwrap();
        let u = u_path(&Path::new(&["1", "0"])).unwrap();
        let map = ev.eval(&u).unwrap();
        let expected = ExactMatrix::from_literal_rows(&[vec!["0", "1/2", "-1/2", "0"]], 24).unwrap();
        assert_eq!(map.matrix, expected);
        assert!(is_equivariant(&map, ev.group()).unwrap());
    }

    #[test]
    fn apply_local_matches_kron() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2, 0, -1], &[0, 3, 1, 1]], 1);
        let acc = ExactMatrix::from_int_rows(
            &(0..24)
                .map(|i| vec![i % 5 - 2, (i * 7) % 3])
                .collect::<Vec<_>>()
                .iter()
                .map(|r| r.as_slice())
                .collect::<Vec<_>>(),
            1,
        );
        let direct = ExactMatrix::identity(3, 1)
            .kron(&m)
            .kron(&ExactMatrix::identity(2, 1))
            .mat_mul(&acc)
            .unwrap();
        assert_eq!(apply_local(&acc, 3, &m, 2), direct);
    }

    #[test]
    fn invalid_cells_are_rejected() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = Evaluator::new(Category::Dgrams(&graph), binary_tetrahedral()).unwrap();
        let bad = Diagram::cell(Cell::merge(Strand::node("1"), Strand::node("4"), Strand::node("2")));
        assert!(matches!(ev.eval(&bad), Err(EvalError::Invalid { .. })));
    }
}
