//! Rewriting normalizer for `C_n^irr`.
//!
//! A diagram is turned into a graph of merge and split cells joined by
//! labelled wires and rewritten with the defining relations until it has the
//! canonical shape: a left-nested merge comb down to one strand followed by a
//! left-nested split comb. The redex to fire is chosen at random from a
//! seeded generator, so different seeds exercise different rewrite orders.

mod wiregraph;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    canonical_cn, validate, validate_morphism, word_sum, Category, Diagram, DiagramError, Morphism, ObjectWord,
};
use crate::exactfield::Scalar;
use wiregraph::{Redex, WireGraph};

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("not a diagram of C_{n}^irr: {problems}")]
    Invalid { n: u32, problems: String },
    #[error("rewrite budget of {budget} steps exhausted with {cells} cells remaining")]
    BudgetExhausted { budget: usize, cells: usize },
    #[error("rewriting stopped in a non-canonical shape: {0}")]
    Stuck(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug)]
pub struct RewriteOptions {
    pub seed: u64,
    pub budget: usize,
}

impl Default for RewriteOptions {
    fn default() -> Self {
        RewriteOptions {
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Counts of the rewrites fired.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RewriteStats {
    pub steps: usize,
    pub pops: usize,
    pub slides: usize,
    pub reassociations: usize,
    pub joins: usize,
}

impl RewriteStats {
    fn absorb(&mut self, other: RewriteStats) {
        self.steps += other.steps;
        self.pops += other.pops;
        self.slides += other.slides;
        self.reassociations += other.reassociations;
        self.joins += other.joins;
    }
}

/// Rewrites one diagram to its canonical form.
pub fn normalize_diagram(d: &Diagram, n: u32, opts: &RewriteOptions) -> Result<(Diagram, RewriteStats), RewriteError> {
    let report = validate(d, &Category::CnIrr(n));
    if !report.ok() {
        return Err(RewriteError::Invalid {
            n,
            problems: report.problems.join("; "),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut g = WireGraph::from_diagram(d, n);
    let mut stats = RewriteStats::default();
    loop {
        let redexes = g.redexes();
        if redexes.is_empty() {
            break;
        }
        if stats.steps == opts.budget {
            return Err(RewriteError::BudgetExhausted {
                budget: opts.budget,
                cells: g.cell_count(),
            });
        }
        let r = redexes[rng.gen_range(0..redexes.len())];
        match r {
            Redex::Pop { .. } => stats.pops += 1,
            Redex::SlideRight { .. } | Redex::SlideLeft { .. } => stats.slides += 1,
            Redex::MergeAssoc { .. } | Redex::SplitAssoc { .. } => stats.reassociations += 1,
            Redex::Join { .. } => stats.joins += 1,
        }
        g.apply(r);
        stats.steps += 1;
    }
    g.check_canonical_shape().map_err(RewriteError::Stuck)?;
    let out = if d.source().is_empty() {
        Diagram::identity(d.target().clone())
    } else {
        canonical_cn(d.source(), d.target(), n)?
    };
    Ok((out, stats))
}

/// Normal form of a morphism of `C_n^irr`: zero, or the canonical diagram
/// between its boundaries with the sum of the coefficients.
pub fn normalize_cn(m: &Morphism, n: u32) -> Result<Morphism, RewriteError> {
    normalize_cn_with(m, n, &RewriteOptions::default()).map(|(m, _)| m)
}

pub fn normalize_cn_with(
    m: &Morphism,
    n: u32,
    opts: &RewriteOptions,
) -> Result<(Morphism, RewriteStats), RewriteError> {
    let report = validate_morphism(m, &Category::CnIrr(n));
    if !report.ok() {
        return Err(RewriteError::Invalid {
            n,
            problems: report.problems.join("; "),
        });
    }
    let mut stats = RewriteStats::default();
    let mut canon: Option<Diagram> = None;
    let mut total: Option<Scalar> = None;
    for (d, c) in m.terms() {
        let (nf, s) = normalize_diagram(d, n, opts)?;
        stats.absorb(s);
        if let Some(prev) = &canon {
            if prev != &nf {
                return Err(RewriteError::Stuck(format!(
                    "terms normalize to different diagrams:\n{prev}{nf}"
                )));
            }
        }
        canon = Some(nf);
        total = Some(match total {
            Some(t) => &t + c,
            None => c.clone(),
        });
    }
    let out = match (canon, total) {
        (Some(d), Some(c)) if !c.is_zero() => Morphism::term(d, c),
        _ => Morphism::zero(m.source().clone(), m.target().clone()),
    };
    Ok((out, stats))
}

/// `dim Hom(source, target)` in `C_n`: 1 when the label sums agree mod `n`.
pub fn hom_dim_cn(source: &ObjectWord, target: &ObjectWord, n: u32) -> Result<usize, DiagramError> {
    Ok(usize::from(word_sum(source, n)? == word_sum(target, n)?))
}

/// Splits minus merges; for any diagram this is `|target| - |source|`.
pub fn tensor_factor_delta(d: &Diagram) -> i64 {
    d.split_count() as i64 - d.merge_count() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{funnel_cn, Cell, Strand};

    fn n(s: &str) -> Strand {
        Strand::node(s)
    }

    fn w(s: &[&str]) -> ObjectWord {
        ObjectWord::from_labels(s)
    }

    #[test]
    fn split_then_merge_becomes_identity() {
        let d = Diagram::cell(Cell::merge(n("1"), n("2"), n("3")))
            .compose(&Diagram::cell(Cell::split(n("3"), n("1"), n("2"))))
            .unwrap();
        let out = normalize_cn(&Morphism::from_diagram(d, 20), 5).unwrap();
        let (nf, c) = out.single().unwrap();
        assert!(c.is_one());
        assert_eq!(nf, &Diagram::identity(w(&["3"])));
    }

    #[test]
    fn merge_then_split_is_already_canonical() {
        let d = Diagram::cell(Cell::split(n("3"), n("1"), n("2")))
            .compose(&Diagram::cell(Cell::merge(n("1"), n("2"), n("3"))))
            .unwrap();
        let out = normalize_cn(&Morphism::from_diagram(d.clone(), 20), 5).unwrap();
        assert_eq!(out.single().unwrap().0, &d);
    }

    #[test]
    fn identity_pair_gets_joined() {
        let id = Diagram::identity(w(&["1", "2"]));
        let out = normalize_cn(&Morphism::from_diagram(id, 20), 5).unwrap();
        assert_eq!(
            out.single().unwrap().0,
            &canonical_cn(&w(&["1", "2"]), &w(&["1", "2"]), 5).unwrap()
        );
    }

    #[test]
    fn hom_dims() {
        assert_eq!(hom_dim_cn(&w(&["1", "2"]), &w(&["3"]), 5).unwrap(), 1);
        assert_eq!(hom_dim_cn(&w(&["1", "1"]), &w(&["1"]), 3).unwrap(), 0);
        assert_eq!(
            hom_dim_cn(&w(&["2", "2", "2"]), &w(&["1", "1", "1", "3"]), 6).unwrap(),
            1
        );
    }

    #[test]
    fn tensor_delta() {
        assert_eq!(tensor_factor_delta(&Diagram::identity(w(&["2"]))), 0);
        assert_eq!(
            tensor_factor_delta(&Diagram::cell(Cell::merge(n("1"), n("2"), n("3")))),
            -1
        );
        assert_eq!(tensor_factor_delta(&funnel_cn(&w(&["2", "3"]), 4).unwrap()), 3);
    }

    #[test]
    fn invalid_cells_are_errors() {
        let bad = Diagram::cell(Cell::merge(n("1"), n("2"), n("0")));
        assert!(matches!(
            normalize_cn(&Morphism::from_diagram(bad, 20), 5),
            Err(RewriteError::Invalid { .. })
        ));
    }

    #[test]
    fn cancelling_terms_give_zero() {
        let merge = Diagram::cell(Cell::merge(n("1"), n("2"), n("3")));
        let bubble = Diagram::cell(Cell::merge(n("1"), n("2"), n("3")))
            .compose(&Diagram::cell(Cell::split(n("3"), n("1"), n("2"))))
            .unwrap()
            .compose(&merge)
            .unwrap();
        let a = Morphism::from_diagram(merge, 20);
        let b = Morphism::from_diagram(bubble, 20).scale(&Scalar::from_int(20, -1));
        assert_eq!(a.len() + b.len(), 2);
        assert!(normalize_cn(&a.add(&b).unwrap(), 5).unwrap().is_zero());
    }
}
