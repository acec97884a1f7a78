use serde::Serialize;

use super::{is_equivariant, EvalError, Evaluator, MatrixMap};
use crate::cn_rewrite::normalize_cn;
use crate::diagram::{d_path, u_path, Category, Cell, Diagram, Morphism, ObjectWord, Strand};
use crate::exactfield::ExactMatrix;
use crate::repgraph::{build_rep_graph, Label, RepGraph};

/// One family of identities, with every failing instance spelled out.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl RelationCheck {
    fn new(name: impl Into<String>) -> Self {
        RelationCheck {
            name: name.into(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, instance: impl FnOnce() -> String, outcome: Result<bool, EvalError>) {
        self.instances += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(instance()),
            Err(e) => self.failures.push(format!("{}: {e}", instance())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub category: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &str)> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.name.as_str(), f.as_str())))
    }

    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn node(l: &Label) -> Strand {
    Strand::Node(l.clone())
}

fn is_identity(ev: &Evaluator<'_>, d: &Diagram) -> Result<bool, EvalError> {
    let mat = ev.eval_diagram(d)?;
    let n = ev.word_dim(d.source())?;
    Ok(mat == ExactMatrix::identity(n, ev.conductor()))
}

fn sum_is_identity(ev: &Evaluator<'_>, word: &ObjectWord, ds: &[Diagram]) -> Result<bool, EvalError> {
    let n = ev.word_dim(word)?;
    let mut acc = ExactMatrix::zeros(n, n, ev.conductor());
    for d in ds {
        acc = acc.add(&ev.eval_diagram(d)?)?;
    }
    Ok(acc == ExactMatrix::identity(n, ev.conductor()))
}

/// `s` below `m`: the bubble on `b` through `g (x) a`.
fn bubble(g: &Strand, a: &Label, b: &Label) -> Result<Diagram, EvalError> {
    Ok(Diagram::from_steps(
        ObjectWord::single(node(b)),
        vec![
            (0, Cell::split(node(b), g.clone(), node(a))),
            (0, Cell::merge(g.clone(), node(a), node(b))),
        ],
    )?)
}

/// `m` below `s`: the idempotent of `g (x) a` through `b`.
fn idempotent(g: &Strand, a: &Label, b: &Label) -> Result<Diagram, EvalError> {
    Ok(Diagram::from_steps(
        ObjectWord(vec![g.clone(), node(a)]),
        vec![
            (0, Cell::merge(g.clone(), node(a), node(b))),
            (0, Cell::split(node(b), g.clone(), node(a))),
        ],
    )?)
}

fn equivariance_checks(ev: &Evaluator<'_>, g: &Strand, out: &mut Vec<RelationCheck>) {
    let ms = ev.system();
    let mut check = RelationCheck::new("merge and split maps are intertwiners");
    for ((a, b), m) in &ms.merge {
        let map = MatrixMap {
            source: ObjectWord(vec![g.clone(), node(a)]),
            target: ObjectWord::single(node(b)),
            matrix: m.clone(),
        };
        check.record(|| format!("merge {g} (x) {a} -> {b}"), is_equivariant(&map, ev.group()));
    }
    for ((a, b), s) in &ms.split {
        let map = MatrixMap {
            source: ObjectWord::single(node(b)),
            target: ObjectWord(vec![g.clone(), node(a)]),
            matrix: s.clone(),
        };
        check.record(|| format!("split {b} -> {g} (x) {a}"), is_equivariant(&map, ev.group()));
    }
    out.push(check);
}

/// The bubble and idempotent identities on every edge and node of `graph`,
/// with `g` as the left strand.
fn merge_split_checks(ev: &Evaluator<'_>, graph: &RepGraph, g: &Strand, out: &mut Vec<RelationCheck>) {
    let mut pop = RelationCheck::new("bubble pop: m o s = id_b");
    let mut idem = RelationCheck::new("sum over b of s o m = id on V (x) a");
    for a in graph.labels() {
        if graph.frontier().contains(a) {
            continue;
        }
        let nbrs: Vec<Label> = graph
            .out_neighbors(a)
            .map(|v| v.into_iter().cloned().collect())
            .unwrap_or_default();
        for b in &nbrs {
            pop.record(
                || format!("edge {a} -> {b}"),
                bubble(g, a, b).and_then(|d| is_identity(ev, &d)),
            );
        }
        let word = ObjectWord(vec![g.clone(), node(a)]);
        let outcome = nbrs
            .iter()
            .map(|b| idempotent(g, a, b))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|ds| sum_is_identity(ev, &word, &ds));
        idem.record(|| format!("node {a}"), outcome);
    }
    out.push(pop);
    out.push(idem);
}

fn resolution_checks(ev: &Evaluator<'_>, graph: &RepGraph, max_k: usize, out: &mut Vec<RelationCheck>) {
    let Some(gen) = graph.generator() else {
        return;
    };
    let mut check = RelationCheck::new("resolution of identity: sum of d_p o u_p = id on V^k");
    for k in 1..=max_k {
        let word = ObjectWord::repeat(&node(gen), k);
        let outcome = (|| {
            let mut ds = Vec::new();
            for b in graph.labels() {
                for p in graph.enumerate_paths(gen, b, k - 1)? {
                    ds.push(d_path(&p)?.compose(&u_path(&p)?)?);
                }
            }
            sum_is_identity(ev, &word, &ds)
        })();
        check.record(|| format!("k = {k}"), outcome);
    }
    out.push(check);
}

fn star_checks(ev: &Evaluator<'_>, out: &mut Vec<RelationCheck>) {
    let ms = ev.system();
    let mut pi_iota = RelationCheck::new("star: down[c] o up[c] = id_c");
    let mut total = RelationCheck::new("star: sum over c of up[c] o down[c] = id_star");
    let mut equi = RelationCheck::new("star projections and inclusions are intertwiners");
    let star = ObjectWord::single(Strand::Star);
    let mut ds = Vec::new();
    for c in ms.project.keys() {
        let cw = ObjectWord::single(node(c));
        let loop_c = Diagram::from_steps(
            cw.clone(),
            vec![(0, Cell::StarUp(c.clone())), (0, Cell::StarDown(c.clone()))],
        );
        pi_iota.record(
            || format!("c = {c}"),
            loop_c.map_err(EvalError::from).and_then(|d| is_identity(ev, &d)),
        );
        match Diagram::from_steps(
            star.clone(),
            vec![(0, Cell::StarDown(c.clone())), (0, Cell::StarUp(c.clone()))],
        ) {
            Ok(d) => ds.push(d),
            Err(e) => total.failures.push(format!("c = {c}: {e}")),
        }
        for (source, target, mat) in [
            (star.clone(), cw.clone(), &ms.project[c]),
            (cw.clone(), star.clone(), &ms.include[c]),
        ] {
            let map = MatrixMap {
                source,
                target,
                matrix: mat.clone(),
            };
            equi.record(
                || format!("{} -> {}", map.source, map.target),
                is_equivariant(&map, ev.group()),
            );
        }
    }
    total.record(|| "star".into(), sum_is_identity(ev, &star, &ds));
    out.push(pi_iota);
    out.push(total);
    out.push(equi);
}

fn residue(v: i64, n: u32) -> Strand {
    Strand::Node(Label::new(v.rem_euclid(n as i64).to_string()))
}

struct CnPair {
    what: String,
    lhs: Diagram,
    rhs: Diagram,
}

fn cn_pairs(n: u32) -> Result<Vec<(&'static str, Vec<CnPair>)>, EvalError> {
    let r = |v: i64| residue(v, n);
    let w = |vs: &[i64]| ObjectWord(vs.iter().map(|&v| r(v)).collect());
    let nn = n as i64;
    let mut slide = Vec::new();
    let mut cancel = Vec::new();
    let mut assoc = Vec::new();
    for a in 0..nn {
        for b in 0..nn {
            // s o m = id (x) id on [a, b]
            cancel.push(CnPair {
                what: format!("s o m on [{a},{b}]"),
                lhs: Diagram::from_steps(
                    w(&[a, b]),
                    vec![
                        (0, Cell::merge(r(a), r(b), r(a + b))),
                        (0, Cell::split(r(a + b), r(a), r(b))),
                    ],
                )?,
                rhs: Diagram::identity(w(&[a, b])),
            });
            // m o s = id on [c] through [a, c - a]
            let c = b;
            cancel.push(CnPair {
                what: format!("m o s on [{c}] via {a}"),
                lhs: Diagram::from_steps(
                    w(&[c]),
                    vec![
                        (0, Cell::split(r(c), r(a), r(c - a))),
                        (0, Cell::merge(r(a), r(c - a), r(c))),
                    ],
                )?,
                rhs: Diagram::identity(w(&[c])),
            });
            for x in 0..nn {
                // H to I: split a' = [x, a - x] then merge the right part with b.
                let src = w(&[a, b]);
                let i_shape = Diagram::from_steps(
                    src.clone(),
                    vec![
                        (0, Cell::merge(r(a), r(b), r(a + b))),
                        (0, Cell::split(r(a + b), r(x), r(a + b - x))),
                    ],
                )?;
                slide.push(CnPair {
                    what: format!("[{a},{b}] -> {} split left", w(&[x, a - x + b])),
                    lhs: Diagram::from_steps(
                        src.clone(),
                        vec![
                            (0, Cell::split(r(a), r(x), r(a - x))),
                            (1, Cell::merge(r(a - x), r(b), r(a - x + b))),
                        ],
                    )?,
                    rhs: i_shape,
                });
                let tgt2 = w(&[a + b - x, x]);
                slide.push(CnPair {
                    what: format!("[{a},{b}] -> {tgt2} split right"),
                    lhs: Diagram::from_steps(
                        src.clone(),
                        vec![
                            (1, Cell::split(r(b), r(b - x), r(x))),
                            (0, Cell::merge(r(a), r(b - x), r(a + b - x))),
                        ],
                    )?,
                    rhs: Diagram::from_steps(
                        src,
                        vec![
                            (0, Cell::merge(r(a), r(b), r(a + b))),
                            (0, Cell::split(r(a + b), r(a + b - x), r(x))),
                        ],
                    )?,
                });
                let c = x;
                assoc.push(CnPair {
                    what: format!("merge [{a},{b},{c}]"),
                    lhs: Diagram::from_steps(
                        w(&[a, b, c]),
                        vec![
                            (0, Cell::merge(r(a), r(b), r(a + b))),
                            (0, Cell::merge(r(a + b), r(c), r(a + b + c))),
                        ],
                    )?,
                    rhs: Diagram::from_steps(
                        w(&[a, b, c]),
                        vec![
                            (1, Cell::merge(r(b), r(c), r(b + c))),
                            (0, Cell::merge(r(a), r(b + c), r(a + b + c))),
                        ],
                    )?,
                });
                assoc.push(CnPair {
                    what: format!("split into [{a},{b},{c}]"),
                    lhs: Diagram::from_steps(
                        w(&[a + b + c]),
                        vec![
                            (0, Cell::split(r(a + b + c), r(a + b), r(c))),
                            (0, Cell::split(r(a + b), r(a), r(b))),
                        ],
                    )?,
                    rhs: Diagram::from_steps(
                        w(&[a + b + c]),
                        vec![
                            (0, Cell::split(r(a + b + c), r(a), r(b + c))),
                            (1, Cell::split(r(b + c), r(b), r(c))),
                        ],
                    )?,
                });
            }
        }
    }
    Ok(vec![
        ("sliding a split past a merge (H = I)", slide),
        ("split/merge cancellation", cancel),
        ("associativity and coassociativity", assoc),
    ])
}

fn cn_relation_checks(ev: &Evaluator<'_>, n: u32, out: &mut Vec<RelationCheck>) {
    let families = match cn_pairs(n) {
        Ok(f) => f,
        Err(e) => {
            let mut c = RelationCheck::new("C_n relation instances");
            c.record(|| "construction".into(), Err(e));
            out.push(c);
            return;
        }
    };
    let m = ev.conductor();
    for (name, pairs) in families {
        let mut by_eval = RelationCheck::new(format!("{name} (evaluation)"));
        let mut by_nf = RelationCheck::new(format!("{name} (normal form)"));
        for p in &pairs {
            let eval_eq = ev
                .eval_diagram(&p.lhs)
                .and_then(|l| ev.eval_diagram(&p.rhs).map(|r| l == r));
            by_eval.record(|| p.what.clone(), eval_eq);
            let nf = |d: &Diagram| normalize_cn(&Morphism::from_diagram(d.clone(), m), n);
            let nf_eq = match (nf(&p.lhs), nf(&p.rhs)) {
                (Ok(l), Ok(r)) => Ok(l == r),
                (Err(e), _) | (_, Err(e)) => Err(EvalError::Invalid {
                    category: format!("C_{n}^irr"),
                    problems: e.to_string(),
                }),
            };
            by_nf.record(|| p.what.clone(), nf_eq);
        }
        out.push(by_eval);
        out.push(by_nf);
    }
}

/// Verifies the defining relations of the evaluator's category as exact
/// matrix identities.
///
/// Every category gets the merge/split identities on each edge and node and
/// equivariance of the chosen maps. Graph categories with a generator node
/// also get the resolution of identity on `V^k` for `k <= 4`; `C_n` adds the
/// sliding, cancellation and associativity relations, each checked both by
/// evaluation and by agreement of normal forms; the star category adds the
/// projection/inclusion identities for the star object.
pub fn check_category_relations(ev: &Evaluator<'_>) -> RelationReport {
    let mut checks = Vec::new();
    match *ev.category() {
        Category::CnIrr(n) => {
            let group = ev.group();
            match build_rep_graph(group, &group.defining) {
                Ok(graph) => {
                    let gen = node(&group.defining.label);
                    merge_split_checks(ev, &graph, &gen, &mut checks);
                    resolution_checks(ev, &graph, 4, &mut checks);
                }
                Err(e) => {
                    let mut c = RelationCheck::new("representation graph of C_n");
                    c.record(|| "construction".into(), Err(e.into()));
                    checks.push(c);
                }
            }
            cn_relation_checks(ev, n, &mut checks);
        }
        Category::Dgrams(graph) => {
            let gen = node(graph.generator().expect("checked by Evaluator::new"));
            equivariance_checks(ev, &gen, &mut checks);
            merge_split_checks(ev, graph, &gen, &mut checks);
            resolution_checks(ev, graph, 4, &mut checks);
        }
        Category::Star(graph) => {
            equivariance_checks(ev, &Strand::Star, &mut checks);
            merge_split_checks(ev, graph, &Strand::Star, &mut checks);
            star_checks(ev, &mut checks);
        }
    }
    RelationReport {
        category: ev.category().name(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Scalar;
    use crate::repgraph::{binary_tetrahedral, bundled_graph, cyclic_natural, group_graph};

    #[test]
    fn t_relations_pass() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = Evaluator::new(Category::Dgrams(&graph), binary_tetrahedral()).unwrap();
        let report = check_category_relations(&ev);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn cyclic_relations_pass() {
        for n in [2, 3, 5] {
            let ev = Evaluator::cyclic(n).unwrap();
            let report = check_category_relations(&ev);
            assert!(
                report.passed(),
                "n = {n}: {:?}",
                report.failures().take(5).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn doubled_merge_is_reported() {
        let graph = bundled_graph("t_binary_tetrahedral").unwrap();
        let ev = Evaluator::new(Category::Dgrams(&graph), binary_tetrahedral()).unwrap();
        let mut ms = ev.system().clone();
        let key = (Label::new("1"), Label::new("2"));
        let doubled = ms.merge[&key].scale(&Scalar::from_int(24, 2));
        ms.merge.insert(key, doubled);
        let bad = Evaluator::with_system(Category::Dgrams(&graph), binary_tetrahedral(), ms);
        let report = check_category_relations(&bad);
        let idem = report.check("sum over b of s o m = id on V (x) a").unwrap();
        assert_eq!(idem.failures, vec!["node 1".to_string()]);
        let pop = report.check("bubble pop: m o s = id_b").unwrap();
        assert_eq!(pop.failures, vec!["edge 1 -> 2".to_string()]);
    }

    #[test]
    fn star_relations_pass() {
        let group = cyclic_natural(4).unwrap();
        let graph = group_graph(&group).unwrap();
        let ev = Evaluator::new(Category::Star(&graph), group).unwrap();
        let report = check_category_relations(&ev);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(
            report
                .check("star: sum over c of up[c] o down[c] = id_star")
                .unwrap()
                .instances
                > 0
        );
    }
}
