//! End-to-end acceptance run: one line per criterion with its time limit.
//!
//! Run with `cargo test -p dgrams-core --test acceptance`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dgrams_core::cn_rewrite::{hom_dim_cn, normalize_cn_with, RewriteOptions};
use dgrams_core::diagram::random::{random_cn_diagram, random_cn_word, random_graph_diagram};
use dgrams_core::diagram::{Category, Morphism};
use dgrams_core::evaluator::{
    check_category_relations, faithfulness_check, fullness_check, hom_dim_oracle, schur_scalar, Evaluator, MergeSystem,
};
use dgrams_core::repgraph::{
    binary_tetrahedral, build_rep_graph, bundled_graph, decompose_tensor, Label, NodeStatus, RepGraph,
};
use dgrams_core::tl::{catalan, check_tl_presentation, sl2_intertwiner_dim, tl_basis, tl_matrix_rank, PlanarDiagram};
use dgrams_core::{ExactMatrix, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e6() -> RepGraph {
    bundled_graph("t_binary_tetrahedral").expect("bundled graph")
}

fn path_count() -> Outcome {
    let g = e6();
    let paths = g
        .enumerate_paths(&"1".into(), &"3".into(), 4)
        .map_err(|e| e.to_string())?;
    let shown: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
    let expected = [
        "(1,0,1,2,3)",
        "(1,2,1,2,3)",
        "(1,2,3,2,3)",
        "(1,2,3,4,3)",
        "(1,2,3',2,3)",
    ];
    ensure(shown == expected, || format!("got {shown:?}"))?;
    Ok(format!("|P(1,3)_4| = {}", shown.len()))
}

fn graph_reconstruction() -> Outcome {
    let t = binary_tetrahedral();
    let built = build_rep_graph(&t, &t.defining).map_err(|e| e.to_string())?;
    let mut expected: Vec<(Label, Label)> = Vec::new();
    for (a, b) in [
        ("0", "1"),
        ("1", "2"),
        ("2", "3"),
        ("3", "4"),
        ("2", "3'"),
        ("3'", "4'"),
    ] {
        expected.push((a.into(), b.into()));
        expected.push((b.into(), a.into()));
    }
    expected.sort();
    let mut edges = built.edges();
    edges.sort();
    ensure(edges == expected, || format!("edges {edges:?}"))?;
    let sums: [(&str, &[&str]); 7] = [
        ("0", &["1"]),
        ("1", &["0", "2"]),
        ("2", &["1", "3", "3'"]),
        ("3", &["2", "4"]),
        ("3'", &["2", "4'"]),
        ("4", &["3"]),
        ("4'", &["3'"]),
    ];
    for (a, parts) in sums {
        let module = t.simple(&a.into()).map_err(|e| e.to_string())?;
        let dec = decompose_tensor(&t.defining, module, &t.simples, &t).map_err(|e| e.to_string())?;
        let want: BTreeMap<Label, usize> = parts.iter().map(|p| (Label::from(*p), 1)).collect();
        ensure(dec == want, || format!("V (x) {a} decomposed as {dec:?}"))?;
    }
    Ok(format!("{} directed edges, 7 decompositions", edges.len()))
}

fn merge_split_system() -> Outcome {
    let t = binary_tetrahedral();
    let g = e6();
    let ms = MergeSystem::for_graph(&t, &g).map_err(|e| e.to_string())?;
    let mut edges = 0;
    let mut nodes = 0;
    for a in g.labels() {
        if g.frontier().contains(a) {
            continue;
        }
        let dim_va = 2 * t.simple(a).map_err(|e| e.to_string())?.dim;
        let mut sum = ExactMatrix::zeros(dim_va, dim_va, ms.conductor);
        for b in g.out_neighbors(a).map_err(|e| e.to_string())? {
            let m = ms.merge_map(a, b).ok_or_else(|| format!("no merge {a} -> {b}"))?;
            let s = ms.split_map(a, b).ok_or_else(|| format!("no split {a} -> {b}"))?;
            let ms_prod = m.mat_mul(s).map_err(|e| e.to_string())?;
            ensure(ms_prod == ExactMatrix::identity(m.rows(), ms.conductor), || {
                format!("m o s != id for {a} -> {b}")
            })?;
            sum = sum
                .add(&s.mat_mul(m).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            edges += 1;
        }
        ensure(sum == ExactMatrix::identity(dim_va, ms.conductor), || {
            format!("sum of s o m != id at {a}")
        })?;
        nodes += 1;
    }
    Ok(format!(
        "{edges} edge identities, {nodes} node identities over Q(zeta_{})",
        ms.conductor
    ))
}

fn relation_suite() -> Outcome {
    let g = e6();
    let ev = Evaluator::new(Category::Dgrams(&g), binary_tetrahedral()).map_err(|e| e.to_string())?;
    let rep = check_category_relations(&ev);
    let first = |r: &dgrams_core::evaluator::RelationReport| {
        r.failures()
            .next()
            .map(|(n, f)| format!("{}: {n}: {f}", r.category))
            .unwrap_or_default()
    };
    ensure(rep.passed(), || first(&rep))?;
    let mut instances: usize = rep.checks.iter().map(|c| c.instances).sum();
    for n in 2..=12 {
        let ev = Evaluator::cyclic(n).map_err(|e| e.to_string())?;
        let rep = check_category_relations(&ev);
        ensure(rep.passed(), || first(&rep))?;
        instances += rep.checks.iter().map(|c| c.instances).sum::<usize>();
    }
    Ok(format!("T and C_2..C_12: {instances} relation instances"))
}

fn fullness_faithfulness() -> Outcome {
    let g = e6();
    let ev = Evaluator::new(Category::Dgrams(&g), binary_tetrahedral()).map_err(|e| e.to_string())?;
    let full = fullness_check(&ev, &g, 6).map_err(|e| e.to_string())?;
    if let Some(r) = full.iter().find(|r| !r.passed()) {
        return Err(format!("fullness at k = {}, node {}: {r:?}", r.k, r.node));
    }
    let faith = faithfulness_check(&ev, &g, 6).map_err(|e| e.to_string())?;
    if let Some(r) = faith.iter().find(|r| !r.passed()) {
        return Err(format!("faithfulness at (k, l) = ({}, {}): {r:?}", r.k, r.l));
    }
    let top = faith.iter().map(|r| r.oracle).max().unwrap_or(0);
    Ok(format!(
        "{} (k, l) pairs with k + l <= 6, largest Hom dimension {top}",
        faith.len()
    ))
}

fn schur() -> Outcome {
    let g = e6();
    let ev = Evaluator::new(Category::Dgrams(&g), binary_tetrahedral()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut same, mut diff) = (0, 0);
    for _ in 0..100 {
        let d = random_graph_diagram(&mut rng, &g, None, 3).map_err(|e| e.to_string())?;
        let m = Morphism::from_diagram(d, ev.conductor());
        let out = schur_scalar(&ev, &m).map_err(|e| format!("{e} for {}", m.to_dsl()))?;
        if out.same {
            same += 1;
        } else {
            diff += 1;
        }
    }
    Ok(format!(
        "{same} endomorphisms are scalars, {diff} maps between distinct simples vanish"
    ))
}

fn cn_normalization() -> Outcome {
    let mut total = 0;
    for n in [2u32, 3, 5, 7] {
        let ev = Evaluator::cyclic(n).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(n));
        for _ in 0..200 {
            let d = random_cn_diagram(&mut rng, n, 12);
            let m = Morphism::from_diagram(d, ev.conductor());
            let mut outs = Vec::new();
            for seed in [1u64, 2, 3] {
                let opts = RewriteOptions {
                    seed,
                    ..Default::default()
                };
                let (nf, _) = normalize_cn_with(&m, n, &opts).map_err(|e| format!("{e} for {}", m.to_dsl()))?;
                outs.push(nf);
            }
            ensure(outs.iter().all(|o| o == &outs[0]), || {
                format!("seeds disagree on {}", m.to_dsl())
            })?;
            let nf = &outs[0];
            let lhs = ev.eval_morphism(&m).map_err(|e| e.to_string())?;
            let rhs = ev.eval_morphism(nf).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("evaluation changed for {}", m.to_dsl()))?;
            let (again, _) = normalize_cn_with(nf, n, &RewriteOptions::default()).map_err(|e| e.to_string())?;
            ensure(&again == nf, || format!("not idempotent on {}", nf.to_dsl()))?;
            total += 1;
        }
        for _ in 0..50 {
            let (s, t) = (random_cn_word(&mut rng, n, 3), random_cn_word(&mut rng, n, 3));
            let fast = hom_dim_cn(&s, &t, n).map_err(|e| e.to_string())?;
            let slow = hom_dim_oracle(&s, &t, ev.group()).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("C_{n}: Hom({s}, {t}) {fast} vs oracle {slow}"))?;
        }
    }
    Ok(format!(
        "{total} diagrams normalized under 3 seeds, 200 Hom dimensions checked"
    ))
}

fn temperley_lieb() -> Outcome {
    for k in 0..=7 {
        let n = tl_basis(k, k).len() as u64;
        ensure(n == catalan(k), || format!("|basis({k},{k})| = {n}"))?;
    }
    let two = Scalar::from_int(1, 2);
    for k in 2..=5 {
        let rep = check_tl_presentation(k, &two).map_err(|e| e.to_string())?;
        ensure(rep.passed() && rep.matrix_model, || format!("TL_{k}: {rep:?}"))?;
    }
    let mut ranks = Vec::new();
    for k in 0..=5 {
        let r = tl_matrix_rank(k, k);
        let oracle = sl2_intertwiner_dim(k, k);
        ensure(r as u64 == catalan(k) && r == oracle, || {
            format!("k = {k}: rank {r}, Catalan {}, sl2 oracle {oracle}", catalan(k))
        })?;
        ranks.push(r);
    }
    let parse = |s: &str| s.parse::<PlanarDiagram>().map_err(|e| e.to_string());
    let d1 = parse("(b1,b2)(b3,t1)(b4,t2)(b5,t7)(b6,t8)(b7,b8)(9)(t3,t6)(t4,t5)")?;
    let d2 = parse("(b1,b2)(3)(b4,b7)(b5,b6)(b8,b9)(t1,t2)(t4,t5)(t6,t7)(t8,t9)")?;
    let (_, loops) = d1.stack_on(&d2).map_err(|e| e.to_string())?;
    ensure(loops == 1, || format!("worked example removed {loops} loops"))?;
    Ok(format!("matrix ranks {ranks:?}, worked example gives one delta"))
}

fn fusion_graphs() -> Outcome {
    let mut summary = Vec::new();
    for name in ["psl_2_8", "fibonacci", "verlinde_p5", "verlinde_p7"] {
        let g = bundled_graph(name).ok_or_else(|| format!("missing graph {name}"))?;
        let rep = g.check_dimension_identity();
        if let Some(bad) = rep.nodes.iter().find(|n| n.status == NodeStatus::Fail) {
            return Err(format!("{name}: node {}: {} != {}", bad.label, bad.lhs, bad.rhs));
        }
        if name == "psl_2_8" {
            let n = rep
                .nodes
                .iter()
                .find(|n| n.label.as_str() == "7^(1)")
                .ok_or("no node 7^(1)")?;
            ensure(n.lhs == Scalar::from_int(1, 49) && n.rhs == n.lhs, || {
                format!("7^(1): {} vs {}", n.lhs, n.rhs)
            })?;
        }
        let labels: Vec<Label> = g.labels().cloned().collect();
        for k in 0..=8 {
            let power = g.adjacency_power(k);
            for (i, a) in labels.iter().enumerate() {
                let tally = g.walk_tally(a, k).map_err(|e| e.to_string())?;
                for (j, count) in tally.iter().enumerate() {
                    ensure(power[i][j] == (*count).into(), || {
                        format!("{name}: walks {a} -> {} of length {k}", labels[j])
                    })?;
                }
            }
        }
        summary.push(format!("{name} ({} nodes)", labels.len()));
    }
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("path count on the E6 graph", 1, path_count),
        (
            "representation graph and tensor decompositions of T",
            5,
            graph_reconstruction,
        ),
        ("merge/split idempotents for T", 5, merge_split_system),
        ("relation suites for T and C_2..C_12", 60, relation_suite),
        (
            "fullness and faithfulness for T, k + l <= 6",
            120,
            fullness_faithfulness,
        ),
        ("Schur condition on 100 random diagrams", 30, schur),
        ("C_n normalization", 60, cn_normalization),
        ("Temperley-Lieb bases, relations and matrix model", 60, temperley_lieb),
        ("fusion graph dimension identities and walk counts", 5, fusion_graphs),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{}] {name} ({:.2}s, limit {limit}s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
