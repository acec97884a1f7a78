use std::fmt::Write as _;

use dgrams_core::cn_rewrite::{hom_dim_cn, normalize_cn_with, RewriteOptions};
use dgrams_core::diagram::Morphism;
use dgrams_core::evaluator::{check_category_relations, hom_dim_oracle, schur_scalar, EvalError, MatrixMap};
use dgrams_core::exactfield::parse_scalar;
use dgrams_core::repgraph::{build_rep_graph, resolve_graph, resolve_group, Label, NodeStatus, RepGraph};
use dgrams_core::tl::{
    catalan, check_tl_presentation_with_loop, sl2_intertwiner_dim, tl_basis, tl_compose, tl_matrix_rank, PlanarDiagram,
    TLMorphism,
};
use dgrams_core::Scalar;
use serde_json::json;

use crate::context::Context;
use crate::dsl::parse_word;
use crate::{CategoryArgs, CliError, Command, ExprArgs, Report};

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn failed(e: impl ToString) -> CliError {
    CliError::Failed(e.to_string())
}

fn read_expr(args: &ExprArgs) -> Result<String, CliError> {
    match (&args.expr, &args.file) {
        (Some(e), _) => Ok(e.clone()),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
        (None, None) => Err(usage("an expression or --file is required")),
    }
}

fn graph(name: &str) -> Result<RepGraph, CliError> {
    resolve_graph(name).map_err(usage)
}

fn literal(text: &str, conductor: u32) -> Result<Scalar, CliError> {
    parse_scalar(text, conductor).map_err(|e| CliError::Parse(e.to_string()))
}

fn matrix_text(map: &MatrixMap) -> String {
    let rows = map.matrix.to_literal_rows();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = format!(
        "{} -> {} ({}x{})\n",
        map.source,
        map.target,
        map.matrix.rows(),
        map.matrix.cols()
    );
    for row in rows {
        let cells = row
            .iter()
            .map(|c| format!("{c:>width$}"))
            .collect::<Vec<_>>()
            .join("  ");
        let _ = writeln!(out, "[ {cells} ]");
    }
    out.trim_end().to_string()
}

/// Runs one verb.
pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::GraphBuild { group, module } => graph_build(group, module.as_deref()),
        Command::GraphCheck { graph: name } => graph_check(&graph(name)?),
        Command::Paths {
            graph: name,
            from,
            to,
            len,
        } => paths(&graph(name)?, from, to, *len),
        Command::Homdim {
            category,
            source,
            target,
        } => homdim(category, source, target),
        Command::Normalize { cn, seed, expr } => normalize(*cn, *seed, &read_expr(expr)?),
        Command::Eval { category, expr } => eval(category, &read_expr(expr)?),
        Command::CheckRelations { category } => check_relations(category),
        Command::Schur { category, expr } => schur(category, &read_expr(expr)?),
        Command::TlDim { k, l, list, rank } => tl_dim(*k, *l, *list, *rank),
        Command::TlCompose {
            delta,
            conductor,
            diagrams,
        } => tl_compose_cmd(&literal(delta, *conductor)?, diagrams),
        Command::TlCheck {
            k,
            delta,
            conductor,
            loop_value,
        } => {
            let delta = literal(delta, *conductor)?;
            let loop_value = match loop_value {
                Some(l) => literal(l, *conductor)?,
                None => delta.clone(),
            };
            tl_check(*k, &delta, &loop_value)
        }
    }
}

fn graph_build(group: &str, module: Option<&str>) -> Result<Report, CliError> {
    let group = resolve_group(group).map_err(usage)?;
    let v = match module {
        Some(l) => group.simple(&Label::new(l)).map_err(usage)?,
        None => &group.defining,
    };
    let g = build_rep_graph(&group, v).map_err(failed)?;
    let mut file = json!({
        "name": g.name(),
        "conductor": g.conductor(),
        "generator": g.generator(),
        "nodes": g.nodes().iter().map(|n| json!({"id": n.label, "dim": n.dim})).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|(a, b)| json!({"from": a, "to": b})).collect::<Vec<_>>(),
    });
    if let Some(u) = g.unit() {
        file["unit"] = json!(u);
    }
    if !g.frontier().is_empty() {
        file["frontier"] = json!(g.frontier());
    }
    Ok(Report {
        ok: true,
        text: serde_json::to_string_pretty(&file).expect("graph files serialize"),
        json: file,
    })
}

fn graph_check(g: &RepGraph) -> Result<Report, CliError> {
    let rep = g.check_dimension_identity();
    let mut text = format!("dimension identity on {}\n", g.name());
    for n in &rep.nodes {
        let status = match n.status {
            NodeStatus::Pass => "ok",
            NodeStatus::Fail => "FAIL",
            NodeStatus::Frontier => "frontier",
        };
        let _ = writeln!(text, "  {:<8} {} = {}  {status}", n.label.to_string(), n.lhs, n.rhs);
    }
    let ok = rep.passed();
    let _ = write!(
        text,
        "{}",
        if ok {
            "all nodes pass"
        } else {
            "dimension identity fails"
        }
    );
    Ok(Report {
        ok,
        text,
        json: json!({"ok": ok, "report": rep}),
    })
}

fn paths(g: &RepGraph, from: &str, to: &str, len: usize) -> Result<Report, CliError> {
    let ps = g
        .enumerate_paths(&Label::new(from), &Label::new(to), len)
        .map_err(usage)?;
    let mut text = format!("{} paths of length {len} from {from} to {to}", ps.len());
    for p in &ps {
        let _ = write!(text, "\n  {p}");
    }
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "ok": true,
            "count": ps.len(),
            "paths": ps.iter().map(|p| p.nodes.iter().map(Label::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    })
}

fn homdim(category: &CategoryArgs, source: &str, target: &str) -> Result<Report, CliError> {
    let ctx = Context::resolve(category)?;
    let parse = |w: &str| parse_word(w).map_err(|e| CliError::Parse(e.to_string()));
    let (src, tgt) = (parse(source)?, parse(target)?);
    let oracle = hom_dim_oracle(&src, &tgt, ctx.group()).map_err(usage)?;
    let diagrammatic = match ctx.cn() {
        Some(n) => Some(hom_dim_cn(&src, &tgt, n).map_err(usage)?),
        None => None,
    };
    let ok = diagrammatic.map_or(true, |d| d == oracle);
    let mut text = oracle.to_string();
    if !ok {
        let _ = write!(
            text,
            "\nmismatch: diagrammatic count {} differs from module data {oracle}",
            diagrammatic.unwrap_or_default()
        );
    }
    Ok(Report {
        ok,
        text,
        json: json!({
            "ok": ok,
            "source": src,
            "target": tgt,
            "dim": oracle,
            "diagrammatic": diagrammatic,
        }),
    })
}

fn normalize(n: u32, seed: u64, text: &str) -> Result<Report, CliError> {
    let ctx = Context::resolve(&CategoryArgs {
        cn: Some(n),
        ..Default::default()
    })?;
    let m = ctx.parse(text)?;
    let opts = RewriteOptions {
        seed,
        ..Default::default()
    };
    let (nf, stats) = normalize_cn_with(&m, n, &opts).map_err(failed)?;
    let ev = ctx.evaluator()?;
    let before = ev.eval_morphism(&m).map_err(failed)?;
    let after = ev.eval_morphism(&nf).map_err(failed)?;
    let ok = before == after;
    let mut out = nf.to_dsl();
    let _ = write!(
        out,
        "\n{} rewrites ({} pops, {} slides, {} reassociations, {} joins)",
        stats.steps, stats.pops, stats.slides, stats.reassociations, stats.joins
    );
    if !ok {
        out.push_str("\nnormal form evaluates differently from the input");
    }
    Ok(Report {
        ok,
        text: out,
        json: json!({"ok": ok, "normal_form": nf.to_dsl(), "stats": stats, "evaluation_preserved": ok}),
    })
}

fn eval(category: &CategoryArgs, text: &str) -> Result<Report, CliError> {
    let ctx = Context::resolve(category)?;
    let m = ctx.parse(text)?;
    let map = ctx.evaluator()?.eval_morphism(&m).map_err(failed)?;
    Ok(Report {
        ok: true,
        text: matrix_text(&map),
        json: json!({"ok": true, "expression": m.to_dsl(), "map": map}),
    })
}

fn check_relations(category: &CategoryArgs) -> Result<Report, CliError> {
    let ctx = Context::resolve(category)?;
    let ev = ctx.evaluator()?;
    let rep = check_category_relations(&ev);
    let mut text = format!("relations of {}\n", rep.category);
    for c in &rep.checks {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        let _ = writeln!(text, "  {mark} {} ({} instances)", c.name, c.instances);
        for f in &c.failures {
            let _ = writeln!(text, "         {f}");
        }
    }
    let ok = rep.passed();
    let failing = rep.checks.iter().filter(|c| !c.passed()).count();
    let _ = write!(
        text,
        "{}",
        if ok {
            format!("all {} identities hold", rep.checks.len())
        } else {
            format!("{failing} of {} identities fail", rep.checks.len())
        }
    );
    Ok(Report {
        ok,
        text,
        json: json!({"ok": ok, "report": rep}),
    })
}

fn schur(category: &CategoryArgs, text: &str) -> Result<Report, CliError> {
    let ctx = Context::resolve(category)?;
    let m: Morphism = ctx.parse(text)?;
    let ev = ctx.evaluator()?;
    match schur_scalar(&ev, &m) {
        Ok(out) => {
            let text = if out.same {
                format!("{} -> {}: alpha = {}", m.source(), m.target(), out.alpha)
            } else {
                format!("{} -> {}: zero (distinct simples)", m.source(), m.target())
            };
            Ok(Report {
                ok: true,
                text,
                json: json!({"ok": true, "same": out.same, "alpha": out.alpha}),
            })
        }
        Err(EvalError::SchurViolation(msg)) => Ok(Report {
            ok: false,
            text: format!("Schur's lemma fails: {msg}"),
            json: json!({"ok": false, "violation": msg}),
        }),
        Err(e @ EvalError::NotSimpleBoundary { .. }) => Err(usage(e)),
        Err(e) => Err(failed(e)),
    }
}

fn tl_dim(k: usize, l: usize, list: bool, rank: bool) -> Result<Report, CliError> {
    let count = if (k + l) % 2 == 0 { catalan((k + l) / 2) } else { 0 };
    let mut text = format!("{count} planar diagrams {k} -> {l}");
    let mut out = json!({"ok": true, "k": k, "l": l, "count": count});
    let mut ok = true;
    if rank {
        let r = tl_matrix_rank(k, l);
        let d = sl2_intertwiner_dim(k, l);
        ok = r as u64 == count && r == d;
        let _ = write!(text, "\nmatrix rank {r}, intertwiner dimension {d}");
        if !ok {
            text.push_str("\nthe matrix images are not a basis of the intertwiners");
        }
        out["rank"] = json!(r);
        out["intertwiner_dim"] = json!(d);
        out["ok"] = json!(ok);
    }
    if list {
        let basis = tl_basis(k, l);
        for d in &basis {
            let _ = write!(text, "\n  {d}");
        }
        out["diagrams"] = json!(basis.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    Ok(Report { ok, text, json: out })
}

fn tl_compose_cmd(delta: &Scalar, diagrams: &[String]) -> Result<Report, CliError> {
    let parsed = diagrams
        .iter()
        .map(|d| {
            d.parse::<PlanarDiagram>()
                .map(|p| TLMorphism::from_diagram(p, delta))
                .map_err(|e| CliError::Parse(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut iter = parsed.into_iter().rev();
    let mut acc = iter.next().expect("clap requires one diagram");
    for above in iter {
        acc = tl_compose(&above, &acc).map_err(usage)?;
    }
    let terms: Vec<_> = acc
        .terms()
        .map(|(d, c)| json!({"diagram": d.to_string(), "coefficient": c}))
        .collect();
    Ok(Report {
        ok: true,
        text: acc.to_string(),
        json: json!({"ok": true, "bottom": acc.bottom(), "top": acc.top(), "delta": delta, "terms": terms}),
    })
}

fn tl_check(k: usize, delta: &Scalar, loop_value: &Scalar) -> Result<Report, CliError> {
    let rep = check_tl_presentation_with_loop(k, delta, loop_value).map_err(usage)?;
    let mut text = format!("TL_{k}({delta}) generator relations\n");
    for c in &rep.checks {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        let _ = writeln!(text, "  {mark} {} ({} instances)", c.name, c.instances);
        for f in &c.failures {
            let _ = writeln!(text, "         {f}");
        }
    }
    let ok = rep.passed();
    text.push_str(if ok { "all relations hold" } else { "relations fail" });
    Ok(Report {
        ok,
        text,
        json: json!({"ok": ok, "report": rep}),
    })
}
