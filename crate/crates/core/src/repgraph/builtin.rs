//! Bundled module data and fusion graphs, plus the file search path.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;

use super::group::{multiplicities, ActionKind, GroupData, SimpleModule};
use super::{Label, Node, RepGraph, RepGraphError};
use crate::exactfield::{lcm, ExactMatrix, Scalar};

/// Environment variable holding extra data directories (`:`-separated).
pub const DATA_PATH_ENV: &str = "DGRAMS_DATA_PATH";

const T_GROUP: &str = include_str!("../../data/groups/t_binary_tetrahedral.json");

const GRAPHS: &[(&str, &str)] = &[
    (
        "t_binary_tetrahedral",
        include_str!("../../data/graphs/t_binary_tetrahedral.json"),
    ),
    ("psl_2_8", include_str!("../../data/graphs/psl_2_8.json")),
    ("fibonacci", include_str!("../../data/graphs/fibonacci.json")),
    ("verlinde_p5", include_str!("../../data/graphs/verlinde_p5.json")),
    ("verlinde_p7", include_str!("../../data/graphs/verlinde_p7.json")),
    ("cn_1", include_str!("../../data/graphs/cn_1.json")),
    ("cn_2", include_str!("../../data/graphs/cn_2.json")),
    ("cn_3", include_str!("../../data/graphs/cn_3.json")),
    ("cn_4", include_str!("../../data/graphs/cn_4.json")),
    ("cn_5", include_str!("../../data/graphs/cn_5.json")),
    ("cn_6", include_str!("../../data/graphs/cn_6.json")),
    ("cn_7", include_str!("../../data/graphs/cn_7.json")),
    ("cn_8", include_str!("../../data/graphs/cn_8.json")),
    ("cn_9", include_str!("../../data/graphs/cn_9.json")),
    ("cn_10", include_str!("../../data/graphs/cn_10.json")),
    ("cn_11", include_str!("../../data/graphs/cn_11.json")),
    ("cn_12", include_str!("../../data/graphs/cn_12.json")),
];

pub fn bundled_graph_names() -> impl Iterator<Item = &'static str> {
    GRAPHS.iter().map(|(n, _)| *n)
}

pub fn bundled_graph(name: &str) -> Option<RepGraph> {
    GRAPHS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| RepGraph::from_json(text).expect("bundled graph parses"))
}

fn search_dirs() -> Vec<PathBuf> {
    std::env::var_os(DATA_PATH_ENV)
        .map(|v| std::env::split_paths(&v).collect())
        .unwrap_or_default()
}

fn find_file(name: &str, sub: &str) -> Option<PathBuf> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Some(direct);
    }
    for dir in search_dirs() {
        for cand in [
            dir.join(sub).join(format!("{name}.json")),
            dir.join(format!("{name}.json")),
            dir.join(name),
        ] {
            if cand.is_file() {
                return Some(cand);
            }
        }
    }
    None
}

/// Resolves a graph by bundled name, then by file in the data search path,
/// then as a literal file path.
pub fn resolve_graph(name: &str) -> Result<RepGraph, RepGraphError> {
    if let Some(g) = bundled_graph(name) {
        return Ok(g);
    }
    match find_file(name, "graphs") {
        Some(p) => super::load_fusion_graph(&p),
        None => Err(RepGraphError::Io(format!(
            "no graph named {name:?} (searched bundled data and ${DATA_PATH_ENV})"
        ))),
    }
}

/// Resolves module data: `t_binary_tetrahedral` (alias `T`), `c<n>`,
/// `c<n>_natural`, `su2` / `su2_<nodes>`, or a group file.
pub fn resolve_group(name: &str) -> Result<GroupData, RepGraphError> {
    match name {
        "t_binary_tetrahedral" | "T" | "t" => return Ok(binary_tetrahedral()),
        "su2" => return Ok(su2(6)),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("su2_") {
        if let Ok(n) = rest.parse::<usize>() {
            return Ok(su2(n));
        }
    }
    if let Some(rest) = name.strip_prefix('c') {
        if let Some(num) = rest.strip_suffix("_natural") {
            if let Ok(n) = num.parse::<u32>() {
                return cyclic_natural(n);
            }
        } else if let Ok(n) = rest.parse::<u32>() {
            return cyclic(n);
        }
    }
    match find_file(name, "groups") {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| RepGraphError::Io(format!("{}: {e}", p.display())))?;
            group_from_json(&text)
        }
        None => Err(RepGraphError::Io(format!("no group named {name:?}"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    id: String,
    dim: usize,
    #[serde(default)]
    basis: Vec<String>,
    action: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawDefining {
    Label(String),
    Module(RawModule),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    #[serde(default)]
    name: String,
    conductor: u32,
    #[serde(default = "default_kind")]
    kind: ActionKind,
    generators: Vec<String>,
    unit: String,
    defining: RawDefining,
    simples: Vec<RawModule>,
    #[serde(default)]
    frontier: Vec<String>,
    #[serde(default)]
    merges: Vec<RawMerge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMerge {
    from: String,
    to: String,
    rows: Vec<Vec<String>>,
}

fn default_kind() -> ActionKind {
    ActionKind::Group
}

fn module_from_raw(raw: RawModule, generators: &[String], m: u32) -> Result<SimpleModule, RepGraphError> {
    let mut gen_action = Vec::new();
    for g in generators {
        let rows = raw
            .action
            .get(g)
            .ok_or_else(|| RepGraphError::Data(format!("module {} lacks generator {g}", raw.id)))?;
        gen_action.push(ExactMatrix::from_literal_rows(rows, m)?);
    }
    Ok(SimpleModule {
        label: Label::new(raw.id),
        dim: raw.dim,
        basis: raw.basis,
        gen_action,
    })
}

/// Parses the JSON group-data format.
pub fn group_from_json(text: &str) -> Result<GroupData, RepGraphError> {
    let raw: RawGroup = serde_json::from_str(text).map_err(|e| RepGraphError::Parse(e.to_string()))?;
    let m = raw.conductor;
    let simples = raw
        .simples
        .into_iter()
        .map(|s| module_from_raw(s, &raw.generators, m))
        .collect::<Result<Vec<_>, _>>()?;
    let defining = match raw.defining {
        RawDefining::Label(l) => simples
            .iter()
            .find(|s| s.label.as_str() == l)
            .cloned()
            .ok_or_else(|| RepGraphError::UnknownLabel(Label::new(l)))?,
        RawDefining::Module(md) => module_from_raw(md, &raw.generators, m)?,
    };
    let mut merge_maps = BTreeMap::new();
    for mg in raw.merges {
        let key = (Label::new(mg.from), Label::new(mg.to));
        let mat = ExactMatrix::from_literal_rows(&mg.rows, m)?;
        if merge_maps.insert(key.clone(), mat).is_some() {
            return Err(RepGraphError::Data(format!("merge {} -> {} given twice", key.0, key.1)));
        }
    }
    let g = GroupData {
        name: raw.name,
        conductor: m,
        kind: raw.kind,
        generators: raw.generators,
        simples,
        defining,
        unit: Label::new(raw.unit),
        frontier: raw.frontier.into_iter().map(Label::new).collect(),
        merge_maps,
    };
    g.validate()?;
    Ok(g)
}

/// The binary tetrahedral group with its seven simples and `V = T^(1)`.
pub fn binary_tetrahedral() -> GroupData {
    group_from_json(T_GROUP).expect("bundled group data parses")
}

fn cyclic_simples(n: u32, m: u32) -> Vec<SimpleModule> {
    (0..n)
        .map(|a| SimpleModule {
            label: Label::new(a.to_string()),
            dim: 1,
            basis: Vec::new(),
            gen_action: vec![ExactMatrix::scalar(Scalar::zeta_pow(m, (a * (m / n)) as i64))],
        })
        .collect()
}

/// `C_n` acting on `G^(a)` by `zeta_n^a`, with `V = G^(1)`. The conductor is
/// `lcm(n, 4)`.
pub fn cyclic(n: u32) -> Result<GroupData, RepGraphError> {
    if n == 0 {
        return Err(RepGraphError::Data("cyclic group order must be positive".into()));
    }
    let m = lcm(n, 4);
    let simples = cyclic_simples(n, m);
    Ok(GroupData {
        name: format!("c{n}"),
        conductor: m,
        kind: ActionKind::Group,
        generators: vec!["g".into()],
        defining: simples[(1 % n) as usize].clone(),
        simples,
        unit: Label::new("0"),
        frontier: Vec::new(),
        merge_maps: BTreeMap::new(),
    })
}

/// `C_n` with the two-dimensional defining object `G^(1) + G^(n-1)`, the
/// restriction of the natural rotation representation.
pub fn cyclic_natural(n: u32) -> Result<GroupData, RepGraphError> {
    let mut g = cyclic(n)?;
    let m = g.conductor;
    let z = Scalar::zeta_pow(m, (m / n) as i64);
    let zi = Scalar::zeta_pow(m, -((m / n) as i64));
    g.name = format!("c{n}_natural");
    g.defining = SimpleModule {
        label: Label::new("V"),
        dim: 2,
        basis: Vec::new(),
        gen_action: vec![ExactMatrix::diag(vec![z, zi], m)],
    };
    Ok(g)
}

/// The first `nodes` simples of `sl_2` (labels `0..nodes`, label `j` of
/// dimension `j + 1`) acting through `e`, `f`, `h`; the last node is a
/// truncation frontier.
pub fn su2(nodes: usize) -> GroupData {
    assert!(nodes >= 2, "need at least the trivial and defining modules");
    let simples: Vec<SimpleModule> = (0..nodes).map(sl2_module).collect();
    GroupData {
        name: format!("su2_{nodes}"),
        conductor: 1,
        kind: ActionKind::LieAlgebra,
        generators: vec!["e".into(), "f".into(), "h".into()],
        defining: simples[1].clone(),
        simples,
        unit: Label::new("0"),
        frontier: vec![Label::new((nodes - 1).to_string())],
        merge_maps: BTreeMap::new(),
    }
}

/// Irreducible `sl_2` module of highest weight `j`: basis `v_0..v_j` with
/// `h v_i = (j - 2i) v_i`, `f v_i = v_{i+1}`, `e v_i = i (j - i + 1) v_{i-1}`.
pub fn sl2_module(j: usize) -> SimpleModule {
    let d = j + 1;
    let mut e = ExactMatrix::zeros(d, d, 1);
    let mut f = ExactMatrix::zeros(d, d, 1);
    let mut h = ExactMatrix::zeros(d, d, 1);
    for i in 0..d {
        h.set(i, i, Scalar::from_int(1, j as i64 - 2 * i as i64));
        if i + 1 < d {
            f.set(i + 1, i, Scalar::one(1));
        }
        if i > 0 {
            e.set(i - 1, i, Scalar::from_int(1, (i * (j - i + 1)) as i64));
        }
    }
    SimpleModule {
        label: Label::new(j.to_string()),
        dim: d,
        basis: Vec::new(),
        gen_action: vec![e, f, h],
    }
}

/// Builds the representation graph of `v`: an edge `a -> b` whenever `b`
/// occurs in `v (x) a`. Any multiplicity above one is rejected.
pub fn build_rep_graph(group: &GroupData, v: &SimpleModule) -> Result<RepGraph, RepGraphError> {
    let mut edges = Vec::new();
    for a in &group.simples {
        let (mults, total) = multiplicities(v, a, &group.simples, group);
        if total != v.dim * a.dim && !group.frontier.contains(&a.label) {
            return Err(RepGraphError::DimensionMismatch {
                v: v.label.clone(),
                a: a.label.clone(),
                expected: v.dim * a.dim,
                found: total,
            });
        }
        for (b, mult) in mults {
            if mult > 1 {
                return Err(RepGraphError::MultiEdge {
                    from: a.label.clone(),
                    to: b,
                    multiplicity: mult,
                });
            }
            edges.push((a.label.clone(), b));
        }
    }
    let m = group.conductor;
    let nodes = group
        .simples
        .iter()
        .map(|s| Node {
            label: s.label.clone(),
            dim: Scalar::from_int(m, s.dim as i64),
        })
        .collect();
    let is_simple = group.simples.iter().any(|s| s == v);
    let generator = is_simple.then(|| v.label.clone());
    let g = RepGraph::new(
        group.name.clone(),
        m,
        nodes,
        edges,
        generator,
        Some(Scalar::from_int(m, v.dim as i64)),
        Some(group.unit.clone()),
    )?;
    g.with_frontier(group.frontier.iter().cloned())
}

/// The representation graph of the group's own defining object.
pub fn group_graph(group: &GroupData) -> Result<RepGraph, RepGraphError> {
    build_rep_graph(group, &group.defining)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_graphs_parse() {
        for name in bundled_graph_names() {
            let g = bundled_graph(name).unwrap();
            assert!(g.is_connected(), "{name}");
        }
    }

    #[test]
    fn t_graph_matches_file() {
        let t = binary_tetrahedral();
        let built = group_graph(&t).unwrap();
        let file = bundled_graph("t_binary_tetrahedral").unwrap();
        assert_eq!(built.edges(), file.edges());
    }

    #[test]
    fn su2_path_graph() {
        let g = group_graph(&su2(6)).unwrap();
        let mut expect = Vec::new();
        for i in 0..5 {
            expect.push((Label::new(i.to_string()), Label::new((i + 1).to_string())));
            expect.push((Label::new((i + 1).to_string()), Label::new(i.to_string())));
        }
        expect.sort();
        let mut got = g.edges();
        got.sort();
        assert_eq!(got, expect);
        assert!(g.enumerate_paths(&"1".into(), &"1".into(), 6).is_err());
    }

    #[test]
    fn cyclic_graphs() {
        let g = group_graph(&cyclic(5).unwrap()).unwrap();
        assert_eq!(g.edges(), bundled_graph("cn_5").unwrap().edges());
        let nat = group_graph(&cyclic_natural(5).unwrap()).unwrap();
        assert!(nat.generator().is_none());
        assert!(nat.is_symmetric());
        assert_eq!(nat.edge_count(), 10);
        assert!(matches!(
            group_graph(&cyclic_natural(2).unwrap()),
            Err(RepGraphError::MultiEdge { multiplicity: 2, .. })
        ));
    }
}
