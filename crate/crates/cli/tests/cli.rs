use std::process::Command;

use dgrams_cli::main_with;

fn dgrams(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dgrams"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn run(args: &[&str]) -> (String, i32) {
    main_with(std::iter::once("dgrams").chain(args.iter().copied()))
}

#[test]
fn paths_of_length_four() {
    let (out, _, code) = dgrams(&[
        "paths",
        "--graph",
        "t_binary_tetrahedral",
        "--from",
        "1",
        "--to",
        "3",
        "--len",
        "4",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("5 paths of length 4"), "{out}");
    assert!(out.contains("(1,0,1,2,3)"));
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn relations_on_the_binary_tetrahedral_group() {
    let (out, _, code) = dgrams(&["check-relations", "--group", "t_binary_tetrahedral"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn homdim_in_c3() {
    let (out, code) = run(&["homdim", "--cn", "3", "--source", "1,1", "--target", "1"]);
    assert_eq!((out.trim(), code), ("0", 0));
    let (out, code) = run(&["homdim", "--cn", "3", "--source", "1,2", "--target="]);
    assert_eq!((out.trim(), code), ("1", 0));
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let (_, err, code) = dgrams(&["eval", "--group", "T", "m[1,1->2] ;\n  q[1]"]);
    assert_eq!(code, 2);
    assert!(err.contains("2:3"), "{err}");
    let (out, code) = run(&["eval", "--group", "T", "m[1,1->3]"]);
    assert_eq!(code, 2);
    assert!(out.contains("no edge 1 -> 3"), "{out}");
    let (_, code) = run(&["paths", "--graph", "t_binary_tetrahedral"]);
    assert_eq!(code, 2);
}

#[test]
fn failing_checks_exit_one_and_name_the_identity() {
    let (out, code) = run(&["tl-check", "--k", "3", "--loop-value", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL matrix of e_i e_j = E_i E_j"), "{out}");
}

#[test]
fn json_reports_mirror_the_text() {
    let (out, code) = run(&[
        "--format",
        "json",
        "paths",
        "--graph",
        "t_binary_tetrahedral",
        "--from",
        "1",
        "--to",
        "3",
        "--len",
        "4",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 5);
    assert_eq!(v["paths"][0], serde_json::json!(["1", "0", "1", "2", "3"]));
    let (out, _) = run(&["--format", "json", "schur", "--group", "T", "{1/2 + 1/2 z^6} id[2]"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["alpha"], "1/2 + 1/2 z^6");
}

#[test]
fn eval_prints_exact_literals() {
    let (out, code) = run(&["eval", "--group", "T", "m[1,1->2]"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("[1,1] -> [2] (3x4)"), "{out}");
    assert!(out.contains("1/2"));
}

#[test]
fn normalize_reaches_the_canonical_form() {
    let (out, code) = run(&["normalize", "--cn", "5", "--seed", "7", "s[3->1,2] ; m[1,2->3]"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("id[3]"));
}

#[test]
fn built_graphs_load_back() {
    let (out, code) = run(&["graph-build", "--group", "t_binary_tetrahedral"]);
    assert_eq!(code, 0);
    let g = dgrams_core::repgraph::RepGraph::from_json(&out).unwrap();
    let bundled = dgrams_core::repgraph::bundled_graph("t_binary_tetrahedral").unwrap();
    assert_eq!(g.edges(), bundled.edges());
    assert!(g.check_dimension_identity().passed());
}

#[test]
fn data_path_finds_graph_files() {
    let dir = std::env::temp_dir().join(format!("dgrams-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (file, _) = run(&["graph-build", "--group", "c3"]);
    std::fs::write(dir.join("triangle.json"), file).unwrap();
    let (out, _, code) = dgrams(&[
        "--data-path",
        dir.to_str().unwrap(),
        "graph-check",
        "--graph",
        "triangle",
    ]);
    assert_eq!(code, 0, "{out}");
    let (_, _, code) = dgrams(&["graph-check", "--graph", "triangle"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tl_verbs() {
    let (out, code) = run(&["tl-dim", "--k", "4", "--l", "4", "--rank"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("14 planar diagrams 4 -> 4"));
    assert!(out.contains("matrix rank 14, intertwiner dimension 14"));
    let (out, code) = run(&["tl-compose", "--delta", "-2", "(b1,b2)", "(t1,t2)"]);
    assert_eq!((out.trim(), code), ("{-2} ()", 0));
    let (out, _) = run(&["tl-compose", "(t1,t2)", "(b1,b2)"]);
    assert_eq!(out.trim(), "(b1,b2)(t1,t2)");
    let (_, code) = run(&["tl-compose", "(b1,b2)", "(1)"]);
    assert_eq!(code, 2);
}
