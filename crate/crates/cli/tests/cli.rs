use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use contraaec_cli::run;

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn ex(name: &str) -> String {
    examples().join(name).display().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("contraaec").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn validate_exit_codes() {
    let (code, out, _) = cli(&["validate", &ex("dirtree-cat.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok: category with 2 objects"));
    assert_eq!(cli(&["validate", &ex("edge.json")]).0, 0);

    let (code, _, err) = cli(&["validate", &data("missing-composite.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("missing composite g ∘ f"), "{err}");

    assert_eq!(cli(&["validate", &data("does-not-exist.json")]).0, 3);
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(cli(&["validate", junk.to_str().unwrap()]).0, 3);
}

#[test]
fn nerve_homology_tables() {
    let (code, out, _) = cli(&["nerve-homology", &ex("dirtree-cat.json"), "--max-dim", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "H_0 = Z^1\nH_1 = Z^1\nH_2 = 0\n");

    let (_, out, _) = cli(&["nerve-homology", &ex("s2-cat.json"), "--max-dim", "3"]);
    assert_eq!(out, "H_0 = Z^1\nH_1 = 0\nH_2 = Z^1\n");

    let (_, out, _) = cli(&["nerve-homology", &ex("undirtree-cat.json"), "--max-dim", "4"]);
    assert_eq!(out, "H_0 = Z^1\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/2\n");

    let (_, out, _) = cli(&["nerve-homology", &ex("undirtree-cat.json"), "--max-dim", "2", "--format", "records"]);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[1]["degree"], 1);
    assert_eq!(lines[1]["torsion"], serde_json::json!([2]));

    assert_eq!(cli(&["nerve-homology", &ex("dirtree-cat.json"), "--max-dim", "0"]).0, 4);
}

#[test]
fn check_model_verdicts() {
    let cat = ex("dirtree-cat.json");
    let small = ["--k-max", "1", "--l-max", "1"];
    let with = |psh: &str, extra: &[&str]| {
        let mut args = vec!["check-model", cat.as_str(), psh];
        args.extend_from_slice(extra);
        cli(&args)
    };
    let (code, out, _) = with(&ex("cycle3.json"), &small);
    assert_eq!(code, 1);
    assert!(out.contains("witness: H_1(elements) = Z^1"), "{out}");

    let (code, out, _) = with(&ex("edge.json"), &small);
    assert_eq!(code, 0);
    assert!(out.ends_with("verdict: model (one-dimensional tree)\n"));

    let (code, out, _) = with(&ex("loop.json"), &small);
    assert_eq!(code, 1);
    assert!(out.contains("inj: fail"));

    assert_eq!(with(&ex("edge.json"), &["--k-max", "0"]).0, 4);
    assert_eq!(with(&ex("undirected-edge.json"), &small).0, 2);

    let (code, _, err) = cli(&["check-model", &data("idempotent-cat.json"), &data("idempotent-point.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("monomorphisms"));
}

#[test]
fn undetermined_under_tiny_bounds() {
    let s2 = ex("s2-cat.json");
    let sphere = ex("sphere.json");
    let tiny = ["--acyclic-dim", "1", "--k-max", "1", "--l-max", "0", "--node-budget", "0"];
    let mut args = vec!["check-model", s2.as_str(), sphere.as_str()];
    args.extend_from_slice(&tiny);
    let (code, out, _) = cli(&args);
    assert_eq!(code, 5);
    assert!(out.contains("stuck: F = [E,E]"));
    assert!(out.ends_with("verdict: undetermined\n"));

    // one more degree of homology settles it
    let mut args = vec!["check-model", s2.as_str(), sphere.as_str(), "--acyclic-dim", "2", "--k-max", "1", "--l-max", "0"];
    let (code, out, _) = cli(&args);
    assert_eq!(code, 1);
    assert!(out.contains("witness: H_2(elements) = Z^1"));
    args.push("--format");
    args.push("records");
    let (_, out, _) = cli(&args);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["record"], "verdict");
    assert_eq!(last["overall"], "not_model");
}

#[test]
fn relative_check() {
    let (s2, c0) = (ex("s2-cat.json"), ex("dirtree-cat.json"));
    let run_rel = |psh: &str| cli(&["check-model", &s2, psh, "--relative", &c0, "--k-max", "1", "--l-max", "1"]);
    let (code, out, _) = run_rel(&ex("labeled-edge.json"));
    assert_eq!(code, 0);
    assert!(out.contains("coloring graph: 2 vertices, 1 edges, a tree"));
    assert_eq!(run_rel(&ex("double-edge.json")).0, 1);
    let (code, out, _) = run_rel(&ex("sphere.json"));
    assert_eq!(code, 1);
    assert!(out.contains("reduct component 0 is not a model"));
    // the reduct base must match
    let (code, _, _) = cli(&["check-model", &s2, &ex("labeled-edge.json"), "--relative", &ex("undirtree-cat.json")]);
    assert_eq!(code, 2);
}

#[test]
fn suspend_reproduces_bundled_sphere_category() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s2.json");
    assert_eq!(cli(&["suspend", &ex("dirtree-cat.json"), out.to_str().unwrap()]).0, 0);
    assert_eq!(fs::read_to_string(out).unwrap(), fs::read_to_string(examples().join("s2-cat.json")).unwrap());
}

#[test]
fn coloring_graph_edges() {
    let (code, out, _) = cli(&["coloring-graph", &ex("s2-cat.json"), &ex("double-edge.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "vertices: 1:p0 2:q0\n1:p0 -- 2:q0\n1:p0 -- 2:q0\n");
    let (_, out, _) = cli(&["coloring-graph", &ex("s2-cat.json"), &ex("double-edge.json"), "--format", "records"]);
    assert_eq!(out.lines().count(), 2);
    assert_eq!(cli(&["coloring-graph", &ex("dirtree-cat.json"), &ex("edge.json")]).0, 2);
}

#[test]
fn pushout_glues_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("path.json");
    let (code, _, err) = cli(&[
        "pushout",
        &ex("dirtree-cat.json"),
        &ex("point.json"),
        &ex("edge.json"),
        &ex("edge.json"),
        &ex("glue-legs.json"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    // the output keeps the apex's relative base reference
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"1:b=2:a\""));
    let local = dir.path().join("dirtree-cat.json");
    fs::copy(examples().join("dirtree-cat.json"), &local).unwrap();
    let (code, msg, _) = cli(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(msg, "ok: presheaf with 5 elements over 2 objects\n");
    let (code, _, _) = cli(&["check-model", local.to_str().unwrap(), out.to_str().unwrap(), "--k-max", "1", "--l-max", "1"]);
    assert_eq!(code, 0);

    let bad = dir.path().join("bad-legs.json");
    fs::write(&bad, r#"{"left": {"V": {"p": "zz"}}, "right": {"V": {"p": "a"}}}"#).unwrap();
    let (code, _, err) = cli(&["pushout", &ex("dirtree-cat.json"), &ex("point.json"), &ex("edge.json"), &ex("edge.json"), bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("`zz`"));
}

#[test]
fn generated_tree_is_a_model_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let p = path.to_str().unwrap();
    assert_eq!(cli(&["gen", "dirtree", "--size", "6", "--seed", "7", "--output", p]).0, 0);
    let first = fs::read_to_string(&path).unwrap();
    let (_, again, _) = cli(&["gen", "dirtree", "--size", "6", "--seed", "7"]);
    assert_eq!(first, again);
    let (code, _, _) = cli(&["check-model", &ex("dirtree-cat.json"), p, "--k-max", "1", "--l-max", "1"]);
    assert_eq!(code, 0);

    for kind in ["undirtree", "labeled-tree", "amalgam"] {
        let (code, out, _) = cli(&["gen", kind, "--size", "3", "--seed", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"carriers\""));
    }
    assert_eq!(cli(&["gen", "dirtree", "--size", "0"]).0, 2);
}

#[test]
fn bundled_examples_round_trip() {
    for entry in fs::read_dir(examples()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        if path.file_name().unwrap() == "glue-legs.json" {
            continue;
        }
        let again = if text.contains("\"carriers\"") {
            let file = contraaec::format::parse_presheaf_file(&text).unwrap();
            let contraaec::format::BaseRef::Path(b) = &file.base else { panic!("bundled presheaves refer to a file") };
            let base = contraaec::format::parse_category(&fs::read_to_string(examples().join(b)).unwrap()).unwrap();
            let x = contraaec::format::presheaf_from_file(&file, std::sync::Arc::new(base)).unwrap();
            contraaec::format::presheaf_to_json(&x, file.base.clone())
        } else {
            contraaec::format::category_to_json(&contraaec::format::parse_category(&text).unwrap())
        };
        assert_eq!(again, text, "{}", path.display());
    }
    for (name, c) in contraaec_cli::bundled_categories() {
        assert_eq!(contraaec::format::category_to_json(&c), fs::read_to_string(examples().join(name)).unwrap());
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let bin = env!("CARGO_BIN_EXE_contraaec");
    let args = ["check-model", &ex("s2-cat.json"), &ex("labeled-edge.json"), "--k-max", "1", "--l-max", "1", "--format", "records"];
    let outputs: Vec<_> = ["1", "3"]
        .iter()
        .map(|t| Command::new(bin).args(args).env("CONTRAAEC_THREADS", t).output().unwrap())
        .collect();
    assert!(outputs[0].status.success());
    assert_eq!(outputs[0].stdout, outputs[1].stdout);
    let bad = Command::new(bin).args(args).env("CONTRAAEC_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
