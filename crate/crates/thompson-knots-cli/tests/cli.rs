//! End-to-end runs of the binary: outputs are checked against the library
//! and against each other, and every exit status is exercised.

use std::fs;
use std::path::Path;

use assert_cmd::Command;
use predicates::str::contains;
use tempfile::TempDir;

use thompson_knots::constructions::{build_product_diagram, expand};
use thompson_knots::invariants::jones_set;
use thompson_knots::jones_map::psi;
use thompson_knots::planar_diagram::PlanarDiagram;
use thompson_knots::reverse_pipeline::SignedMidlineGraph;
use thompson_knots::thompson_core::ThompsonElement;

fn bin() -> Command {
    Command::cargo_bin("thompson-knots").unwrap()
}

fn run_ok(dir: &Path, args: &[&str]) -> String {
    let out = bin().current_dir(dir).args(args).assert().success();
    String::from_utf8(out.get_output().stdout.clone()).unwrap()
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> T {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_writes_the_expanded_element() {
    let dir = TempDir::new().unwrap();
    run_ok(
        dir.path(),
        &["build", "product", "3", "4", "2", "5", "-o", "elem.json"],
    );
    let e: ThompsonElement = read(&dir.path().join("elem.json"));
    assert_eq!(e, expand(&build_product_diagram(&[3, 4, 2, 5]).unwrap()));
}

#[test]
fn verify_product_reports_the_trefoil() {
    bin()
        .args(["verify", "product", "3"])
        .assert()
        .code(0)
        .stdout(contains("jones equal: trefoil class"));
}

#[test]
fn verify_concat_and_commute_succeed() {
    bin()
        .args(["verify", "concat", "2", "3", "7"])
        .assert()
        .code(0)
        .stdout(contains("jones equal"));
    bin()
        .args(["verify", "commute", "product", "3", "2"])
        .assert()
        .code(0)
        .stdout(contains("jones equal"));
    bin()
        .args([
            "verify",
            "commute",
            "concat",
            "--seed",
            "5",
            "--max-crossings",
            "200",
        ])
        .assert()
        .code(0);
}

#[test]
fn reverse_recovers_the_link() {
    let dir = TempDir::new().unwrap();
    run_ok(dir.path(), &["closure", "[3 2]", "-o", "pd.json"]);
    run_ok(dir.path(), &["reverse", "pd.json", "-o", "elem.json"]);
    let d: PlanarDiagram = read(&dir.path().join("pd.json"));
    let e: ThompsonElement = read(&dir.path().join("elem.json"));
    assert_eq!(jones_set(&psi(&e)).unwrap(), jones_set(&d).unwrap());
}

#[test]
fn graph_stages_chain() {
    let dir = TempDir::new().unwrap();
    run_ok(dir.path(), &["closure", "[2 2]", "-o", "pd.json"]);
    run_ok(
        dir.path(),
        &["graph", "extract", "pd.json", "-o", "graph.json"],
    );
    run_ok(
        dir.path(),
        &["graph", "linearize", "pd.json", "-o", "mid.json"],
    );
    run_ok(
        dir.path(),
        &["graph", "normalize", "mid.json", "-o", "normal.json"],
    );
    let g: serde_json::Value = read(&dir.path().join("graph.json"));
    assert_eq!(g["edges"].as_array().unwrap().len(), 4);
    let normal: SignedMidlineGraph = read(&dir.path().join("normal.json"));
    assert!(normal.is_thompson_form());
}

#[test]
fn psi_variants_and_invariants() {
    let dir = TempDir::new().unwrap();
    run_ok(
        dir.path(),
        &["build", "product", "3", "--chairs", "-o", "chairs.json"],
    );
    run_ok(dir.path(), &["expand", "chairs.json", "-o", "elem.json"]);
    run_ok(dir.path(), &["psi", "elem.json", "-o", "a.json"]);
    run_ok(
        dir.path(),
        &[
            "psi",
            "chairs.json",
            "--variant",
            "psi-prime",
            "-o",
            "b.json",
        ],
    );
    let a: serde_json::Value =
        serde_json::from_str(&run_ok(dir.path(), &["invariant", "a.json", "--jones"])).unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&run_ok(dir.path(), &["invariant", "b.json", "--jones"])).unwrap();
    assert_eq!(a["jones"], b["jones"]);
    assert!(a.get("determinant").is_none());
    let all: serde_json::Value =
        serde_json::from_str(&run_ok(dir.path(), &["invariant", "b.json"])).unwrap();
    assert_eq!(all["determinant"], 3);
}

#[test]
fn gauss_code_has_one_line_per_component() {
    let text = run_ok(Path::new("."), &["closure", "[2]", "--gauss"]);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l
        .split(',')
        .all(|t| t.starts_with('O') || t.starts_with('U'))));
}

#[test]
fn parse_prints_canonical_text_and_fraction() {
    let v: serde_json::Value =
        serde_json::from_str(&run_ok(Path::new("."), &["parse", "[3  2]"])).unwrap();
    assert_eq!(v["canonical"], "[3 2]");
    assert_eq!(v["fraction"], "7/3");
}

#[test]
fn render_emits_svg() {
    let dir = TempDir::new().unwrap();
    run_ok(
        dir.path(),
        &["build", "concat", "2", "3", "--chairs", "-o", "chairs.json"],
    );
    run_ok(
        dir.path(),
        &["build", "product", "2", "2", "-o", "elem.json"],
    );
    for (kind, file) in [("chairs", "chairs.json"), ("tree-pair", "elem.json")] {
        let svg = run_ok(dir.path(), &["render", "--svg", kind, file]);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}

#[test]
fn outputs_are_deterministic() {
    let args = [
        "verify",
        "commute",
        "product",
        "--seed",
        "11",
        "--max-crossings",
        "200",
    ];
    assert_eq!(run_ok(Path::new("."), &args), run_ok(Path::new("."), &args));
}

#[test]
fn exit_codes() {
    bin().arg("frobnicate").assert().code(2);
    bin().args(["build", "product"]).assert().code(2);
    bin()
        .args(["parse", "[3 2"])
        .assert()
        .code(3)
        .stderr(contains("expected ']'"));
    bin().args(["build", "concat", "1", "2"]).assert().code(3);
    bin().args(["reverse", "missing.json"]).assert().code(3);
    bin()
        .args(["verify", "commute", "product", "3", "4", "2", "5"])
        .assert()
        .code(3)
        .stderr(contains("--max-crossings"));
}
