use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use masslin_cli::doc::{
    to_json, BarycenterReport, BatchEntry, BlowdownReport, CheckReport, ClassifyReport, MlSpaceReport, PolytopeDocument,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use tempfile::TempDir;

fn masslin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_masslin")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = masslin(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Parses into the typed document and checks that serializing again gives
/// the same bytes.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let v: T = serde_json::from_str(text).expect("valid document");
    assert_eq!(to_json(&v), text);
    v
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

const GOLDEN_GAMMA: &str = "1,-1,-1,1,0,0";

fn golden(dir: &Path) -> PathBuf {
    let doc = ok(&["construct", "bundle-yk", "--k", "3", "--a", "1,1,0", "--kappa", "0,0,0,1,0,2"]);
    round_trip::<PolytopeDocument>(&doc);
    write(dir, "y.polytope.json", &doc)
}

#[test]
fn golden_polytope_check() {
    let dir = TempDir::new().unwrap();
    let y = golden(dir.path());
    // H = eta_1 - eta_2 - eta_3 + eta_4
    let r: CheckReport = round_trip(&ok(&["check", s(&y), "--h", "0,2,2,0"]));
    assert!(r.mass_linear);
    let gamma: Vec<String> = r.gamma.unwrap().iter().map(|g| g.to_string()).collect();
    assert_eq!(gamma, strs(&["1", "-1", "-1", "1", "0", "0"]));
    assert_eq!(r.essential, Some(false));
    assert_eq!(r.equivalence_classes, vec![strs(&["F1", "F2"]), strs(&["F3", "F4"]), strs(&["G1", "G2"])]);
    assert_eq!(r.asymmetric, strs(&["F1", "F2", "F3", "F4"]));
    assert!(r.fully_mass_linear);
    assert!(r.prefilter.passed);
}

#[test]
fn golden_blowup_is_essential_with_same_gamma() {
    let dir = TempDir::new().unwrap();
    let y = golden(dir.path());
    let b = ok(&["blowup", s(&y), "--face", "F2,F4,G1"]);
    let doc: PolytopeDocument = round_trip(&b);
    let e = doc.facets.last().unwrap();
    assert_eq!(e.label.as_deref(), Some("E1"));
    assert_eq!(e.normal, vec![1, 0, 1, -1]);
    let b = write(dir.path(), "b.polytope.json", &b);
    let r: CheckReport = round_trip(&ok(&["check", s(&b), "--gamma", "1,-1,-1,1,0,0,0"]));
    let gamma: Vec<String> = r.gamma.unwrap().iter().map(|g| g.to_string()).collect();
    assert_eq!(gamma, strs(&["1", "-1", "-1", "1", "0", "0", "0"]));
    assert_eq!(r.essential, Some(true));
    assert!(r.equivalence_classes.iter().all(|c| c.len() == 1));

    let c: ClassifyReport = round_trip(&ok(&["classify", s(&b), "--gamma", "1,-1,-1,1,0,0,0", "--trace"]));
    assert_eq!(c.tag, "b");
    assert_eq!(c.steps, 1);
    let trace = c.trace.unwrap();
    assert_eq!(trace[0].kind, "edge_type_Fij_G");
    assert_eq!(trace[0].face, strs(&["F2", "F4", "G1"]));
    assert!(trace[0].essential_before && !trace[0].essential_after);
    assert_eq!(c.replay_exact, Some(true));

    let d: BlowdownReport = round_trip(&ok(&["blowdown", s(&b), "--facet", "E1"]));
    assert_eq!(d.face, strs(&["F2", "F4", "G1"]));
    assert_eq!(d.eps.to_string(), "1/2");
    let again = PolytopeDocument::from_polytope(&PolytopeDocument::to_polytope(&d.polytope).unwrap()).unwrap();
    let orig: PolytopeDocument = serde_json::from_str(&fs::read_to_string(&y).unwrap()).unwrap();
    assert_eq!(again.facets, orig.facets);
}

#[test]
fn triangle_functional_is_inessential() {
    let dir = TempDir::new().unwrap();
    let t = write(dir.path(), "t.polytope.json", &ok(&["construct", "simplex", "--n", "2"]));
    let r: CheckReport = round_trip(&ok(&["check", s(&t), "--h", "1,0"]));
    assert!(r.mass_linear);
    assert_eq!(r.essential, Some(false));
    let text = ok(&["--format", "text", "check", s(&t), "--h", "1,0"]);
    assert!(text.contains("inessential"), "{text}");
}

#[test]
fn hand_written_document_gets_default_labels() {
    let dir = TempDir::new().unwrap();
    let doc = r#"{"dim": 2, "facets": [
        {"normal": [-1, 0], "kappa": "0"},
        {"normal": [0, -1], "kappa": "0"},
        {"normal": [1, 1], "kappa": "3/2"}]}"#;
    let p = write(dir.path(), "tri.json", doc);
    let r: CheckReport = round_trip(&ok(&["check", s(&p), "--h", "0,1"]));
    let labels: Vec<_> = r.polytope.facets.iter().map(|f| f.label.clone().unwrap()).collect();
    assert_eq!(labels, strs(&["F1", "F2", "F3"]));
    assert_eq!(r.polytope.facets[2].kappa.to_string(), "3/2");
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    let dir = TempDir::new().unwrap();
    let y = golden(dir.path());
    for h in ["0,2,2,0", "1,0,0,0", "0,0,1,-1"] {
        let a: Value = serde_json::from_str(&ok(&["--seed", "1", "check", s(&y), "--h", h])).unwrap();
        let b: Value = serde_json::from_str(&ok(&["--seed", "99", "check", s(&y), "--h", h])).unwrap();
        for key in ["mass_linear", "gamma", "essential", "barycenter_values", "equivalence_classes"] {
            assert_eq!(a[key], b[key], "{key} for H = {h}");
        }
    }
}

#[test]
fn every_family_constructs_a_smooth_polytope() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let tri = write(d, "tri.json", &ok(&["construct", "simplex", "--n", "2", "--lambda", "2"]));
    let seg = write(d, "seg.json", &ok(&["construct", "simplex", "--n", "1"]));
    let quad = write(d, "quad.json", &ok(&["construct", "recipe-polygon", "--n", "4"]));
    let trap = write(d, "trap.json", &ok(&["construct", "trapezoid"]));
    let cases: Vec<(Vec<&str>, usize, usize)> = vec![
        (vec!["product", "--base", s(&tri), "--other", s(&seg)], 3, 5),
        (vec!["bundle-121", "--a", "0,1,2", "--d", "0", "--kappa", "1,0,0,0,1,0,5"], 4, 7),
        (
            vec!["bundle-d2-polygon", "--base", s(&quad), "--twists", "0:0,0:0,1:-1,2:-2", "--fiber-kappa", "0,0,1/16"],
            4,
            7,
        ),
        (vec!["expansion", "--base", s(&trap), "--facet", "0", "--times", "2"], 4, 6),
        (vec!["double-expansion", "--base", s(&trap), "--facets", "0,1"], 4, 6),
        (vec!["minimal-a3", "--n-facets", "7"], 4, 7),
        (vec!["minimal-b", "--n-facets", "6"], 4, 6),
    ];
    for (family, dim, n_f) in cases {
        let mut args = vec!["construct"];
        args.extend(&family);
        let doc: PolytopeDocument = round_trip(&ok(&args));
        assert_eq!((doc.dim, doc.facets.len()), (dim, n_f), "{family:?}");
        doc.to_polytope().unwrap();
    }
}

#[test]
fn barycenters_and_mlspace_reports() {
    let dir = TempDir::new().unwrap();
    let trap = write(dir.path(), "trap.json", &ok(&["construct", "trapezoid"]));
    let r: BarycenterReport = round_trip(&ok(&["barycenters", s(&trap), "--h", "1,0"]));
    assert_eq!(r.barycenters.len(), 3);
    assert_eq!(r.fully_mass_linear, r.mass_linear_by_barycenters);
    let pts: Vec<_> = r.barycenters.iter().map(|b| b.point.clone()).collect();
    assert!(pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2]);

    let m: MlSpaceReport = round_trip(&ok(&["mlspace", "bundle-yk", "--a", "1,1,0"]));
    assert_eq!(m.facets, strs(&["F1", "F2", "F3", "F4", "G1", "G2"]));
    assert!(!m.has_essential);
    assert_eq!(m.mass_linear.len(), m.inessential.len());
    let m: MlSpaceReport = round_trip(&ok(&["mlspace", "bundle-121", "--a", "0,1,2", "--d", "0"]));
    assert!(m.has_essential);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let y = golden(dir.path());
    for args in [
        vec!["check", s(&y)],
        vec!["check", s(&y), "--h", "1,x"],
        vec!["check", s(&y), "--h", "1", "--gamma", "1"],
        vec!["frobnicate"],
        vec!["blowup", s(&y), "--face", "F1,F2", "--eps", "1/0"],
        vec!["construct", "bundle-yk", "--a", "1,1,0"],
        vec!["--jobs", "0", "check", s(&y), "--h", "0,0,0,0"],
    ] {
        assert_eq!(masslin(&args).status.code(), Some(1), "{args:?}");
    }
}

fn domain_error(args: &[&str]) -> String {
    let out = masslin(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    let v: Value = serde_json::from_slice(&out.stderr).expect("error JSON on stderr");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn domain_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let y = golden(d);
    let bad_json = write(d, "bad.json", "{\"dim\": 2, \"facets\": [");
    assert_eq!(domain_error(&["check", s(&bad_json), "--h", "1,0"]), "malformed_input");
    let singular = write(
        d,
        "sing.json",
        r#"{"name": "singular", "dim": 2, "facets": [
            {"normal": [-1, 0], "kappa": "0"},
            {"normal": [0, -1], "kappa": "0"},
            {"normal": [1, 2], "kappa": "2"}]}"#,
    );
    assert_eq!(domain_error(&["check", s(&singular), "--h", "1,0"]), "not_smooth");
    assert_eq!(domain_error(&["check", s(&y), "--h", "1,0"]), "dimension_mismatch");
    assert_eq!(domain_error(&["blowdown", s(&y), "--facet", "F1"]), "blowdown_failed");
    assert_eq!(domain_error(&["blowup", s(&y), "--face", "F1,F2,F3,F4"]), "not_a_face");
    assert_eq!(domain_error(&["blowup", s(&y), "--face", "F2,F4,G1", "--eps", "5"]), "epsilon_too_large");
    assert_eq!(domain_error(&["classify", s(&y), "--gamma", "1,0,-1,0,0,0"]), "not_mass_linear");
    assert_eq!(domain_error(&["blowup", s(&y), "--face", "X9"]), "unknown_facet");
    assert_eq!(domain_error(&["construct", "bundle-yk", "--a", "1,1,0", "--kappa", "0,0,0,1,0,0"]), "not_in_chamber");
}

#[test]
fn batch_directories_are_deterministic_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    for n in 0..4 {
        let kappa = format!("0,0,0,1,0,{}", 2 + n);
        write(d, &format!("y{n}.polytope.json"), &ok(&["construct", "bundle-yk", "--a", "1,1,0", "--kappa", &kappa]));
    }
    write(d, "ignored.report.json", "{}");
    let one = ok(&["--jobs", "1", "check", s(d), "--h", "0,2,2,0"]);
    let four = ok(&["--jobs", "4", "check", s(d), "--h", "0,2,2,0"]);
    assert_eq!(one, four);
    let entries: Vec<BatchEntry> = round_trip(&one);
    let files: Vec<_> = entries.iter().map(|e| e.file.as_str()).collect();
    assert_eq!(files, ["y0.polytope.json", "y1.polytope.json", "y2.polytope.json", "y3.polytope.json"]);
    assert!(entries.iter().all(|e| e.report.as_ref().is_some_and(|r| r.mass_linear)));

    write(d, "z.json", "not json");
    let out = masslin(&["--jobs", "2", "check", s(d), "--h", "0,2,2,0"]);
    assert_eq!(out.status.code(), Some(2));
    let entries: Vec<BatchEntry> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(entries.last().unwrap().error.as_ref().unwrap().kind, "malformed_input");
}

#[test]
fn text_format_renders_every_command() {
    let dir = TempDir::new().unwrap();
    let y = golden(dir.path());
    let b = write(dir.path(), "b.json", &ok(&["blowup", s(&y), "--face", "F2,F4,G1", "--eps", "1/4"]));
    let out = ok(&["--format", "text", "classify", s(&b), "--gamma", "1,-1,-1,1,0,0,0", "--trace"]);
    assert!(out.contains("tag          b") && out.contains("replay exact true"), "{out}");
    let out = ok(&["--format", "text", "blowdown", s(&b), "--facet", "E1"]);
    assert!(out.contains("by 1/4"), "{out}");
    let out = ok(&["--format", "text", "barycenters", s(&y), "--gamma", GOLDEN_GAMMA]);
    assert!(out.contains("B_4"), "{out}");
    let out = ok(&["--format", "text", "construct", "trapezoid"]);
    assert!(out.starts_with("trapezoid (dim 2, 4 facets)"), "{out}");
}
