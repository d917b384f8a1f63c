use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use scx_cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn scx(args: &[&str]) -> scx_cli::Response {
    run(std::iter::once("scx").chain(args.iter().copied()))
}

fn json_of(r: &scx_cli::Response) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

#[test]
fn verify_coherent_cubes_passes() {
    let r = scx(&["verify", "coherent-cubes"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = json_of(&r);
    assert_eq!(v["suite"], "coherent-cubes");
    assert_eq!(v["passed"], true);
    // 56 windows (i ≤ j ≤ n ≤ 5) plus the associativity check
    assert_eq!(v["checks"].as_array().unwrap().len(), 57);
}

#[test]
fn homology_of_the_two_sphere() {
    let b = fixture("boundary3.json");
    let r = scx(&["homology", "--input", &b, "--bound", "3"]);
    assert_eq!(r.code, 0);
    let v = json_of(&r);
    let betti: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 0, 1, 0]);
    assert_eq!(v["grade"], "not_acyclic");
}

#[test]
fn flat_triangle_is_not_a_bicategory() {
    let f = fixture("flat2.json");
    let r = scx(&["check-bicat", "--input", &f, "--bound", "3"]);
    assert_eq!(r.code, 1);
    let v = json_of(&r);
    assert_eq!(v["status"], "no");
    assert_eq!(v["witness"]["generator"], "A(2,1)");
    let s = fixture("sharp2.json");
    let r = scx(&["check-bicat", "--input", &s, "--bound", "3"]);
    assert_eq!((r.code, json_of(&r)["status"].as_str()), (0, Some("semi_decided_yes")));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let r = scx(&["homology", "--input", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("error"));

    // well-formed JSON violating the simplicial identities
    let broken = r#"{"top_dim":1,"generators":[["a","b"],["e"]],"faces":{"e":[{"g":"a","word":[]}]}}"#;
    std::fs::write(&bad, broken).unwrap();
    assert_eq!(scx(&["homology", "--input", bad.to_str().unwrap()]).code, 2);

    let b = fixture("boundary3.json");
    assert_eq!(scx(&["hom", "--base", &b, "--from", "0", "--to", "7"]).code, 3);
    assert_eq!(scx(&["build", "--shape", "horn", "--n", "2", "--i", "5"]).code, 3);
    assert_eq!(scx(&["verify", "no-such-suite"]).code, 3);
    assert_eq!(scx(&["no-such-command"]).code, 2);
}

#[test]
fn reports_are_byte_identical() {
    for args in [vec!["verify", "segal-round-trips", "--seed", "7"], vec!["verify", "filtrations", "--format", "text"], vec!["build", "--shape", "collapsed-k"]]
    {
        assert_eq!(scx(&args), scx(&args));
    }
    let a = json_of(&scx(&["verify", "segal-round-trips"]));
    let b = json_of(&scx(&["verify", "segal-round-trips", "--seed", "1"]));
    assert_eq!((a["seed"].as_u64(), b["seed"].as_u64()), (Some(0), Some(1)));
    assert_eq!(a["passed"], true);
    assert_eq!(b["passed"], true);
}

#[test]
fn build_round_trips_through_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d3 = dir.path().join("d3.json");
    assert_eq!(scx(&["build", "--shape", "simplex", "--n", "3", "--out", d3.to_str().unwrap()]).code, 0);
    let d3 = d3.to_str().unwrap();

    let h = json_of(&scx(&["hom", "--base", d3, "--from", "0", "--to", "3"]));
    assert_eq!(h["f_vector"], serde_json::json!([4, 5, 2]));

    let sd = json_of(&scx(&["subdivide", "--input", d3]));
    assert_eq!(sd["dim_labels"].as_object().unwrap().len(), 15);

    let seg = scx(&["segal", "--input", d3]);
    assert_eq!(seg.code, 0);
    assert_eq!(json_of(&seg)["category_object"]["status"], "semi_decided_yes");

    let jt = scx(&["jt-check", "--input", d3, "--n", "1"]);
    assert_eq!(jt.code, 0);
    assert!(json_of(&jt)["fibers"].as_array().unwrap().iter().all(|f| f["certificate"]["grade"] == "witness"));

    let b = fixture("boundary3.json");
    let seg = scx(&["segal", "--input", &b]);
    assert_eq!(seg.code, 1);
    assert_eq!(json_of(&seg)["category_object"]["witness"]["kind"], "spine");
}

#[test]
fn slices_filtrations_and_free_categories() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    let cat = serde_json::to_string(&scx_core::sset::FinCategory::parallel_pair().to_json()).unwrap();
    std::fs::write(&pair, cat).unwrap();
    let z = dir.path().join("z.json");
    assert_eq!(scx(&["build", "--shape", "scaled-nerve", "--input", pair.to_str().unwrap(), "--out", z.to_str().unwrap()]).code, 0);
    let h = json_of(&scx(&["slice", "--input", z.to_str().unwrap(), "--from", "a", "--to", "b"]));
    assert_eq!(h["f_vector"], serde_json::json!([2]));

    let r = scx(&["certify-filtration", "--family", "swww", "--n", "3", "--i", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(json_of(&r)["steps"].as_array().unwrap().len(), 6);
    let t = scx(&["certify-filtration", "--family", "preperc", "--n", "2", "--format", "text"]);
    assert!(t.stdout.contains("along Λ^3_3"), "{}", t.stdout);

    let p = dir.path().join("p.json");
    std::fs::write(&p, r#"{"kind":"free","n":2,"generators":["a","b"],"bound":3}"#).unwrap();
    let f = json_of(&scx(&["free-cat", "--input", p.to_str().unwrap(), "--from", "0", "--to", "2", "--bound", "2"]));
    assert_eq!(f["elements"].as_array().unwrap().len(), 4);
    assert_eq!(f["stabilized"], true);
    // the colimit needs one more level than the preSegal set provides
    assert_eq!(scx(&["free-cat", "--input", p.to_str().unwrap(), "--from", "0", "--to", "2", "--bound", "3"]).code, 3);
}

#[test]
fn binary_exit_code_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_scx"))
        .args(["check-bicat", "--input", &fixture("flat2.json"), "--bound", "3", "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["witness"]["generator"], "A(2,1)");
}
