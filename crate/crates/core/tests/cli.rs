use std::path::PathBuf;

use freydlab::cli::run_captured;
use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(sub)
}

fn session(name: &str) -> String {
    dir("sessions").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("freydlab").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

/// (golden file, arguments with the session file first after the verb)
const GOLDEN: &[(&str, &[&str])] = &[
    ("point_homology", &["build", "point.flab", "homology"]),
    ("two_relative", &["build", "two_relative.flab", "relative"]),
    ("two_zero_k", &["build", "two_zero_k.flab", "from-k"]),
    ("two_from_k", &["build", "two_from_k.flab", "from-k"]),
    ("two_graded", &["build", "two_graded.flab", "homology"]),
    ("two_dual", &["build", "two_graded.flab", "dual"]),
    ("diamond_add", &["build", "diamond_add.flab", "add"]),
    ("two_iszero", &["iszero", "two_relative.flab", "H_0(1,1)"]),
    ("two_report", &["report", "two_from_k.flab"]),
];

fn golden_args(args: &[&str], threads: &str) -> Vec<String> {
    let mut v = vec![
        "--threads".to_string(),
        threads.to_string(),
        args[0].to_string(),
        session(args[1]),
    ];
    v.extend(args[2..].iter().map(|s| s.to_string()));
    v
}

#[test]
fn golden_outputs_are_byte_identical() {
    for (name, args) in GOLDEN {
        let expected = std::fs::read_to_string(dir("golden").join(format!("{name}.json"))).unwrap();
        for threads in ["1", "4", "4"] {
            let a = golden_args(args, threads);
            let (code, out, err) = run(&a.iter().map(String::as_str).collect::<Vec<_>>());
            assert_eq!(code, 0, "{name}: {err}");
            assert_eq!(out, expected, "{name} with {threads} threads");
        }
    }
}

#[test]
fn point_endomorphisms_are_free_of_rank_one() {
    let v = json(&["build", &session("point.flab"), "homology"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["endomorphisms"][0]["factors"], "free rank 1");
}

#[test]
fn relative_two_has_nine_vertices() {
    let v = json(&["build", &session("two_relative.flab"), "relative"]);
    assert_eq!(v["vertices"], 9);
    assert_eq!(
        v["non_identity_triples"],
        serde_json::json!(["(1,0,0)", "(1,1,0)"])
    );
}

#[test]
fn zero_homology_realizes_to_zero() {
    let v = json(&["build", &session("two_zero_k.flab"), "from-k"]);
    assert_eq!(v["all_zero"], true);
    assert_eq!(v["factorization"], true);
}

#[test]
fn from_k_hom_is_the_integers() {
    let v = json(&["hom", &session("two_from_k.flab"), "H_0(1,0)", "H_0(1,0)"]);
    assert_eq!(v["module"], "Z");
    assert_eq!(v["stage"], 0);
}

#[test]
fn graded_cross_degree_hom_vanishes() {
    let v = json(&[
        "--in",
        "graded",
        "hom",
        &session("two_graded.flab"),
        "H_0(0)",
        "H_1(0)",
    ]);
    assert_eq!(v["module"], "0");
}

#[test]
fn iszero_certificate_replays() {
    let (code, out, _) = run(&["iszero", &session("two_relative.flab"), "H_0(1,1)"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["evidence"]["kind"], "certificate");
    let path = std::env::temp_dir().join(format!("freydlab-cert-{}.json", std::process::id()));
    std::fs::write(&path, &out).unwrap();
    let p = path.to_string_lossy().into_owned();
    let c = json(&["certify", &session("two_relative.flab"), &p]);
    assert_eq!(c["valid"], true);
    assert_eq!(c["subject_matches"], true);
    let (code, out, _) = run(&["certify", &session("two_relative.flab"), &p, "H_0(1,0)"]);
    assert_eq!(code, 1);
    let c: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(c["subject_matches"], false);
    std::fs::remove_file(path).ok();
}

#[test]
fn eval_modes() {
    let v = json(&["eval", &session("two_from_k.flab"), "H_0(1,0)"]);
    assert_eq!(v["value"], "Z");
    let v = json(&[
        "--in",
        "graded",
        "eval",
        &session("point.flab"),
        "H_0(0)",
        "--at",
        "Z/2",
    ]);
    assert_eq!(v["value"], "Z/2");
    let v = json(&[
        "--in",
        "graded",
        "eval",
        &session("point.flab"),
        "coker(2*H_0(id:0))",
        "--ring",
        "Q",
    ]);
    assert_eq!(v["value"], "0");
}

#[test]
fn kernel_of_doubling_is_zero() {
    let v = json(&["kernel", &session("two_from_k.flab"), "2*id(H_0(1,0))"]);
    assert_eq!(v["zero"], "yes");
}

#[test]
fn kproj_section_holds_on_two() {
    let v = json(&[
        "--in",
        "graded",
        "build",
        &session("two_graded.flab"),
        "kproj",
        "--k",
        "0",
    ]);
    assert_eq!(v["section_holds"], true);
    assert_eq!(v["section_value"], "Z");
    let v = json(&["build", &session("two_relative.flab"), "kproj", "--k", "0"]);
    assert_eq!(v["section_holds"], true);
    assert_eq!(v["generators_killed"], true);
}

#[test]
fn open_distinguished_set_fails_check() {
    let (code, out, _) = run(&["check", &session("bad_closure.flab")]);
    assert_eq!(code, 1);
    assert!(out.contains("0<2"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["check", &session("bad_syntax.flab")]);
    assert_eq!(code, 2);
    assert!(err.contains("3:1"), "{err}");
    let (code, _, err) = run(&["hom", &session("two_relative.flab"), "H_0(1,0", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("unclosed"), "{err}");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["build", &session("point.flab"), "nothing"]).0, 2);
}

#[test]
fn prerequisite_failures_exit_one() {
    let (code, _, err) = run(&["build", &session("point.flab"), "kproj", "--k", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("final object is initial"), "{err}");
}

#[test]
fn bound_flags_override_the_environment_default() {
    let (code, out, _) = run(&[
        "--bound-size",
        "1",
        "build",
        &session("two_graded.flab"),
        "dual",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size_bound"], 1);
    assert_eq!(v["mismatches"], serde_json::json!([]));
}

#[test]
fn bounds_spec_parses() {
    let mut b = freydlab::cli::Bounds::default();
    b.apply_env("cert=6, sat=2").unwrap();
    assert_eq!((b.cert, b.sat, b.size), (6, 2, 2));
    assert!(b.apply_env("depth=3").is_err());
    assert!(b.apply_env("cert").is_err());
}

#[test]
fn corrupted_homology_names_the_violation() {
    let (code, out, _) = run(&["check", &session("chain3_corrupt.flab")]);
    assert_eq!(code, 1);
    assert!(
        out.contains("exactness at (2,1,0) in degree 0: at H0(2,0)"),
        "{out}"
    );
}

#[test]
fn quiver_with_relations_and_realization() {
    let s = session("quiver_realization.flab");
    assert_eq!(run(&["check", &s]).0, 0);
    let v = json(&["build", &s, "homology"]);
    assert_eq!(v["factorization"], true);
    assert_eq!(v["homs"][0]["module"], "Z");
    let v = json(&["eval", &s, "coker(2*H_0(u))"]);
    assert_eq!(v["value"], "Z/2");
    let v = json(&["iszero", &s, "ker(H_0(u))"]);
    assert_eq!(v["answer"], "yes");
}
