//! End-to-end runs of the binary: output formats, determinism, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fillinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fillinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("fillinv-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn fillrad_on_the_48_cycle_prints_pi_over_three() {
    let out_path = tmp("fr48.csv");
    let out = fillinv(&[
        "fillrad",
        "--fixture",
        "cycle:48:6.283185307",
        "--ring",
        "z2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let radius: f64 = stdout
        .split("radius ")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((radius - std::f64::consts::FRAC_PI_3).abs() < 1e-9);
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.starts_with("scale,nerve_simplex_counts,class_bounds\n"));
    assert!(csv.lines().last().unwrap().starts_with("radius,"));
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn reports_are_deterministic() {
    let args = ["fillrad", "--fixture", "torus:3:3", "--ring", "z2"];
    let a = fillinv(&args);
    let b = fillinv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let e1 = fillinv(&["fixture", "emit", "--fixture", "rp2:1"]);
    let e2 = fillinv(&["fixture", "emit", "--fixture", "rp2:1"]);
    assert!(e1.status.success());
    assert_eq!(e1.stdout, e2.stdout);
}

#[test]
fn homology_of_rp2_reports_torsion() {
    let out = fillinv(&["homology", "--fixture", "rp2:1", "--ring", "z"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim 1: rank 0 torsion [2]"));
}

#[test]
fn invalid_ring_flag_exits_one() {
    let out = fillinv(&["fillrad", "--fixture", "cycle:4:4", "--ring", "gf7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_is_a_clean_failure() {
    let out = fillinv(&["fillrad", "--ring", "z2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--fixture") || err.contains("--input"));
}

#[test]
fn fixture_emit_round_trips_through_fillrad_input() {
    let path = tmp("torus.json");
    let emit = fillinv(&[
        "fixture",
        "emit",
        "--fixture",
        "torus:3:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(emit.status.success());
    let from_file = fillinv(&[
        "fillrad",
        "--input",
        path.to_str().unwrap(),
        "--ring",
        "z2",
    ]);
    let from_fixture = fillinv(&["fillrad", "--fixture", "torus:3:3", "--ring", "z2"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_fixture.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn complex_validate_reports_strictness() {
    let path = tmp("tri.json");
    std::fs::write(
        &path,
        r#"{"vertex_count": 3, "simplices": {"2": [[0, 1, 2]]}}"#,
    )
    .unwrap();
    let closing = fillinv(&["complex", "validate", "--input", path.to_str().unwrap()]);
    assert!(closing.status.success());
    let text = String::from_utf8(closing.stdout).unwrap();
    assert!(text.contains("inferred_faces 3"));

    let strict = fillinv(&[
        "complex",
        "validate",
        "--input",
        path.to_str().unwrap(),
        "--strict",
    ]);
    assert_eq!(strict.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn experiment_compare_csv_shape() {
    let out = fillinv(&[
        "experiment",
        "compare",
        "--fixture",
        "torus:3:3",
        "--map",
        "identity",
        "--t",
        "1,1/2",
        "--ring",
        "z2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t,ring,fillrad_V,fillrad_W,vol_V,vol_W,ok"));
    let rows: Vec<&str> =
        text.lines().filter(|l| l.starts_with('1') || l.starts_with("0.5")).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row.ends_with(",1"), "row not ok: {row}");
    }
}

#[test]
fn fillvol_nerve_ambient_writes_certificate_json() {
    let path = tmp("fv.json");
    let out = fillinv(&[
        "fillvol",
        "--fixture",
        "cycle:8:8",
        "--ring",
        "q",
        "--ambient",
        "nerve:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["ring"], "q");
    assert_eq!(json["mode"], "euclidean-upper-bound");
    assert_eq!(json["is_certified_optimal"], true);
    assert!(json["value"].as_f64().unwrap() > 0.0);
    assert!(json["chain"].as_array().unwrap().len() > 0);
    std::fs::remove_file(&path).ok();

    // a nerve scale below the class's birth is a clean failure
    let out = fillinv(&[
        "fillvol",
        "--fixture",
        "cycle:8:8",
        "--ring",
        "q",
        "--ambient",
        "nerve:0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lipschitz_check_prints_profiles() {
    let out = fillinv(&[
        "lipschitz",
        "check",
        "--fixture",
        "cycle:6:6",
        "--domain",
        "0,2,3",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("global dilation before 1"));
    assert!(text.contains("per-point dilations preserved: true"));
}

#[test]
fn map_check_reports_monotonicity_and_degree() {
    let out = fillinv(&[
        "map",
        "check",
        "--fixture",
        "torus:3:3",
        "--map",
        "translate",
        "--seed",
        "4",
        "--ring",
        "z",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(2, 1)-monotone: true"));
    assert!(text.contains("degree over z: 1"));
}

#[test]
fn extend_rejects_tiny_radius_with_exit_one() {
    let out = fillinv(&[
        "extend",
        "--fixture",
        "torus:3:3",
        "--cell",
        "pair:0:4",
        "--radius",
        "0.001",
        "--mesh",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("radius too small") || err.contains("shortens"));
}
