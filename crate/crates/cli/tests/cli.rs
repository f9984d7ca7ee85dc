use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floatspline"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn circle_degree_nine_headline() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["circle", "--degree", "9"]);
    let r = json(d.path(), "circle-deg9.json");
    assert_eq!(r["vertex_count"], 12);
    assert!(rel(r["bspline"]["deviation"].as_f64().unwrap(), 5.92221e-8) < 5e-3);
    assert!(rel(r["bezier"]["deviation"].as_f64().unwrap(), 3.19524e-2) < 5e-2);
    for ext in ["csv", "svg"] {
        assert!(d.path().join(format!("circle-deg9.{ext}")).exists());
    }
}

#[test]
fn cubic_uses_a_hexagon() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["--samples", "2000", "circle", "--degree", "3"]);
    let r = json(d.path(), "circle-deg3.json");
    assert_eq!(r["vertex_count"], 6);
    assert!(rel(r["bspline"]["deviation"].as_f64().unwrap(), 8.33333e-1) < 5e-3);
}

#[test]
fn invalid_degree_is_a_usage_error_and_writes_nothing() {
    let d = TempDir::new().unwrap();
    let out = run(d.path(), &["circle", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 0);
}

#[test]
fn kernel_rejection_leaves_no_files() {
    let d = TempDir::new().unwrap();
    let out = run(d.path(), &["spiral", "--count", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 0);
}

#[test]
fn missing_input_is_an_io_error() {
    let d = TempDir::new().unwrap();
    let out = run(d.path(), &["convert", "--input", "no-such-file.json", "--to", "clamped"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn perturbation_amplifies() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["--format", "json", "perturb"]);
    let r = json(d.path(), "perturb.json");
    assert!(r["amplification"].as_f64().unwrap() > 1e3);
    assert!(rel(r["perturbed_deviation"].as_f64().unwrap(), 3.06354e-1) < 5e-2);
    assert!(!d.path().join("perturb.csv").exists());
}

#[test]
fn compare_variants() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["--samples", "4000", "compare"]);
    let r = json(d.path(), "compare.json");
    let extrema = |side: &str| {
        r[side]["signature"]["events"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e["kind"] != "inflection")
            .count()
    };
    assert!(extrema("bezier") >= 1);
    assert_eq!(extrema("bspline"), 0);

    ok(d.path(), &["--samples", "4000", "compare", "--q", "1"]);
    let r = json(d.path(), "compare.json");
    let spread = |side: &str| r[side]["relative_spread"].as_f64().unwrap();
    assert!(spread("bspline") * 5.0 < spread("bezier"));

    ok(d.path(), &["--samples", "4000", "compare", "--count", "3"]);
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["--samples", "2000", "compare", "--q", "1.5", "--theta", "40", "--count", "6"];
    ok(a.path(), &args);
    ok(b.path(), &args);
    for name in ["compare.json", "compare-bezier.csv", "compare-bspline.csv", "compare.svg"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(x == y, "{name} differs between runs");
    }
}

#[test]
fn spiral_refined_sampling_and_polyline() {
    let d = TempDir::new().unwrap();
    let text = ok(d.path(), &["spiral", "--count", "40", "--h", "0.5"]);
    assert!(text.contains("all equivalent: true"), "{text}");
    assert!(d.path().join("spiral-kappa2-spline.csv").exists());

    let text = ok(d.path(), &["spiral", "--degree", "1"]);
    assert!(text.contains("all equivalent: false"), "{text}");
    let r = json(d.path(), "spiral.json");
    assert!(r["comparisons"].as_array().unwrap().iter().all(|c| c["equivalent"] == false));
}

#[test]
fn typical_constant_curvature() {
    let d = TempDir::new().unwrap();
    let text = ok(d.path(), &["--samples", "500", "typical", "--q", "1", "--theta", "30", "--count", "12", "--degree", "9"]);
    assert!(text.contains("curvature constant"), "{text}");
    let r = json(d.path(), "typical.json");
    assert!(r["curvature"]["relative_spread"].as_f64().unwrap() < 1e-6);
}

#[test]
fn convert_round_trip() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["--samples", "200", "typical", "--q", "1.1", "--count", "14", "--degree", "7"]);
    let src = d.path().join("typical-polygon.json");
    let c = d.path().join("c");
    ok(&c, &["convert", "--input", src.to_str().unwrap(), "--to", "clamped", "--verify"]);
    let back = d.path().join("f");
    ok(&back, &["convert", "--input", c.join("converted.json").to_str().unwrap(), "--to", "float", "--verify"]);

    let orig = json(d.path(), "typical-polygon.json");
    let again = json(&back, "converted.json");
    assert_eq!(orig["degree"], again["degree"]);
    assert_eq!(again["format"], "float");
    let pts = |v: &Value| -> Vec<f64> { v["points"].as_array().unwrap().iter().flat_map(|p| p.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect::<Vec<_>>()).collect() };
    for (x, y) in pts(&orig).iter().zip(pts(&again)) {
        assert!((x - y).abs() < 1e-9 * 10.0);
    }

    ok(&d.path().join("s"), &["convert", "--input", src.to_str().unwrap(), "--to", "segments"]);
    let segs = json(&d.path().join("s"), "segments.json");
    assert_eq!(segs.as_array().unwrap().len(), 14 - 7);
}

fn dodecagon_json(degree: usize, count: usize) -> String {
    let pts: Vec<[f64; 2]> = (0..count)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / 12.0;
            [10.0 * a.cos(), 10.0 * a.sin()]
        })
        .collect();
    serde_json::json!({"degree": degree, "format": "float", "dim": 2, "points": pts}).to_string()
}

#[test]
fn join_split_halves_is_identity() {
    let d = TempDir::new().unwrap();
    let whole: Value = serde_json::from_str(&dodecagon_json(5, 20)).unwrap();
    let pts = whole["points"].as_array().unwrap();
    let half = |r: std::ops::Range<usize>| serde_json::json!({"degree": 5, "format": "float", "dim": 2, "points": pts[r].to_vec()}).to_string();
    let (a, b) = (d.path().join("a.json"), d.path().join("b.json"));
    std::fs::write(&a, half(0..9)).unwrap();
    std::fs::write(&b, half(9..20)).unwrap();
    let text = ok(d.path(), &["join", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(text.contains("joined 9 + 0 + 11"), "{text}");
    let joined = json(d.path(), "joined.json");
    assert_eq!(joined["points"], whole["points"]);
    assert_eq!(json(d.path(), "join.json")["smooth"], true);
}

#[test]
fn position_exit_codes() {
    let d = TempDir::new().unwrap();
    let src = d.path().join("p.json");
    std::fs::write(&src, dodecagon_json(9, 20)).unwrap();
    let src = src.to_str().unwrap();

    let text = ok(d.path(), &["position", "--input", src, "--shape", "any", "--target-start", "1,2;1,0", "--target-end", "8,3;0,1"]);
    assert!(text.contains("converged true"), "{text}");
    let r = json(d.path(), "position.json");
    assert!(r["ends"].as_array().unwrap().iter().all(|e| e["offset"].as_f64().unwrap() < 1e-9));

    let out = run(d.path(), &["position", "--input", src, "--target-start", "1,2"]);
    assert_eq!(out.status.code(), Some(2));

    // a rigid shift of one end block cannot keep discrete curvature monotone
    let out = run(d.path(), &["position", "--input", src, "--max-iter", "3", "--target-start", "0,0;1,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(d.path().join("positioned.json").exists());
}

#[test]
fn seeded_check() {
    let d = TempDir::new().unwrap();
    ok(d.path(), &["--seed", "3", "check", "--cases", "40", "--max-degree", "8"]);
    let r = json(d.path(), "check.json");
    assert_eq!(r["seed"], 3);
    assert_eq!(r["pass"], true);
}
