use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use caustica::poly::parse_poly;
use caustica::scalar::q;
use serde_json::Value;

fn scene(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caustica")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, sub: &str, scene_path: &Path, extra: &[&str]) -> Output {
    let mut args = vec![sub, "--scene", scene_path.to_str().unwrap(), "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn read_poly(path: &Path) -> caustica::poly::QPoly {
    parse_poly(std::fs::read_to_string(path).unwrap().trim(), &["x", "y"]).unwrap()
}

#[test]
fn ovals_of_circle_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), "ovals", &scene("reference.toml"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let got = read_poly(&dir.path().join("ovals.poly"));
    let printed = parse_poly("x^2 + y^2", &["x", "y"]).unwrap();
    let inner = &printed.scale(&q(-72, 1)) + &parse_poly("144*x + 192", &["x", "y"]).unwrap();
    let expected = &(&inner * &inner) - &printed.scale(&q(9216, 1));
    assert!(got.is_scalar_multiple_of(&expected));
    let params: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("ovals.json")).unwrap()).unwrap();
    assert_eq!(params[0]["b"][0], "8/9");
    assert!(std::fs::read_to_string(dir.path().join("ovals.svg")).unwrap().contains("stroke=\"green\""));

    let line = tempfile::tempdir().unwrap();
    let out = run_in(line.path(), "ovals", &scene("line.toml"), &[]);
    assert!(out.status.success());
    assert_eq!(read_poly(&line.path().join("ovals.poly")).total_degree(), 2);
}

#[test]
fn bad_rational_is_a_located_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let text = std::fs::read_to_string(scene("reference.toml")).unwrap().replace("\"1/3\"", "\"1/0\"");
    std::fs::write(&path, text).unwrap();
    let out = run_in(dir.path(), "ovals", &path, &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid rational `1/0`") && err.contains("line 9"), "{err}");
}

#[test]
fn caustic_needs_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), "caustic", &scene("line.toml"), &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("needs a circle mirror"));
    let out = run_in(dir.path(), "caustic", &scene("reference.toml"), &["--specialize", "r=1/3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reflection_caustic_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), "caustic", &scene("reflection.toml"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let caustic = read_poly(&dir.path().join("caustic.poly"));
    assert!(caustic.exact_div(&parse_poly("x^2 - 8*y^2", &["x", "y"]).unwrap()).is_ok());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("caustic.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["report"]["r"], "1/3");
    assert_eq!(report["report"]["radical_match"], true);
    assert!(dir.path().join("raw.poly").exists());
}

#[test]
fn render_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = run_in(d.path(), "render", &scene("reference.toml"), &["--samples", "24"]);
        assert!(out.status.success());
    }
    let first = std::fs::read(a.path().join("render.svg")).unwrap();
    assert_eq!(first, std::fs::read(b.path().join("render.svg")).unwrap());
    let svg = String::from_utf8(first).unwrap();
    for color in ["blue", "orange", "red", "green", "black"] {
        assert!(svg.contains(&format!("\"{color}\"")), "{color}");
    }
    // no exponent notation in numbers
    let bytes = svg.as_bytes();
    assert!(!bytes.windows(2).any(|w| w[0].is_ascii_digit() && w[1] == b'e'));
}

#[test]
fn zero_samples_draw_mirror_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), "render", &scene("reference.toml"), &["--samples", "0"]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(dir.path().join("render.svg")).unwrap();
    assert!(svg.contains("<ellipse"));
    assert!(!svg.contains("<path"));
}

#[test]
fn other_scenes_render() {
    for name in ["line.toml", "parallel.toml", "reflection.toml"] {
        let dir = tempfile::tempdir().unwrap();
        let out = run_in(dir.path(), "render", &scene(name), &["--samples", "16"]);
        assert!(out.status.success(), "{name}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), "verify", &scene("reference.toml"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["checks"].as_array().unwrap().len(), 5);

    let out = run_in(dir.path(), "verify", &scene("reference.toml"), &["--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));

    let out = run_in(dir.path(), "verify", &scene("reflection.toml"), &[]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert!(report["degenerate"].is_string());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let out = run_in(dir.path(), "verify", &scene("line.toml"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
