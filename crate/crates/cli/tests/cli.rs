use std::path::{Path, PathBuf};
use std::process::Command;

use entactic_cli::run;
use entactic_core::catalog::ghz;
use entactic_core::io::pure_from_json;
use serde_json::Value;
use tempfile::TempDir;

struct Output {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Output {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn entactic(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("entactic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn state_file(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut argv = vec!["catalog"];
    argv.extend_from_slice(args);
    let o = entactic(&argv);
    assert_eq!(o.code, 0, "{}", o.stderr);
    write(dir, name, &o.stdout)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_round_trips() {
    let o = entactic(&["catalog", "ghz", "3", "2"]);
    assert_eq!(o.code, 0);
    assert_eq!(pure_from_json(&o.stdout).unwrap(), ghz(3, 2).unwrap());

    let list = entactic(&["catalog"]).json();
    assert!(list["states"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["name"] == "psi-w"));

    let rho = entactic(&["catalog", "w", "--density"]).json();
    assert_eq!(rho["entries"].as_array().unwrap().len(), 64);

    assert_eq!(entactic(&["catalog", "nonesuch"]).code, 2);
    assert_eq!(entactic(&["catalog", "ghz", "3"]).code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(entactic(&["--frobnicate"]).code, 2);
    assert_eq!(entactic(&["frobnicate"]).code, 2);
    assert_eq!(
        entactic(&["measure", "--kind", "nope", "--in", "x"]).code,
        2
    );
    assert_eq!(
        entactic(&["reproduce", "--all", "--only", "gbs-ghz"]).code,
        2
    );
    let help = entactic(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("reproduce"));
}

#[test]
fn measures_on_files() {
    let dir = TempDir::new().unwrap();
    let g = state_file(&dir, "ghz32.json", &["ghz", "3", "2"]);
    let o = entactic(&["measure", "--kind", "gbs", "--in", s(&g)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = o.json();
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(v["certificate"]["kind"], "cut");

    let v = entactic(&["measure", "--kind", "gfs", "--in", s(&g), "--restarts", "4"]).json();
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert_eq!(v["certificate"]["kind"], "product_state");

    let v = entactic(&["measure", "--kind", "rbs-upper", "--in", s(&g)]).json();
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let bell = state_file(&dir, "bell.json", &["bell"]);
    let v = entactic(&["measure", "--kind", "rpure", "--in", s(&bell), "--cut", "1"]).json();
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["cut"], "{1}|{2}");
    assert_eq!(
        entactic(&["measure", "--kind", "rpure", "--in", s(&bell)]).code,
        2
    );
    assert_eq!(
        entactic(&["measure", "--kind", "rpure", "--in", s(&bell), "--cut", "5"]).code,
        2
    );
}

#[test]
fn malformed_input_exits_one_with_diagnostic() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        "{\"n\": 3,\n \"d\": 2,\n \"amplitudes\": [[1, 0]",
    );
    let o = entactic(&["measure", "--kind", "gbs", "--in", s(&bad)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);

    let short = write(
        &dir,
        "short.json",
        r#"{"n": 2, "d": 2, "amplitudes": [[1, 0]]}"#,
    );
    let o = entactic(&["measure", "--kind", "gbs", "--in", s(&short)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("`amplitudes`"), "{}", o.stderr);

    let missing = entactic(&[
        "measure",
        "--kind",
        "gbs",
        "--in",
        "/nonexistent/state.json",
    ]);
    assert_eq!(missing.code, 1);
}

#[test]
fn twirl_and_witness() {
    let dir = TempDir::new().unwrap();
    let w = state_file(&dir, "w.json", &["w"]);
    let v = entactic(&["twirl", "--in", s(&w)]).json();
    assert_eq!(v["lambda_plus"].as_f64().unwrap(), 0.0);
    assert!((v["lambda_rest"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["fully_separable"], true);

    let g = state_file(&dir, "ghz.json", &["ghz", "3", "2"]);
    let v = entactic(&["twirl", "--in", s(&g)]).json();
    assert!((v["lambda_plus"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["fully_separable"], false);

    let o = entactic(&["witness", "--name", "ghz", "--eval", s(&g)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = o.json();
    assert!((v["robustness_lower_bound"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(v["admissible"], true);

    let v = entactic(&["witness", "--name", "w", "--check"]).json();
    assert!((v["trace_values"]["w"].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert!(v["verified_range"]["max"].as_f64().unwrap() <= 1.0 + 1e-6);

    let plain = entactic(&["witness", "--name", "w"]).json();
    assert!(plain["verified_range"].is_null());
}

#[test]
fn symmetric_robustness_is_exact() {
    let v = entactic(&["symmetric-robustness", "--params", "1,0,0"]).json();
    assert_eq!(v["value"], 2.0);
    assert_eq!(v["exact"], serde_json::json!([2, 1]));
    assert_eq!(v["mixer_exact"]["lambda_minus"], serde_json::json!([1, 4]));

    let v = entactic(&["symmetric-robustness", "--params", "1/2,0,1/2"]).json();
    assert_eq!(v["exact"], serde_json::json!([2, 3]));

    assert_eq!(
        entactic(&["symmetric-robustness", "--params", "1,0"]).code,
        2
    );
    assert_eq!(
        entactic(&["symmetric-robustness", "--params", "1,x,0"]).code,
        2
    );
    assert_eq!(
        entactic(&["symmetric-robustness", "--params", "1,1,0"]).code,
        1
    );
    assert_eq!(
        entactic(&["symmetric-robustness", "--params", "-1,1,1"]).code,
        1
    );
}

#[test]
fn convert_certificates_and_maps() {
    let dir = TempDir::new().unwrap();
    let g = state_file(&dir, "ghz.json", &["ghz", "3", "2"]);
    let w = state_file(&dir, "w.json", &["w"]);

    let v = entactic(&["convert", "--from", s(&g), "--to", s(&w), "--theory", "bsp"]).json();
    assert_eq!(v["p_max"], 1.0);
    assert_eq!(v["deterministic"], true);
    assert_eq!(v["theory"], "BSP");

    let o = entactic(&[
        "convert",
        "--from",
        s(&g),
        "--to",
        s(&w),
        "--theory",
        "bsp",
        "--build",
        "--verify",
        "2000",
        "--seed",
        "3",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = o.json();
    assert_eq!(v["preservation"]["violations"], 0);
    assert_eq!(v["map"]["p"], 1.0);

    let missing = entactic(&["convert", "--from", s(&w), "--to", s(&g), "--theory", "fsp"]);
    assert_eq!(missing.code, 1);
    let v = entactic(&[
        "convert",
        "--from",
        s(&w),
        "--to",
        s(&g),
        "--theory",
        "fsp",
        "--r-upper",
        "2",
    ])
    .json();
    assert!((v["p_max"].as_f64().unwrap() - 0.625).abs() < 1e-6);

    let no_mixer = entactic(&[
        "convert",
        "--from",
        s(&w),
        "--to",
        s(&g),
        "--theory",
        "fsp",
        "--r-upper",
        "2",
        "--build",
    ]);
    assert_eq!(no_mixer.code, 2);
    let no_build = entactic(&[
        "convert",
        "--from",
        s(&g),
        "--to",
        s(&w),
        "--theory",
        "bsp",
        "--p",
        "0.5",
    ]);
    assert_eq!(no_build.code, 2);
    let too_high = entactic(&[
        "convert",
        "--from",
        s(&w),
        "--to",
        s(&g),
        "--theory",
        "bsp",
        "--build",
        "--p",
        "1",
    ]);
    assert_eq!(too_high.code, 1);
    assert!(too_high.stderr.contains("exceeds"), "{}", too_high.stderr);
}

#[test]
fn fsp_map_with_supplied_mixer() {
    let dir = TempDir::new().unwrap();
    let w = state_file(&dir, "w.json", &["w"]);
    let o = entactic(&["catalog", "w", "--density"]);
    let w_rho = write(&dir, "w_rho.json", &o.stdout);
    // W as its own target, with the catalog mixer at weight 2
    let mixer = serde_json::to_string(&entactic_core::catalog::w_robustness_mixer()).unwrap();
    let mixer = write(&dir, "mixer.json", &mixer);
    let o = entactic(&[
        "convert",
        "--from",
        s(&w),
        "--to",
        s(&w),
        "--theory",
        "fsp",
        "--r-upper",
        "2",
        "--build",
        "--mixer",
        s(&mixer),
        "--verify",
        "500",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = o.json();
    assert_eq!(v["preservation"]["violations"], 0);
    assert!((v["map"]["p"].as_f64().unwrap() - 0.625).abs() < 1e-6);

    // a pure entangled mixer is rejected
    let o = entactic(&[
        "convert",
        "--from",
        s(&w),
        "--to",
        s(&w),
        "--theory",
        "fsp",
        "--r-upper",
        "2",
        "--build",
        "--mixer",
        s(&w_rho),
    ]);
    assert_eq!(o.code, 1);
}

#[test]
fn reproduce_selection_and_exit_codes() {
    let empty = entactic(&["reproduce", "--only", ""]);
    assert_eq!(empty.code, 0);
    let v = empty.json();
    assert_eq!(v["summary"]["total"], 0);
    assert_eq!(v["schema_version"], 1);

    let none = entactic(&["reproduce"]);
    assert_eq!(none.code, 0);

    assert_eq!(entactic(&["reproduce", "--only", "no-such-claim"]).code, 2);

    let one = entactic(&["reproduce", "--only", "ghz-fs-robustness", "--seed", "5"]);
    assert_eq!(one.code, 0, "{}", one.stderr);
    let v = one.json();
    assert_eq!(v["seed"], 5);
    let checks = v["claims"][0]["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["exact"]["computed"] == serde_json::json!([2, 1])));
    assert!(v["claims"][0].get("wall_time_ms").is_none());

    let failing = entactic(&["reproduce", "--only", "twirl-w-as-stated"]);
    assert_eq!(failing.code, 1);
    assert!(failing.stderr.contains("twirl-w-as-stated"));

    let timed = entactic(&["reproduce", "--only", "gbs-ghz", "--timings"]).json();
    assert!(timed["claims"][0]["wall_time_ms"].is_number());

    let list = entactic(&["reproduce", "--list"]).json();
    assert!(list.as_array().unwrap().len() >= 13);
}

#[test]
fn report_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let o = entactic(&[
        "reproduce",
        "--only",
        "gbs-ghz,robustness-formulas",
        "--out",
        s(&path),
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), o.stdout);
}

#[test]
fn binary_reads_seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_entactic");
    let out = Command::new(bin)
        .args(["reproduce", "--only", "gbs-ghz"])
        .env("ENTACTIC_SEED", "11")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 11);

    let out = Command::new(bin)
        .args(["reproduce", "--only", "gbs-ghz", "--seed", "4"])
        .env("ENTACTIC_SEED", "11")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 4);

    let verbose = Command::new(bin)
        .args(["--verbose", "reproduce", "--only", "gbs-ghz"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&verbose.stderr).contains("PASS AC-1"));

    let bad = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
