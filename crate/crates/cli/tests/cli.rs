use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn nilcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcone"))
        .env_remove("NILCONE_CHI_CACHE")
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs without touching any persistent cache.
fn run(args: &[&str]) -> Output {
    let mut all = vec!["--no-cache"];
    all.extend_from_slice(args);
    nilcone(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn chi_examples() {
    assert_eq!(stdout(&run(&["chi", "1,1,1", "1,1"])).trim(), "3");
    assert_eq!(stdout(&run(&["chi", "3", ""])).trim(), "0");
    let o = run(&["--format", "json", "chi", "2,1", "2,2"]);
    assert!(o.status.success());
    assert!(json(&o)["chi"].as_u64().unwrap() > 0);
}

#[test]
fn census_examples() {
    let an = json(&run(&["--format", "json", "census", "an", "2,3"]));
    assert_eq!((an["count"].as_u64(), an["dim"].as_u64()), (Some(3), Some(6)));
    assert_eq!(an["consistent"], true);

    let tn = json(&run(&["--format", "json", "census", "tn", "1,1"]));
    assert_eq!((tn["count"].as_u64(), tn["dim"].as_u64()), (Some(2), Some(1)));

    let top = json(&run(&["--format", "json", "census", "tn-top", "1,3"]));
    assert_eq!(top["dim"].as_u64(), Some(10));
    assert_eq!(top["codim"].as_u64(), Some(1));
    assert!(top["count"].as_u64().unwrap() > 0);
}

#[test]
fn symbolic_records_are_rendered() {
    let o = run(&["census", "tn-strata", "1,4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1·ψ(2,1,1)"));
    let j = json(&run(&["--format", "json", "census", "tn-strata", "1,4"]));
    assert_eq!(j["strata"][0]["count"]["psi"], "unknown(2,1,1)");
    assert_eq!(j["strata"][1]["count"].as_u64(), Some(2));
}

#[test]
fn build_then_verify_roundtrip() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "point.json");
    let b = run(&["--out", &file, "build", "an", "1,2,1", "--strata", "(1);(2);(1)"]);
    assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));
    let v = run(&["verify", &file, "--strata", "(1);(2);(1)"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).trim_end().ends_with("PASS"));
}

#[test]
fn zero_rep_fails_against_top_strata() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "zero.json");
    std::fs::write(
        &file,
        r#"{"kind":"A","v":[1,2,1],"maps":[{"edge":1,"B":[[0,1],[0,1]],"Bbar":[[0,1],[0,1]]},{"edge":2,"B":[[0,1],[0,1]],"Bbar":[[0,1],[0,1]]}]}"#,
    )
    .unwrap();
    let v = run(&["verify", &file, "--strata", "(1);(2);(1)"]);
    assert_eq!(v.status.code(), Some(1), "{}", String::from_utf8_lossy(&v.stderr));
}

#[test]
fn probe_certifies_the_two_row_top_stratum() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "top.json");
    let b = run(&["--out", &file, "build", "tn", "1,3", "--strata", "(1);(2,1)"]);
    assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));
    let p = run(&["--format", "json", "probe", &file, "--predict", "10"]);
    assert_eq!(p.status.code(), Some(0));
    let r = json(&p);
    assert_eq!(r["certified"], true);
    assert_eq!(r["chart"], "flag");
    assert_eq!(r["local_dim_bound"].as_u64(), Some(10));

    let wrong = run(&["probe", &file, "--predict", "9"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn json_output_round_trips() {
    let out = run(&["build", "tn", "1,3", "--strata", "(1);(2,1)"]);
    let first: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "again.json");
    std::fs::write(&file, stdout(&out)).unwrap();
    let verify = run(&["--format", "json", "verify", &file, "--strata", "(1);(2,1)"]);
    assert_eq!(json(&verify)["pass"], true);
    assert_eq!(first["kind"], "T");
}

#[test]
fn commands_are_deterministic() {
    let args = ["--seed", "5", "--trials", "300", "histogram", "4"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let b = ["build", "tn", "1,3", "--strata", "(1);(2,1)", "--seed", "3"];
    assert_eq!(stdout(&run(&b)), stdout(&run(&b)));
}

#[test]
fn cache_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let cache = path(&dir, "chi.json");
    let cases: [&[&str]; 3] = [
        &["chi", "2,2,1", "2,1,1"],
        &["census", "an", "2,3,2"],
        &["census", "tn-strata", "1,2,3"],
    ];
    for args in cases {
        let plain = stdout(&run(args));
        let mut cached = vec!["--cache", cache.as_str()];
        cached.extend_from_slice(args);
        let cold = stdout(&nilcone(&cached));
        let warm = stdout(&nilcone(&cached));
        assert_eq!(plain, cold, "{args:?}");
        assert_eq!(plain, warm, "{args:?}");
    }
    assert!(Path::new(&cache).exists());
}

#[test]
fn cache_path_from_environment() {
    let dir = TempDir::new().unwrap();
    let cache = path(&dir, "env.json");
    let o = Command::new(env!("CARGO_BIN_EXE_nilcone"))
        .env("NILCONE_CHI_CACHE", &cache)
        .args(["chi", "2,1", "2,2"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(Path::new(&cache).exists());
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = TempDir::new().unwrap();
    let cache = path(&dir, "bad.json");
    std::fs::write(&cache, "not json").unwrap();
    let o = nilcone(&["--cache", &cache, "chi", "1,1,1", "1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["chi", "1,2", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kostant", "0,x"]).status.code(), Some(2));
    assert_eq!(run(&["build", "an", "1,2", "--strata", "(1);(1)"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/point.json", "--strata", "(1)"]).status.code(), Some(2));
    assert_eq!(run(&["census", "tn-top", "1,1"]).status.code(), Some(2));
}
