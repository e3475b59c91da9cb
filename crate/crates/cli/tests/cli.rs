use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn broken(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures/broken")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stitresp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn last_line(o: &Output) -> String {
    stdout(o).lines().last().unwrap_or_default().to_string()
}

#[test]
fn validate_fixture() {
    let o = run(&["validate", fixture("m1.model").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "OK");
    let o = run(&["validate", fixture("k1.kripke").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validate_reports_violations() {
    let o = run(&["validate", broken("oac.model").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("m0:h3, m0:h4"));
    assert_eq!(last_line(&o), "INVALID: 1 violation(s)");

    let o = run(&["--json", "validate", broken("den.kripke").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["violations"][0]["witness"],
        serde_json::json!(["w1", "w2"])
    );
}

#[test]
fn check_formula() {
    let m1 = fixture("m1.model");
    let o = run(&["check", m1.to_str().unwrap(), "m0:h1", "[a]p & <>[a]~p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&["check", m1.to_str().unwrap(), "m0:h3", "p"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn classify_blameworthy() {
    let o = run(&[
        "classify",
        fixture("m1.model").to_str().unwrap(),
        "a",
        "p",
        "m0:h3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("m0:h3 agent=a"));
    assert!(stdout(&o).contains("attitude=Blameworthy"));
    assert_eq!(
        last_line(&o),
        "classified 1 index(es): 0 praiseworthy, 1 blameworthy, 0 neutral"
    );

    let o = run(&[
        "--json",
        "classify",
        fixture("m1.model").to_str().unwrap(),
        "a",
        "p",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let m1 = fixture("m1.model");
    let o = run(&["check", m1.to_str().unwrap(), "m0:h1", "[a]p &"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 6"));
    let o = run(&["check", m1.to_str().unwrap(), "m0:h9", "p"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["classify", m1.to_str().unwrap(), "zed", "p"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.model");
    std::fs::write(&bad, "mode = \"single\"\nagents = [\n").unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn unravel_writes_model_and_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k1.model");
    let o = run(&[
        "unravel",
        fixture("k1.kripke").to_str().unwrap(),
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = run(&["validate", out.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "OK");
    let map = std::fs::read_to_string(dir.path().join("k1.model.embedding.toml")).unwrap();
    assert_eq!(map, "w1 = \"box_w1:w1\"\nw2 = \"box_w1:w2\"\n");
    let o = run(&["check", out.to_str().unwrap(), "box_w1:w2", "Ob a.p"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn correspond_has_no_divergences() {
    let k1 = fixture("k1.kripke");
    let o = run(&[
        "correspond",
        k1.to_str().unwrap(),
        "Os a.~p -> ~Ob a.~~p",
        "I a.p",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(last_line(&o), "correspondence: 4 checks, 0 divergence(s)");
    let o = run(&["correspond", k1.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(last_line(&o), "correspondence: 100 checks, 0 divergence(s)");
}

#[test]
fn soundness_exit_status_and_determinism() {
    let args = [
        "soundness",
        "--trials",
        "6",
        "--instances",
        "2",
        "--seed",
        "4",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(last_line(&a).starts_with("soundness: 31 schemas, 18 models, 0 falsified"));
    assert_eq!(stdout(&a), stdout(&run(&args)));

    let dual = run(&[
        "soundness",
        "--trials",
        "30",
        "--instances",
        "5",
        "--mode",
        "dual",
    ]);
    assert_eq!(dual.status.code(), Some(1));
    assert!(
        last_line(&dual).ends_with("1 falsified (ConSO)"),
        "{}",
        last_line(&dual)
    );
    let dual = run(&[
        "soundness",
        "--trials",
        "30",
        "--instances",
        "5",
        "--mode",
        "dual",
        "--exclude",
        "ConSO",
    ]);
    assert_eq!(dual.status.code(), Some(0));
}

#[test]
fn thread_count_does_not_change_reports() {
    let args = ["--json", "soundness", "--trials", "4", "--instances", "2"];
    let one = Command::new(env!("CARGO_BIN_EXE_stitresp"))
        .args(args)
        .env("STITRESP_THREADS", "1")
        .output()
        .unwrap();
    let three = Command::new(env!("CARGO_BIN_EXE_stitresp"))
        .args(args)
        .env("STITRESP_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, three.stdout);
}
