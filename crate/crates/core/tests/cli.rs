use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_singzeta"));
    c.env_remove("SINGZETA_SEED");
    c
}

fn member(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/members").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeta_of_the_sphere() {
    let o = run(&["zeta", "z1^2+z2^2+z3^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1-t^2)^-1\n");
}

#[test]
fn sigma_star_check() {
    let o = run(&["sigma-star", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "7 cones, all unimodular\n");
}

#[test]
fn compare_expect_equal_fails_on_the_pair() {
    let (a, b) = (member("g0"), member("g1"));
    let o = bin()
        .args(["family", "compare", "--expect-equal"])
        .arg(&a)
        .arg(&b)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("mu 39"), "{text}");
    assert!(text.contains("mu 40"), "{text}");
    let o = bin().args(["family", "compare"]).arg(&a).arg(&b).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["zeta"]).status.code(), Some(2));
    assert_eq!(run(&["--mode", "sometimes", "zeta", "z1^2"]).status.code(), Some(2));
    let o = run(&["zeta", "z1^-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 4"));
    assert_eq!(run(&["family", "zeta", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_reports_are_deterministic_under_a_seed() {
    let args = |seed: &str| {
        vec![
            "--json".to_string(),
            "--seed".into(),
            seed.into(),
            "--mode".into(),
            "randomized".into(),
            "family".into(),
            "compare".into(),
            member("g0").display().to_string(),
            member("g2").display().to_string(),
        ]
    };
    let a = bin().args(args("17")).output().unwrap();
    let b = bin().args(args("17")).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "singzeta/1");
    assert_eq!(v["result"]["zeta_equal"], true);

    let analyze = |env: Option<&str>| {
        let mut c = bin();
        c.args(["--json", "--mode", "randomized", "analyze", "z1^2+z2^3+z3^5"]);
        if let Some(s) = env {
            c.env("SINGZETA_SEED", s);
        }
        c.output().unwrap().stdout
    };
    assert_eq!(analyze(Some("5")), analyze(Some("5")));
}

#[test]
fn family_check_flags_the_node_on_h() {
    let o = bin().args(["family", "check"]).arg(member("g0")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin().args(["family", "check"]).arg(member("g1")).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("h vanishes at [1:1:1]"));
}

#[test]
fn resgraph_build_and_compare() {
    let o = bin().args(["resgraph", "build"]).arg(member("g0")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("graph resolution {"));
    let o = bin()
        .args(["resgraph", "compare", "--expect-equal"])
        .arg(member("g0"))
        .arg(member("g2"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "isomorphic: yes\n");
    let o = bin().args(["resgraph", "build"]).arg(member("g1")).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn milnor_and_parse_commands() {
    let o = run(&["milnor", "x^2+y^3+z^5"]);
    assert!(stdout(&o).contains("newton number: 8"));
    assert!(stdout(&o).contains("milnor number from zeta: 8"));
    let o = run(&["parse", "--nvars", "2", "v1 v2 + (v1+v2)^2"]);
    assert_eq!(stdout(&o), "z1^2 + 3*z1*z2 + z2^2\n");
    let o = run(&["family", "mu2", "--a", "-1/2", "--b", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
