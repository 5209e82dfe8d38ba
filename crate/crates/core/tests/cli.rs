use std::io::Write;
use std::process::{Command, Output, Stdio};

use facet_forest::betti::{betti_oracle, BettiTable};
use facet_forest::parse::{parse_ideal_str, StructuredComplex};
use facet_forest::structure::is_forest_bruteforce;
use serde_json::Value;

const SAMPLE: &str = "xyz, yzv, yu, vw, wt";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_facet-forest"));
    c.env_remove("FACET_FOREST_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_exit_codes() {
    let o = run(&["check", SAMPLE]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("good leaves: F0, F2, F4"));
    let o = run(&["check", "xy, yzu, xz"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
    let o = run(&["check", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn reads_stdin() {
    let mut child = bin().arg("check").stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(SAMPLE.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tree: yes"));
}

#[test]
fn glo_orders() {
    let o = run(&["glo", SAMPLE, "--leaf", "F0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("order: F0, F1, F2, F3, F4"));
    assert!(s.contains("strict: no"));
    let o = run(&["glo", SAMPLE, "--leaf", "F1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a good leaf"));
    let o = run(&["glo", "ab, bc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order: F0, F1"));
}

#[test]
fn split_five_facets() {
    let o = run(&["split", SAMPLE]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("J: xyz, yzv, yu"));
    assert!(s.contains("K: vw, wt"));
    assert!(s.contains("J∩K generators: yzvw, yvuw, yuwt, xyzwt"));
    assert!(s.contains("PASS"));
    let o = run(&["split", SAMPLE, "--method", "recursive", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["identity"]["holds"], true);
}

#[test]
fn betti_methods() {
    for method in ["oracle", "recursive", "glo"] {
        let o = run(&["betti", SAMPLE, "--method", method, "--compare", "oracle"]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let s = stdout(&o);
        assert!(s.starts_with("   0 1 2 3\n1: 3 1 . .\n2: 2 6 3 .\n3: . 1 2 1\n"), "{s}");
        assert!(s.contains("identical"));
        assert!(s.contains("reg (diagram): 3") && s.contains("reg (literal): 4") && s.contains("projdim: 3"));
    }
    let o = run(&["betti", SAMPLE, "--method", "delta", "--compare", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["betti", "vw, wt", "--rows", "literal"]);
    assert!(stdout(&o).starts_with("   0 1\n2: 2 1\n"));
    let o = run(&["betti", "xy, yz, xz", "--method", "recursive"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structured_round_trip() {
    let o = run(&["betti", SAMPLE, "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "betti");
    let input: StructuredComplex = serde_json::from_value(v["input"].clone()).unwrap();
    let c = input.into_complex().unwrap().complex;
    assert_eq!(c, parse_ideal_str(SAMPLE).unwrap());
    let table: BettiTable = serde_json::from_value(v["result"]["table"].clone()).unwrap();
    assert_eq!(table, betti_oracle(&c).unwrap());
    assert_eq!(v["result"]["reg_diagram"], 3);
}

#[test]
fn structured_file_and_named_vars() {
    let dir = std::env::temp_dir().join(format!("facet-forest-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sample.json");
    let doc = r#"{"facets": [["x","y","z"],["y","z","v"],["y","u"],["v","w"],["w","t"]]}"#;
    std::fs::write(&path, doc).unwrap();
    let o = run(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F4=wt"));

    let o = run(&["check", "x1*x2, x2*x3", "--vars", "x1,x2,x3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F0=x1*x2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bounds_command() {
    let o = run(&["bounds", SAMPLE, "--partition", "0,1,2;3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("projdim: 3 ≥ max(2, 1) = 2"));
    assert!(s.contains("reg: 3 ≥ max(2, 1) = 2"));
    let o = run(&["bounds", SAMPLE, "--partition", "0,1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["bounds", SAMPLE, "--partition", "1,0,2;3,4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(3)"));
}

#[test]
fn random_is_reproducible() {
    let a = run(&["random", "--seed", "1", "--facets", "5", "--format", "structured"]);
    let b = run(&["random", "--seed", "1", "--facets", "5", "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    for item in v["result"].as_array().unwrap() {
        let s: StructuredComplex = serde_json::from_value(item.clone()).unwrap();
        let c = s.into_complex().unwrap().complex;
        assert!(c.len() <= 5);
        assert!(is_forest_bruteforce(&c, 20).unwrap());
    }
    let env = bin().args(["random", "--seed", "2"]).env("FACET_FOREST_SEED", "1").output().unwrap();
    let plain = run(&["random", "--seed", "1"]);
    assert_eq!(env.stdout, plain.stdout);
    let ones = run(&["random", "--facets", "1", "--count", "5"]);
    assert!(stdout(&ones).lines().all(|l| !l.contains(',')));
}
