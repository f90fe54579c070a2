use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn serrelat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serrelat")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

const MODELS: &[&str] = &["chain2", "fan3", "fan3-coarse-fg", "diamond", "antichain2", "a2-quiver", "a3-sink"];
const SPECTRAL: &[&str] = &["chain2", "fan3", "fan3-coarse-fg", "diamond", "antichain2"];
const FUNCTORS: &[&str] = &["a2-inclusion", "a3-sink-composite"];

#[test]
fn reruns_are_byte_identical() {
    let mut runs: Vec<Vec<String>> = Vec::new();
    for m in MODELS {
        for cmd in ["lattice", "primes", "local"] {
            runs.push(vec![cmd.into(), fixture(m)]);
        }
    }
    for m in SPECTRAL {
        runs.push(vec!["topologies".into(), fixture(m), "--flag".into(), "FG".into()]);
    }
    for f in FUNCTORS {
        runs.push(vec!["pullback".into(), fixture(f)]);
    }
    runs.push(vec!["quotient".into(), fixture("diamond"), "--by".into(), "m".into()]);
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = serrelat(&args);
        let b = serrelat(&args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stdout));
        assert_eq!(a.stdout, b.stdout, "{args:?} differs between runs");
        json(&a);
    }
}

#[test]
fn lattice_of_chain() {
    let v = json(&serrelat(&["lattice", &fixture("chain2")]));
    assert_eq!(v["size"], 3);
    assert_eq!(v["is_chain"], true);
}

#[test]
fn pullback_of_sink_composite() {
    let v = json(&serrelat(&["pullback", &fixture("a3-sink-composite")]));
    let failures = v["sp_failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f.as_array().unwrap().is_empty()));
    assert_eq!(v["composition"], true);
}

#[test]
fn pullback_of_inclusion() {
    let v = json(&serrelat(&["pullback", "a2-inclusion"]));
    let j = &v["join_failures"][0];
    assert_eq!(j["s"], serde_json::json!(["1"]));
    assert_eq!(j["t"], serde_json::json!(["2"]));
    assert_eq!(j["witness"], "T");
}

#[test]
fn local_verdicts() {
    assert_eq!(json(&serrelat(&["local", "chain2"]))["verdict"], "Case1");
    assert_eq!(json(&serrelat(&["local", "fan3"]))["verdict"], "NotLocal");
    assert_eq!(json(&serrelat(&["primes", "diamond"]))["primes"].as_array().unwrap().len(), 4);
}

#[test]
fn quotient_certificate() {
    let v = json(&serrelat(&["quotient", "a3-sink", "--by", "1,2"]));
    assert_eq!(v["size"], 2);
    assert_eq!(v["certificate"]["interval_isomorphism"], true);
    assert_eq!(v["certificate"]["zariski_topologies_agree"], true);
}

#[test]
fn topologies_with_coarse_family() {
    let v = json(&serrelat(&["topologies", "fan3-coarse-fg", "--flag", "fg"]));
    assert_eq!(v["ziegler"]["matrix"][2][0], "StrictlyCoarser");
    assert_eq!(v["selected"]["ziegler_opens"].as_array().unwrap().len(), 3);
}

#[test]
fn outputs_written_to_files() {
    let dir = std::env::temp_dir().join(format!("serrelat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("lattice.json");
    let dot = dir.join("lattice.dot");
    let run = serrelat(&[
        "lattice",
        "diamond",
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    assert!(run.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["size"], 6);
    let d = std::fs::read_to_string(&dot).unwrap();
    assert!(d.starts_with("digraph") && d.contains("->"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validation_errors_exit_1_with_json() {
    let dir = std::env::temp_dir().join(format!("serrelat-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("cycle.json");
    std::fs::write(&bad, r#"{"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}"#).unwrap();
    for args in [
        vec!["lattice", bad.to_str().unwrap()],
        vec!["lattice", "no-such-fixture"],
        vec!["pullback", "chain2"],
        vec!["topologies", "a2-quiver"],
        vec!["quotient", "diamond", "--by", "zz"],
    ] {
        let out = serrelat(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v = json(&out);
        assert!(v["error"]["kind"].is_string() && v["error"]["message"].is_string(), "{args:?}");
    }
    assert_eq!(serrelat(&["topologies", "chain2", "--flag", "XX"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sibling_references_resolve_from_disk() {
    let dir = std::env::temp_dir().join(format!("serrelat-ref-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("vee.json"),
        r#"{"elements": ["g", "a", "b"], "covers": [["g", "a"], ["g", "b"]]}"#,
    )
    .unwrap();
    let q = dir.join("q.json");
    std::fs::write(&q, r#"{"kind": "quotient", "source": "vee", "by": ["a"]}"#).unwrap();
    let v = json(&serrelat(&["pullback", q.to_str().unwrap()]));
    assert_eq!(v["target"]["base"], serde_json::json!(["g", "b"]));
    assert_eq!(v["join_failures"].as_array().unwrap().len(), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_passes_on_bundled_set() {
    let out = serrelat(&["verify", "--seed", "3"]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{}", v["checks"]);
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 100);
}
