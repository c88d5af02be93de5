use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn crs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crs"))
        .args(args)
        .env_remove("CRS_ENUM_CAP")
        .env_remove("CRS_GROUP_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = crs(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn code(args: &[&str]) -> i32 {
    crs(args).status.code().expect("exit code")
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(crs(args).stderr).unwrap()
}

fn assert_schema(name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "{name}: {msgs:?}\n{doc}");
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid json")
}

#[test]
fn rankdist_exact_tables() {
    let csv = stdout(&["--format", "csv", "rankdist", "--q", "2", "--kappa", "2", "--n", "2", "--exact"]);
    assert_eq!(csv, "k,exact,empirical,abs_err\n0,3/8,,\n1,9/16,,\n2,1/16,,\n");
    let csv = stdout(&["--format", "csv", "rankdist", "--q", "2", "--kappa", "1", "--n", "1", "--exact"]);
    assert_eq!(csv, "k,exact,empirical,abs_err\n0,1/2,,\n1,1/2,,\n");
    let doc = json(&["rankdist", "--q", "3", "--kappa", "2", "--n", "2", "--exact"]);
    assert_schema("rankdist", &doc);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn rankdist_errors() {
    assert_eq!(code(&["rankdist", "--q", "6", "--kappa", "1", "--n", "1"]), 2);
    assert_eq!(code(&["--enum-cap", "100", "rankdist", "--q", "2", "--kappa", "4", "--n", "4", "--exact"]), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_crs"))
        .args(["rankdist", "--q", "2", "--kappa", "4", "--n", "4", "--exact"])
        .env("CRS_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(code(&["rankdist", "--q", "2"]), 2);
}

#[test]
fn monte_carlo_is_reproducible() {
    let args = ["--seed", "11", "rankdist", "--q", "2", "--kappa", "3", "--n", "3", "--samples", "40000"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut threaded = args.to_vec();
    threaded.extend(["--workers", "3"]);
    assert_eq!(a, stdout(&threaded));
    let mut other = args.to_vec();
    other[1] = "12";
    assert_ne!(a, stdout(&other));
    let doc = json(&args);
    assert_schema("rankdist", &doc);
    assert_eq!(doc["mode"], "monte_carlo");
}

#[test]
fn sampling_is_reproducible() {
    let args = [
        "--format", "json", "--seed", "3", "crs", "sample", "--n", "4", "--m", "2", "--group", "[4]",
        "--coords", "2", "--side", "ann", "--samples", "50",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    for line in a.lines() {
        assert_schema("crs-sample-line", &serde_json::from_str(line).unwrap());
    }
    assert_eq!(a.lines().count(), 50);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("crs-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("enum.txt");
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["--output", p, "crs", "enum", "--n", "2", "--max-order", "4"]), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn crs_enum() {
    let plain = stdout(&["crs", "enum", "--n", "2", "--max-order", "4"]);
    assert_eq!(plain, "(1, trivial)\n(1, Z/2)\n(1, Z/2 + Z/2)\n(2, trivial)\n");
    let doc = json(&["crs", "enum", "--n", "4", "--max-order", "4"]);
    assert_schema("crs-enum", &doc);
    let params = doc["params"].as_array().unwrap();
    assert!(params.iter().any(|p| p["m"] == 2 && p["group"] == "Z/4"));
    assert!(!params.iter().any(|p| p["m"] == 2 && p["group"] == "Z/2"));
}

#[test]
fn crs_exact() {
    let doc = json(&["crs", "exact", "--n", "2", "--m", "1", "--group", "[2]", "--coords", "3", "--side", "ker"]);
    assert_schema("distribution", &doc);
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    assert!(entries.iter().all(|e| e["prob"] == "1/8"));
    let csv = stdout(&["--format", "csv", "crs", "exact", "--n", "2", "--m", "1", "--group", "Z/2", "--coords", "2", "--side", "ann"]);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.starts_with("prob,order,gens\n1/4,1,\n"));
}

#[test]
fn crs_invalid_params_name_the_invariant() {
    let cases = [
        (["--n", "4", "--m", "3", "--group", "0"], "m must divide n"),
        (["--n", "4", "--m", "2", "--group", "[2]"], "F must be over m"),
        (["--n", "2", "--m", "1", "--group", "[4]"], "nF must vanish"),
    ];
    for (extra, msg) in cases {
        let mut args = vec!["crs", "exact", "--coords", "2"];
        args.extend(extra);
        assert_eq!(code(&args), 2);
        assert!(stderr(&args).contains(msg), "{}", stderr(&args));
    }
    assert_eq!(code(&["crs", "exact", "--n", "0", "--m", "0", "--coords", "1"]), 2);
    assert_eq!(code(&["crs", "exact", "--n", "2", "--m", "1", "--group", "Z/", "--coords", "1"]), 2);
    assert_eq!(code(&["crs", "exact", "--n", "2", "--m", "1", "--coords", "1", "--side", "up"]), 2);
    assert_eq!(
        code(&["--enum-cap", "10", "crs", "exact", "--n", "2", "--m", "1", "--group", "[2]", "--coords", "5"]),
        3
    );
}

#[test]
fn crs_limit() {
    let d = r#"{"n_trend":{"constant":2},"growing_blocks":[2]}"#;
    assert_eq!(stdout(&["crs", "limit", "--descriptor", d]), "(2, trivial)\n");
    let d = r#"{"n_trend":{"constant":1},"stable_part":"Z/3","growing_blocks":[2]}"#;
    let doc = json(&["crs", "limit", "--descriptor", d]);
    assert_schema("crs-param", &doc);
    assert_eq!(doc["m"], 2);
    assert_eq!(doc["group"], "Z/3");
    assert_eq!(stdout(&["crs", "limit", "--descriptor", r#"{"n_trend":"diverges"}"#]), "(0, trivial)\n");
    assert_eq!(code(&["crs", "limit", "--descriptor", "{"]), 2);
}

#[test]
fn torus_commands() {
    for r in ["1", "2", "12"] {
        let out = stdout(&["torus", "decompose", "--r", r]);
        assert!(out.ends_with("residual 0/1\n"), "{out}");
        assert_schema("torus-decompose", &json(&["torus", "decompose", "--r", r]));
    }
    let csv = stdout(&["--format", "csv", "torus", "beta", "--r-max", "10"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 11);
    for l in &lines[1..] {
        let f: Vec<&str> = l.split(',').collect();
        assert_eq!(f[1], f[2]);
    }
    assert!(lines.contains(&"6,24,24,2/3"));
    assert_schema("torus-beta", &json(&["torus", "beta", "--r-max", "10"]));
    assert_eq!(code(&["--enum-cap", "50", "torus", "decompose", "--r", "12"]), 3);
    assert_eq!(code(&["torus", "decompose", "--r", "0"]), 2);
}

#[test]
fn free_commands() {
    let out = stdout(&["free", "schreier", "--rank", "2", "--images", "(1 2 3);(1 2 3)"]);
    assert!(out.starts_with("index 3\nbasis size 4\n"), "{out}");
    let doc = json(&["free", "schreier", "--rank", "2", "--images", "(1 2 3);(1 2)"]);
    assert_schema("free-schreier", &doc);
    assert_eq!(doc["index"], 6);
    assert_eq!(doc["basis_size"], 7);

    let out = stdout(&["free", "adyan", "--n", "1", "--p", "2"]);
    assert_eq!(out, "x1^2 x2^2 x1^-2 x2^-2\nlength 8\n");
    assert_schema("free-adyan", &json(&["free", "adyan", "--n", "3", "--p", "2"]));
    assert_eq!(code(&["free", "adyan", "--n", "1", "--p", "4"]), 2);

    let doc = json(&["free", "verbal", "--group", "(1 2 3);(1 2)", "--words", "x1^2"]);
    assert_schema("free-verbal", &doc);
    assert_eq!(doc["order"], 3);
    assert_eq!(doc["normal"], true);

    assert_eq!(code(&["free", "schreier", "--rank", "1", "--images", "(1 2)(3", "--base", "1"]), 2);
    assert_eq!(code(&["free", "schreier", "--rank", "1", "--images", "(1 2);()", "--base", "1"]), 2);
    assert_eq!(code(&["free", "schreier", "--rank", "1", "--images", "(1 2)(3 4)", "--base", "1"]), 2);
    let out = stdout(&["free", "schreier", "--rank", "2", "--images", "(1 2 3 4);(1 2)", "--base", "1"]);
    assert!(out.starts_with("index 4\nbasis size 5\n"));
    assert_eq!(code(&["free", "verbal", "--group", "(1 2 3)", "--words", "y1"]), 2);
}

#[test]
fn help_and_usage() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["rankdist", "--q", "2", "--kappa", "1", "--n", "1", "--format", "xml"]), 2);
}
