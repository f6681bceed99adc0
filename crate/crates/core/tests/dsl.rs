//! The script language end to end: round-trips, exit codes and the JSON
//! report schema.

use std::path::PathBuf;

use jsonschema::JSONSchema;
use serde_json::Value;
use sizedmu::cli::{parse_dsl, run_source, Flags, Format, REPORT_SCHEMA};

fn scripts() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scripts");
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "smu"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

fn json() -> Flags {
    Flags {
        format: Format::Json,
        ..Flags::default()
    }
}

fn schema() -> JSONSchema {
    let s: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    JSONSchema::compile(&s).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, label: &str, output: &str) -> Value {
    let v: Value =
        serde_json::from_str(output).unwrap_or_else(|e| panic!("{label}: not JSON: {e}\n{output}"));
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("{label}: schema violations:\n{}\n{output}", msgs.join("\n"));
    }
    v
}

#[test]
fn golden_scripts_round_trip() {
    for (name, src) in scripts() {
        let script = parse_dsl(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = script.to_string();
        let again =
            parse_dsl(&printed).unwrap_or_else(|e| panic!("{name} reprinted: {e}\n{printed}"));
        assert_eq!(script, again, "{name}");
        assert_eq!(printed, again.to_string(), "{name}: printing is not stable");
    }
}

#[test]
fn golden_scripts_exit_codes() {
    for (name, src) in scripts() {
        let want = match name.as_str() {
            "streams" | "budget" => 2,
            _ => 0,
        };
        let out = run_source(&src, &Flags::default());
        assert_eq!(out.exit_code, want, "{name}:\n{}", out.output);
    }
}

#[test]
fn golden_scripts_validate() {
    let schema = schema();
    for (name, src) in scripts() {
        let out = run_source(&src, &json());
        let v = assert_valid(&schema, &name, &out.output);
        assert_eq!(v["exitCode"], out.exit_code, "{name}");
    }
}

#[test]
fn every_command_validates() {
    let schema = schema();
    let prelude = "sig T = leaf:0 | node:2\n\
                   group swap2 = pair:2 with swap: pair -> pair [1 0]\n\
                   F = 1 + X*X\n\
                   C = 3\n\
                   S = 2*X\n\
                   U = 1 + sym<swap2> X\n\
                   alg parity for F on 2 = [0 1 0 0 1]\n";
    let commands = [
        ("iterate", "iterate F depth 3"),
        ("iterate plump", "iterate U size plump:T depth 2 budget 20"),
        ("mu", "mu C"),
        ("cata", "cata F with parity at 3"),
        ("cata stationary", "cata C with parity"),
        ("free", "free F on 0 budget 3"),
        ("nu", "nu C"),
        ("nu budget", "nu S budget 3"),
        ("check", "check U depth 2"),
        ("check plump", "check F size plump:T depth 2"),
        ("enumerate", "enumerate T depth 2"),
    ];
    let mut seen = Vec::new();
    for (label, cmd) in commands {
        let out = run_source(&format!("{prelude}{cmd}\n"), &json());
        let v = assert_valid(&schema, label, &out.output);
        seen.push(v["results"][0]["command"].as_str().unwrap().to_string());
    }
    for kw in ["iterate", "mu", "cata", "free", "nu", "check", "enumerate"] {
        assert!(seen.iter().any(|s| s == kw), "{kw} not covered");
    }
}

#[test]
fn errors_validate_with_exit_codes() {
    let schema = schema();
    let cases = [
        ("syntax", "F = 1 + + X\n", 1, "syntax"),
        ("name", "mu G\n", 1, "name"),
        (
            "group",
            "group g = a:2 with f: a -> a [0 0]\n",
            1,
            "non_invertible_groupoid_arrow",
        ),
        (
            "budget",
            "F = 1 + X*X\nmu F budget 3\n",
            2,
            "budget_exceeded",
        ),
        (
            "algebra",
            "F = 1 + X\nG = 1 + X*X\nalg a for G on 1 = [0 0]\ncata F with a\n",
            1,
            "no_algebra",
        ),
    ];
    for (label, src, code, kind) in cases {
        let out = run_source(src, &json());
        assert_eq!(out.exit_code, code, "{label}:\n{}", out.output);
        let v = assert_valid(&schema, label, &out.output);
        let err = v["error"]
            .as_object()
            .or_else(|| v["results"].as_array()?.last()?["error"].as_object());
        let err = err.unwrap_or_else(|| panic!("{label}: no error reported\n{}", out.output));
        assert_eq!(err["kind"], kind, "{label}");
    }
}

#[test]
fn budget_failure_keeps_partial_profile() {
    let out = run_source("F = 1 + X*X\nmu F budget 5\n", &json());
    assert_eq!(out.exit_code, 2);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    let sizes: Vec<u64> = v["results"][0]["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [0, 1, 2, 5, 26]);
}

#[test]
fn syntax_errors_carry_positions() {
    let out = run_source("F = 1 + X\nG = (1 + X\n", &json());
    assert_eq!(out.exit_code, 1);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    assert_eq!(v["error"]["line"], 2);
    assert!(v["error"]["col"].as_u64().unwrap() > 0);
}

#[test]
fn text_report_lists_stages() {
    let out = run_source("F = 1 + X*X\niterate F depth 3\n", &Flags::default());
    assert_eq!(out.exit_code, 0);
    for line in [
        "  stage 0: 0",
        "  stage 1: 1",
        "  stage 2: 2",
        "  stage 3: 5",
    ] {
        assert!(
            out.output.lines().any(|l| l == line),
            "missing {line:?} in\n{}",
            out.output
        );
    }
}
