use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::{Retrieve, Uri};
use serde_json::Value;

fn lambdap(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lambdap"));
    cmd.args(args)
        .env_remove("LAMBDAP_BUDGET")
        .env_remove("LAMBDAP_WORKERS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lambdap(args, &[]);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], env: &[(&str, &str)]) -> i32 {
    lambdap(args, env).status.code().expect("exit code")
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

/// Resolves schema references by file name inside the schema directory.
struct LocalSchemas;

impl Retrieve for LocalSchemas {
    fn retrieve(
        &self,
        uri: &Uri<String>,
    ) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let name = uri
            .path()
            .as_str()
            .rsplit('/')
            .next()
            .unwrap_or_default()
            .to_string();
        let text = std::fs::read_to_string(schema_dir().join(name))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn schema_errors(schema: &str, instance: &str) -> Vec<String> {
    let text = std::fs::read_to_string(schema_dir().join(schema)).unwrap();
    let schema_json: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::options()
        .with_base_uri("https://schemas.invalid/lambdap/")
        .with_retriever(LocalSchemas)
        .build(&schema_json)
        .unwrap();
    let value: Value = serde_json::from_str(instance).unwrap();
    validator
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect()
}

fn assert_valid(schema: &str, instance: &str) {
    let errors = schema_errors(schema, instance);
    assert!(errors.is_empty(), "{schema}: {errors:?}");
}

#[test]
fn schemas_reject_malformed_output() {
    assert!(!schema_errors("rmatrix.schema.json", r#"{"dim": 1}"#).is_empty());
    let bad_coeff = r#"{"dim": 1, "flat_basis": [[], [1]], "entries": [{"in": [0, 0], "out": [{"basis": [0, 0], "coeff": [[1, 0]]}]}]}"#;
    assert!(!schema_errors("rmatrix.schema.json", bad_coeff).is_empty());
}

#[test]
fn rmatrix_text_dim1() {
    let expected = "\
# f_0 = f{}, f_1 = f{1}
f_{0,0} -> f_{0,0}
f_{0,1} -> (1 - t) f_{0,1} + t f_{1,0}
f_{1,0} -> f_{0,1}
f_{1,1} -> -t f_{1,1}
";
    assert_eq!(
        stdout(&["dump-rmatrix", "--dim", "1", "--format", "text"]),
        expected
    );
}

#[test]
fn trefoil_and_figure_eight() {
    let args = [
        "invariant",
        "--dim",
        "1",
        "--strands",
        "2",
        "--braid",
        "1,1,1",
        "--normalized",
    ];
    assert_eq!(stdout(&args), "t - 1 + t^-1\n");
    let args = [
        "invariant",
        "--dim",
        "1",
        "--strands",
        "3",
        "--braid",
        "1,-2,1,-2",
    ];
    assert_eq!(stdout(&args), "-t + 3 - t^-1\n");
}

#[test]
fn json_outputs_match_schemas() {
    assert_valid(
        "structure.schema.json",
        &stdout(&["dump-structure", "--dim", "2"]),
    );
    assert_valid(
        "braiding.schema.json",
        &stdout(&["dump-braiding", "--dim", "2", "--channels"]),
    );
    assert_valid(
        "rmatrix.schema.json",
        &stdout(&["dump-rmatrix", "--dim", "3", "--channels"]),
    );
    assert_valid(
        "verify.schema.json",
        &stdout(&["verify", "--dim", "2", "--suite", "all", "--json"]),
    );
    assert_valid(
        "verify.schema.json",
        &stdout(&[
            "verify",
            "--dim",
            "1",
            "--suite",
            "hecke",
            "--json",
            "--timings",
        ]),
    );
    assert_valid(
        "invariant.schema.json",
        &stdout(&[
            "invariant",
            "--dim",
            "2",
            "--strands",
            "3",
            "--braid",
            "1,2,1,2",
            "--json",
        ]),
    );
}

#[test]
fn output_is_reproducible_across_workers() {
    for args in [
        &["dump-rmatrix", "--dim", "3", "--channels"][..],
        &["verify", "--dim", "2", "--json"][..],
        &[
            "invariant",
            "--dim",
            "2",
            "--strands",
            "2",
            "--braid",
            "1,1,1",
            "--json",
        ][..],
    ] {
        let one = lambdap(args, &[("LAMBDAP_WORKERS", "1")]).stdout;
        let four = lambdap(args, &[("LAMBDAP_WORKERS", "4")]).stdout;
        let again = lambdap(args, &[("LAMBDAP_WORKERS", "4")]).stdout;
        assert!(!one.is_empty());
        assert_eq!(one, four, "{args:?}");
        assert_eq!(four, again, "{args:?}");
    }
}

#[test]
fn timings_only_on_request() {
    let plain = stdout(&["verify", "--dim", "1", "--suite", "hecke", "--json"]);
    assert!(!plain.contains("wall_time_ms"));
    let timed = stdout(&[
        "verify",
        "--dim",
        "1",
        "--suite",
        "hecke",
        "--json",
        "--timings",
    ]);
    assert!(timed.contains("wall_time_ms"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--dim", "2", "--suite", "hecke"], &[]), 0);
    assert_eq!(code(&["dump-rmatrix", "--dim", "0"], &[]), 2);
    assert_eq!(code(&["dump-rmatrix", "--dim", "1", "--bogus"], &[]), 2);
    assert_eq!(
        code(&["invariant", "--strands", "2", "--braid", "1,x"], &[]),
        2
    );
    assert_eq!(
        code(&["invariant", "--strands", "2", "--braid", "2"], &[]),
        2
    );
    assert_eq!(
        code(&["invariant", "--strands", "2", "--braid", "1,1"], &[]),
        2
    );
    assert_eq!(
        code(
            &[
                "invariant",
                "--dim",
                "2",
                "--strands",
                "2",
                "--braid",
                "1",
                "--normalized"
            ],
            &[]
        ),
        2
    );
    assert_eq!(
        code(
            &[
                "invariant",
                "--dim",
                "2",
                "--strands",
                "3",
                "--braid",
                "1,2"
            ],
            &[("LAMBDAP_BUDGET", "63")]
        ),
        3
    );
    assert_eq!(
        code(
            &[
                "invariant",
                "--dim",
                "2",
                "--strands",
                "3",
                "--braid",
                "1,2"
            ],
            &[("LAMBDAP_BUDGET", "64")]
        ),
        0
    );
    assert_eq!(
        code(&["verify", "--dim", "1"], &[("LAMBDAP_BUDGET", "oops")]),
        2
    );
    assert_eq!(
        code(&["verify", "--dim", "1"], &[("LAMBDAP_WORKERS", "0")]),
        2
    );
}

#[test]
fn raw_and_default_modes() {
    let raw = stdout(&[
        "invariant",
        "--strands",
        "2",
        "--braid",
        "-1,-1,-1",
        "--raw",
    ]);
    let normalized = stdout(&["invariant", "--strands", "2", "--braid", "-1,-1,-1"]);
    assert_eq!(normalized, "t - 1 + t^-1\n");
    assert!(!raw.trim().is_empty());
}
