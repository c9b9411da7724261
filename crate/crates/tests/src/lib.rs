//! Helpers shared by the end-to-end acceptance suite.

use serde_json::Value;
use sring_cli::{run, Output};

/// Runs the command line as `sring <args>`.
pub fn sring(args: &[&str]) -> Output {
    run(std::iter::once("sring").chain(args.iter().copied()))
}

/// Runs with `--json` and parses stdout, panicking on a non-zero exit
/// other than `allowed`.
pub fn sring_json(args: &[&str], allowed: &[i32]) -> Value {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = sring(&argv);
    assert!(
        out.code == 0 || allowed.contains(&out.code),
        "sring {args:?} exited {}: {}",
        out.code,
        out.stderr
    );
    serde_json::from_str(&out.stdout).expect("JSON on stdout")
}

/// String members of a JSON array.
pub fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|x| x.as_str().expect("string").to_string())
        .collect()
}

/// Prints the one-line verdict for a criterion and fails the test on FAIL.
pub fn report(criterion: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS {title}");
    } else {
        println!("criterion {criterion}: FAIL {title}");
        for f in failures {
            println!("    {f}");
        }
        panic!(
            "criterion {criterion} failed with {} finding(s)",
            failures.len()
        );
    }
}
