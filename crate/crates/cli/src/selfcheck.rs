//! The `verify` subcommand: the engine's self-checks plus a check on the
//! reports produced by this front end.

use serde_json::{json, Value};

use ktweb_core::exact_kernel::parse_rational;
use ktweb_core::frames_canonical::EquivalenceClass;
use ktweb_core::killing_spaces::{KTParams, Space};
use ktweb_core::verify::{run_all, CriterionReport, VerifyConfig, TITLES};
use ktweb_core::web_classifier::representative;

use crate::{run, Output};

/// Small sample sizes for a fast smoke run.
pub fn quick_config(seed: u64) -> VerifyConfig {
    VerifyConfig {
        seed,
        invariance_pairs: 40,
        classification_elements: 20,
        frame_inputs: 20,
        k2_samples: 5,
        ..VerifyConfig::default()
    }
}

fn param_list(p: &KTParams) -> String {
    p.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn representatives() -> Vec<(Space, EquivalenceClass, KTParams)> {
    [Space::Euclidean, Space::Minkowski]
        .into_iter()
        .flat_map(|space| {
            EquivalenceClass::of_space(space)
                .iter()
                .map(move |&ec| (space, ec, representative(space, ec).expect("canonical representative")))
        })
        .collect()
}

/// Every string that reads as a rational must print back to itself, and no
/// non-integer number may appear.
fn exact_output_issue(value: &Value) -> Option<String> {
    match value {
        Value::String(s) => match parse_rational(s) {
            Ok(r) if r.to_string() != *s => Some(format!("{s:?} re-prints as {r}")),
            _ => None,
        },
        Value::Number(n) if !n.is_i64() && !n.is_u64() => Some(format!("float {n} in exact output")),
        Value::Array(items) => items.iter().find_map(exact_output_issue),
        Value::Object(map) => map.values().find_map(exact_output_issue),
        _ => None,
    }
}

fn run_twice(args: &[&str]) -> (bool, i32, String) {
    let argv = || std::iter::once("ktweb").chain(args.iter().copied());
    let first = run(argv());
    let second = run(argv());
    (first == second, first.status, first.stdout)
}

/// Determinism and exact round-trip of the reports for every canonical
/// representative, single and batched.
pub fn criterion_10() -> CriterionReport {
    let mut report = CriterionReport::new(10, TITLES[9]);
    let reps = representatives();
    for (space, ec, p) in &reps {
        let params = param_list(p);
        for command in ["classify", "invariants", "decompose"] {
            let (same, status, stdout) = run_twice(&[command, "--space", space.name(), "--params", &params]);
            let issue = serde_json::from_str::<Value>(stdout.trim())
                .map_err(|e| format!("unparseable output: {e}"))
                .map(|v| exact_output_issue(&v))
                .unwrap_or_else(Some);
            let ok = same && status == 0 && issue.is_none();
            let why = match (same, status, &issue) {
                (false, ..) => " (output differs between runs)".to_string(),
                (_, s, _) if s != 0 => format!(" (exit {s})"),
                (_, _, Some(i)) => format!(" ({i})"),
                _ => String::new(),
            };
            report.check(ok, format!("{command} {space} {ec}{why}"));
        }
    }
    for space in [Space::Euclidean, Space::Minkowski] {
        let batch: Vec<Vec<String>> = reps
            .iter()
            .filter(|(s, ..)| *s == space)
            .map(|(_, _, p)| p.values.iter().map(ToString::to_string).collect())
            .collect();
        let path = std::env::temp_dir().join(format!("ktweb-selfcheck-{}-{}.json", std::process::id(), space.name()));
        let written = std::fs::write(&path, json!(batch).to_string());
        let path_text = path.to_string_lossy().into_owned();
        let (same, status, stdout) = run_twice(&["classify", "--space", space.name(), "--batch", &path_text]);
        let _ = std::fs::remove_file(&path);
        let lines = stdout.lines().count();
        report.check(
            written.is_ok() && same && status == 0 && lines == batch.len(),
            format!("batch classify {space}: {lines} lines, identical across runs: {same}"),
        );
    }
    report
}

fn render_text(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("criterion {:>2} {verdict}  {}\n", r.number, r.title));
        for d in &r.details {
            out.push_str(&format!("    {d}\n"));
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
    out
}

/// Runs all ten criteria. Exit status 1 if any of them fails.
pub fn verify_command(quick: bool, seed: Option<u64>, output: Output) -> (i32, String, String) {
    let seed = seed.unwrap_or(VerifyConfig::default().seed);
    let config = if quick { quick_config(seed) } else { VerifyConfig { seed, ..VerifyConfig::default() } };
    let mut reports = run_all(&config);
    reports.push(criterion_10());
    let status = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
    let stdout = match output {
        Output::Text => render_text(&reports),
        Output::Json => {
            let criteria: Vec<Value> = reports
                .iter()
                .map(|r| json!({ "number": r.number, "title": r.title, "passed": r.passed, "details": r.details }))
                .collect();
            format!("{}\n", json!({ "command": "verify", "seed": seed, "quick": quick, "criteria": criteria }))
        }
    };
    (status, stdout, String::new())
}
