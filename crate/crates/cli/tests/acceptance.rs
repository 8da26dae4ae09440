//! Acceptance suite: one PASS/FAIL line per criterion with pinned sample
//! sizes, seed and tolerance.

use ktweb::selfcheck::criterion_10;
use ktweb_core::verify::{run_criterion, CriterionReport, VerifyConfig};

fn pinned() -> VerifyConfig {
    let config = VerifyConfig {
        seed: 20_240_601,
        invariance_pairs: 1000,
        classification_elements: 500,
        frame_inputs: 100,
        k2_samples: 20,
        frame_tolerance: 1e-9,
    };
    assert_eq!(config, VerifyConfig::default(), "pinned configuration drifted from the default");
    config
}

#[test]
fn acceptance_criteria() {
    let config = pinned();
    let mut reports: Vec<CriterionReport> = (1..=9).map(|n| run_criterion(n, &config)).collect();
    reports.push(criterion_10());
    for r in &reports {
        println!("criterion {:>2}: {}  {}", r.number, if r.passed { "PASS" } else { "FAIL" }, r.title);
        for d in r.details.iter().filter(|d| d.starts_with("FAIL")) {
            println!("               {d}");
        }
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.number).collect();
    println!("{}/10 criteria passed", 10 - failed.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
