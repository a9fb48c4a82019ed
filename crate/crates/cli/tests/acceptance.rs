//! Acceptance suite: one test per release criterion, each printing a
//! `[acceptance]` verdict line. Run with `--nocapture` to see the lines for
//! passing criteria; a failed criterion fails its test.

use std::process::Command;
use std::time::Instant;

use serde_json::Value;

use charex_core::{
    am_coefficient_closed_form, am_derivative_coefficient, base_identity_residual,
    compare_densities, equality_mc_test, maclaurin_residual, stirling2, sweep, BaseIdentity,
    DerivativeCase, DistributionSpec, EqualityStatement, Int, LemmaId, McConfig, Nat,
    StatisticKind, SweepBounds, TheoremForm,
};

fn verdict(number: u32, name: &str, ok: bool) {
    println!(
        "[acceptance] criterion {number} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

#[test]
fn criterion_1_exact_lemma_sweep() {
    let clock = Instant::now();
    let report = sweep(
        &LemmaId::ALL,
        SweepBounds::new(10, 10, 8),
        std::thread::available_parallelism().map_or(1, |n| n.get()),
    )
    .unwrap();
    let in_time = clock.elapsed().as_secs() < 120;
    let ok = report.all_equal() && in_time;
    verdict(1, "exact lemma sweep k,n<=10 r<=8", ok);
    assert!(
        report.all_equal(),
        "{} failures out of {}",
        report.failures.len(),
        report.total_cases
    );
    assert!(in_time, "sweep took {:?}", clock.elapsed());
}

#[test]
fn criterion_2_base_identities_and_bell_cross_check() {
    let mut residual_failures = 0u64;
    for identity in BaseIdentity::ALL {
        for a in 0..=25u64 {
            for b in 0..=(25 - a) {
                if base_identity_residual(identity, a, b) != Int::from(0) {
                    residual_failures += 1;
                }
            }
        }
    }

    // Independent Bell-triangle recurrence; its apex column must equal the
    // row sums of the Stirling table.
    let mut bell_ok = true;
    let mut row: Vec<Nat> = vec![Nat::from(1u32)];
    for a in 0..=20u64 {
        let row_sum: Nat = (0..=a).map(|b| stirling2(a, b)).sum();
        if row[0] != row_sum {
            bell_ok = false;
        }
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for value in &row {
            let carried = next.last().unwrap().clone() + value;
            next.push(carried);
        }
        row = next;
    }

    let ok = residual_failures == 0 && bell_ok;
    verdict(2, "base identity residuals a+b<=25, Bell a<=20", ok);
    assert_eq!(residual_failures, 0);
    assert!(bell_ok);
}

#[test]
fn criterion_3_derivative_coefficients() {
    let mut failures = 0u32;
    for m in 0..=6u32 {
        for r in 0..=12u32 {
            let case = DerivativeCase::new(m, r);
            if am_derivative_coefficient(case).unwrap() != am_coefficient_closed_form(case) {
                failures += 1;
            }
        }
    }
    verdict(3, "derivative coefficients m<=6 r<=12", failures == 0);
    assert_eq!(failures, 0);
}

#[test]
fn criterion_4_series_reconstruction() {
    let mut worst = 0.0f64;
    for rate in [0.5, 1.0, 2.0] {
        for i in 1..=50 {
            let x = (5.0 / rate) * i as f64 / 50.0;
            worst = worst.max(maclaurin_residual(rate, x, 30));
        }
    }
    let ok = worst < 1e-9;
    verdict(4, "series reconstruction residual < 1e-9", ok);
    assert!(ok, "worst residual {worst}");
}

#[test]
fn criterion_5_forward_theorem_verification() {
    let clock = Instant::now();
    let mut statements = Vec::new();
    for (k, n) in [(2, 2), (2, 3), (3, 4), (4, 5)] {
        statements.push(EqualityStatement::new(TheoremForm::T1, k, n));
        statements.push(EqualityStatement::new(TheoremForm::T2, k, n));
    }
    for (k, n) in [(1, 3), (2, 2), (3, 3), (3, 5), (4, 4)] {
        statements.push(EqualityStatement::new(TheoremForm::T3, k, n));
    }
    let mut worst = 0.0f64;
    for rate in [0.5, 1.0, 2.0] {
        let base = DistributionSpec::Exponential { rate };
        let grid = linspace(0.01, 5.0 / rate, 100);
        for &statement in &statements {
            let report = compare_densities(statement, &base, &grid, 1e-8).unwrap();
            worst = worst.max(report.sup_deviation);
        }
    }
    let in_time = clock.elapsed().as_secs() < 300;
    let ok = worst < 1e-6 && in_time;
    verdict(5, "forward verification sup deviation < 1e-6", ok);
    assert!(worst < 1e-6, "worst sup deviation {worst}");
    assert!(in_time, "verification took {:?}", clock.elapsed());
}

#[test]
fn criterion_6_converse_discrimination() {
    let uniform = DistributionSpec::UniformPositive { upper: 1.0 };
    let t1_22 = EqualityStatement::new(TheoremForm::T1, 2, 2);
    // Grid spacing 0.025 lands on the closed-form gap point x = 0.75.
    let grid = linspace(0.025, 2.5, 100);
    let uniform_gap = compare_densities(t1_22, &uniform, &grid, 1e-8)
        .unwrap()
        .sup_deviation;

    let weibull = DistributionSpec::Weibull {
        shape: 2.0,
        scale: 1.0,
    };
    let grid = linspace(0.01, 4.0, 100);
    let weibull_gap = [t1_22, EqualityStatement::new(TheoremForm::T3, 2, 2)]
        .into_iter()
        .map(|s| {
            compare_densities(s, &weibull, &grid, 1e-8)
                .unwrap()
                .sup_deviation
        })
        .fold(0.0f64, f64::max);

    let ok = uniform_gap >= 0.49 && weibull_gap > 1e-3;
    verdict(6, "converse gaps (uniform, weibull)", ok);
    assert!(uniform_gap >= 0.49, "uniform gap {uniform_gap}");
    assert!(weibull_gap > 1e-3, "weibull gap {weibull_gap}");
}

#[test]
fn criterion_7_monte_carlo_calibration() {
    let exponential = DistributionSpec::Exponential { rate: 1.0 };
    let statement = EqualityStatement::new(TheoremForm::T1, 2, 3);
    let mut rejections = 0usize;
    for seed in 0..200u64 {
        let config = McConfig::new(5000, seed, StatisticKind::Ks);
        rejections += equality_mc_test(statement, &exponential, &config)
            .unwrap()
            .reject_at_05 as usize;
    }
    let level = rejections as f64 / 200.0;

    let uniform = DistributionSpec::UniformPositive { upper: 1.0 };
    let statement = EqualityStatement::new(TheoremForm::T1, 2, 2);
    let mut rejections = 0usize;
    for seed in 0..200u64 {
        let config = McConfig::new(5000, seed, StatisticKind::Ks);
        rejections += equality_mc_test(statement, &uniform, &config)
            .unwrap()
            .reject_at_05 as usize;
    }
    let power = rejections as f64 / 200.0;

    let ok = (0.013..=0.097).contains(&level) && power > 0.9;
    verdict(7, "level in [0.013, 0.097], uniform power > 0.9", ok);
    assert!(
        (0.013..=0.097).contains(&level),
        "null rejection rate {level}"
    );
    assert!(power > 0.9, "uniform rejection rate {power}");
}

fn payload_bytes(args: &[&str]) -> String {
    let output = Command::new(env!("CARGO_BIN_EXE_charex"))
        .args(args)
        .arg("--json")
        .output()
        .unwrap();
    assert!(
        output.status.code() == Some(0) || output.status.code() == Some(1),
        "{args:?}: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report: Value = serde_json::from_slice(&output.stdout).unwrap();
    serde_json::to_string_pretty(&report["payload"]).unwrap()
}

#[test]
fn criterion_8_byte_identical_payloads() {
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "mc",
            "--statement",
            "T3:k=3,n=3",
            "--dist",
            "exp:rate=1",
            "--n",
            "2000",
            "--seed",
            "42",
        ],
        vec![
            "density",
            "--statement",
            "T2:k=2,n=3",
            "--dist",
            "weibull:shape=2,scale=1",
            "--expect",
            "differ",
            "--threshold",
            "1e-3",
        ],
        vec!["identities", "--kmax", "4", "--nmax", "4", "--rmax", "3"],
    ];
    let mut ok = true;
    for args in &runs {
        let first = payload_bytes(args);
        let second = payload_bytes(args);
        if first != second {
            ok = false;
        }
    }
    verdict(8, "re-runs emit byte-identical payloads", ok);
    assert!(ok);
}
