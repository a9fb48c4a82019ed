//! Monte-Carlo calibration: level bands under the exponential null for all
//! small statements (both the simulation test and the data-driven test),
//! permutation-mode calibration, and power growth against the uniform
//! alternative.

use charex_core::{
    equality_mc_test, gof_from_data, DistributionSpec, EqualityStatement, McConfig, PValueMode,
    RandomStream, StatisticKind, TheoremForm,
};

/// 99% binomial band around 0.05 for 200 runs.
const LEVEL_BAND: (f64, f64) = (0.013, 0.097);

fn statement_box(k_max: u32, n_max: u32) -> Vec<EqualityStatement> {
    let mut out = Vec::new();
    for form in [TheoremForm::T1, TheoremForm::T2, TheoremForm::T3] {
        for n in 1..=n_max {
            for k in form.min_k()..=k_max.min(n) {
                out.push(EqualityStatement::new(form, k, n));
            }
        }
    }
    out
}

#[test]
fn level_holds_for_every_small_statement() {
    let base = DistributionSpec::Exponential { rate: 1.0 };
    for statement in statement_box(3, 4) {
        let mut rejections = 0usize;
        for seed in 0..200u64 {
            let config = McConfig::new(1000, seed, StatisticKind::Ks);
            let report = equality_mc_test(statement, &base, &config).unwrap();
            rejections += report.reject_at_05 as usize;
        }
        let rate = rejections as f64 / 200.0;
        assert!(
            (LEVEL_BAND.0..=LEVEL_BAND.1).contains(&rate),
            "{statement}: rejection rate {rate}"
        );
    }
}

#[test]
fn permutation_mode_level_is_calibrated() {
    let base = DistributionSpec::Exponential { rate: 1.0 };
    let statement: EqualityStatement = "T3:k=2,n=3".parse().unwrap();
    for statistic in [StatisticKind::Ks, StatisticKind::Cvm] {
        let mut rejections = 0usize;
        for seed in 0..200u64 {
            let config = McConfig {
                n_samples: 200,
                seed,
                statistic,
                p_value_mode: PValueMode::Permutation { count: 199 },
            };
            let report = equality_mc_test(statement, &base, &config).unwrap();
            rejections += report.reject_at_05 as usize;
        }
        let rate = rejections as f64 / 200.0;
        assert!(
            (LEVEL_BAND.0..=LEVEL_BAND.1).contains(&rate),
            "{statistic}: rejection rate {rate}"
        );
    }
}

#[test]
fn power_against_the_uniform_alternative_is_non_decreasing() {
    let base = DistributionSpec::UniformPositive { upper: 1.0 };
    let statement: EqualityStatement = "T1:k=2,n=2".parse().unwrap();
    let mut rates = Vec::new();
    for n_samples in [500usize, 2000, 8000] {
        let runs = 100u64;
        let mut rejections = 0usize;
        for seed in 0..runs {
            let config = McConfig::new(n_samples, seed, StatisticKind::Ks);
            let report = equality_mc_test(statement, &base, &config).unwrap();
            rejections += report.reject_at_05 as usize;
        }
        rates.push(rejections as f64 / runs as f64);
    }
    eprintln!("uniform power by sample size: {rates:?}");
    assert!(rates[0] <= rates[1] && rates[1] <= rates[2], "rates {rates:?}");
    assert!(rates[2] > 0.9, "rates {rates:?}");
}

fn exponential_data(seed: u64, count: usize) -> Vec<f64> {
    let base = DistributionSpec::Exponential { rate: 1.0 };
    base.sample(&mut RandomStream::new(seed), count).unwrap()
}

#[test]
fn data_test_level_holds_for_every_small_t3_statement() {
    for statement in statement_box(3, 4) {
        if statement.form != TheoremForm::T3 {
            continue;
        }
        let n = statement.n as usize;
        // 400*n points make 200 blocks per side, enough for asymptotic mode.
        let count = 400 * n;
        let mut rejections = 0usize;
        for seed in 0..200u64 {
            let data = exponential_data(seed + 10_000, count);
            let config = McConfig::new(200, seed, StatisticKind::Ks);
            let report = gof_from_data(&data, statement, &config).unwrap();
            rejections += report.reject_at_05 as usize;
        }
        let rate = rejections as f64 / 200.0;
        assert!(
            (LEVEL_BAND.0..=LEVEL_BAND.1).contains(&rate),
            "{statement}: rejection rate {rate}"
        );
    }
}

#[test]
fn data_test_power_grows_with_data_size() {
    let base = DistributionSpec::UniformPositive { upper: 1.0 };
    let statement: EqualityStatement = "T3:k=2,n=2".parse().unwrap();
    let mut rates = Vec::new();
    for count in [500usize, 2000, 8000] {
        let runs = 60u64;
        let mut rejections = 0usize;
        for seed in 0..runs {
            let data = base
                .sample(&mut RandomStream::new(seed + 20_000), count)
                .unwrap();
            let config = McConfig::new(count / 4, seed, StatisticKind::Ks);
            let report = gof_from_data(&data, statement, &config).unwrap();
            rejections += report.reject_at_05 as usize;
        }
        rates.push(rejections as f64 / runs as f64);
    }
    eprintln!("data-test power by data size: {rates:?}");
    assert!(rates[0] <= rates[1] && rates[1] <= rates[2], "rates {rates:?}");
}
