//! Monte-Carlo verification of the distributional equalities: both sides of
//! a statement are simulated from disjoint substreams and compared with a
//! two-sample test. The same machinery backs an exponentiality test on user
//! data, which splits the data into blocks and pits the weighted-sum form of
//! the statement against the order-statistic form.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::convolution::{EqualityStatement, TheoremForm};
use crate::dist::{DistributionSpec, OrderStatisticSpec};
use crate::error::{Error, Result};
use crate::stream::RandomStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatisticKind {
    Ks,
    Cvm,
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatisticKind::Ks => write!(f, "ks"),
            StatisticKind::Cvm => write!(f, "cvm"),
        }
    }
}

impl FromStr for StatisticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ks" => Ok(StatisticKind::Ks),
            "cvm" => Ok(StatisticKind::Cvm),
            other => Err(Error::InvalidParameter(format!(
                "unknown statistic '{other}' (expected ks or cvm)"
            ))),
        }
    }
}

impl Serialize for StatisticKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PValueMode {
    Asymptotic,
    Permutation { count: u32 },
}

impl fmt::Display for PValueMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValueMode::Asymptotic => write!(f, "asymptotic"),
            PValueMode::Permutation { count } => write!(f, "permutation:{count}"),
        }
    }
}

impl FromStr for PValueMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "asymptotic" {
            return Ok(PValueMode::Asymptotic);
        }
        if s == "permutation" {
            return Ok(PValueMode::Permutation { count: 999 });
        }
        if let Some(count) = s.strip_prefix("permutation:") {
            let count: u32 = count.parse().map_err(|_| {
                Error::InvalidParameter(format!("cannot parse permutation count '{count}'"))
            })?;
            return Ok(PValueMode::Permutation { count });
        }
        Err(Error::InvalidParameter(format!(
            "unknown p-value mode '{s}' (expected asymptotic or permutation[:count])"
        )))
    }
}

impl Serialize for PValueMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    /// Replicates per side.
    pub n_samples: usize,
    pub seed: u64,
    pub statistic: StatisticKind,
    pub p_value_mode: PValueMode,
}

impl McConfig {
    /// Default mode policy: permutation for small samples (where the
    /// asymptotic series is unreliable) and always for CvM, which has no
    /// asymptotic branch here.
    pub fn new(n_samples: usize, seed: u64, statistic: StatisticKind) -> Self {
        let p_value_mode = if statistic == StatisticKind::Cvm || n_samples < 200 {
            PValueMode::Permutation { count: 999 }
        } else {
            PValueMode::Asymptotic
        };
        McConfig {
            n_samples,
            seed,
            statistic,
            p_value_mode,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 samples per side, got {}",
                self.n_samples
            )));
        }
        match (self.statistic, self.p_value_mode) {
            (_, PValueMode::Permutation { count }) if count < 99 => {
                Err(Error::InvalidParameter(format!(
                    "permutation count must be at least 99, got {count}"
                )))
            }
            (StatisticKind::Cvm, PValueMode::Asymptotic) => Err(Error::InvalidParameter(
                "cvm has no asymptotic p-value here; use permutation".to_string(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub statement: EqualityStatement,
    /// Distribution spec text, or "data" for the file-driven test.
    pub base: String,
    pub statistic: StatisticKind,
    pub statistic_value: f64,
    pub p_value: f64,
    /// Convenience flag only; re-threshold from p_value if needed.
    pub reject_at_05: bool,
    pub p_value_mode: PValueMode,
    pub seed: u64,
    /// Replicates per side actually used.
    pub n_samples: usize,
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// Sup gap between the two empirical CDFs, by merge sweep over distinct
/// pooled values (tie-safe).
fn ks_sorted(xs: &[f64], ys: &[f64]) -> f64 {
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    // Whichever side remains only narrows the gap from here on.
    d
}

/// Two-sample Cramer-von Mises statistic in ECDF form:
/// nm/(n+m)^2 * sum over pooled points of (F - G)^2, with F, G evaluated
/// after consuming all ties at each value. Exactly 0 for identical samples.
fn cvm_sorted(xs: &[f64], ys: &[f64]) -> f64 {
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sum = 0.0f64;
    while i < xs.len() || j < ys.len() {
        let v = match (xs.get(i), ys.get(j)) {
            (Some(a), Some(b)) => a.min(*b),
            (Some(a), None) => *a,
            (None, Some(b)) => *b,
            (None, None) => unreachable!(),
        };
        let mut points = 0.0;
        while i < xs.len() && xs[i] <= v {
            i += 1;
            points += 1.0;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
            points += 1.0;
        }
        let gap = i as f64 / n - j as f64 / m;
        sum += points * gap * gap;
    }
    n * m / ((n + m) * (n + m)) * sum
}

pub fn two_sample_statistic(xs: &[f64], ys: &[f64], kind: StatisticKind) -> Result<f64> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySample);
    }
    let (xs, ys) = (sorted(xs), sorted(ys));
    Ok(match kind {
        StatisticKind::Ks => ks_sorted(&xs, &ys),
        StatisticKind::Cvm => cvm_sorted(&xs, &ys),
    })
}

/// Kolmogorov survival function Q(t) = 2 sum (-1)^{j-1} e^{-2 j^2 t^2},
/// truncated once terms drop below 1e-12.
fn kolmogorov_sf(t: f64) -> f64 {
    if t < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut j = 1.0f64;
    loop {
        let term = (-2.0 * j * j * t * t).exp();
        if term < 1e-12 || j > 1000.0 {
            break;
        }
        sum += sign * term;
        sign = -sign;
        j += 1.0;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Asymptotic p-value with the finite-sample argument correction
/// (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) * D. KS only.
pub fn asymptotic_p_value(kind: StatisticKind, statistic: f64, n_x: usize, n_y: usize) -> Result<f64> {
    match kind {
        StatisticKind::Ks => {
            if n_x == 0 || n_y == 0 {
                return Err(Error::EmptySample);
            }
            let ne = (n_x as f64 * n_y as f64) / (n_x as f64 + n_y as f64);
            let root = ne.sqrt();
            Ok(kolmogorov_sf((root + 0.12 + 0.11 / root) * statistic))
        }
        StatisticKind::Cvm => Err(Error::InvalidParameter(
            "cvm has no asymptotic p-value here; use permutation".to_string(),
        )),
    }
}

/// Pooled-permutation p-value with add-one smoothing (b+1)/(B+1), where b
/// counts permuted statistics at least as large as the observed one.
pub fn permutation_p_value(
    xs: &[f64],
    ys: &[f64],
    kind: StatisticKind,
    count: u32,
    stream: &mut RandomStream,
) -> Result<f64> {
    let observed = two_sample_statistic(xs, ys, kind)?;
    let mut pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let mut at_least = 0u64;
    for _ in 0..count {
        stream.shuffle(&mut pooled);
        let stat = two_sample_statistic(&pooled[..xs.len()], &pooled[xs.len()..], kind)?;
        if stat >= observed {
            at_least += 1;
        }
    }
    Ok((at_least + 1) as f64 / (count as u64 + 1) as f64)
}

/// Simulates the left side of a statement, one replicate per entry:
/// T1: k-1 smallest of n-1 draws plus a fresh draw over n;
/// T2: k-1 smallest of n draws plus a fresh draw over n-k+1;
/// T3: weighted sum of k draws with divisors n, n-1, ..., n-k+1.
pub fn sample_lhs(
    statement: EqualityStatement,
    d: &DistributionSpec,
    stream: &mut RandomStream,
    count: usize,
) -> Result<Vec<f64>> {
    statement.validate()?;
    d.validate()?;
    let (k, n) = (statement.k as usize, statement.n as usize);
    let mut out = Vec::with_capacity(count);
    match statement.form {
        TheoremForm::T1 | TheoremForm::T2 => {
            let pool = if statement.form == TheoremForm::T1 { n - 1 } else { n };
            let divisor = if statement.form == TheoremForm::T1 {
                n as f64
            } else {
                (n - k + 1) as f64
            };
            let mut buf = vec![0.0f64; pool];
            for _ in 0..count {
                for slot in buf.iter_mut() {
                    *slot = d.quantile(stream.next_unit())?;
                }
                let (_, kth, _) = buf.select_nth_unstable_by(k - 2, |a, b| a.total_cmp(b));
                let order_part = *kth;
                out.push(order_part + d.quantile(stream.next_unit())? / divisor);
            }
        }
        TheoremForm::T3 => {
            for _ in 0..count {
                let mut acc = 0.0;
                for i in 0..k {
                    acc += d.quantile(stream.next_unit())? / (n - i) as f64;
                }
                out.push(acc);
            }
        }
    }
    Ok(out)
}

fn finish_report(
    statement: EqualityStatement,
    base: String,
    lhs: &[f64],
    rhs: &[f64],
    config: &McConfig,
    perm_stream: &mut RandomStream,
) -> Result<TestReport> {
    let statistic_value = two_sample_statistic(lhs, rhs, config.statistic)?;
    let p_value = match config.p_value_mode {
        PValueMode::Asymptotic => {
            asymptotic_p_value(config.statistic, statistic_value, lhs.len(), rhs.len())?
        }
        PValueMode::Permutation { count } => {
            permutation_p_value(lhs, rhs, config.statistic, count, perm_stream)?
        }
    };
    Ok(TestReport {
        statement,
        base,
        statistic: config.statistic,
        statistic_value,
        p_value,
        reject_at_05: p_value < 0.05,
        p_value_mode: config.p_value_mode,
        seed: config.seed,
        n_samples: lhs.len(),
    })
}

/// Simulates both sides from disjoint substreams of the seed and runs the
/// configured two-sample test.
pub fn equality_mc_test(
    statement: EqualityStatement,
    d: &DistributionSpec,
    config: &McConfig,
) -> Result<TestReport> {
    config.validate()?;
    statement.validate()?;
    d.validate()?;
    let master = RandomStream::new(config.seed);
    let lhs = sample_lhs(statement, d, &mut master.substream(0), config.n_samples)?;
    let rhs = OrderStatisticSpec::new(statement.k, statement.n, *d)
        .sample(&mut master.substream(1), config.n_samples)?;
    finish_report(
        statement,
        d.to_string(),
        &lhs,
        &rhs,
        config,
        &mut master.substream(2),
    )
}

/// Blocks per side required before the data test will run.
pub const GOF_MIN_BLOCKS: usize = 50;

/// Exponentiality test on raw data via the T3 characterization: the data is
/// shuffled (seeded), cut into disjoint n-blocks, and half the blocks feed
/// each side — weighted sums on one side, k-th order statistics on the
/// other. Under exponentiality both sides share one law, whatever the rate;
/// the rank-based statistics make the verdict scale-free.
pub fn gof_from_data(
    data: &[f64],
    statement: EqualityStatement,
    config: &McConfig,
) -> Result<TestReport> {
    statement.validate()?;
    config.validate()?;
    if statement.form != TheoremForm::T3 {
        return Err(Error::InvalidParameter(format!(
            "the data test uses the weighted-sum form T3 only, got {}",
            statement.form
        )));
    }
    if let Some((idx, bad)) = data
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v > 0.0))
    {
        return Err(Error::InvalidData(format!(
            "value {bad} at position {idx} is not strictly positive"
        )));
    }
    let (k, n) = (statement.k as usize, statement.n as usize);
    let required = 2 * n * GOF_MIN_BLOCKS;
    if data.len() < required {
        return Err(Error::InsufficientData {
            required,
            got: data.len(),
        });
    }
    let master = RandomStream::new(config.seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    master.substream(0).shuffle(&mut order);
    let half = data.len() / n / 2;
    let mut lhs = Vec::with_capacity(half);
    let mut rhs = Vec::with_capacity(half);
    let mut block = vec![0.0f64; n];
    for b in 0..half {
        let ids = &order[b * n..(b + 1) * n];
        lhs.push(
            ids[..k]
                .iter()
                .enumerate()
                .map(|(i, id)| data[*id] / (n - i) as f64)
                .sum(),
        );
    }
    for b in half..2 * half {
        for (slot, id) in block.iter_mut().zip(&order[b * n..(b + 1) * n]) {
            *slot = data[*id];
        }
        let (_, kth, _) = block.select_nth_unstable_by(k - 1, |a, b| a.total_cmp(b));
        rhs.push(*kth);
    }
    finish_report(
        statement,
        "data".to_string(),
        &lhs,
        &rhs,
        config,
        &mut master.substream(1),
    )
}

/// One-column CSV or whitespace-separated text; `#` starts a comment.
pub fn parse_positive_data(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let value: f64 = token.parse().map_err(|_| {
                Error::InvalidData(format!(
                    "line {}: cannot parse '{token}' as a number",
                    line_no + 1
                ))
            })?;
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidData(format!(
                    "line {}: value {value} is not strictly positive",
                    line_no + 1
                )));
            }
            out.push(value);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: DistributionSpec = DistributionSpec::Exponential { rate: 1.0 };

    fn st(text: &str) -> EqualityStatement {
        text.parse().unwrap()
    }

    #[test]
    fn ks_statistic_basics() {
        let xs = [1.0, 3.0];
        let ys = [2.0, 4.0];
        assert!((two_sample_statistic(&xs, &ys, StatisticKind::Ks).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            two_sample_statistic(&xs, &xs, StatisticKind::Ks).unwrap(),
            0.0
        );
        // Disjoint supports saturate the statistic.
        let lo: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let hi: Vec<f64> = (0..50).map(|i| 100.0 + i as f64).collect();
        assert_eq!(
            two_sample_statistic(&lo, &hi, StatisticKind::Ks).unwrap(),
            1.0
        );
        assert!(two_sample_statistic(&[], &xs, StatisticKind::Ks).is_err());
    }

    #[test]
    fn cvm_statistic_basics() {
        let xs = [1.0];
        let ys = [2.0];
        // Pooled points contribute 1*(1-0)^2 and 1*0; T = (1/4)*1.
        assert!((two_sample_statistic(&xs, &ys, StatisticKind::Cvm).unwrap() - 0.25).abs() < 1e-15);
        let same = [0.3, 0.3, 1.7, 2.2];
        assert_eq!(
            two_sample_statistic(&same, &same, StatisticKind::Cvm).unwrap(),
            0.0
        );
    }

    #[test]
    fn kolmogorov_tail_matches_the_classical_critical_value() {
        // 1.3581 is the alpha = 0.05 critical point of the Kolmogorov law.
        let p = kolmogorov_sf(1.3581);
        assert!((p - 0.05).abs() < 5e-4, "p {p}");
        assert_eq!(kolmogorov_sf(1e-6), 1.0);
        assert!(kolmogorov_sf(0.4) > kolmogorov_sf(0.8));
        assert!(kolmogorov_sf(3.0) < 1e-7);
    }

    #[test]
    fn asymptotic_p_value_is_ks_only() {
        assert!(asymptotic_p_value(StatisticKind::Ks, 0.04, 400, 400).is_ok());
        assert!(asymptotic_p_value(StatisticKind::Cvm, 0.04, 400, 400).is_err());
    }

    #[test]
    fn permutation_p_value_for_identical_samples_is_one() {
        let xs: Vec<f64> = (1..=30).map(|i| i as f64).collect();
        let mut stream = RandomStream::new(9);
        let p = permutation_p_value(&xs, &xs, StatisticKind::Ks, 199, &mut stream).unwrap();
        assert_eq!(p, 1.0);
    }

    #[test]
    fn permutation_p_value_is_deterministic_given_the_seed() {
        let mut s1 = RandomStream::new(1234);
        let mut s2 = RandomStream::new(1234);
        let xs: Vec<f64> = (0..40).map(|i| (i as f64 * 0.37).sin().abs() + 0.1).collect();
        let ys: Vec<f64> = (0..40).map(|i| (i as f64 * 0.61).cos().abs() + 0.1).collect();
        let a = permutation_p_value(&xs, &ys, StatisticKind::Cvm, 299, &mut s1).unwrap();
        let b = permutation_p_value(&xs, &ys, StatisticKind::Cvm, 299, &mut s2).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn sample_lhs_t3_k1_is_a_rescaled_stream() {
        let mut s = RandomStream::new(77);
        let got = sample_lhs(st("T3:k=1,n=4"), &E1, &mut s, 50).unwrap();
        let mut raw = RandomStream::new(77);
        let expect: Vec<f64> = (0..50)
            .map(|_| E1.quantile(raw.next_unit()).unwrap() / 4.0)
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn sample_lhs_means_match_moment_arithmetic() {
        // T1(2,2): X + Y/2 has mean 1.5 under the unit exponential.
        let mut s = RandomStream::new(2025);
        let n = 100_000;
        let xs = sample_lhs(st("T1:k=2,n=2"), &E1, &mut s, n).unwrap();
        let mean = xs.iter().sum::<f64>() / n as f64;
        assert!((mean - 1.5).abs() < 3.0 * 1.25f64.sqrt() / (n as f64).sqrt() * 1.5,
            "mean {mean}");

        // T3(2,3): X/3 + Y/2 has mean 1/3 + 1/2.
        let ys = sample_lhs(st("T3:k=2,n=3"), &E1, &mut s.substream(5), n).unwrap();
        let mean = ys.iter().sum::<f64>() / n as f64;
        assert!((mean - (1.0 / 3.0 + 0.5)).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn config_policy_and_validation() {
        assert_eq!(
            McConfig::new(100, 1, StatisticKind::Ks).p_value_mode,
            PValueMode::Permutation { count: 999 }
        );
        assert_eq!(
            McConfig::new(5000, 1, StatisticKind::Ks).p_value_mode,
            PValueMode::Asymptotic
        );
        assert_eq!(
            McConfig::new(5000, 1, StatisticKind::Cvm).p_value_mode,
            PValueMode::Permutation { count: 999 }
        );

        let mut bad = McConfig::new(5000, 1, StatisticKind::Cvm);
        bad.p_value_mode = PValueMode::Asymptotic;
        assert!(bad.validate().is_err());
        bad = McConfig::new(1, 1, StatisticKind::Ks);
        assert!(bad.validate().is_err());
        bad = McConfig::new(500, 1, StatisticKind::Ks);
        bad.p_value_mode = PValueMode::Permutation { count: 50 };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn equality_test_is_deterministic_and_consistent() {
        let cfg = McConfig::new(400, 42, StatisticKind::Ks);
        let a = equality_mc_test(st("T3:k=2,n=2"), &E1, &cfg).unwrap();
        let b = equality_mc_test(st("T3:k=2,n=2"), &E1, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reject_at_05, a.p_value < 0.05);
        assert_eq!(a.n_samples, 400);
        assert_eq!(a.base, "exp:rate=1");
    }

    #[test]
    fn degenerate_two_sample_run_still_reports() {
        let cfg = McConfig::new(2, 7, StatisticKind::Ks);
        let r = equality_mc_test(st("T1:k=2,n=2"), &E1, &cfg).unwrap();
        assert!((0.0..=1.0).contains(&r.p_value));
    }

    #[test]
    fn mode_string_forms_roundtrip() {
        for text in ["asymptotic", "permutation:199"] {
            let mode: PValueMode = text.parse().unwrap();
            assert_eq!(mode.to_string(), text);
        }
        assert_eq!(
            "permutation".parse::<PValueMode>().unwrap(),
            PValueMode::Permutation { count: 999 }
        );
        assert!("bootstrap".parse::<PValueMode>().is_err());
    }

    #[test]
    fn gof_rejects_bad_inputs() {
        let cfg = McConfig::new(100, 3, StatisticKind::Ks);
        let good: Vec<f64> = (1..=400).map(|i| i as f64 * 0.01).collect();
        assert!(gof_from_data(&good, st("T3:k=2,n=2"), &cfg).is_ok());

        let err = gof_from_data(&good[..150], st("T3:k=2,n=2"), &cfg).unwrap_err();
        assert_eq!(
            err,
            Error::InsufficientData {
                required: 200,
                got: 150
            }
        );

        let mut tainted = good.clone();
        tainted[17] = -0.5;
        assert!(matches!(
            gof_from_data(&tainted, st("T3:k=2,n=2"), &cfg),
            Err(Error::InvalidData(_))
        ));

        assert!(gof_from_data(&good, st("T1:k=2,n=2"), &cfg).is_err());
    }

    #[test]
    fn gof_is_exactly_scale_equivariant() {
        let cfg = McConfig::new(100, 11, StatisticKind::Ks);
        let data: Vec<f64> = {
            let mut s = RandomStream::new(500);
            E1.sample(&mut s, 600).unwrap()
        };
        let scaled: Vec<f64> = data.iter().map(|v| v * 3.75).collect();
        let a = gof_from_data(&data, st("T3:k=2,n=3"), &cfg).unwrap();
        let b = gof_from_data(&scaled, st("T3:k=2,n=3"), &cfg).unwrap();
        assert_eq!(a.statistic_value.to_bits(), b.statistic_value.to_bits());
        assert_eq!(a.p_value.to_bits(), b.p_value.to_bits());
    }

    #[test]
    fn parse_positive_data_handles_csv_whitespace_and_comments() {
        let text = "1.0\n2.5 # trailing comment\n# full comment line\n3,4\n\n 5.5  6.5 \n";
        let values = parse_positive_data(text).unwrap();
        assert_eq!(values, vec![1.0, 2.5, 3.0, 4.0, 5.5, 6.5]);

        assert!(parse_positive_data("1.0\nnope\n").is_err());
        assert!(parse_positive_data("1.0, -2.0\n").is_err());
        assert!(parse_positive_data("0\n").is_err());
        assert!(parse_positive_data("# only comments\n").unwrap().is_empty());
    }
}
