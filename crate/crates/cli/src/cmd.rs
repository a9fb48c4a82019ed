//! The five subcommands. Each resolves its options (flag > config file >
//! default), runs the underlying check, and returns the payload plus a
//! one-line summary; main() wraps this in the manifest and picks the exit
//! code from `pass`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};

use charex_core::{
    am_coefficient_closed_form, am_derivative_coefficient, equality_mc_test, gof_from_data,
    maclaurin_residual, parse_positive_data, sweep, DensityComparison, DerivativeCase,
    DistributionSpec, EqualityStatement, LemmaId, LhsDensity, McConfig, OrderStatisticSpec,
    PValueMode, StatisticKind, SweepBounds,
};

use crate::config::{resolve, resolve_optional, FileConfig};
use crate::{svg, worker_count, CliError};

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the one-line summary.
    #[arg(long)]
    pub json: bool,
    /// Master seed for randomized work; recorded in the manifest either way.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Flat key=value file supplying values for omitted flags.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CommonResolved {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub json: bool,
}

pub struct RunOutput {
    pub echo: BTreeMap<String, String>,
    pub common: CommonResolved,
    pub pass: bool,
    pub payload: Value,
    pub summary: String,
}

type Echo = BTreeMap<String, String>;

fn resolve_common(
    echo: &mut Echo,
    cfg: &mut FileConfig,
    common: &CommonArgs,
    default_seed: Option<u64>,
) -> Result<CommonResolved, CliError> {
    let seed = common.seed.or(cfg.take::<u64>("seed")?).or(default_seed);
    if let Some(s) = seed {
        echo.insert("seed".to_string(), s.to_string());
    }
    let out = common
        .out
        .clone()
        .or(cfg.take::<String>("out")?.map(PathBuf::from));
    if let Some(p) = &out {
        echo.insert("out".to_string(), p.display().to_string());
    }
    let json = cfg.take::<bool>("json")?.unwrap_or(false) || common.json;
    echo.insert("json".to_string(), json.to_string());
    Ok(CommonResolved { seed, out, json })
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required (flag or config file)")))
}

// ---------------------------------------------------------------- identities

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Comma-separated subset of L1,L2,L3,L4 (default: all four).
    #[arg(long, value_delimiter = ',')]
    lemmas: Vec<LemmaId>,
    /// Largest k in the sweep.
    #[arg(long)]
    kmax: Option<u32>,
    /// Largest n in the sweep.
    #[arg(long)]
    nmax: Option<u32>,
    /// Largest power r in the sweep.
    #[arg(long)]
    rmax: Option<u32>,
    #[command(flatten)]
    common: CommonArgs,
}

pub fn identities(args: IdentitiesArgs) -> Result<RunOutput, CliError> {
    let mut cfg = FileConfig::load(args.common.config.as_deref())?;
    let mut echo = Echo::new();
    let from_file: Option<Vec<LemmaId>> = cfg
        .take::<String>("lemmas")?
        .map(|text| {
            text.split(',')
                .map(|s| s.parse::<LemmaId>().map_err(CliError::from))
                .collect()
        })
        .transpose()?;
    let lemmas = if args.lemmas.is_empty() {
        from_file.unwrap_or_else(|| LemmaId::ALL.to_vec())
    } else {
        args.lemmas
    };
    let lemma_list = lemmas
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    echo.insert("lemmas".to_string(), lemma_list.clone());
    let kmax = resolve(&mut echo, &mut cfg, "kmax", args.kmax, 10)?;
    let nmax = resolve(&mut echo, &mut cfg, "nmax", args.nmax, 10)?;
    let rmax = resolve(&mut echo, &mut cfg, "rmax", args.rmax, 8)?;
    let common = resolve_common(&mut echo, &mut cfg, &args.common, None)?;
    cfg.finish()?;

    let report = sweep(&lemmas, SweepBounds::new(kmax, nmax, rmax), worker_count()?)?;
    let pass = report.all_equal();
    let summary = format!(
        "{} cases across {} (k<={}, n<={}, r<={}): {}",
        report.total_cases,
        lemma_list,
        kmax,
        nmax,
        rmax,
        if pass {
            "all equal".to_string()
        } else {
            format!("{} FAILED", report.failures.len())
        }
    );
    Ok(RunOutput {
        echo,
        common,
        pass,
        payload: serde_json::to_value(&report).expect("payload"),
        summary,
    })
}

// --------------------------------------------------------------- derivatives

#[derive(Debug, Args)]
pub struct DerivativesArgs {
    /// Largest derivative order m in the coefficient sweep.
    #[arg(long)]
    mmax: Option<u32>,
    /// Largest power r in the coefficient sweep.
    #[arg(long)]
    rmax: Option<u32>,
    /// Also rebuild the exponential density at a point from its derivatives
    /// at zero.
    #[arg(long)]
    maclaurin: bool,
    /// Exponential rate for the reconstruction.
    #[arg(long)]
    rate: Option<f64>,
    /// Evaluation point for the reconstruction.
    #[arg(long)]
    x: Option<f64>,
    /// Number of series terms for the reconstruction.
    #[arg(long)]
    terms: Option<u32>,
    /// Residual threshold for the reconstruction.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

pub fn derivatives(args: DerivativesArgs) -> Result<RunOutput, CliError> {
    let mut cfg = FileConfig::load(args.common.config.as_deref())?;
    let mut echo = Echo::new();
    let mmax = resolve(&mut echo, &mut cfg, "mmax", args.mmax, 6)?;
    let rmax = resolve(&mut echo, &mut cfg, "rmax", args.rmax, 12)?;
    let maclaurin = cfg.take::<bool>("maclaurin")?.unwrap_or(false) || args.maclaurin;
    echo.insert("maclaurin".to_string(), maclaurin.to_string());
    let rate = resolve_optional(&mut echo, &mut cfg, "rate", args.rate)?;
    let x = resolve_optional(&mut echo, &mut cfg, "x", args.x)?;
    let terms = resolve_optional(&mut echo, &mut cfg, "terms", args.terms)?;
    let tol = resolve_optional(&mut echo, &mut cfg, "tol", args.tol)?;
    let common = resolve_common(&mut echo, &mut cfg, &args.common, None)?;
    cfg.finish()?;
    if !maclaurin && (rate.is_some() || x.is_some() || terms.is_some() || tol.is_some()) {
        return Err(CliError::Usage(
            "--rate/--x/--terms/--tol only apply together with --maclaurin".to_string(),
        ));
    }

    let mut failures = Vec::new();
    let mut total = 0u64;
    for m in 0..=mmax {
        for r in 0..=rmax {
            let case = DerivativeCase::new(m, r);
            let multinomial = am_derivative_coefficient(case)?;
            let closed_form = am_coefficient_closed_form(case);
            total += 1;
            if multinomial != closed_form {
                failures.push(json!({
                    "m": m,
                    "r": r,
                    "multinomial": multinomial.to_string(),
                    "closed_form": closed_form.to_string(),
                }));
            }
        }
    }
    let coefficients_pass = failures.is_empty();

    let mut payload = Map::new();
    payload.insert(
        "coefficient_sweep".to_string(),
        json!({
            "mmax": mmax,
            "rmax": rmax,
            "total_cases": total,
            "failures": failures,
        }),
    );
    let mut pass = coefficients_pass;
    let mut series_note = String::new();
    if maclaurin {
        let rate = rate.unwrap_or(1.0);
        let x = require(x, "x")?;
        let terms = terms.unwrap_or(30);
        let tol = tol.unwrap_or(1e-9);
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(rate) || !positive(x) || !positive(tol) {
            return Err(CliError::Usage(
                "--rate, --x and --tol must be positive and finite".to_string(),
            ));
        }
        let residual = maclaurin_residual(rate, x, terms);
        let series_pass = residual < tol;
        pass = pass && series_pass;
        series_note = format!(
            "; series residual at x={x} rate={rate} ({terms} terms): {residual:.3e} {} {tol:.0e}",
            if series_pass { "<" } else { ">=" }
        );
        payload.insert(
            "maclaurin".to_string(),
            json!({
                "rate": rate,
                "x": x,
                "terms": terms,
                "tol": tol,
                "residual": residual,
                "pass": series_pass,
            }),
        );
    }

    let summary = format!(
        "{total} coefficient cases (m<={mmax}, r<={rmax}): {}{series_note}",
        if coefficients_pass {
            "all exact".to_string()
        } else {
            format!("{} FAILED", total - u64::from(coefficients_pass))
        }
    );
    Ok(RunOutput {
        echo,
        common,
        pass,
        payload: Value::Object(payload),
        summary,
    })
}

// ------------------------------------------------------------------- density

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    /// The two densities should agree: pass iff sup deviation < threshold.
    Equal,
    /// They should visibly differ: pass iff sup deviation >= threshold.
    Differ,
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expect::Equal => "equal",
            Expect::Differ => "differ",
        })
    }
}

impl FromStr for Expect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "equal" => Ok(Expect::Equal),
            "differ" => Ok(Expect::Differ),
            other => Err(format!("expected 'equal' or 'differ', got '{other}'")),
        }
    }
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Statement to compare, e.g. T1:k=2,n=2.
    #[arg(long)]
    statement: Option<EqualityStatement>,
    /// Base distribution, e.g. exp:rate=1 or weibull:shape=2,scale=1.
    #[arg(long)]
    dist: Option<DistributionSpec>,
    /// Absolute accuracy budget for the left-side density.
    #[arg(long)]
    tol: Option<f64>,
    /// Pass threshold on the sup deviation (default max(1e-6, 100*tol)).
    #[arg(long)]
    threshold: Option<f64>,
    /// Whether the two sides should agree or differ.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Number of grid points.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Smallest grid point.
    #[arg(long)]
    grid_min: Option<f64>,
    /// Largest grid point (default: 5 times the base mean).
    #[arg(long)]
    grid_max: Option<f64>,
    /// Write a self-contained SVG overlay of both densities.
    #[arg(long, value_name = "PATH.svg")]
    plot: Option<PathBuf>,
    /// Also flatten the grid to CSV (x,lhs,rhs).
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

pub fn density(args: DensityArgs) -> Result<RunOutput, CliError> {
    let mut cfg = FileConfig::load(args.common.config.as_deref())?;
    let mut echo = Echo::new();
    let statement = require(
        resolve_optional(&mut echo, &mut cfg, "statement", args.statement)?,
        "statement",
    )?;
    let dist = require(resolve_optional(&mut echo, &mut cfg, "dist", args.dist)?, "dist")?;
    let tol = resolve(&mut echo, &mut cfg, "tol", args.tol, 1e-8)?;
    let threshold = resolve(
        &mut echo,
        &mut cfg,
        "threshold",
        args.threshold,
        (100.0 * tol).max(1e-6),
    )?;
    let expect = resolve(&mut echo, &mut cfg, "expect", args.expect, Expect::Equal)?;
    let grid_points = resolve(&mut echo, &mut cfg, "grid-points", args.grid_points, 100)?;
    let grid_min = resolve(&mut echo, &mut cfg, "grid-min", args.grid_min, 0.01)?;
    dist.validate()?;
    let grid_max = resolve(
        &mut echo,
        &mut cfg,
        "grid-max",
        args.grid_max,
        5.0 * dist.mean(),
    )?;
    let plot = args.plot.or(cfg.take::<String>("plot")?.map(PathBuf::from));
    if let Some(p) = &plot {
        echo.insert("plot".to_string(), p.display().to_string());
    }
    let csv = args.csv.or(cfg.take::<String>("csv")?.map(PathBuf::from));
    if let Some(p) = &csv {
        echo.insert("csv".to_string(), p.display().to_string());
    }
    let common = resolve_common(&mut echo, &mut cfg, &args.common, None)?;
    cfg.finish()?;

    if !(tol > 0.0 && threshold > 0.0) {
        return Err(CliError::Usage("--tol and --threshold must be positive".to_string()));
    }
    if grid_points < 2 {
        return Err(CliError::Usage("--grid-points must be at least 2".to_string()));
    }
    if !(grid_min > 0.0 && grid_max > grid_min && grid_max.is_finite()) {
        return Err(CliError::Usage(
            "need 0 < grid-min < grid-max, both finite".to_string(),
        ));
    }
    statement.validate()?;
    let grid: Vec<f64> = (0..grid_points)
        .map(|i| grid_min + (grid_max - grid_min) * i as f64 / (grid_points - 1) as f64)
        .collect();

    let lhs = LhsDensity::new(statement, &dist, tol)?;
    let rhs = OrderStatisticSpec::new(statement.k, statement.n, dist);
    let mut lhs_values = vec![0.0f64; grid.len()];
    let mut rhs_values = vec![0.0f64; grid.len()];
    let workers = worker_count()?.clamp(1, grid.len());
    let chunk = grid.len().div_ceil(workers);
    let worker_results: Vec<charex_core::Result<()>> = std::thread::scope(|scope| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .zip(lhs_values.chunks_mut(chunk))
            .zip(rhs_values.chunks_mut(chunk))
            .map(|((xs, ls), rs)| {
                let lhs = &lhs;
                let rhs = &rhs;
                scope.spawn(move || {
                    for ((x, l), r) in xs.iter().zip(ls).zip(rs) {
                        *l = lhs.pdf(*x)?;
                        *r = rhs.pdf(*x)?;
                    }
                    Ok(())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("density worker panicked"))
            .collect()
    });
    for result in worker_results {
        result?;
    }
    let sup_deviation = lhs_values
        .iter()
        .zip(&rhs_values)
        .map(|(l, r)| (l - r).abs())
        .fold(0.0f64, f64::max);
    let comparison = DensityComparison {
        statement,
        base: dist,
        grid,
        lhs_values,
        rhs_values,
        sup_deviation,
        tol,
    };

    let pass = match expect {
        Expect::Equal => sup_deviation < threshold,
        Expect::Differ => sup_deviation >= threshold,
    };
    if let Some(path) = &plot {
        let image = svg::density_overlay(
            &format!("{statement} under {dist}"),
            &comparison.grid,
            &comparison.lhs_values,
            &comparison.rhs_values,
            "left side (convolution)",
            "right side (order statistic)",
        );
        fs::write(path, image)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &csv {
        let mut text = String::from("x,lhs,rhs\n");
        for ((x, l), r) in comparison
            .grid
            .iter()
            .zip(&comparison.lhs_values)
            .zip(&comparison.rhs_values)
        {
            text.push_str(&format!("{x},{l},{r}\n"));
        }
        fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let summary = format!(
        "{statement} under {dist}: sup deviation {sup_deviation:.3e} over {} points in \
         [{grid_min}, {grid_max}] (expect {expect}, threshold {threshold:.3e}): {}",
        comparison.grid.len(),
        if pass { "PASS" } else { "FAIL" }
    );
    let payload = json!({
        "comparison": serde_json::to_value(&comparison).expect("payload"),
        "expect": expect.to_string(),
        "threshold": threshold,
        "pass": pass,
    });
    Ok(RunOutput {
        echo,
        common,
        pass,
        payload,
        summary,
    })
}

// ------------------------------------------------------------------------ mc

#[derive(Debug, Args)]
pub struct McArgs {
    /// Statement to test, e.g. T3:k=3,n=3.
    #[arg(long)]
    statement: Option<EqualityStatement>,
    /// Base distribution both sides are simulated from.
    #[arg(long)]
    dist: Option<DistributionSpec>,
    /// Replicates per side.
    #[arg(long)]
    n: Option<usize>,
    /// Test statistic: ks or cvm.
    #[arg(long)]
    statistic: Option<StatisticKind>,
    /// P-value mode: asymptotic or permutation[:count].
    #[arg(long)]
    p_value: Option<PValueMode>,
    #[command(flatten)]
    common: CommonArgs,
}

pub fn mc(args: McArgs) -> Result<RunOutput, CliError> {
    let mut cfg = FileConfig::load(args.common.config.as_deref())?;
    let mut echo = Echo::new();
    let statement = require(
        resolve_optional(&mut echo, &mut cfg, "statement", args.statement)?,
        "statement",
    )?;
    let dist = require(resolve_optional(&mut echo, &mut cfg, "dist", args.dist)?, "dist")?;
    let n = resolve(&mut echo, &mut cfg, "n", args.n, 1000)?;
    let statistic = resolve(&mut echo, &mut cfg, "statistic", args.statistic, StatisticKind::Ks)?;
    let p_value = resolve_optional(&mut echo, &mut cfg, "p-value", args.p_value)?;
    let common = resolve_common(&mut echo, &mut cfg, &args.common, Some(0))?;
    cfg.finish()?;

    let mut config = McConfig::new(n, common.seed.unwrap_or(0), statistic);
    if let Some(mode) = p_value {
        config.p_value_mode = mode;
    }
    echo.insert("p-value".to_string(), config.p_value_mode.to_string());
    let report = equality_mc_test(statement, &dist, &config)?;
    let pass = !report.reject_at_05;
    let summary = format!(
        "{statement} under {dist}: {}={:.5} p={:.4} ({}, N={} per side, seed {}): {}",
        report.statistic,
        report.statistic_value,
        report.p_value,
        report.p_value_mode,
        report.n_samples,
        report.seed,
        if pass { "ACCEPT" } else { "REJECT" }
    );
    Ok(RunOutput {
        echo,
        common,
        pass,
        payload: serde_json::to_value(&report).expect("payload"),
        summary,
    })
}

// ----------------------------------------------------------------------- gof

#[derive(Debug, Args)]
pub struct GofArgs {
    /// Data file: one-column CSV or whitespace-separated; '#' comments.
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
    /// Weighted-sum statement driving the block test (T3 only).
    #[arg(long)]
    statement: Option<EqualityStatement>,
    /// Test statistic: ks or cvm.
    #[arg(long)]
    statistic: Option<StatisticKind>,
    /// P-value mode: asymptotic or permutation[:count].
    #[arg(long)]
    p_value: Option<PValueMode>,
    #[command(flatten)]
    common: CommonArgs,
}

pub fn gof(args: GofArgs) -> Result<RunOutput, CliError> {
    let mut cfg = FileConfig::load(args.common.config.as_deref())?;
    let mut echo = Echo::new();
    let data_path = require(
        args.data.or(cfg.take::<String>("data")?.map(PathBuf::from)),
        "data",
    )?;
    echo.insert("data".to_string(), data_path.display().to_string());
    let statement = resolve(
        &mut echo,
        &mut cfg,
        "statement",
        args.statement,
        "T3:k=2,n=2".parse().expect("default statement"),
    )?;
    let statistic = resolve(&mut echo, &mut cfg, "statistic", args.statistic, StatisticKind::Ks)?;
    let p_value = resolve_optional(&mut echo, &mut cfg, "p-value", args.p_value)?;
    let common = resolve_common(&mut echo, &mut cfg, &args.common, Some(0))?;
    cfg.finish()?;

    let text = fs::read_to_string(&data_path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", data_path.display())))?;
    let data = parse_positive_data(&text)?;
    statement.validate()?;
    let blocks_per_side = (data.len() / statement.n as usize / 2).max(2);
    let mut config = McConfig::new(blocks_per_side, common.seed.unwrap_or(0), statistic);
    if let Some(mode) = p_value {
        config.p_value_mode = mode;
    }
    echo.insert("p-value".to_string(), config.p_value_mode.to_string());
    let report = gof_from_data(&data, statement, &config)?;
    let pass = !report.reject_at_05;
    let summary = format!(
        "{} ({} values) via {statement}: {}={:.5} p={:.4} ({}, {} blocks per side, seed {}): {}",
        data_path.display(),
        data.len(),
        report.statistic,
        report.statistic_value,
        report.p_value,
        report.p_value_mode,
        report.n_samples,
        report.seed,
        if pass {
            "consistent with exponential"
        } else {
            "REJECTS exponential"
        }
    );
    Ok(RunOutput {
        echo,
        common,
        pass,
        payload: serde_json::to_value(&report).expect("payload"),
        summary,
    })
}
