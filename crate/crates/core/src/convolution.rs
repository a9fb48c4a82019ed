//! Left-hand densities of the three distributional equality statements and
//! the grid comparison against the order-statistic density. T1 and T2 are
//! single convolutions evaluated on demand; the weighted sum of T3 is folded
//! pairwise, caching each intermediate density on an adaptively refined knot
//! set with monotone-cubic interpolation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dist::{DistributionSpec, OrderStatDensity, OrderStatisticSpec, TAIL_EPS};
use crate::error::{Error, Result};
use crate::interp::Pchip;
use crate::quad::{integrate_segmented, QuadConfig};

/// The three statement shapes. In each, X_{(k;n)} is the k-th smallest of n
/// independent draws from the base law:
/// T1: X_{(k-1;n-1)} + X/n,  T2: X_{(k-1;n)} + X_0/(n-k+1),
/// T3: sum over i = 1..k of X_i/(n-i+1); each claims equality in
/// distribution with X_{(k;n)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremForm {
    T1,
    T2,
    T3,
}

impl TheoremForm {
    /// T1 and T2 peel one draw off an order statistic, so they need k > 1.
    pub fn min_k(&self) -> u32 {
        match self {
            TheoremForm::T1 | TheoremForm::T2 => 2,
            TheoremForm::T3 => 1,
        }
    }
}

impl fmt::Display for TheoremForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremForm::T1 => write!(f, "T1"),
            TheoremForm::T2 => write!(f, "T2"),
            TheoremForm::T3 => write!(f, "T3"),
        }
    }
}

impl FromStr for TheoremForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(TheoremForm::T1),
            "T2" => Ok(TheoremForm::T2),
            "T3" => Ok(TheoremForm::T3),
            other => Err(Error::InvalidParameter(format!(
                "unknown statement form '{other}' (expected T1, T2, T3)"
            ))),
        }
    }
}

impl Serialize for TheoremForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EqualityStatement {
    pub form: TheoremForm,
    pub k: u32,
    pub n: u32,
}

impl EqualityStatement {
    pub fn new(form: TheoremForm, k: u32, n: u32) -> Self {
        EqualityStatement { form, k, n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < self.form.min_k() || self.k > self.n {
            return Err(Error::Domain(format!(
                "{} needs {} <= k <= n, got k = {}, n = {}",
                self.form,
                self.form.min_k(),
                self.k,
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for EqualityStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:k={},n={}", self.form, self.k, self.n)
    }
}

impl FromStr for EqualityStatement {
    type Err = Error;

    /// Compact text form, e.g. `T1:k=2,n=2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((form_text, params)) = s.split_once(':') else {
            return Err(Error::InvalidParameter(format!(
                "statement '{s}' must look like T1:k=2,n=2"
            )));
        };
        let form: TheoremForm = form_text.parse()?;
        let (mut k, mut n) = (None, None);
        for piece in params.split(',') {
            let Some((key, value)) = piece.split_once('=') else {
                return Err(Error::InvalidParameter(format!(
                    "expected key=value in '{piece}'"
                )));
            };
            let parsed: u32 = value.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("cannot parse '{}' as an integer", value.trim()))
            })?;
            let slot = match key.trim() {
                "k" => &mut k,
                "n" => &mut n,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "statement does not take parameter '{other}'"
                    )))
                }
            };
            if slot.replace(parsed).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate parameter '{}'",
                    key.trim()
                )));
            }
        }
        let statement = EqualityStatement {
            form,
            k: k.ok_or_else(|| Error::InvalidParameter("statement is missing 'k'".into()))?,
            n: n.ok_or_else(|| Error::InvalidParameter("statement is missing 'n'".into()))?,
        };
        statement.validate()?;
        Ok(statement)
    }
}

/// Density of X/c for X ~ d, i.e. c f(c y).
pub fn scaled_pdf(d: &DistributionSpec, c: f64, y: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("scale divisor must be positive, got {c}")));
    }
    d.validate()?;
    Ok(c * d.pdf(c * y))
}

/// Adaptive-quadrature estimate of the convolution integral
/// int_0^x g(x - y) h(y) dy for densities supported on the half-line.
pub fn convolve_on_halfline(
    g: impl Fn(f64) -> f64,
    h: impl Fn(f64) -> f64,
    x: f64,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    let cfg = QuadConfig::with_tol(tol);
    integrate_segmented(|y| g(x - y) * h(y), 0.0, x, &[], &cfg)
}

/// One factor of a convolution: an order-statistic density, a rescaled base
/// density, or a cached intermediate from a previous fold. Each knows its
/// truncation point and any jump locations.
enum HalfDensity {
    OrderStat {
        density: OrderStatDensity,
        cutoff: f64,
        breaks: Vec<f64>,
    },
    Scaled {
        base: DistributionSpec,
        divisor: f64,
        cutoff: f64,
        breaks: Vec<f64>,
    },
    Cached(Pchip),
}

impl HalfDensity {
    fn order_stat(k: u32, n: u32, base: DistributionSpec) -> Result<Self> {
        let spec = OrderStatisticSpec::new(k, n, base);
        let density = OrderStatDensity::new(spec)?;
        // P(any of the n draws exceeds t) <= n * sf(t) bounds every order
        // statistic's tail, so this cutoff leaves below TAIL_EPS mass.
        let cutoff = base.upper_cutoff(TAIL_EPS / n as f64)?;
        Ok(HalfDensity::OrderStat {
            density,
            cutoff,
            breaks: base.density_breakpoints(),
        })
    }

    fn scaled(base: DistributionSpec, divisor: f64) -> Result<Self> {
        let cutoff = base.upper_cutoff(TAIL_EPS)? / divisor;
        let breaks = base
            .density_breakpoints()
            .iter()
            .map(|b| b / divisor)
            .collect();
        Ok(HalfDensity::Scaled {
            base,
            divisor,
            cutoff,
            breaks,
        })
    }

    fn eval(&self, x: f64) -> f64 {
        match self {
            HalfDensity::OrderStat { density, .. } => density.eval(x),
            HalfDensity::Scaled { base, divisor, .. } => divisor * base.pdf(divisor * x),
            // Interpolated densities can dip a hair below zero near kinks.
            HalfDensity::Cached(p) => p.eval(x).max(0.0),
        }
    }

    fn cutoff(&self) -> f64 {
        match self {
            HalfDensity::OrderStat { cutoff, .. } => *cutoff,
            HalfDensity::Scaled { cutoff, .. } => *cutoff,
            HalfDensity::Cached(p) => p.x_max(),
        }
    }

    fn breaks(&self) -> &[f64] {
        match self {
            HalfDensity::OrderStat { breaks, .. } => breaks,
            HalfDensity::Scaled { breaks, .. } => breaks,
            HalfDensity::Cached(_) => &[],
        }
    }
}

/// Convolution of two half densities at one point, with panel cuts seeded at
/// every jump either factor contributes.
fn conv_point(left: &HalfDensity, right: &HalfDensity, x: f64, cfg: &QuadConfig) -> Result<f64> {
    let lo = (x - left.cutoff()).max(0.0);
    let hi = x.min(right.cutoff());
    if hi <= lo {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = right.breaks().to_vec();
    cuts.extend(left.breaks().iter().map(|b| x - b));
    integrate_segmented(|y| left.eval(x - y) * right.eval(y), lo, hi, &cuts, cfg)
}

/// Hard cap on cached knots per fold; refinement past this reports failure.
const MAX_CACHE_KNOTS: usize = (1 << 17) + 1;
const INITIAL_CACHE_KNOTS: usize = 129;

/// Tabulates left * right on [0, combined cutoff], trisecting intervals
/// until the interpolant reproduces freshly computed probe points within the
/// budget. Probes sit at the third points of each interval: the dominant
/// slope-bias component of the interpolation error is odd about the interval
/// center and vanishes at the midpoint, so midpoints must not be used as
/// acceptance probes. Third-point agreement bounds the true interval error
/// within a small constant factor.
fn build_stage(left: &HalfDensity, right: &HalfDensity, tol: f64) -> Result<Pchip> {
    let budget = tol * 0.1;
    let node_cfg = QuadConfig::with_tol(tol * 0.1);
    let hi = left.cutoff() + right.cutoff();
    let mut xs: Vec<f64> = (0..INITIAL_CACHE_KNOTS)
        .map(|i| hi * i as f64 / (INITIAL_CACHE_KNOTS - 1) as f64)
        .collect();
    let mut ys = Vec::with_capacity(xs.len());
    for &x in &xs {
        ys.push(conv_point(left, right, x, &node_cfg)?);
    }
    let width_floor = hi * 1e-12;
    let mut pending = vec![true; xs.len() - 1];
    loop {
        let interp = Pchip::new(xs.clone(), ys.clone());
        let mut inserts: Vec<(usize, [(f64, f64); 2])> = Vec::new();
        let mut worst = 0.0f64;
        for i in 0..pending.len() {
            if !pending[i] {
                continue;
            }
            let width = xs[i + 1] - xs[i];
            if width <= width_floor {
                pending[i] = false;
                continue;
            }
            let probes = [xs[i] + width / 3.0, xs[i] + 2.0 * width / 3.0];
            let mut values = [0.0f64; 2];
            let mut err = 0.0f64;
            for (slot, &p) in values.iter_mut().zip(&probes) {
                *slot = conv_point(left, right, p, &node_cfg)?;
                err = err.max((interp.eval(p) - *slot).abs());
            }
            if err <= budget {
                pending[i] = false;
            } else {
                worst = worst.max(err);
                inserts.push((i, [(probes[0], values[0]), (probes[1], values[1])]));
            }
        }
        if inserts.is_empty() {
            return Ok(Pchip::new(xs, ys));
        }
        if xs.len() + 2 * inserts.len() > MAX_CACHE_KNOTS {
            return Err(Error::CacheNonConvergence {
                achieved: worst,
                budget,
                nodes: xs.len(),
            });
        }
        let mut new_xs = Vec::with_capacity(xs.len() + 2 * inserts.len());
        let mut new_ys = Vec::with_capacity(xs.len() + 2 * inserts.len());
        let mut new_pending = Vec::with_capacity(pending.len() + 2 * inserts.len());
        let mut insert_iter = inserts.into_iter().peekable();
        for i in 0..xs.len() {
            new_xs.push(xs[i]);
            new_ys.push(ys[i]);
            if i < pending.len() {
                if insert_iter.peek().is_some_and(|(j, _)| *j == i) {
                    let (_, pair) = insert_iter.next().unwrap();
                    for (px, py) in pair {
                        new_xs.push(px);
                        new_ys.push(py);
                    }
                    new_pending.extend([true, true, true]);
                } else {
                    new_pending.push(pending[i]);
                }
            }
        }
        xs = new_xs;
        ys = new_ys;
        pending = new_pending;
    }
}

enum LhsKind {
    /// T3 with k = 1: a single rescaled draw, no integration at all.
    PureScaled(HalfDensity),
    /// Everything else: one final convolution of two factors.
    Fold {
        left: HalfDensity,
        right: HalfDensity,
    },
}

/// Reusable evaluator for the left-hand density of one statement under one
/// base law. Building it performs all T3 fold caching; evaluation afterwards
/// is read-only, so one instance can serve a whole grid.
pub struct LhsDensity {
    statement: EqualityStatement,
    base: DistributionSpec,
    tol: f64,
    kind: LhsKind,
}

impl LhsDensity {
    pub fn new(statement: EqualityStatement, d: &DistributionSpec, tol: f64) -> Result<Self> {
        statement.validate()?;
        d.validate()?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        let (k, n) = (statement.k, statement.n);
        let kind = match statement.form {
            TheoremForm::T1 => LhsKind::Fold {
                left: HalfDensity::order_stat(k - 1, n - 1, *d)?,
                right: HalfDensity::scaled(*d, n as f64)?,
            },
            TheoremForm::T2 => LhsKind::Fold {
                left: HalfDensity::order_stat(k - 1, n, *d)?,
                right: HalfDensity::scaled(*d, (n - k + 1) as f64)?,
            },
            TheoremForm::T3 => {
                // Divisors n, n-1, ..., n-k+1 in draw order; fold left to
                // right, caching every intermediate density.
                if k == 1 {
                    LhsKind::PureScaled(HalfDensity::scaled(*d, n as f64)?)
                } else {
                    let mut left = HalfDensity::scaled(*d, n as f64)?;
                    for i in 2..k {
                        let next = HalfDensity::scaled(*d, (n - i + 1) as f64)?;
                        left = HalfDensity::Cached(build_stage(&left, &next, tol)?);
                    }
                    LhsKind::Fold {
                        left,
                        right: HalfDensity::scaled(*d, (n - k + 1) as f64)?,
                    }
                }
            }
        };
        Ok(LhsDensity {
            statement,
            base: *d,
            tol,
            kind,
        })
    }

    /// Density at one point. The final convolution gets a quarter of the
    /// tolerance; the rest was spent on the fold caches.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        match &self.kind {
            LhsKind::PureScaled(h) => Ok(h.eval(x)),
            LhsKind::Fold { left, right } => {
                conv_point(left, right, x, &QuadConfig::with_tol(self.tol * 0.25))
            }
        }
    }

    pub fn statement(&self) -> EqualityStatement {
        self.statement
    }

    pub fn base(&self) -> &DistributionSpec {
        &self.base
    }

    /// Knot count of the deepest fold cache, 0 when nothing is cached.
    pub fn cache_nodes(&self) -> usize {
        match &self.kind {
            LhsKind::Fold {
                left: HalfDensity::Cached(p),
                ..
            } => p.len(),
            _ => 0,
        }
    }
}

/// Point function matching the reusable evaluator; T3 with k > 2 rebuilds
/// the fold caches on every call, so grids should go through
/// `compare_densities` or `LhsDensity` instead.
pub fn lhs_pdf(statement: EqualityStatement, d: &DistributionSpec, x: f64, tol: f64) -> Result<f64> {
    LhsDensity::new(statement, d, tol)?.pdf(x)
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityComparison {
    pub statement: EqualityStatement,
    #[serde(serialize_with = "crate::dist::serialize_display")]
    pub base: DistributionSpec,
    pub grid: Vec<f64>,
    pub lhs_values: Vec<f64>,
    pub rhs_values: Vec<f64>,
    pub sup_deviation: f64,
    pub tol: f64,
}

/// Evaluates both sides on the grid and records the sup gap. The grid must
/// be positive and ascending; an empty grid yields a vacuous comparison.
pub fn compare_densities(
    statement: EqualityStatement,
    d: &DistributionSpec,
    grid: &[f64],
    tol: f64,
) -> Result<DensityComparison> {
    for pair in grid.windows(2) {
        if pair[0] > pair[1] {
            return Err(Error::Domain("grid must be sorted ascending".to_string()));
        }
    }
    if grid.first().is_some_and(|x| *x <= 0.0) || grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain(
            "grid points must be strictly positive and finite".to_string(),
        ));
    }
    let lhs = LhsDensity::new(statement, d, tol)?;
    let rhs = OrderStatDensity::new(OrderStatisticSpec::new(statement.k, statement.n, *d))?;
    let mut lhs_values = Vec::with_capacity(grid.len());
    let mut rhs_values = Vec::with_capacity(grid.len());
    let mut sup_deviation = 0.0f64;
    for &x in grid {
        let l = lhs.pdf(x)?;
        let r = rhs.eval(x);
        sup_deviation = sup_deviation.max((l - r).abs());
        lhs_values.push(l);
        rhs_values.push(r);
    }
    Ok(DensityComparison {
        statement,
        base: *d,
        grid: grid.to_vec(),
        lhs_values,
        rhs_values,
        sup_deviation,
        tol,
    })
}
