//! Distribution catalog on the positive half-line, the order-statistic
//! density built from any member, and inverse-transform sampling. The
//! exponential is the family under test; the others serve as alternatives
//! that the equality checks must reject.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::{inv_normal_cdf, ln_gamma, reg_lower_gamma, reg_upper_gamma};
use crate::stream::RandomStream;

/// Tail mass discarded when an unbounded support has to be truncated for
/// numerical work (convolution limits, cache extents).
pub const TAIL_EPS: f64 = 1e-12;

/// Serde helper: render a field through its Display form.
pub(crate) fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    value: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    Exponential { rate: f64 },
    Weibull { shape: f64, scale: f64 },
    Gamma { shape: f64, rate: f64 },
    UniformPositive { upper: f64 },
    HalfNormal { sigma: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and positive, got {v}"
        )))
    }
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DistributionSpec::Exponential { rate } => positive("rate", rate),
            DistributionSpec::Weibull { shape, scale } => {
                positive("shape", shape).and(positive("scale", scale))
            }
            DistributionSpec::Gamma { shape, rate } => {
                positive("shape", shape).and(positive("rate", rate))
            }
            DistributionSpec::UniformPositive { upper } => positive("upper", upper),
            DistributionSpec::HalfNormal { sigma } => positive("sigma", sigma),
        }
    }

    /// Density on the open half-line; zero for x <= 0.
    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            DistributionSpec::Exponential { rate } => rate * (-rate * x).exp(),
            DistributionSpec::Weibull { shape, scale } => {
                let t = x / scale;
                shape / scale * t.powf(shape - 1.0) * (-t.powf(shape)).exp()
            }
            DistributionSpec::Gamma { shape, rate } => {
                ((shape - 1.0) * (rate * x).ln() - rate * x - ln_gamma(shape)).exp() * rate
            }
            DistributionSpec::UniformPositive { upper } => {
                if x < upper {
                    1.0 / upper
                } else {
                    0.0
                }
            }
            DistributionSpec::HalfNormal { sigma } => {
                let z = x / sigma;
                (2.0 / std::f64::consts::PI).sqrt() / sigma * (-0.5 * z * z).exp()
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            DistributionSpec::Exponential { rate } => -(-rate * x).exp_m1(),
            DistributionSpec::Weibull { shape, scale } => {
                -(-(x / scale).powf(shape)).exp_m1()
            }
            DistributionSpec::Gamma { shape, rate } => reg_lower_gamma(shape, rate * x),
            DistributionSpec::UniformPositive { upper } => (x / upper).min(1.0),
            DistributionSpec::HalfNormal { sigma } => {
                reg_lower_gamma(0.5, 0.5 * (x / sigma) * (x / sigma))
            }
        }
    }

    /// Survival function, computed on the tail-accurate branch.
    pub fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            DistributionSpec::Exponential { rate } => (-rate * x).exp(),
            DistributionSpec::Weibull { shape, scale } => (-(x / scale).powf(shape)).exp(),
            DistributionSpec::Gamma { shape, rate } => reg_upper_gamma(shape, rate * x),
            DistributionSpec::UniformPositive { upper } => (1.0 - x / upper).max(0.0),
            DistributionSpec::HalfNormal { sigma } => {
                reg_upper_gamma(0.5, 0.5 * (x / sigma) * (x / sigma))
            }
        }
    }

    /// Inverse CDF for u in the open unit interval.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain(format!("quantile needs u in (0,1), got {u}")));
        }
        match *self {
            DistributionSpec::Exponential { rate } => Ok(-(-u).ln_1p() / rate),
            DistributionSpec::Weibull { shape, scale } => {
                Ok(scale * (-(-u).ln_1p()).powf(1.0 / shape))
            }
            DistributionSpec::Gamma { shape, rate } => {
                Ok(gamma_standard_quantile(shape, u)? / rate)
            }
            DistributionSpec::UniformPositive { upper } => Ok(u * upper),
            DistributionSpec::HalfNormal { sigma } => {
                // X/sigma squared over 2 is Gamma(1/2); invert through that.
                let y = gamma_standard_quantile(0.5, u)?;
                Ok(sigma * (2.0 * y).sqrt())
            }
        }
    }

    /// Point beyond which at most `eps` probability mass remains. Exact for
    /// the bounded member.
    pub fn upper_cutoff(&self, eps: f64) -> Result<f64> {
        assert!(eps > 0.0 && eps < 0.5, "eps must be a small tail mass");
        match *self {
            DistributionSpec::Exponential { rate } => Ok(-eps.ln() / rate),
            DistributionSpec::Weibull { shape, scale } => {
                Ok(scale * (-eps.ln()).powf(1.0 / shape))
            }
            DistributionSpec::Gamma { shape, rate } => {
                Ok(gamma_standard_upper_cutoff(shape, eps)? / rate)
            }
            DistributionSpec::UniformPositive { upper } => Ok(upper),
            DistributionSpec::HalfNormal { sigma } => {
                let y = gamma_standard_upper_cutoff(0.5, eps)?;
                Ok(sigma * (2.0 * y).sqrt())
            }
        }
    }

    /// Interior points where the density jumps; quadrature panels split here.
    pub fn density_breakpoints(&self) -> Vec<f64> {
        match *self {
            DistributionSpec::UniformPositive { upper } => vec![upper],
            _ => Vec::new(),
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            DistributionSpec::Exponential { rate } => 1.0 / rate,
            DistributionSpec::Weibull { shape, scale } => {
                scale * ln_gamma(1.0 + 1.0 / shape).exp()
            }
            DistributionSpec::Gamma { shape, rate } => shape / rate,
            DistributionSpec::UniformPositive { upper } => 0.5 * upper,
            DistributionSpec::HalfNormal { sigma } => {
                sigma * (2.0 / std::f64::consts::PI).sqrt()
            }
        }
    }

    /// Inverse-transform samples: one uniform consumed per draw, so a stream
    /// position is a function of (seed, draws so far).
    pub fn sample(&self, stream: &mut RandomStream, count: usize) -> Result<Vec<f64>> {
        self.validate()?;
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(self.quantile(stream.next_unit())?);
        }
        Ok(out)
    }
}

impl serde::Serialize for DistributionSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DistributionSpec::Exponential { rate } => write!(f, "exp:rate={rate}"),
            DistributionSpec::Weibull { shape, scale } => {
                write!(f, "weibull:shape={shape},scale={scale}")
            }
            DistributionSpec::Gamma { shape, rate } => {
                write!(f, "gamma:shape={shape},rate={rate}")
            }
            DistributionSpec::UniformPositive { upper } => write!(f, "unif:upper={upper}"),
            DistributionSpec::HalfNormal { sigma } => write!(f, "halfnorm:sigma={sigma}"),
        }
    }
}

fn parse_params(text: &str, family: &str, keys: &[&str]) -> Result<Vec<f64>> {
    let mut values = vec![None; keys.len()];
    if text.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "{family} needs parameters {}",
            keys.join(",")
        )));
    }
    for piece in text.split(',') {
        let Some((key, value)) = piece.split_once('=') else {
            return Err(Error::InvalidParameter(format!(
                "expected key=value in '{piece}'"
            )));
        };
        let key = key.trim();
        let Some(slot) = keys.iter().position(|k| *k == key) else {
            return Err(Error::InvalidParameter(format!(
                "{family} does not take parameter '{key}'"
            )));
        };
        if values[slot].is_some() {
            return Err(Error::InvalidParameter(format!("duplicate parameter '{key}'")));
        }
        let parsed: f64 = value.trim().parse().map_err(|_| {
            Error::InvalidParameter(format!("cannot parse '{}' as a number", value.trim()))
        })?;
        values[slot] = Some(parsed);
    }
    let mut out = Vec::with_capacity(keys.len());
    for (slot, key) in values.into_iter().zip(keys) {
        out.push(slot.ok_or_else(|| {
            Error::InvalidParameter(format!("{family} is missing parameter '{key}'"))
        })?);
    }
    Ok(out)
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Compact text form, e.g. `exp:rate=1.0` or `weibull:shape=2,scale=1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, params) = s.split_once(':').unwrap_or((s, ""));
        let spec = match family {
            "exp" => {
                let v = parse_params(params, "exp", &["rate"])?;
                DistributionSpec::Exponential { rate: v[0] }
            }
            "weibull" => {
                let v = parse_params(params, "weibull", &["shape", "scale"])?;
                DistributionSpec::Weibull {
                    shape: v[0],
                    scale: v[1],
                }
            }
            "gamma" => {
                let v = parse_params(params, "gamma", &["shape", "rate"])?;
                DistributionSpec::Gamma {
                    shape: v[0],
                    rate: v[1],
                }
            }
            "unif" => {
                let v = parse_params(params, "unif", &["upper"])?;
                DistributionSpec::UniformPositive { upper: v[0] }
            }
            "halfnorm" => {
                let v = parse_params(params, "halfnorm", &["sigma"])?;
                DistributionSpec::HalfNormal { sigma: v[0] }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown distribution family '{other}' \
                     (expected exp, weibull, gamma, unif, halfnorm)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn std_gamma_pdf(shape: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    ((shape - 1.0) * y.ln() - y - ln_gamma(shape)).exp()
}

/// Safeguarded Newton on a monotone increasing g with g(0+) < 0 < g(inf):
/// keeps a hard bracket, falls back to bisection whenever Newton leaves it.
fn invert_increasing(
    g: impl Fn(f64) -> f64,
    deriv: impl Fn(f64) -> f64,
    guess: f64,
) -> Result<f64> {
    let mut lo = 0.0f64;
    let mut hi = guess.max(1e-8);
    let mut expand = 0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        expand += 1;
        if expand > 400 {
            return Err(Error::RootNonConvergence(
                "no finite upper bracket".to_string(),
            ));
        }
    }
    let mut x = guess;
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }
    for _ in 0..200 {
        let gx = g(x);
        if gx == 0.0 {
            return Ok(x);
        }
        if gx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = deriv(x);
        let mut next = if d > 0.0 { x - gx / d } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * (1.0 + x.abs()) || hi - lo <= 1e-15 * (1.0 + hi) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::RootNonConvergence(format!(
        "bracket [{lo}, {hi}] did not shrink"
    )))
}

/// Quantile of the standard (rate 1) gamma. For upper-tail targets solves on
/// the survival side so the answer does not route through 1 - u.
fn gamma_standard_quantile(shape: f64, u: f64) -> Result<f64> {
    // Wilson-Hilferty starting point, clamped to something positive.
    let z = inv_normal_cdf(u);
    let c = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * shape.sqrt());
    let mut guess = shape * c * c * c;
    if guess <= 0.0 || !guess.is_finite() {
        // Small-shape fallback from P(a,x) ~ x^a / (a Gamma(a)).
        guess = ((u.ln() + ln_gamma(shape + 1.0)) / shape).exp();
    }
    if u <= 0.9 {
        invert_increasing(
            |y| reg_lower_gamma(shape, y) - u,
            |y| std_gamma_pdf(shape, y),
            guess,
        )
    } else {
        let tail = 1.0 - u;
        invert_increasing(
            |y| tail - reg_upper_gamma(shape, y),
            |y| std_gamma_pdf(shape, y),
            guess,
        )
    }
}

fn gamma_standard_upper_cutoff(shape: f64, eps: f64) -> Result<f64> {
    let z = -inv_normal_cdf(eps);
    let c = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * shape.sqrt());
    let guess = (shape * c * c * c).max(shape + 1.0);
    invert_increasing(
        |y| eps - reg_upper_gamma(shape, y),
        |y| std_gamma_pdf(shape, y),
        guess,
    )
}

/// k-th smallest of n independent draws from `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderStatisticSpec {
    pub k: u32,
    pub n: u32,
    pub base: DistributionSpec,
}

impl OrderStatisticSpec {
    pub fn new(k: u32, n: u32, base: DistributionSpec) -> Self {
        OrderStatisticSpec { k, n, base }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.k < 1 || self.k > self.n {
            return Err(Error::Domain(format!(
                "order statistic needs 1 <= k <= n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    /// Density n!/((k-1)!(n-k)!) F^(k-1) (1-F)^(n-k) f.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        Ok(OrderStatDensity::new(*self)?.eval(x))
    }

    /// P(k-th of n <= x) as the binomial upper tail of successes F(x).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if x <= 0.0 {
            return Ok(0.0);
        }
        let (k, n) = (self.k as i64, self.n as u64);
        let big_f = self.base.cdf(x);
        let big_s = self.base.sf(x);
        if big_f <= 0.0 {
            return Ok(0.0);
        }
        if big_s <= 0.0 {
            return Ok(1.0);
        }
        let ln_f = big_f.ln();
        let ln_s = big_s.ln();
        let ln_gamma_n1 = ln_gamma(n as f64 + 1.0);
        let mut acc = 0.0;
        for j in k..=n as i64 {
            let ln_c = ln_gamma_n1
                - ln_gamma(j as f64 + 1.0)
                - ln_gamma((n as i64 - j) as f64 + 1.0);
            acc += (ln_c + j as f64 * ln_f + (n as i64 - j) as f64 * ln_s).exp();
        }
        Ok(acc.min(1.0))
    }

    /// One replicate consumes exactly n uniforms, in draw order.
    pub fn sample(&self, stream: &mut RandomStream, count: usize) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.n as usize;
        let mut buf = vec![0.0f64; n];
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            for slot in buf.iter_mut() {
                *slot = self.base.quantile(stream.next_unit())?;
            }
            let (_, kth, _) =
                buf.select_nth_unstable_by(self.k as usize - 1, |a, b| a.total_cmp(b));
            out.push(*kth);
        }
        Ok(out)
    }
}

impl fmt::Display for OrderStatisticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orderstat(k={},n={};{})", self.k, self.n, self.base)
    }
}

/// Prevalidated order-statistic density evaluator for hot loops.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OrderStatDensity {
    k: i32,
    n: i32,
    base: DistributionSpec,
    norm: f64,
}

impl OrderStatDensity {
    pub(crate) fn new(spec: OrderStatisticSpec) -> Result<Self> {
        spec.validate()?;
        let (k, n) = (spec.k as f64, spec.n as f64);
        let norm = (ln_gamma(n + 1.0) - ln_gamma(k) - ln_gamma(n - k + 1.0)).exp();
        Ok(OrderStatDensity {
            k: spec.k as i32,
            n: spec.n as i32,
            base: spec.base,
            norm,
        })
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let f = self.base.pdf(x);
        if f == 0.0 {
            return 0.0;
        }
        let big_f = self.base.cdf(x);
        let big_s = self.base.sf(x);
        self.norm * big_f.powi(self.k - 1) * big_s.powi(self.n - self.k) * f
    }
}

/// Expansion kernel A_m(x) = F(x)^m f(x).
pub fn a_m(d: &DistributionSpec, m: u32, x: f64) -> Result<f64> {
    d.validate()?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(d.cdf(x).powi(m as i32) * d.pdf(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Vec<DistributionSpec> {
        vec![
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Exponential { rate: 2.5 },
            DistributionSpec::Weibull {
                shape: 2.0,
                scale: 1.0,
            },
            DistributionSpec::Gamma {
                shape: 2.0,
                rate: 1.0,
            },
            DistributionSpec::Gamma {
                shape: 0.7,
                rate: 3.0,
            },
            DistributionSpec::UniformPositive { upper: 1.0 },
            DistributionSpec::HalfNormal { sigma: 1.0 },
        ]
    }

    #[test]
    fn parse_display_roundtrip() {
        for text in [
            "exp:rate=1",
            "exp:rate=0.5",
            "weibull:shape=2,scale=1",
            "gamma:shape=2,rate=1",
            "unif:upper=1",
            "halfnorm:sigma=1.5",
        ] {
            let spec: DistributionSpec = text.parse().unwrap();
            let rendered = spec.to_string();
            let again: DistributionSpec = rendered.parse().unwrap();
            assert_eq!(spec, again, "{text} -> {rendered}");
        }
    }

    #[test]
    fn parse_rejects_malformed_specs() {
        for text in [
            "exp",
            "exp:rate=0",
            "exp:rate=-1",
            "exp:rate=nope",
            "exp:scale=1",
            "weibull:shape=2",
            "weibull:shape=2,scale=1,extra=3",
            "gamma:shape=1,rate=1,shape=2",
            "lognormal:mu=0",
            "unif:upper=inf",
        ] {
            assert!(text.parse::<DistributionSpec>().is_err(), "{text}");
        }
    }

    #[test]
    fn exponential_closed_forms() {
        let d = DistributionSpec::Exponential { rate: 2.0 };
        assert!((d.pdf(1.0) - 2.0 * (-2.0f64).exp()).abs() < 1e-15);
        assert!((d.cdf(1.0) - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        let median = d.quantile(0.5).unwrap();
        assert!((median - 0.5 * std::f64::consts::LN_2).abs() < 1e-14);
        assert_eq!(d.pdf(-1.0), 0.0);
        assert_eq!(d.cdf(0.0), 0.0);
        assert!(d.quantile(0.0).is_err());
        assert!(d.quantile(1.0).is_err());
    }

    #[test]
    fn quantile_cdf_roundtrip_across_catalog() {
        for d in catalog() {
            let lo = d.quantile(0.001).unwrap();
            let hi = d.quantile(0.999).unwrap();
            for i in 0..=60 {
                let x = lo * (hi / lo).powf(i as f64 / 60.0);
                let u = d.cdf(x);
                let back = d.quantile(u).unwrap();
                assert!(
                    (back - x).abs() <= 1e-10 * x.abs().max(1e-12),
                    "{d}: x={x} u={u} back={back}"
                );
            }
        }
    }

    #[test]
    fn quantiles_are_monotone() {
        for d in catalog() {
            let mut prev = 0.0;
            for i in 1..400 {
                let u = i as f64 / 400.0;
                let q = d.quantile(u).unwrap();
                assert!(q >= prev, "{d}: quantile dipped at u={u}");
                prev = q;
            }
        }
    }

    // Composite Simpson on [0, hi]; independent of the quadrature module.
    fn simpson(f: impl Fn(f64) -> f64, hi: f64, panels: usize) -> f64 {
        let h = hi / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            let a = i as f64 * h;
            acc += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
        }
        acc
    }

    #[test]
    fn cdf_matches_integrated_pdf() {
        // Bulk range only: the shapes with an endpoint pole (gamma with
        // shape < 1) are not Simpson-integrable down to 0.
        for d in catalog() {
            let lo = d.quantile(0.02).unwrap();
            let hi = d.quantile(0.97).unwrap();
            let integral = simpson(|x| d.pdf(lo + x), hi - lo, 20_000);
            let expect = d.cdf(hi) - d.cdf(lo);
            assert!(
                (integral - expect).abs() < 1e-7,
                "{d}: integral {integral} vs cdf difference {expect}"
            );
        }
    }

    #[test]
    fn order_stat_pdf_closed_forms() {
        let e1 = DistributionSpec::Exponential { rate: 1.0 };
        // k = n = 1 reduces to the base density.
        let single = OrderStatisticSpec::new(1, 1, e1);
        assert!((single.pdf(0.7).unwrap() - e1.pdf(0.7)).abs() < 1e-14);
        // Maximum of two standard exponentials at ln 2: 2 F f = 2 * 1/2 * 1/2.
        let max2 = OrderStatisticSpec::new(2, 2, e1);
        let ln2 = std::f64::consts::LN_2;
        assert!((max2.pdf(ln2).unwrap() - 0.25 * 2.0).abs() < 1e-13);
        assert!((max2.pdf(ln2).unwrap() - 0.5).abs() < 1e-13);
        // Minimum of n exponentials is exponential with rate n lambda.
        for n in 1..=6u32 {
            let min_n = OrderStatisticSpec::new(1, n, e1);
            for i in 1..=8 {
                let x = i as f64 * 0.3;
                let expect = n as f64 * (-(n as f64) * x).exp();
                assert!(
                    (min_n.pdf(x).unwrap() - expect).abs() < 1e-12,
                    "n={n} x={x}"
                );
            }
        }
        // Uniform maximum of two: 2x on (0,1).
        let u = DistributionSpec::UniformPositive { upper: 1.0 };
        let umax = OrderStatisticSpec::new(2, 2, u);
        assert!((umax.pdf(0.75).unwrap() - 1.5).abs() < 1e-14);
        assert_eq!(umax.pdf(1.5).unwrap(), 0.0);
    }

    #[test]
    fn order_stat_domain_checks() {
        let e1 = DistributionSpec::Exponential { rate: 1.0 };
        assert!(OrderStatisticSpec::new(0, 2, e1).pdf(1.0).is_err());
        assert!(OrderStatisticSpec::new(3, 2, e1).pdf(1.0).is_err());
    }

    #[test]
    fn order_stat_pdf_binomial_expansion_consistency() {
        // f_{k:n} = norm * sum_i (-1)^i C(n-k, i) A_{k-1+i}; the expansion
        // must agree pointwise with the direct product form.
        let members = [
            DistributionSpec::Exponential { rate: 1.3 },
            DistributionSpec::Weibull {
                shape: 2.0,
                scale: 1.0,
            },
            DistributionSpec::HalfNormal { sigma: 0.8 },
        ];
        for d in members {
            for (k, n) in [(1u32, 1u32), (1, 4), (2, 3), (3, 5), (4, 4)] {
                let spec = OrderStatisticSpec::new(k, n, d);
                let norm = (ln_gamma(n as f64 + 1.0)
                    - ln_gamma(k as f64)
                    - ln_gamma((n - k) as f64 + 1.0))
                .exp();
                for i in 1..=12 {
                    let x = i as f64 * 0.25;
                    let mut acc = 0.0;
                    for j in 0..=(n - k) {
                        let c = f64::from(
                            u32::try_from(crate::combinatorics::binomial(
                                (n - k) as u64,
                                j as i64,
                            ))
                            .unwrap(),
                        );
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        acc += sign * c * a_m(&d, k - 1 + j, x).unwrap();
                    }
                    let direct = spec.pdf(x).unwrap();
                    assert!(
                        (direct - norm * acc).abs() <= 1e-10 * (1.0 + direct),
                        "{d} k={k} n={n} x={x}: {direct} vs {}",
                        norm * acc
                    );
                }
            }
        }
    }

    #[test]
    fn a_m_examples() {
        let e1 = DistributionSpec::Exponential { rate: 1.0 };
        let ln2 = std::f64::consts::LN_2;
        assert!((a_m(&e1, 1, ln2).unwrap() - 0.25).abs() < 1e-14);
        assert!((a_m(&e1, 0, ln2).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(a_m(&e1, 3, -1.0).unwrap(), 0.0);
    }

    #[test]
    fn sampling_is_deterministic_and_consumes_one_uniform_per_draw() {
        let d = DistributionSpec::Exponential { rate: 1.0 };
        let mut s1 = RandomStream::new(11);
        let mut s2 = RandomStream::new(11);
        let a = d.sample(&mut s1, 100).unwrap();
        let b = d.sample(&mut s2, 100).unwrap();
        assert_eq!(a, b);
        assert!(d.sample(&mut s1, 0).unwrap().is_empty());

        // Draw-for-draw the sample must be the quantile of the raw stream.
        let mut raw = RandomStream::new(11);
        let direct: Vec<f64> = (0..100)
            .map(|_| d.quantile(raw.next_unit()).unwrap())
            .collect();
        assert_eq!(a, direct);
    }

    #[test]
    fn sample_moments_match_in_the_bulk() {
        let d = DistributionSpec::Exponential { rate: 1.0 };
        let mut s = RandomStream::new(2024);
        let n = 100_000;
        let xs = d.sample(&mut s, n).unwrap();
        let mean = xs.iter().sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");

        // Minimum of 4 standard exponentials has mean 1/4.
        let min4 = OrderStatisticSpec::new(1, 4, d);
        let ys = min4.sample(&mut s.substream(1), n).unwrap();
        let mean4 = ys.iter().sum::<f64>() / n as f64;
        assert!((mean4 - 0.25).abs() < 0.003, "mean {mean4}");
    }

    #[test]
    fn order_stat_sample_tracks_its_cdf() {
        // One-sample KS against the analytic order-statistic CDF at a fixed
        // seed; the bound is the alpha = 0.01 asymptotic critical value.
        let d = DistributionSpec::Weibull {
            shape: 2.0,
            scale: 1.0,
        };
        let spec = OrderStatisticSpec::new(2, 3, d);
        let n = 20_000;
        let mut s = RandomStream::new(5);
        let mut xs = spec.sample(&mut s, n).unwrap();
        xs.sort_unstable_by(|a, b| a.total_cmp(b));
        let mut sup = 0.0f64;
        for (i, x) in xs.iter().enumerate() {
            let f = spec.cdf(*x).unwrap();
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            sup = sup.max((f - lo).abs()).max((f - hi).abs());
        }
        assert!(sup < 1.63 / (n as f64).sqrt(), "sup gap {sup}");
    }

    #[test]
    fn upper_cutoff_leaves_requested_tail() {
        for d in catalog() {
            let cut = d.upper_cutoff(1e-12).unwrap();
            let sf = d.sf(cut);
            assert!(
                sf <= 1.5e-12,
                "{d}: sf({cut}) = {sf}"
            );
            if !matches!(d, DistributionSpec::UniformPositive { .. }) {
                assert!(sf > 1e-13, "{d}: cutoff overshoots, sf = {sf}");
            }
        }
    }
}
