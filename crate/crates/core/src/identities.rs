//! Exact verification of the four order-statistic summation identities, the
//! derivative-coefficient identity behind the density expansion, and the
//! Maclaurin reconstruction residual. All identity arithmetic is carried out
//! in arbitrary precision; equality means equality, not closeness.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{
    binomial, composition_count, ensure_composition_budget, factorial, falling_factorial,
    for_each_composition, multinomial, stirling2, Int, Nat, StirlingTable,
};
use crate::error::{Error, Result};

/// Refuse enumerations beyond this many compositions; keeps a typo in a sweep
/// bound from turning into an unbounded walk.
pub const DEFAULT_COMPOSITION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LemmaId {
    L1,
    L2,
    L3,
    L4,
}

impl LemmaId {
    pub const ALL: [LemmaId; 4] = [LemmaId::L1, LemmaId::L2, LemmaId::L3, LemmaId::L4];

    /// Smallest k the identity is stated for. L3/L4 include k = 1.
    pub fn min_k(self) -> u32 {
        match self {
            LemmaId::L1 | LemmaId::L2 => 2,
            LemmaId::L3 | LemmaId::L4 => 1,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LemmaId::L1 => "L1",
            LemmaId::L2 => "L2",
            LemmaId::L3 => "L3",
            LemmaId::L4 => "L4",
        };
        f.write_str(s)
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L1" => Ok(LemmaId::L1),
            "L2" => Ok(LemmaId::L2),
            "L3" => Ok(LemmaId::L3),
            "L4" => Ok(LemmaId::L4),
            other => Err(Error::InvalidParameter(format!(
                "unknown identity '{other}' (expected L1..L4)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityCase {
    pub lemma: LemmaId,
    pub k: u32,
    pub n: u32,
    pub r: u32,
}

impl IdentityCase {
    pub fn new(lemma: LemmaId, k: u32, n: u32, r: u32) -> Self {
        IdentityCase { lemma, k, n, r }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < self.lemma.min_k() {
            return Err(Error::Domain(format!(
                "{} requires k >= {}, got k = {}",
                self.lemma,
                self.lemma.min_k(),
                self.k
            )));
        }
        if self.k > self.n {
            return Err(Error::Domain(format!(
                "{} requires k <= n, got k = {} > n = {}",
                self.lemma, self.k, self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={} n={} r={}", self.lemma, self.k, self.n, self.r)
    }
}

fn nat_string<S: Serializer>(n: &Nat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub case: IdentityCase,
    #[serde(serialize_with = "nat_string")]
    pub lhs: Nat,
    #[serde(serialize_with = "nat_string")]
    pub rhs: Nat,
    pub equal: bool,
}

/// Shared right-hand side of L3/L4; L1/L2 carry an extra (k-1)! factor.
/// sum_{i=0}^{r+1} C(n-k, i) * (i+k-1)!/(k-1)! * S(k+r+1, i+k)
fn common_rhs(t: &mut StirlingTable, k: u64, n: u64, r: u64) -> Nat {
    let mut acc = Nat::zero();
    for i in 0..=r + 1 {
        acc += binomial(n - k, i as i64)
            * falling_factorial(i + k - 1, i)
            * t.stirling(k + r + 1, i + k);
    }
    acc
}

/// Shared left-hand side of L1/L2: double sum over expansion depth j and
/// binomial index i, with the lemma-specific binomial top and power base.
/// sum_{j=k-2}^{k+r-1} sum_{i=0}^{j-k+2}
///   C(top, i) (i+k-2)! S(j+1, i+k-1) (k-1) base^{k+r-1-j}
fn expansion_lhs(t: &mut StirlingTable, k: u64, r: u64, top: u64, base: u64) -> Nat {
    let mut acc = Nat::zero();
    for j in k - 2..=k + r - 1 {
        let mut inner = Nat::zero();
        for i in 0..=j - (k - 2) {
            inner += binomial(top, i as i64) * factorial(i + k - 2) * t.stirling(j + 1, i + k - 1);
        }
        acc += inner * (k - 1) * Nat::from(base).pow((k + r - 1 - j) as u32);
    }
    acc
}

/// Both sides of one identity instance, exactly. The caller's table persists
/// memoized Stirling rows across cases.
pub fn lemma_sides(t: &mut StirlingTable, case: IdentityCase) -> Result<(Nat, Nat)> {
    case.validate()?;
    let (k, n, r) = (case.k as u64, case.n as u64, case.r as u64);
    let sides = match case.lemma {
        LemmaId::L1 => {
            let lhs = expansion_lhs(t, k, r, n - k, n);
            let rhs = common_rhs(t, k, n, r) * factorial(k - 1);
            (lhs, rhs)
        }
        LemmaId::L2 => {
            let lhs = expansion_lhs(t, k, r, n - k + 1, n - k + 1);
            let rhs = common_rhs(t, k, n, r) * factorial(k - 1);
            (lhs, rhs)
        }
        LemmaId::L3 => {
            let mut lhs = Nat::zero();
            for i in 0..=r + 1 {
                let mut inner = Nat::zero();
                for s in 1..=k {
                    inner += Nat::from(n - k + s)
                        * falling_factorial(i + s - 1, i)
                        * t.stirling(s + r, i + s);
                }
                lhs += binomial(n - k, i as i64) * inner;
            }
            (lhs, common_rhs(t, k, n, r))
        }
        LemmaId::L4 => {
            let vars: Vec<u64> = (n - k + 1..=n).rev().collect();
            let lhs = complete_homogeneous_sum(&vars, r + 1)?;
            (lhs, common_rhs(t, k, n, r))
        }
    };
    Ok(sides)
}

pub fn lemma1_sides(k: u32, n: u32, r: u32) -> Result<(Nat, Nat)> {
    lemma_sides(
        &mut StirlingTable::new(),
        IdentityCase::new(LemmaId::L1, k, n, r),
    )
}

pub fn lemma2_sides(k: u32, n: u32, r: u32) -> Result<(Nat, Nat)> {
    lemma_sides(
        &mut StirlingTable::new(),
        IdentityCase::new(LemmaId::L2, k, n, r),
    )
}

pub fn lemma3_sides(k: u32, n: u32, r: u32) -> Result<(Nat, Nat)> {
    lemma_sides(
        &mut StirlingTable::new(),
        IdentityCase::new(LemmaId::L3, k, n, r),
    )
}

pub fn lemma4_sides(k: u32, n: u32, r: u32) -> Result<(Nat, Nat)> {
    lemma_sides(
        &mut StirlingTable::new(),
        IdentityCase::new(LemmaId::L4, k, n, r),
    )
}

pub fn check_case(t: &mut StirlingTable, case: IdentityCase) -> Result<IdentityResult> {
    let (lhs, rhs) = lemma_sides(t, case)?;
    let equal = lhs == rhs;
    Ok(IdentityResult {
        case,
        lhs,
        rhs,
        equal,
    })
}

/// Complete homogeneous symmetric sum of the given degree: every monomial
/// vars[0]^{j0} ... vars[m-1]^{jm-1} with j0+...+jm-1 = degree, enumerated
/// composition by composition under the enumeration budget.
pub fn complete_homogeneous_sum(vars: &[u64], degree: u64) -> Result<Nat> {
    if vars.is_empty() {
        return Ok(if degree == 0 { Nat::one() } else { Nat::zero() });
    }
    ensure_composition_budget(degree, vars.len(), DEFAULT_COMPOSITION_CAP)?;
    let pow_table: Vec<Vec<Nat>> = vars
        .iter()
        .map(|&v| (0..=degree as u32).map(|e| Nat::from(v).pow(e)).collect())
        .collect();
    let mut acc = Nat::zero();
    for_each_composition(degree, vars.len(), |cells| {
        let mut term = Nat::one();
        for (v, &e) in cells.iter().enumerate() {
            if e > 0 {
                term *= &pow_table[v][e as usize];
            }
        }
        acc += term;
    });
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DerivativeCase {
    pub m: u32,
    pub r: u32,
}

impl DerivativeCase {
    pub fn new(m: u32, r: u32) -> Self {
        DerivativeCase { m, r }
    }
}

fn signed(mag: Nat, negative: bool) -> Int {
    let v = Int::from(mag);
    if negative {
        -v
    } else {
        v
    }
}

/// Coefficient c with A_m^(r)(0) = c * rate^(r+1) for the exponential base,
/// computed by enumerating the multinomial expansion directly: cells
/// j_1..j_m >= 1, j_{m+1} >= 0 summing to r, each contributing r!/(prod j!).
/// Every term carries the same sign (-1)^(r-m).
pub fn am_derivative_coefficient(case: DerivativeCase) -> Result<Int> {
    let (m, r) = (case.m as u64, case.r as u64);
    if r < m {
        return Ok(Int::zero());
    }
    ensure_composition_budget(r - m, m as usize + 1, DEFAULT_COMPOSITION_CAP)?;
    let mut mag = Nat::zero();
    let mut parts = vec![0u64; m as usize + 1];
    for_each_composition(r - m, m as usize + 1, |cells| {
        for (p, &c) in parts.iter_mut().zip(cells) {
            *p = c;
        }
        for p in parts[..m as usize].iter_mut() {
            *p += 1;
        }
        mag += multinomial(&parts);
    });
    Ok(signed(mag, (r - m) % 2 == 1))
}

/// The closed form the multinomial route must reproduce:
/// (-1)^(r-m) m! S(r+1, m+1).
pub fn am_coefficient_closed_form(case: DerivativeCase) -> Int {
    let (m, r) = (case.m as u64, case.r as u64);
    if r < m {
        return Int::zero();
    }
    let mag = factorial(m) * stirling2(r + 1, m + 1);
    signed(mag, (r - m) % 2 == 1)
}

/// |partial Maclaurin sum - rate * exp(-rate x)| for the reconstructed
/// density sum_q (-1)^q rate^(q+1) x^q / q!.
pub fn maclaurin_residual(rate: f64, x: f64, terms: u32) -> f64 {
    assert!(rate > 0.0 && rate.is_finite(), "rate must be positive");
    assert!(x > 0.0 && x.is_finite(), "x must be positive");
    assert!(terms >= 1, "need at least one term");
    let mut sum = 0.0;
    let mut term = rate;
    for q in 0..terms {
        sum += term;
        term *= -rate * x / (q as f64 + 1.0);
    }
    (sum - rate * (-rate * x).exp()).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    pub k_max: u32,
    pub n_max: u32,
    pub r_max: u32,
}

impl SweepBounds {
    pub fn new(k_max: u32, n_max: u32, r_max: u32) -> Self {
        SweepBounds {
            k_max,
            n_max,
            r_max,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub lemmas: Vec<LemmaId>,
    pub bounds: SweepBounds,
    pub total_cases: u64,
    pub failures: Vec<IdentityResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn all_equal(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every in-domain case of the selected identities with
/// k <= k_max, k <= n <= n_max, r <= r_max. Workers split the case list by
/// stride and each keeps its own memo table; failures are reported in case
/// order regardless of completion order.
pub fn sweep(lemmas: &[LemmaId], bounds: SweepBounds, workers: usize) -> Result<VerificationReport> {
    let selected: BTreeSet<LemmaId> = lemmas.iter().copied().collect();
    for lemma in &selected {
        if bounds.k_max < lemma.min_k() {
            return Err(Error::Domain(format!(
                "{lemma} requires k >= {}, but k_max = {}",
                lemma.min_k(),
                bounds.k_max
            )));
        }
    }
    if bounds.k_max > bounds.n_max {
        return Err(Error::Domain(format!(
            "k_max = {} exceeds n_max = {}",
            bounds.k_max, bounds.n_max
        )));
    }
    if selected.contains(&LemmaId::L4) {
        ensure_composition_budget(
            bounds.r_max as u64 + 1,
            bounds.k_max as usize,
            DEFAULT_COMPOSITION_CAP,
        )?;
    }

    let mut cases = Vec::new();
    for &lemma in &selected {
        for k in lemma.min_k()..=bounds.k_max {
            for n in k..=bounds.n_max {
                for r in 0..=bounds.r_max {
                    cases.push(IdentityCase::new(lemma, k, n, r));
                }
            }
        }
    }

    let started = Instant::now();
    let workers = workers.max(1).min(cases.len().max(1));
    let chunks: Vec<Result<Vec<(usize, IdentityResult)>>> = std::thread::scope(|scope| {
        let cases = &cases;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut table = StirlingTable::new();
                    let mut bad = Vec::new();
                    let mut idx = w;
                    while idx < cases.len() {
                        let result = check_case(&mut table, cases[idx])?;
                        if !result.equal {
                            bad.push((idx, result));
                        }
                        idx += workers;
                    }
                    Ok(bad)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    let mut indexed = Vec::new();
    for chunk in chunks {
        indexed.extend(chunk?);
    }
    indexed.sort_by_key(|(idx, _)| *idx);

    Ok(VerificationReport {
        lemmas: selected.into_iter().collect(),
        bounds,
        total_cases: cases.len() as u64,
        failures: indexed.into_iter().map(|(_, r)| r).collect(),
        elapsed: started.elapsed(),
    })
}

/// Cases in an L4 sweep stay enumerable: largest family is r_max+1 into k_max
/// cells. Exposed so callers can pre-check before launching a long sweep.
pub fn l4_enumeration_size(bounds: SweepBounds) -> Nat {
    composition_count(bounds.r_max as u64 + 1, bounds.k_max.max(1) as usize)
}
