//! Exact combinatorial kernels: factorials, binomials, Stirling numbers of the
//! second kind, weak-composition enumeration, and residuals of the four base
//! Stirling identities. Everything here is arbitrary precision; no float ever
//! enters an identity check.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;
/// Arbitrary-precision signed integer, used for residuals.
pub type Int = BigInt;

pub fn factorial(n: u64) -> Nat {
    let mut acc = Nat::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Falling factorial a (a-1) ... (a-l+1); empty product for l = 0, zero once
/// the factors cross zero (l > a).
pub fn falling_factorial(a: u64, l: u64) -> Nat {
    if l > a {
        return Nat::zero();
    }
    let mut acc = Nat::one();
    for i in 0..l {
        acc *= a - i;
    }
    acc
}

/// Binomial coefficient with the usual out-of-range convention: zero for
/// k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> Nat {
    if k < 0 || k as u64 > n {
        return Nat::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Stepwise multiply/divide keeps every intermediate an exact integer:
    // after i steps the accumulator is C(n-k+i, i).
    let mut acc = Nat::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Multinomial coefficient (sum parts)! / prod parts!.
pub fn multinomial(parts: &[u64]) -> Nat {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

fn next_stirling_row(prev: &[Nat], a: usize) -> Vec<Nat> {
    // Row a from row a-1 via S(a,b) = S(a-1,b-1) + b S(a-1,b).
    let mut row = vec![Nat::zero(); a + 1];
    for b in 1..=a {
        let carry = if b < a {
            &prev[b] * (b as u64)
        } else {
            Nat::zero()
        };
        row[b] = &prev[b - 1] + carry;
    }
    if a == 0 {
        row[0] = Nat::one();
    }
    row
}

/// Stirling number of the second kind, one-shot evaluation with two rolling
/// rows (O(a) memory). Returns 0 for b > a; S(0,0) = 1.
pub fn stirling2(a: u64, b: u64) -> Nat {
    if b > a {
        return Nat::zero();
    }
    let mut row = vec![Nat::one()];
    for i in 1..=a as usize {
        row = next_stirling_row(&row, i);
    }
    row[b as usize].clone()
}

/// Dense triangular memo of Stirling numbers. Rows up to `memo_cap` are kept;
/// larger arguments are answered with a transient rolling computation so the
/// cached footprint stays bounded. Lookups never mutate existing cells, so a
/// fully built table can be shared read-only.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<Nat>>,
    memo_cap: usize,
}

impl StirlingTable {
    pub const DEFAULT_MEMO_CAP: usize = 64;

    pub fn new() -> Self {
        Self::with_memo_cap(Self::DEFAULT_MEMO_CAP)
    }

    pub fn with_memo_cap(memo_cap: usize) -> Self {
        StirlingTable {
            rows: vec![vec![Nat::one()]],
            memo_cap,
        }
    }

    pub fn memo_cap(&self) -> usize {
        self.memo_cap
    }

    /// Number of fully built rows (row indices 0..built_rows are resident).
    pub fn built_rows(&self) -> usize {
        self.rows.len()
    }

    fn build_to(&mut self, a: usize) {
        while self.rows.len() <= a {
            let next = self.rows.len();
            let row = next_stirling_row(self.rows.last().expect("row 0 present"), next);
            self.rows.push(row);
        }
    }

    pub fn stirling(&mut self, a: u64, b: u64) -> Nat {
        if b > a {
            return Nat::zero();
        }
        let a = a as usize;
        if a <= self.memo_cap {
            self.build_to(a);
            return self.rows[a][b as usize].clone();
        }
        // Beyond the memo bound: materialize up to the cap, then roll.
        self.build_to(self.memo_cap);
        let mut row = self.rows[self.memo_cap].clone();
        for i in self.memo_cap + 1..=a {
            row = next_stirling_row(&row, i);
        }
        row[b as usize].clone()
    }
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

/// The four textbook identities the Stirling table is audited against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BaseIdentity {
    /// S(a,b) = S(a-1,b-1) + b S(a-1,b)
    Recurrence,
    /// S(a+1,b+1) = sum_l C(a,l) S(l,b)
    BinomialSum,
    /// S(a+b+1,b) = sum_l l S(a+l,l)
    Diagonal,
    /// a^b = sum_l S(b,l) a(a-1)...(a-l+1)
    Power,
}

impl BaseIdentity {
    pub const ALL: [BaseIdentity; 4] = [
        BaseIdentity::Recurrence,
        BaseIdentity::BinomialSum,
        BaseIdentity::Diagonal,
        BaseIdentity::Power,
    ];
}

fn to_int(n: Nat) -> Int {
    Int::from(n)
}

/// Signed residual (LHS - RHS) of one base identity instance. Exactly zero
/// whenever the table is correct; any other value is a hard failure.
pub fn base_identity_residual(identity: BaseIdentity, a: u64, b: u64) -> Int {
    let mut t = StirlingTable::new();
    // Local shorthand; the closures below never see negative indices because
    // every subtraction is guarded at the call site.
    let mut st = move |x: u64, y: u64| t.stirling(x, y);
    let (lhs, rhs) = match identity {
        BaseIdentity::Recurrence => {
            if a == 0 {
                // There is no row above the apex; the instance is vacuous.
                return Int::zero();
            }
            let lhs = st(a, b);
            let rhs = if b == 0 {
                Nat::zero()
            } else {
                st(a - 1, b - 1) + st(a - 1, b) * b
            };
            (lhs, rhs)
        }
        BaseIdentity::BinomialSum => {
            let lhs = st(a + 1, b + 1);
            let mut rhs = Nat::zero();
            for l in 0..=a {
                rhs += binomial(a, l as i64) * st(l, b);
            }
            (lhs, rhs)
        }
        BaseIdentity::Diagonal => {
            let lhs = st(a + b + 1, b);
            let mut rhs = Nat::zero();
            for l in 0..=b {
                rhs += st(a + l, l) * l;
            }
            (lhs, rhs)
        }
        BaseIdentity::Power => {
            let lhs = Nat::from(a).pow(b as u32);
            let mut rhs = Nat::zero();
            for l in 0..=b {
                rhs += st(b, l) * falling_factorial(a, l);
            }
            (lhs, rhs)
        }
    };
    to_int(lhs) - to_int(rhs)
}

/// Number of weak compositions of `total` into `parts` ordered cells.
pub fn composition_count(total: u64, parts: usize) -> Nat {
    assert!(parts >= 1, "compositions need at least one cell");
    binomial(total + parts as u64 - 1, parts as i64 - 1)
}

/// Visits every weak composition of `total` into `parts` cells in
/// reverse-lexicographic order, without allocating per item. The visitor
/// receives a shared scratch slice valid only for the duration of the call.
pub fn for_each_composition<F: FnMut(&[u64])>(total: u64, parts: usize, mut visit: F) {
    assert!(parts >= 1, "compositions need at least one cell");
    let mut cells = vec![0u64; parts];
    cells[0] = total;
    loop {
        visit(&cells);
        // Successor: decrement the rightmost positive cell left of the end,
        // move everything to its right back into the next cell.
        let Some(i) = (0..parts - 1).rev().find(|&i| cells[i] > 0) else {
            return;
        };
        let tail: u64 = cells[i + 1..].iter().sum();
        cells[i] -= 1;
        cells[i + 1] = tail + 1;
        for c in &mut cells[i + 2..] {
            *c = 0;
        }
    }
}

/// Guard for enumeration-backed evaluators: errs out instead of silently
/// walking an astronomically large composition family.
pub fn ensure_composition_budget(total: u64, parts: usize, cap: u64) -> Result<u64> {
    let count = composition_count(total, parts);
    if count > Nat::from(cap) {
        return Err(Error::CombinatorialBound(format!(
            "{count} compositions of {total} into {parts} cells (cap {cap})"
        )));
    }
    Ok(u64::try_from(&count).expect("count fits: checked against cap"))
}
