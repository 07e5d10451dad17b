//! Binomial coefficients and the coefficient tables of alternating
//! `k`-subset expansions
//!
//! ```text
//! Σ_{1 ≤ i_1 < ... < i_k ≤ n} ‖x_{i_1} - x_{i_2} + ... + (-1)^{k-1} x_{i_k}‖²
//! ```
//!
//! Every `‖x_p‖²` appears there with coefficient `C(n-1, k-1)` and every
//! `Re(x_p, x_q)` with coefficient `2 c_pq`, where
//!
//! ```text
//! c_pq = Σ_{r=0}^{k-2} (-1)^{r+1} C(n-q+p-1, k-2-r) C(q-p-1, r).
//! ```
//!
//! [`closed_form`] tabulates those values; [`coeff_oracle`] enumerates every
//! subset and expands it through [`crate::quadform`], so the two can be
//! compared entry by entry.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadform::{FormalVector, QuadraticForm};

/// Default cap on the number of subsets [`coeff_oracle`] may enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 2_000_000;

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::Domain(format!("binomial upper index {a} is negative")));
    }
    if b < 0 || b > a {
        return Ok(BigInt::zero());
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

fn binom(a: i64, b: i64) -> BigInt {
    binomial(a, b).expect("upper index checked non-negative")
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 4 || k > n {
        return Err(Error::Domain(format!("need 4 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// The off-diagonal coefficient `c_pq` (half the coefficient of `Re(x_p, x_q)`).
pub fn c_coeff(n: usize, k: usize, p: usize, q: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    if p < 1 || p >= q || q > n {
        return Err(Error::Domain(format!(
            "need 1 <= p < q <= n, got p = {p}, q = {q}, n = {n}"
        )));
    }
    let (n, k, span) = (n as i64, k as i64, (q - p) as i64);
    let mut total = BigInt::zero();
    for r in 0..=k - 2 {
        let term = binom(n - span - 1, k - 2 - r) * binom(span - 1, r);
        if r % 2 == 0 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

/// Coefficients of the alternating `k`-subset expansion over `n` symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub n: usize,
    pub k: usize,
    /// Coefficient of `‖x_p‖²`, indexed by `p - 1`.
    pub diag: Vec<BigInt>,
    /// Coefficient of `Re(x_p, x_q)` for every `p < q` (that is, `2 c_pq`).
    pub offdiag: BTreeMap<(usize, usize), BigInt>,
}

/// One entry on which two tables differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub p: usize,
    pub q: usize,
    pub left: BigInt,
    pub right: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): {} vs {}", self.p, self.q, self.left, self.right)
    }
}

impl CoeffTable {
    /// The shared diagonal coefficient, if every `‖x_p‖²` has the same one.
    pub fn uniform_diag(&self) -> Option<&BigInt> {
        let first = self.diag.first()?;
        self.diag.iter().all(|d| d == first).then_some(first)
    }

    pub fn offdiag(&self, p: usize, q: usize) -> BigInt {
        self.offdiag.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Entries that differ, diagonal entries reported as `(p, p)`.
    pub fn mismatches(&self, other: &CoeffTable) -> Vec<Mismatch> {
        let mut out = Vec::new();
        let n = self.n.max(other.n);
        let diag_at = |t: &CoeffTable, p: usize| t.diag.get(p - 1).cloned().unwrap_or_default();
        for p in 1..=n {
            let (left, right) = (diag_at(self, p), diag_at(other, p));
            if left != right {
                out.push(Mismatch { p, q: p, left, right });
            }
        }
        for p in 1..=n {
            for q in p + 1..=n {
                let (left, right) = (self.offdiag(p, q), other.offdiag(p, q));
                if left != right {
                    out.push(Mismatch { p, q, left, right });
                }
            }
        }
        out
    }
}

/// The table predicted by `C(n-1, k-1)` and `2 c_pq`.
pub fn closed_form(n: usize, k: usize) -> Result<CoeffTable> {
    check_nk(n, k)?;
    let diag = binom(n as i64 - 1, k as i64 - 1);
    let mut offdiag = BTreeMap::new();
    for p in 1..=n {
        for q in p + 1..=n {
            offdiag.insert((p, q), c_coeff(n, k, p, q)? * 2);
        }
    }
    Ok(CoeffTable {
        n,
        k,
        diag: vec![diag; n],
        offdiag,
    })
}

/// [`coeff_oracle_with_budget`] with [`DEFAULT_ENUMERATION_BUDGET`].
pub fn coeff_oracle(n: usize, k: usize) -> Result<CoeffTable> {
    coeff_oracle_with_budget(n, k, DEFAULT_ENUMERATION_BUDGET)
}

/// Expands every alternating `k`-subset norm and reads the coefficients off
/// the accumulated form.
pub fn coeff_oracle_with_budget(n: usize, k: usize, budget: u64) -> Result<CoeffTable> {
    check_nk(n, k)?;
    let count = binom(n as i64, k as i64);
    if count.to_u64().is_none_or(|c| c > budget) {
        return Err(Error::Resource {
            count: count.to_string(),
            budget,
        });
    }
    let total: QuadraticForm = Combinations::new(n, k)
        .map(|subset| QuadraticForm::norm_sq(&FormalVector::alternating(&subset)))
        .sum();

    let integral = |p: usize, q: usize| -> BigInt {
        let c = total.coefficient(p, q);
        debug_assert!(c.is_integer());
        c.to_integer()
    };
    let diag = (1..=n).map(|p| integral(p, p)).collect();
    let mut offdiag = BTreeMap::new();
    for p in 1..=n {
        for q in p + 1..=n {
            offdiag.insert((p, q), integral(p, q));
        }
    }
    Ok(CoeffTable { n, k, diag, offdiag })
}

/// Increasing `k`-tuples drawn from `1..=n`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (1..=k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost slot that can still move up
        let pivot = (0..k).rev().find(|&i| next[i] < self.n - (k - 1 - i));
        if let Some(i) = pivot {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Both members of the span-sum relation for `k = 4`:
/// `lhs = Σ_{s=3}^{n-1} c(n, 4, 1, s) + C(n-1, 3)` and `rhs = 2 C(n-2, 2)`.
///
/// The sum over `j = i+2 ..= n+i-2` runs past `n`; each `j` is read as the
/// span `s = j - i + 1` through `c_pq = c_{1, q-p+1}`, which gives `s = 3..=n-1`.
///
/// The quadratic `-2s² + 4s + 2sn - n²/2 - 3n/2 - 3` that accompanies this
/// relation is the value of the single term `c(n, 4, 1, s)`, not of the
/// partial sum; the unit tests check that numerically.
pub fn span_sum_check(n: usize) -> Result<(BigInt, BigInt)> {
    if n < 4 {
        return Err(Error::Domain(format!("span sum needs n >= 4, got {n}")));
    }
    let mut lhs = binom(n as i64 - 1, 3);
    for s in 3..n {
        lhs += c_coeff(n, 4, 1, s)?;
    }
    let rhs = binom(n as i64 - 2, 2) * 2;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Factorial-based reference, independent of the multiplicative loop.
    fn binomial_by_factorials(a: i64, b: i64) -> BigInt {
        if b < 0 || b > a {
            return BigInt::zero();
        }
        let fact = |m: i64| (1..=m).fold(BigInt::one(), |acc, i| acc * i);
        fact(a) / (fact(b) * fact(a - b))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2).unwrap(), big(6));
        assert_eq!(binomial(3, 5).unwrap(), big(0));
        assert_eq!(binomial(3, -1).unwrap(), big(0));
        assert_eq!(binomial(0, 0).unwrap(), big(1));
        assert!(matches!(binomial(-1, 0), Err(Error::Domain(_))));
        for a in 0..40 {
            for b in -2..42 {
                assert_eq!(binomial(a, b).unwrap(), binomial_by_factorials(a, b), "C({a},{b})");
            }
        }
    }

    #[test]
    fn vandermonde_convolution() {
        for m in 0..=30i64 {
            for n in (0..=30i64).step_by(3) {
                for k in (0..=30i64).step_by(2) {
                    let lhs: BigInt = (0..=k).map(|r| binom(m, k - r) * binom(n, r)).sum();
                    assert_eq!(lhs, binom(m + n, k), "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn c_coeff_examples() {
        // -C(1,2)C(1,0) + C(1,1)C(1,1) - C(1,0)C(1,2)
        assert_eq!(c_coeff(4, 4, 1, 3).unwrap(), big(1));
        assert_eq!(c_coeff(6, 4, 1, 4).unwrap(), big(2));
        for n in 4..=15 {
            for k in 4..=n {
                let adjacent = -binom(n as i64 - 2, k as i64 - 2);
                for p in 1..n {
                    assert_eq!(c_coeff(n, k, p, p + 1).unwrap(), adjacent);
                }
            }
        }
    }

    #[test]
    fn c_coeff_rejects_bad_arguments() {
        assert!(c_coeff(4, 3, 1, 2).is_err());
        assert!(c_coeff(4, 5, 1, 2).is_err());
        assert!(c_coeff(5, 4, 2, 2).is_err());
        assert!(c_coeff(5, 4, 3, 2).is_err());
        assert!(c_coeff(5, 4, 0, 2).is_err());
        assert!(c_coeff(5, 4, 1, 6).is_err());
    }

    #[test]
    fn translation_invariance_and_wraparound() {
        for n in 4..=14 {
            for k in 4..=n {
                for p in 1..=n {
                    for q in p + 1..=n {
                        assert_eq!(c_coeff(n, k, p, q).unwrap(), c_coeff(n, k, 1, q - p + 1).unwrap());
                    }
                }
            }
            // (1, n) is cyclically adjacent
            assert_eq!(c_coeff(n, 4, 1, n).unwrap(), -binom(n as i64 - 2, 2));
        }
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let all: Vec<_> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![1, 2, 3]);
        assert_eq!(all[9], vec![3, 4, 5]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Combinations::new(4, 4).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
    }

    #[test]
    fn oracle_single_subset() {
        let t = coeff_oracle(4, 4).unwrap();
        assert_eq!(t.uniform_diag(), Some(&big(1)));
        assert_eq!(t.offdiag(1, 3), big(2));
        assert_eq!(t.offdiag(1, 2), big(-2));
    }

    #[test]
    fn oracle_matches_closed_form_small() {
        for n in 4..=8 {
            for k in 4..=n.min(6) {
                let oracle = coeff_oracle(n, k).unwrap();
                let closed = closed_form(n, k).unwrap();
                assert!(oracle.mismatches(&closed).is_empty(), "n={n} k={k}");
            }
        }
        assert_eq!(closed_form(6, 4).unwrap().uniform_diag(), Some(&big(10)));
    }

    #[test]
    fn oracle_respects_budget() {
        match coeff_oracle_with_budget(10, 5, 100) {
            Err(Error::Resource { count, budget }) => {
                assert_eq!(count, "252");
                assert_eq!(budget, 100);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
        assert!(coeff_oracle(3, 4).is_err());
    }

    #[test]
    fn mismatch_reporting() {
        let mut t = closed_form(5, 4).unwrap();
        let reference = t.clone();
        t.offdiag.insert((2, 4), big(99));
        t.diag[0] = big(0);
        let bad = t.mismatches(&reference);
        assert_eq!(bad.len(), 2);
        assert_eq!((bad[0].p, bad[0].q), (1, 1));
        assert_eq!((bad[1].p, bad[1].q), (2, 4));
        assert_eq!(t.uniform_diag(), None);
    }

    #[test]
    fn span_sum_small_cases() {
        assert_eq!(span_sum_check(4).unwrap(), (big(2), big(2)));
        assert_eq!(span_sum_check(5).unwrap(), (big(6), big(6)));
        for n in 4..=50 {
            let (l, r) = span_sum_check(n).unwrap();
            assert_eq!(l, r, "n={n}");
        }
        assert!(span_sum_check(3).is_err());
    }

    #[test]
    fn accompanying_quadratic_is_a_single_term() {
        for n in 4..=40i64 {
            for s in 3..n {
                // -2s² + 4s + 2sn - n²/2 - 3n/2 - 3, doubled to stay integral
                let twice = -4 * s * s + 8 * s + 4 * s * n - n * n - 3 * n - 6;
                let c = c_coeff(n as usize, 4, 1, s as usize).unwrap();
                assert_eq!(c * 2, big(twice), "n={n} s={s}");
            }
        }
    }
}
