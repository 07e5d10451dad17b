//! The acceptance suite: nine exactness criteria covering the symbolic
//! verifier, the coefficient oracle, the span-sum relation, reductions, and
//! the numeric models.
//!
//! Shared by the `acceptance` test target and the `selftest` subcommand.
//! All randomness is drawn from a fixed seed, so runs are reproducible.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{binomial, closed_form, coeff_oracle, span_sum_check};
use crate::identities::{catalog, lookup, reduction_check, verify_symbolic, IdentitySpec};
use crate::models::{
    circumradius_check, gram_poly_exp, numeric_residual, parallelogram_characterization, Coordinate,
    PointConfig, WeightedPolySpace,
};
use crate::quadform::{FormalVector, Scalar};
use crate::rational::{self, Rational};
use crate::sampling;

const SEED: u64 = 0x5eed_e17e;

/// Largest numerator/denominator magnitude for random rational coordinates.
pub const RATIONAL_BOUND: i64 = 1_000_000;
/// Float coordinates are drawn from `[-FLOAT_HALF_WIDTH, FLOAT_HALF_WIDTH]`.
pub const FLOAT_HALF_WIDTH: f64 = 1e3;
/// Bound on `|residual| / max(1, |lhs|)` for float configurations.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub time_limit_ms: Option<u128>,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let limit = self
            .time_limit_ms
            .map(|l| format!(", limit {l} ms"))
            .unwrap_or_default();
        format!(
            "[{}] criterion {}: {} ({}; {} ms{limit})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed_ms
        )
    }
}

fn timed(
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> std::result::Result<String, String>,
) -> CriterionOutcome {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let (passed, mut detail) = match result {
        Ok(d) => (in_time, d),
        Err(d) => (false, d),
    };
    if !in_time {
        detail.push_str("; over time limit");
    }
    CriterionOutcome {
        id,
        title,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        time_limit_ms: limit.map(|l| l.as_millis()),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Admissible arities up to `max` for an identity.
pub fn admissible_arities(spec: &IdentitySpec, max: usize) -> Vec<usize> {
    (1..=max).filter(|&n| spec.arity_rule.admits(n)).collect()
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        symbolic_universality(),
        oracle_equivalence(),
        span_sum_sweep(),
        reductions(),
        numeric_exactness(),
        parallelogram_biconditional(),
        circumradius(),
        polynomial_space(),
        float_sanity(),
    ]
}

/// Every catalog identity at every admissible `n <= 12`.
pub fn symbolic_universality() -> CriterionOutcome {
    timed(1, "symbolic universality, n <= 12", Some(Duration::from_secs(5)), || {
        let mut checked = 0;
        for spec in catalog() {
            for n in admissible_arities(spec, 12) {
                let verdict = verify_symbolic(spec, n).map_err(|e| e.to_string())?;
                ensure(verdict.is_pass(), || format!("{} at n = {n}: {verdict}", spec.name))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} (identity, n) pairs with zero residual"))
    })
}

/// Enumerated coefficients equal `C(n-1, k-1)` and `2 c_pq`.
pub fn oracle_equivalence() -> CriterionOutcome {
    timed(2, "coefficient oracle equivalence, n <= 10, k in {4,5,6}", Some(Duration::from_secs(30)), || {
        let mut tables = 0;
        for n in 4..=10 {
            for k in (4..=6).filter(|&k| k <= n) {
                let oracle = coeff_oracle(n, k).map_err(|e| e.to_string())?;
                let expected_diag = binomial(n as i64 - 1, k as i64 - 1).map_err(|e| e.to_string())?;
                ensure(oracle.diag.iter().all(|d| *d == expected_diag), || {
                    format!("n = {n}, k = {k}: diagonal {:?} != {expected_diag}", oracle.diag)
                })?;
                let closed = closed_form(n, k).map_err(|e| e.to_string())?;
                let bad = oracle.mismatches(&closed);
                ensure(bad.is_empty(), || format!("n = {n}, k = {k}: first mismatch {}", bad[0]))?;
                tables += 1;
            }
        }
        Ok(format!("{tables} tables agree entry for entry"))
    })
}

pub fn span_sum_sweep() -> CriterionOutcome {
    timed(3, "span-sum relation, 4 <= n <= 50", Some(Duration::from_secs(1)), || {
        for n in 4..=50 {
            let (lhs, rhs) = span_sum_check(n).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("n = {n}: {lhs} != {rhs}"))?;
        }
        Ok("47 values of n".into())
    })
}

pub fn reductions() -> CriterionOutcome {
    timed(4, "reductions to euler4 and apollonius", None, || {
        let euler4 = lookup("euler4").expect("catalog");
        let none = BTreeMap::new();
        for general in ["generalized_euler", "euler_even"] {
            let r = reduction_check(lookup(general).expect("catalog"), euler4, 4, &none)
                .map_err(|e| e.to_string())?;
            ensure(r.factor == Some(rational::int(1)), || {
                format!("{general} at n = 4 differs from euler4 (factor {:?})", r.factor)
            })?;
        }
        // euler4 with x4 <- x2, relabelled onto apollonius' (x, y, z) = (x1, x3, x2)
        let mut sub = BTreeMap::new();
        sub.insert(2, FormalVector::point(3));
        sub.insert(3, FormalVector::point(2));
        sub.insert(4, FormalVector::point(3));
        let r = reduction_check(euler4, lookup("apollonius").expect("catalog"), 4, &sub)
            .map_err(|e| e.to_string())?;
        ensure(r.factor == Some(rational::int(2)), || {
            format!("euler4 with x4 = x2 is not 2 x apollonius (factor {:?})", r.factor)
        })?;
        Ok("generalized_euler(4) = euler_even(4) = euler4; euler4|x4=x2 = 2 apollonius".into())
    })
}

fn sweep_arities(spec: &IdentitySpec) -> Vec<usize> {
    admissible_arities(spec, 8)
}

/// At least 100 random exact configurations per identity, some with repeated points.
pub fn numeric_exactness() -> CriterionOutcome {
    timed(5, "exact residuals on random rational configurations", Some(Duration::from_secs(30)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut total = 0;
        for spec in catalog() {
            let arities = sweep_arities(spec);
            for trial in 0..101 {
                let n = arities[trial % arities.len()];
                let dim = rng.gen_range(1..=3);
                let cfg = if trial == 100 {
                    // all points equal
                    let p = sampling::rational_point(&mut rng, dim, RATIONAL_BOUND);
                    PointConfig::new(dim, vec![p; n]).expect("uniform dimension")
                } else {
                    sampling::rational_config(&mut rng, n, dim, RATIONAL_BOUND, trial % 4 == 0)
                };
                let extra: Vec<Vec<Rational>> = (0..spec.extra_symbols)
                    .map(|_| sampling::rational_point(&mut rng, dim, RATIONAL_BOUND))
                    .collect();
                let r = numeric_residual(spec, &cfg, &extra).map_err(|e| e.to_string())?;
                ensure(r.value == rational::int(0), || {
                    format!("{} trial {trial} (n = {n}): residual {}", spec.name, r.value.render())
                })?;
                total += 1;
            }
        }
        Ok(format!("{total} configurations, all residuals exactly 0"))
    })
}

/// Eq. 3.3 holds exactly when the odd and even centroids coincide.
pub fn parallelogram_biconditional() -> CriterionOutcome {
    timed(6, "generalized parallelogram biconditional", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
        let mut balanced = 0;
        let mut unbalanced = 0;
        for trial in 0..60 {
            let dim = rng.gen_range(1..=3);
            let cfg = if trial % 3 == 0 {
                sampling::parallelogram(&mut rng, dim, 1000)
            } else {
                sampling::balanced_config(&mut rng, 2 + trial % 4, dim, 1000)
            };
            let t = parallelogram_characterization(&cfg).map_err(|e| e.to_string())?;
            ensure(t.centroids_equal && t.eq33_holds, || {
                format!("balanced trial {trial}: eq33 {} centroids {}", t.eq33_holds, t.centroids_equal)
            })?;
            balanced += 1;
        }
        for trial in 0..60 {
            let dim = rng.gen_range(1..=3);
            let m = 2 + trial % 4;
            let cfg = sampling::rational_config(&mut rng, 2 * m, dim, 1000, trial % 5 == 0);
            let t = parallelogram_characterization(&cfg).map_err(|e| e.to_string())?;
            if t.centroids_equal {
                // a random draw that happens to be balanced still has to agree
                ensure(t.eq33_holds, || format!("trial {trial}: equal centroids but eq33 fails"))?;
                continue;
            }
            ensure(!t.eq33_holds, || format!("trial {trial}: distinct centroids but eq33 holds"))?;
            let expected = Rational::from_count(m * m) * t.centroid_dist_sq.clone();
            ensure(t.gap == expected, || {
                format!("trial {trial}: gap {} != m^2 |G1G2|^2 = {}", t.gap.render(), expected.render())
            })?;
            unbalanced += 1;
        }
        ensure(balanced >= 50 && unbalanced >= 50, || {
            format!("only {balanced} balanced / {unbalanced} unbalanced witnesses")
        })?;
        Ok(format!("{balanced} equal-centroid and {unbalanced} distinct-centroid witnesses"))
    })
}

/// Sum of squared chords equals `n² (R² - |OG|²)` on rational circles.
pub fn circumradius() -> CriterionOutcome {
    timed(7, "chord sum on cocircular sets", None, || {
        let zero = rational::int(0);
        let one = rational::int(1);
        let square = PointConfig::new(
            2,
            vec![
                vec![one.clone(), zero.clone()],
                vec![zero.clone(), one.clone()],
                vec![-one.clone(), zero.clone()],
                vec![zero.clone(), -one.clone()],
            ],
        )
        .map_err(|e| e.to_string())?;
        let (lhs, rhs) = circumradius_check(&square, &[zero.clone(), zero.clone()], &one)
            .map_err(|e| e.to_string())?;
        ensure(lhs == rational::int(16) && rhs == rational::int(16), || {
            format!("regular 4-gon: {} vs {}", lhs.render(), rhs.render())
        })?;

        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
        let mut off_center = 0;
        for trial in 0..50 {
            let center = [sampling::rational(&mut rng, 100), sampling::rational(&mut rng, 100)];
            let radius = sampling::rational(&mut rng, 100);
            let radius = if radius == zero { one.clone() } else { radius };
            let n = rng.gen_range(1..=8);
            let cfg = sampling::cocircular(&mut rng, n, &center, &radius, 1000);
            let (lhs, rhs) = circumradius_check(&cfg, &center, &(&radius * &radius))
                .map_err(|e| format!("trial {trial}: {e}"))?;
            ensure(lhs == rhs, || format!("trial {trial}: {} vs {}", lhs.render(), rhs.render()))?;
            let g = crate::models::centroid_all(&cfg).map_err(|e| e.to_string())?;
            if g[..] != center[..] {
                off_center += 1;
            }
        }
        ensure(off_center > 0, || "no configuration with G != O".into())?;
        Ok(format!("regular 4-gon plus 50 random circles ({off_center} with G != O)"))
    })
}

/// Parallelogram, Apollonius and Euler on `x^k` under the `e^{-x}` weight.
pub fn polynomial_space() -> CriterionOutcome {
    timed(8, "identities in the weighted polynomial space", None, || {
        let mut checked = 0;
        let degrees = 0..=8u32;
        let check = |name: &str, tuple: Vec<u32>| -> std::result::Result<(), String> {
            let spec = lookup(name).expect("catalog");
            let g = gram_poly_exp(&WeightedPolySpace::new(tuple.clone()));
            let residual = spec.residual(tuple.len()).map_err(|e| e.to_string())?;
            let value = residual.evaluate(&g).map_err(|e| e.to_string())?;
            ensure(value == rational::int(0), || format!("{name} on degrees {tuple:?}: {}", value.render()))
        };
        for a in degrees.clone() {
            for b in degrees.clone() {
                check("parallelogram", vec![a, b])?;
                checked += 1;
                for c in degrees.clone() {
                    check("apollonius", vec![a, b, c])?;
                    checked += 1;
                    for d in degrees.clone() {
                        check("euler4", vec![a, b, c, d])?;
                        checked += 1;
                    }
                }
            }
        }
        Ok(format!("{checked} degree tuples from 0..=8"))
    })
}

fn float_check<C: Coordinate>(
    spec: &IdentitySpec,
    cfg: &PointConfig<C>,
    extra: &[Vec<C>],
    label: &str,
) -> std::result::Result<f64, String> {
    let r = numeric_residual(spec, cfg, extra).map_err(|e| e.to_string())?;
    let rel = r.relative();
    ensure(rel < FLOAT_TOLERANCE, || {
        format!("{} ({label}, n = {}): relative residual {rel:e}", spec.name, cfg.len())
    })?;
    Ok(rel)
}

/// Relative residuals below `1e-9` on real and complex float configurations.
pub fn float_sanity() -> CriterionOutcome {
    timed(9, "float residuals, real and complex", Some(Duration::from_secs(10)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
        let mut worst = 0.0f64;
        let mut total = 0;
        for spec in catalog() {
            let arities = sweep_arities(spec);
            for trial in 0..50 {
                let n = arities[trial % arities.len()];
                let dim = rng.gen_range(1..=3);
                let cfg = sampling::float_config(&mut rng, n, dim, FLOAT_HALF_WIDTH);
                let extra = sampling::float_config(&mut rng, spec.extra_symbols, dim, FLOAT_HALF_WIDTH);
                worst = worst.max(float_check(spec, &cfg, extra.points(), "real")?);

                let cfg = sampling::complex_config(&mut rng, n, dim, FLOAT_HALF_WIDTH);
                let extra = sampling::complex_config(&mut rng, spec.extra_symbols, dim, FLOAT_HALF_WIDTH);
                worst = worst.max(float_check(spec, &cfg, extra.points(), "complex")?);
                total += 2;
            }
        }
        Ok(format!("{total} configurations, worst relative residual {worst:e}"))
    })
}
