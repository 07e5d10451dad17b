use std::path::Path;

use metricid::combinatorics::{binomial, c_coeff, closed_form, coeff_oracle_with_budget};
use metricid::config_file::{load_config, ConfigFile};
use metricid::identities::{catalog, catalog_names, lookup, to_latex, verify_symbolic, IdentitySpec, Verdict};
use metricid::models::{
    alternating_centroid_gap_sq, diagonal_midpoint_gap_sq, numeric_residual, Coordinate, PointConfig,
};
use metricid::{acceptance, Error, Scalar};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::report::{Item, RunReport, Status};

/// Errors in the invocation itself, as opposed to verification outcomes.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses `n` or the inclusive range `a..b`.
pub fn parse_range(text: &str) -> Result<(usize, usize), UsageError> {
    let bad = || UsageError(format!("invalid n or range {text:?}; expected N or A..B"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn find_identity(name: &str) -> Result<&'static IdentitySpec, UsageError> {
    lookup(name).ok_or_else(|| {
        UsageError(format!(
            "unknown identity {name:?}; known identities: {}",
            catalog_names().join(", ")
        ))
    })
}

/// Subsets enumerated when building an identity at arity `n`.
fn enumeration_cost(spec: &IdentitySpec, n: usize) -> u64 {
    if spec.name == "generalized_euler" {
        binomial(n as i64, 4).ok().and_then(|c| c.to_u64()).unwrap_or(u64::MAX)
    } else {
        0
    }
}

pub fn verify(identity: &str, range: &str, budget: u64) -> Result<RunReport, UsageError> {
    let (lo, hi) = parse_range(range)?;
    let specs: Vec<&IdentitySpec> = if identity == "all" {
        catalog().iter().collect()
    } else {
        vec![find_identity(identity)?]
    };
    let mut report = RunReport::new(format!("verify --identity {identity} --n {range}"));
    for spec in specs {
        for n in lo..=hi {
            if identity == "all" && !spec.arity_rule.admits(n) {
                continue;
            }
            let label = format!("{} n={n}", spec.name);
            let cost = enumeration_cost(spec, n);
            if cost > budget {
                report.push(Item::new(
                    label,
                    Status::Error,
                    Error::Resource { count: cost.to_string(), budget }.to_string(),
                ));
                continue;
            }
            let item = match verify_symbolic(spec, n) {
                Ok(Verdict::Pass) => Item::new(label, Status::Pass, ""),
                Ok(fail @ Verdict::Fail { .. }) => {
                    let Verdict::Fail { residual } = &fail else { unreachable!() };
                    Item::new(label, Status::Fail, fail.to_string())
                        .with_data(json!({ "residual": residual.to_string() }))
                }
                Err(e) => Item::new(label, Status::Error, e.to_string()),
            };
            report.push(item);
        }
    }
    Ok(report)
}

pub fn coeffs(n: usize, k: usize, oracle: bool, budget: u64) -> Result<RunReport, UsageError> {
    let mut report = RunReport::new(format!(
        "coeffs --n {n} --k {k}{}",
        if oracle { " --oracle" } else { "" }
    ));
    let table = match closed_form(n, k) {
        Ok(t) => t,
        Err(e) => {
            report.push(Item::new(format!("closed form n={n} k={k}"), Status::Error, e.to_string()));
            return Ok(report);
        }
    };
    let diag = table.uniform_diag().expect("closed form has a uniform diagonal").clone();
    report.preamble.push(format!("n = {n}, k = {k}"));
    report.preamble.push(format!("coefficient of |x_p|^2: C({}, {}) = {diag}", n - 1, k - 1));
    report.preamble.push("span  c_(1,span)  coefficient of Re(x_p, x_p+span-1)".into());
    let mut spans = Vec::new();
    for s in 2..=n {
        let c: BigInt = c_coeff(n, k, 1, s).expect("valid arguments");
        let twice: BigInt = &c * 2;
        report.preamble.push(format!("{s:>4}  {c:>11}  {twice:>10}"));
        spans.push(json!({ "span": s, "c": c.to_string(), "coefficient": twice.to_string() }));
    }
    let pairs: Vec<_> = table
        .offdiag
        .iter()
        .map(|(&(p, q), v)| json!({ "p": p, "q": q, "coefficient": v.to_string() }))
        .collect();
    report.data = Some(json!({ "n": n, "k": k, "diag": diag.to_string(), "spans": spans, "pairs": pairs }));
    report.push(Item::new(format!("closed form n={n} k={k}"), Status::Pass, ""));

    if oracle {
        let label = format!("oracle n={n} k={k}");
        match coeff_oracle_with_budget(n, k, budget) {
            Ok(enumerated) => {
                let bad = enumerated.mismatches(&table);
                let entries = n + n * (n - 1) / 2;
                if bad.is_empty() {
                    report.push(Item::new(label, Status::Pass, format!("AGREE on all {entries} entries")));
                } else {
                    let list: Vec<String> = bad.iter().map(|m| m.to_string()).collect();
                    report.push(Item::new(
                        label,
                        Status::Fail,
                        format!("DISAGREE on {} of {entries} entries: {}", bad.len(), list.join("; ")),
                    ));
                }
            }
            Err(e) => report.push(Item::new(label, Status::Error, e.to_string())),
        }
    }
    Ok(report)
}

fn residual_item<C: Coordinate>(
    spec: &IdentitySpec,
    cfg: &PointConfig<C>,
    extra: &[Vec<C>],
) -> Item {
    let label = format!("{} on {} points", spec.name, cfg.len());
    let r = match numeric_residual(spec, cfg, extra) {
        Ok(r) => r,
        Err(e) => return Item::new(label, Status::Error, e.to_string()),
    };
    let mut detail = format!("residual {}", r.value.render());
    let mut data = json!({
        "lhs": r.lhs.render(),
        "rhs": r.rhs.render(),
        "residual": r.value.render(),
        "relative": r.relative(),
    });
    let derived = match spec.name {
        "euler4" => Some(("|LM|", diagonal_midpoint_gap_sq(cfg))),
        "euler_even" => Some(("|G1G2|", alternating_centroid_gap_sq(cfg))),
        _ => None,
    };
    if let Some((name, Ok(sq))) = derived {
        let length = sq.to_f64().sqrt();
        detail.push_str(&format!(", {name}^2 = {}, {name} = {length}", sq.render()));
        data[format!("{name}^2")] = json!(sq.render());
        data[name] = json!(length);
    }
    let status = if r.vanishes() { Status::Pass } else { Status::Fail };
    Item::new(label, status, detail).with_data(data)
}

pub fn residual(file: &Path, identity: &str) -> Result<RunReport, UsageError> {
    let spec = find_identity(identity)?;
    let loaded = load_config(file).map_err(|e| UsageError(e.to_string()))?;
    let mut report = RunReport::new(format!(
        "residual --file {} --identity {identity}",
        file.display()
    ));
    let item = match &loaded {
        ConfigFile::Rational { config, extra } => residual_item(spec, config, extra),
        ConfigFile::Real { config, extra } => residual_item(spec, config, extra),
        ConfigFile::Complex { config, extra } => residual_item(spec, config, extra),
    };
    report.push(item);
    Ok(report)
}

/// LaTeX text, or the report explaining why none was produced.
pub fn latex(identity: &str, n: usize) -> Result<Result<String, RunReport>, UsageError> {
    let spec = find_identity(identity)?;
    Ok(to_latex(spec, n).map_err(|e| {
        let mut report = RunReport::new(format!("latex --identity {identity} --n {n}"));
        report.push(Item::new(format!("{identity} n={n}"), Status::Error, e.to_string()));
        report
    }))
}

pub fn selftest() -> RunReport {
    let mut report = RunReport::new("selftest".into());
    for outcome in acceptance::run_all() {
        let status = if outcome.passed { Status::Pass } else { Status::Fail };
        let detail = match outcome.time_limit_ms {
            Some(limit) => format!("{} ({} ms, limit {limit} ms)", outcome.detail, outcome.elapsed_ms),
            None => format!("{} ({} ms)", outcome.detail, outcome.elapsed_ms),
        };
        report.push(Item::new(
            format!("criterion {}: {}", outcome.id, outcome.title),
            status,
            detail,
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..12").unwrap(), (4, 12));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("9..4").is_err());
        assert!(parse_range("a..4").is_err());
        assert!(parse_range("").is_err());
    }

    #[test]
    fn verify_generalized_euler_sweep() {
        let r = verify("generalized_euler", "4..12", 2_000_000).unwrap();
        assert_eq!(r.summary.pass, 9);
        assert!(r.all_passed());
    }

    #[test]
    fn verify_odd_euler_even_is_error() {
        let r = verify("euler_even", "7", 2_000_000).unwrap();
        assert_eq!(r.summary.error, 1);
        assert!(r.items[0].detail.contains("even"));
    }

    #[test]
    fn verify_all_skips_inadmissible_arities() {
        let r = verify("all", "4..8", 2_000_000).unwrap();
        assert!(r.all_passed());
        // euler4 once, centroid family 3 x 5, euler_even 3, generalized_euler 5
        assert_eq!(r.summary.pass, 1 + 15 + 3 + 5);
    }

    #[test]
    fn verify_respects_budget() {
        let r = verify("generalized_euler", "12", 100).unwrap();
        assert_eq!(r.summary.error, 1);
        assert!(r.items[0].detail.contains("495"));
    }

    #[test]
    fn unknown_identity_lists_catalog() {
        let err = verify("nope", "4", 10).unwrap_err();
        assert!(err.0.contains("generalized_euler"));
    }

    #[test]
    fn coeffs_tables() {
        let r = coeffs(6, 4, true, 2_000_000).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.data.as_ref().unwrap()["diag"], "10");
        assert!(r.items[1].detail.starts_with("AGREE"));

        let r = coeffs(5, 4, false, 2_000_000).unwrap();
        let spans = r.data.as_ref().unwrap()["spans"].as_array().unwrap().clone();
        assert_eq!(spans[1]["span"], 3);
        assert_eq!(spans[1]["c"], "1");

        let r = coeffs(10, 6, true, 10).unwrap();
        assert_eq!(r.summary.error, 1);
        let r = coeffs(3, 4, false, 10).unwrap();
        assert_eq!(r.summary.error, 1);
    }
}
