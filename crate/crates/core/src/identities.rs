//! The identity catalog, the symbolic verifier and the LaTeX emitter.
//!
//! Each identity is stored as data: an arity rule and a builder that produces
//! both sides as weighted sums of squared norms of formal vectors. Expanding
//! both sides into [`QuadraticForm`]s reduces verification to checking that
//! every coefficient of `lhs - rhs` vanishes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, c_coeff, Combinations};
use crate::error::{Error, Result};
use crate::quadform::{basis_name, FormalVector, QuadraticForm};
use crate::rational::{self, Rational};

/// `coeff · ‖vector‖²`
#[derive(Debug, Clone, PartialEq)]
pub struct NormTerm {
    pub coeff: Rational,
    pub vector: FormalVector,
}

impl NormTerm {
    pub fn new(coeff: Rational, vector: FormalVector) -> Self {
        NormTerm { coeff, vector }
    }

    pub fn unit(vector: FormalVector) -> Self {
        NormTerm::new(Rational::one(), vector)
    }

    pub fn form(&self) -> QuadraticForm {
        QuadraticForm::norm_sq(&self.vector).scale(&self.coeff)
    }
}

/// `factor · (t_1 + t_2 + ...)`; the grouping only affects rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    pub factor: Rational,
    pub terms: Vec<NormTerm>,
}

impl Group {
    pub fn new(factor: Rational, terms: Vec<NormTerm>) -> Self {
        Group { factor, terms }
    }

    pub fn plain(terms: Vec<NormTerm>) -> Self {
        Group::new(Rational::one(), terms)
    }

    pub fn form(&self) -> QuadraticForm {
        self.terms
            .iter()
            .map(NormTerm::form)
            .sum::<QuadraticForm>()
            .scale(&self.factor)
    }
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Side {
    pub groups: Vec<Group>,
}

impl Side {
    pub fn new(groups: Vec<Group>) -> Self {
        Side { groups }
    }

    pub fn form(&self) -> QuadraticForm {
        self.groups.iter().map(Group::form).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sides {
    pub lhs: Side,
    pub rhs: Side,
}

/// Which point counts an identity is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArityRule {
    Fixed(usize),
    AtLeast(usize),
    EvenAtLeast(usize),
}

impl ArityRule {
    pub fn admits(self, n: usize) -> bool {
        match self {
            ArityRule::Fixed(m) => n == m,
            ArityRule::AtLeast(m) => n >= m,
            ArityRule::EvenAtLeast(m) => n >= m && n % 2 == 0,
        }
    }

    /// The smallest admissible arity.
    pub fn minimum(self) -> usize {
        match self {
            ArityRule::Fixed(m) | ArityRule::AtLeast(m) => m,
            ArityRule::EvenAtLeast(m) => m + m % 2,
        }
    }
}

impl fmt::Display for ArityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArityRule::Fixed(m) => write!(f, "n = {m}"),
            ArityRule::AtLeast(m) => write!(f, "n >= {m}"),
            ArityRule::EvenAtLeast(m) => write!(f, "n even and n >= {m}"),
        }
    }
}

/// A named, parameterized identity.
#[derive(Clone, Copy)]
pub struct IdentitySpec {
    pub name: &'static str,
    pub arity_rule: ArityRule,
    /// Auxiliary free points, numbered `n + 1 ..= n + extra_symbols`.
    pub extra_symbols: usize,
    /// Plain-text statement of the identity.
    pub statement: &'static str,
    pub builder: fn(usize) -> Sides,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("name", &self.name)
            .field("arity_rule", &self.arity_rule)
            .field("extra_symbols", &self.extra_symbols)
            .finish_non_exhaustive()
    }
}

impl IdentitySpec {
    pub fn check_arity(&self, n: usize) -> Result<()> {
        if self.arity_rule.admits(n) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} requires {}, got n = {n}",
                self.name, self.arity_rule
            )))
        }
    }

    /// Total number of point symbols at arity `n`.
    pub fn symbol_count(&self, n: usize) -> usize {
        n + self.extra_symbols
    }

    pub fn build(&self, n: usize) -> Result<Sides> {
        self.check_arity(n)?;
        Ok((self.builder)(n))
    }

    /// Both sides expanded into quadratic forms.
    pub fn forms(&self, n: usize) -> Result<(QuadraticForm, QuadraticForm)> {
        let sides = self.build(n)?;
        Ok((sides.lhs.form(), sides.rhs.form()))
    }

    /// `lhs - rhs` as a quadratic form.
    pub fn residual(&self, n: usize) -> Result<QuadraticForm> {
        let (lhs, rhs) = self.forms(n)?;
        Ok(&lhs - &rhs)
    }
}

fn x(i: usize) -> FormalVector {
    FormalVector::point(i)
}

fn diff(i: usize, j: usize) -> FormalVector {
    x(i) - x(j)
}

fn unit_diff(i: usize, j: usize) -> NormTerm {
    NormTerm::unit(diff(i, j))
}

/// `‖x_i - x_{i+1}‖²` for `i = 1..=n` with `x_{n+1} = x_1`.
fn cyclic_sides(n: usize) -> Vec<NormTerm> {
    (1..=n).map(|i| unit_diff(i, i % n + 1)).collect()
}

/// Pairs `i < j` strictly between cyclic neighbours: `1 < j - i < n - 1`.
fn middle_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 2..=n).filter(move |&j| j - i < n - 1).map(move |j| (i, j)))
}

fn binom_rational(a: usize, b: usize) -> Rational {
    rational::from_bigint(binomial(a as i64, b as i64).expect("non-negative upper index"))
}

fn parallelogram(_n: usize) -> Sides {
    Sides {
        lhs: Side::new(vec![Group::plain(vec![
            NormTerm::unit(x(1) + x(2)),
            NormTerm::unit(x(1) - x(2)),
        ])]),
        rhs: Side::new(vec![Group::new(
            rational::int(2),
            vec![NormTerm::unit(x(1)), NormTerm::unit(x(2))],
        )]),
    }
}

/// Symbols `x = x_1`, `y = x_2`, `z = x_3`.
fn apollonius(_n: usize) -> Sides {
    Sides {
        lhs: Side::new(vec![Group::plain(vec![unit_diff(1, 3), unit_diff(2, 3)])]),
        rhs: Side::new(vec![Group::plain(vec![
            NormTerm::new(rational::int(2), x(3) - FormalVector::midpoint(1, 2)),
            NormTerm::new(rational::rat(1, 2), diff(1, 2)),
        ])]),
    }
}

fn euler4(_n: usize) -> Sides {
    Sides {
        lhs: Side::new(vec![Group::plain(vec![
            unit_diff(1, 2),
            unit_diff(2, 3),
            unit_diff(3, 4),
            unit_diff(1, 4),
        ])]),
        rhs: Side::new(vec![
            Group::plain(vec![unit_diff(1, 3), unit_diff(2, 4)]),
            Group::plain(vec![NormTerm::new(
                rational::int(4),
                FormalVector::midpoint(1, 3) - FormalVector::midpoint(2, 4),
            )]),
        ]),
    }
}

fn centroid_of_first(n: usize) -> FormalVector {
    FormalVector::centroid(&(1..=n).collect::<Vec<_>>())
}

/// `Σ ‖x_k - x_G‖²`
fn deviations_from_centroid(n: usize) -> Vec<NormTerm> {
    let centroid = centroid_of_first(n);
    (1..=n).map(|k| NormTerm::unit(&x(k) - &centroid)).collect()
}

/// `Σ_{k<l} ‖x_k - x_l‖²`
fn all_pairs(n: usize) -> Vec<NormTerm> {
    (1..=n)
        .flat_map(|k| (k + 1..=n).map(move |l| unit_diff(k, l)))
        .collect()
}

/// `Σ ‖x_k - x‖²` with `x = x_{n+1}`.
fn distances_to_free_point(n: usize) -> Vec<NormTerm> {
    (1..=n).map(|k| unit_diff(k, n + 1)).collect()
}

fn free_point_to_centroid(n: usize) -> NormTerm {
    NormTerm::new(rational::int(n as i64), x(n + 1) - centroid_of_first(n))
}

fn centroid_decomposition(n: usize) -> Sides {
    Sides {
        lhs: Side::new(vec![Group::plain(distances_to_free_point(n))]),
        rhs: Side::new(vec![
            Group::plain(deviations_from_centroid(n)),
            Group::plain(vec![free_point_to_centroid(n)]),
        ]),
    }
}

fn pairwise_centroid(n: usize) -> Sides {
    Sides {
        lhs: Side::new(vec![Group::plain(all_pairs(n))]),
        rhs: Side::new(vec![Group::new(
            rational::int(n as i64),
            deviations_from_centroid(n),
        )]),
    }
}

fn generalized_apollonius(n: usize) -> Sides {
    Sides {
        lhs: Side::new(vec![Group::plain(distances_to_free_point(n))]),
        rhs: Side::new(vec![
            Group::new(rational::rat(1, n as i64), all_pairs(n)),
            Group::plain(vec![free_point_to_centroid(n)]),
        ]),
    }
}

fn euler_even(n: usize) -> Sides {
    let signed: Vec<NormTerm> = middle_pairs(n)
        .map(|(i, j)| {
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            NormTerm::new(rational::int(sign), diff(i, j))
        })
        .collect();
    let alternating = FormalVector::alternating(&(1..=n).collect::<Vec<_>>());
    Sides {
        lhs: Side::new(vec![Group::plain(cyclic_sides(n))]),
        rhs: Side::new(vec![
            Group::plain(signed),
            Group::plain(vec![NormTerm::unit(alternating)]),
        ]),
    }
}

fn generalized_euler(n: usize) -> Sides {
    let weighted: Vec<NormTerm> = middle_pairs(n)
        .map(|(i, j)| {
            let c = c_coeff(n, 4, i, j).expect("middle pairs satisfy 1 <= i < j <= n");
            NormTerm::new(rational::from_bigint(c), diff(i, j))
        })
        .collect();
    let quads: Vec<NormTerm> = Combinations::new(n, 4)
        .map(|s| NormTerm::unit(FormalVector::alternating(&s)))
        .collect();
    Sides {
        lhs: Side::new(vec![Group::new(binom_rational(n - 2, 2), cyclic_sides(n))]),
        rhs: Side::new(vec![Group::plain(weighted), Group::plain(quads)]),
    }
}

static CATALOG: [IdentitySpec; 8] = [
    IdentitySpec {
        name: "parallelogram",
        arity_rule: ArityRule::Fixed(2),
        extra_symbols: 0,
        statement: "|x+y|^2 + |x-y|^2 = 2(|x|^2 + |y|^2)",
        builder: parallelogram,
    },
    IdentitySpec {
        name: "apollonius",
        arity_rule: ArityRule::Fixed(3),
        extra_symbols: 0,
        statement: "|x-z|^2 + |y-z|^2 = 2|z-(x+y)/2|^2 + (1/2)|x-y|^2",
        builder: apollonius,
    },
    IdentitySpec {
        name: "euler4",
        arity_rule: ArityRule::Fixed(4),
        extra_symbols: 0,
        statement: "sum of squared sides = sum of squared diagonals + 4|midpoint(x1,x3) - midpoint(x2,x4)|^2",
        builder: euler4,
    },
    IdentitySpec {
        name: "centroid_decomposition",
        arity_rule: ArityRule::AtLeast(1),
        extra_symbols: 1,
        statement: "sum_k |x_k-x|^2 = sum_k |x_k-x_G|^2 + n|x-x_G|^2",
        builder: centroid_decomposition,
    },
    IdentitySpec {
        name: "pairwise_centroid",
        arity_rule: ArityRule::AtLeast(1),
        extra_symbols: 0,
        statement: "sum_{k<l} |x_k-x_l|^2 = n sum_k |x_k-x_G|^2",
        builder: pairwise_centroid,
    },
    IdentitySpec {
        name: "generalized_apollonius",
        arity_rule: ArityRule::AtLeast(1),
        extra_symbols: 1,
        statement: "sum_k |x_k-x|^2 = (1/n) sum_{k<l} |x_k-x_l|^2 + n|x-x_G|^2",
        builder: generalized_apollonius,
    },
    IdentitySpec {
        name: "euler_even",
        arity_rule: ArityRule::EvenAtLeast(4),
        extra_symbols: 0,
        statement: "sum_i |x_i-x_{i+1}|^2 = sum_{1<j-i<n-1} (-1)^(j-i) |x_i-x_j|^2 + |sum_i (-1)^(i-1) x_i|^2",
        builder: euler_even,
    },
    IdentitySpec {
        name: "generalized_euler",
        arity_rule: ArityRule::AtLeast(4),
        extra_symbols: 0,
        statement: "C(n-2,2) sum_i |x_i-x_{i+1}|^2 = sum_{1<j-i<n-1} c_ij |x_i-x_j|^2 + sum_{i<j<k<l} |x_i-x_j+x_k-x_l|^2",
        builder: generalized_euler,
    },
];

pub fn catalog() -> &'static [IdentitySpec] {
    &CATALOG
}

pub fn lookup(name: &str) -> Option<&'static IdentitySpec> {
    CATALOG.iter().find(|spec| spec.name == name)
}

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|spec| spec.name).collect()
}

/// Outcome of a symbolic check.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    /// `lhs - rhs` did not cancel; the residual form is kept for diagnosis.
    Fail { residual: QuadraticForm },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail { residual } => {
                let ((i, j), c) = residual.first_term().expect("failing residual is nonzero");
                write!(
                    f,
                    "FAIL: coefficient of {} is {} (residual {residual})",
                    basis_name(i, j),
                    rational::display(c)
                )
            }
        }
    }
}

pub fn verify_symbolic(spec: &IdentitySpec, n: usize) -> Result<Verdict> {
    let residual = spec.residual(n)?;
    Ok(if residual.is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail { residual }
    })
}

/// Result of pulling one identity back onto another.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    /// `λ` with `general = λ · special` on both sides, when one exists.
    pub factor: Option<Rational>,
    pub lhs: QuadraticForm,
    pub rhs: QuadraticForm,
}

impl Reduction {
    pub fn holds(&self) -> bool {
        self.factor.is_some()
    }
}

/// Applies `substitution` to `general` at arity `n` and compares both sides with
/// `special`, allowing one common nonzero rational factor.
///
/// `special` is taken at its fixed arity, or at `n` when its rule is not fixed.
pub fn reduction_check(
    general: &IdentitySpec,
    special: &IdentitySpec,
    n: usize,
    substitution: &BTreeMap<usize, FormalVector>,
) -> Result<Reduction> {
    general.check_arity(n)?;
    let special_n = match special.arity_rule {
        ArityRule::Fixed(m) => m,
        _ => n,
    };
    special.check_arity(special_n)?;

    let general_symbols = general.symbol_count(n);
    let special_symbols = special.symbol_count(special_n);
    for (&from, image) in substitution {
        if from == 0 || from > general_symbols {
            return Err(Error::Domain(format!(
                "substitution source x{from} is not a symbol of {} at n = {n}",
                general.name
            )));
        }
        if image.max_index().is_some_and(|m| m > special_symbols) {
            return Err(Error::Domain(format!(
                "substitution image for x{from} uses symbols beyond {} available to {}",
                special_symbols, special.name
            )));
        }
    }
    if substitution.is_empty() && general_symbols != special_symbols {
        return Err(Error::Domain(format!(
            "{} has {general_symbols} symbols but {} has {special_symbols}",
            general.name, special.name
        )));
    }

    let (g_lhs, g_rhs) = general.forms(n)?;
    let (s_lhs, s_rhs) = special.forms(special_n)?;
    let lhs = g_lhs.substitute(substitution);
    let rhs = g_rhs.substitute(substitution);
    let factor = match (lhs.ratio_to(&s_lhs), rhs.ratio_to(&s_rhs)) {
        (Some(a), Some(b)) if a == b && !a.is_zero() => Some(a),
        _ => None,
    };
    Ok(Reduction { factor, lhs, rhs })
}

// LaTeX rendering

fn symbol_latex(i: usize) -> String {
    if i < 10 {
        format!("x_{i}")
    } else {
        format!("x_{{{i}}}")
    }
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Renders a formal vector, keeping integer-coefficient symbols first and
/// gathering fractional coefficients of equal value into one fraction, so
/// that `(x_1+x_3)/2 - (x_2+x_4)/2` renders as
/// `\frac{x_1+x_3}{2}-\frac{x_2+x_4}{2}`.
fn vector_latex(v: &FormalVector) -> (String, bool) {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut fractional: Vec<(Rational, Vec<usize>)> = Vec::new();
    for (i, c) in v.terms() {
        if c.is_integer() {
            let magnitude = c.abs();
            let body = if magnitude.is_one() {
                symbol_latex(i)
            } else {
                format!("{}{}", magnitude.numer(), symbol_latex(i))
            };
            pieces.push((c.is_negative(), body));
        } else if let Some(slot) = fractional.iter_mut().find(|(d, _)| d == c) {
            slot.1.push(i);
        } else {
            fractional.push((c.clone(), vec![i]));
        }
    }
    let has_fraction = !fractional.is_empty();
    for (c, indices) in fractional {
        let magnitude = c.abs();
        let sum = indices.iter().map(|&i| symbol_latex(i)).collect::<Vec<_>>().join("+");
        let body = if magnitude.numer().is_one() {
            format!("\\frac{{{sum}}}{{{}}}", magnitude.denom())
        } else if indices.len() == 1 {
            format!("\\frac{{{}}}{{{}}}{sum}", magnitude.numer(), magnitude.denom())
        } else {
            format!("\\frac{{{}}}{{{}}}({sum})", magnitude.numer(), magnitude.denom())
        };
        pieces.push((c.is_negative(), body));
    }
    if pieces.is_empty() {
        return ("0".to_string(), false);
    }
    let mut out = String::new();
    for (pos, (negative, body)) in pieces.iter().enumerate() {
        if *negative {
            out.push('-');
        } else if pos > 0 {
            out.push('+');
        }
        out.push_str(body);
    }
    (out, has_fraction)
}

fn norm_latex(v: &FormalVector) -> String {
    let (body, tall) = vector_latex(v);
    if tall {
        format!("\\left\\|{body}\\right\\|^2")
    } else {
        format!("\\|{body}\\|^2")
    }
}

/// Appends `coeff · body` with the sign joined onto the running sum.
fn push_signed(out: &mut String, coeff: &Rational, body: &str) {
    if coeff.is_negative() {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    let magnitude = coeff.abs();
    if !magnitude.is_one() {
        out.push_str(&rational_latex(&magnitude));
    }
    out.push_str(body);
}

fn terms_latex(terms: &[NormTerm]) -> String {
    let mut out = String::new();
    for term in terms.iter().filter(|t| !t.coeff.is_zero()) {
        push_signed(&mut out, &term.coeff, &norm_latex(&term.vector));
    }
    out
}

fn side_latex(side: &Side) -> String {
    let mut out = String::new();
    for group in &side.groups {
        let inner = terms_latex(&group.terms);
        if inner.is_empty() || group.factor.is_zero() {
            continue;
        }
        if group.factor.is_one() {
            if !out.is_empty() && !inner.starts_with('-') {
                out.push('+');
            }
            out.push_str(&inner);
        } else {
            push_signed(&mut out, &group.factor, &format!("({inner})"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Math-mode LaTeX for `lhs = rhs` at arity `n`, with every coefficient
/// evaluated. Auxiliary points are written `x_{n+1}, ...`.
pub fn to_latex(spec: &IdentitySpec, n: usize) -> Result<String> {
    let sides = spec.build(n)?;
    Ok(format!("{}={}", side_latex(&sides.lhs), side_latex(&sides.rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn spec(name: &str) -> &'static IdentitySpec {
        lookup(name).unwrap()
    }

    #[test]
    fn catalog_has_eight_distinct_entries() {
        assert_eq!(catalog().len(), 8);
        let mut names = catalog_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 8);
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn arity_rules() {
        assert!(ArityRule::EvenAtLeast(4).admits(6));
        assert!(!ArityRule::EvenAtLeast(4).admits(5));
        assert!(!ArityRule::EvenAtLeast(4).admits(2));
        assert_eq!(ArityRule::EvenAtLeast(5).minimum(), 6);
        assert!(ArityRule::Fixed(3).admits(3) && !ArityRule::Fixed(3).admits(4));
    }

    #[test]
    fn fixed_identities_pass() {
        assert_eq!(verify_symbolic(spec("parallelogram"), 2).unwrap(), Verdict::Pass);
        assert_eq!(verify_symbolic(spec("apollonius"), 3).unwrap(), Verdict::Pass);
        assert_eq!(verify_symbolic(spec("euler4"), 4).unwrap(), Verdict::Pass);
    }

    #[test]
    fn odd_n_rejected_for_euler_even() {
        let err = verify_symbolic(spec("euler_even"), 5).unwrap_err();
        assert!(matches!(&err, Error::Domain(m) if m.contains("even")), "{err}");
    }

    #[test]
    fn generalized_euler_sweep() {
        for n in 4..=12 {
            assert!(verify_symbolic(spec("generalized_euler"), n).unwrap().is_pass(), "n={n}");
        }
    }

    #[test]
    fn euler4_shape() {
        let sides = spec("euler4").build(4).unwrap();
        let lhs_terms: usize = sides.lhs.groups.iter().map(|g| g.terms.len()).sum();
        assert_eq!(lhs_terms, 4);
        let rhs = &sides.rhs.groups;
        assert_eq!(rhs[0].terms.len(), 2);
        assert_eq!(rhs[1].terms[0].coeff, int(4));
    }

    #[test]
    fn generalized_euler_at_four_is_euler4() {
        let (gl, gr) = spec("generalized_euler").forms(4).unwrap();
        let (el, er) = spec("euler4").forms(4).unwrap();
        assert_eq!(gl, el);
        assert_eq!(gr, er);
    }

    #[test]
    fn euler_even_middle_sign_pattern() {
        let sides = spec("euler_even").build(8).unwrap();
        let signed = &sides.rhs.groups[0].terms;
        for term in signed {
            let idx: Vec<usize> = term.vector.terms().map(|(i, _)| i).collect();
            let (i, j) = (idx[0], idx[1]);
            assert!(j - i > 1 && j - i < 7);
            let expected = if (j - i) % 2 == 0 { 1 } else { -1 };
            assert_eq!(term.coeff, int(expected));
        }
        assert_eq!(signed.len(), 8 * 7 / 2 - 8);
    }

    #[test]
    fn injected_sign_flip_is_caught() {
        fn flipped(n: usize) -> Sides {
            let mut sides = euler_even(n);
            let first = &mut sides.rhs.groups[0].terms[0];
            first.coeff = -first.coeff.clone();
            sides
        }
        let mutant = IdentitySpec {
            builder: flipped,
            ..*spec("euler_even")
        };
        let verdict = verify_symbolic(&mutant, 6).unwrap();
        let Verdict::Fail { residual } = &verdict else {
            panic!("mutant passed");
        };
        // the flipped term is ‖x1 - x3‖², now carrying the wrong sign
        assert_eq!(residual.first_term().unwrap().0, (1, 1));
        assert!(verdict.to_string().starts_with("FAIL: coefficient of |x1|^2 is"));
    }

    #[test]
    fn euler4_with_coincident_points_is_twice_apollonius() {
        // x = x1, y = x3, z = x2 = x4 in euler4's labels
        let mut sub = BTreeMap::new();
        sub.insert(2, x(3));
        sub.insert(3, x(2));
        sub.insert(4, x(3));
        let r = reduction_check(spec("euler4"), spec("apollonius"), 4, &sub).unwrap();
        assert_eq!(r.factor, Some(int(2)));
    }

    #[test]
    fn reductions_at_four_points() {
        let none = BTreeMap::new();
        for general in ["euler_even", "generalized_euler"] {
            let r = reduction_check(spec(general), spec("euler4"), 4, &none).unwrap();
            assert_eq!(r.factor, Some(int(1)), "{general}");
        }
        let r = reduction_check(spec("generalized_euler"), spec("euler4"), 5, &none);
        assert!(r.is_err());
    }

    #[test]
    fn reduction_rejects_out_of_range_symbols() {
        let mut sub = BTreeMap::new();
        sub.insert(7, x(1));
        assert!(reduction_check(spec("euler4"), spec("apollonius"), 4, &sub).is_err());
        let mut sub = BTreeMap::new();
        sub.insert(4, x(9));
        assert!(reduction_check(spec("euler4"), spec("apollonius"), 4, &sub).is_err());
    }

    #[test]
    fn reduction_reports_mismatch() {
        let mut sub = BTreeMap::new();
        sub.insert(4, x(1));
        let r = reduction_check(spec("euler4"), spec("apollonius"), 4, &sub).unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn latex_parallelogram() {
        let s = to_latex(spec("parallelogram"), 2).unwrap();
        assert!(s.contains("2(\\|x_1\\|^2+\\|x_2\\|^2)"), "{s}");
        assert_eq!(s, "\\|x_1+x_2\\|^2+\\|x_1-x_2\\|^2=2(\\|x_1\\|^2+\\|x_2\\|^2)");
    }

    #[test]
    fn latex_euler4() {
        let s = to_latex(spec("euler4"), 4).unwrap();
        assert_eq!(
            s,
            "\\|x_1-x_2\\|^2+\\|x_2-x_3\\|^2+\\|x_3-x_4\\|^2+\\|x_1-x_4\\|^2=\
             \\|x_1-x_3\\|^2+\\|x_2-x_4\\|^2+4\\left\\|\\frac{x_1+x_3}{2}-\\frac{x_2+x_4}{2}\\right\\|^2"
        );
    }

    #[test]
    fn latex_apollonius_and_large_indices() {
        let s = to_latex(spec("apollonius"), 3).unwrap();
        assert!(s.ends_with("2\\left\\|x_3-\\frac{x_1+x_2}{2}\\right\\|^2+\\frac{1}{2}\\|x_1-x_2\\|^2"), "{s}");
        let s = to_latex(spec("pairwise_centroid"), 10).unwrap();
        assert!(s.contains("\\|x_9-x_{10}\\|^2"));
        assert!(to_latex(spec("euler_even"), 7).is_err());
    }

    #[test]
    fn latex_generalized_euler_coefficients() {
        let s = to_latex(spec("generalized_euler"), 7).unwrap();
        let (lhs, rhs) = s.split_once('=').unwrap();
        assert!(lhs.starts_with("10(\\|x_1-x_2\\|^2"), "{lhs}");
        let rhs = format!("+{rhs}");
        for (i, j) in middle_pairs(7) {
            let c = c_coeff(7, 4, i, j).unwrap();
            let norm = format!("\\|x_{i}-x_{j}\\|^2");
            let expected = match c.to_string().as_str() {
                "1" => format!("+{norm}"),
                "-1" => format!("-{norm}"),
                v if v.starts_with('-') => format!("{v}{norm}"),
                v => format!("+{v}{norm}"),
            };
            assert!(rhs.contains(&expected), "{expected} in {rhs}");
        }
    }
}
