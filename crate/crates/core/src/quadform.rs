//! Formal vectors over abstract point symbols and their exact expansion into
//! quadratic forms over Gram entries.
//!
//! A [`QuadraticForm`] is a rational combination of the Gram entries `‖x_i‖²`
//! (stored under the key `(i, i)`) and `Re(x_i, x_j)` (key `(i, j)` with
//! `i < j`). Point indices are 1-based everywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Relative tolerance applied to floating-point residuals.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// A point symbol `x_i` validated against the arity of its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSymbol(usize);

impl PointSymbol {
    pub fn new(index: usize, arity: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::Domain(format!(
                "point index {index} outside 1..={arity}"
            )));
        }
        Ok(PointSymbol(index))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl From<PointSymbol> for FormalVector {
    fn from(symbol: PointSymbol) -> Self {
        FormalVector::point(symbol.0)
    }
}

/// A formal linear combination `Σ a_i x_i` with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalVector {
    terms: BTreeMap<usize, Rational>,
}

impl FormalVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The bare symbol `x_index`.
    ///
    /// Panics on index 0; indices are 1-based.
    pub fn point(index: usize) -> Self {
        assert!(index >= 1, "point indices are 1-based");
        let mut terms = BTreeMap::new();
        terms.insert(index, Rational::one());
        FormalVector { terms }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut v = FormalVector::zero();
        for (index, coeff) in terms {
            assert!(index >= 1, "point indices are 1-based");
            v.accumulate(index, &coeff);
        }
        v
    }

    /// `(x_i + x_j) / 2`
    pub fn midpoint(i: usize, j: usize) -> Self {
        let half = rational::rat(1, 2);
        (Self::point(i) + Self::point(j)).scale(&half)
    }

    /// `(1/m) Σ x_k` over the given indices. Panics on an empty list.
    pub fn centroid(indices: &[usize]) -> Self {
        assert!(!indices.is_empty(), "centroid of an empty index set");
        let weight = rational::rat(1, indices.len() as i64);
        Self::from_terms(indices.iter().map(|&i| (i, weight.clone())))
    }

    /// `x_{i1} - x_{i2} + x_{i3} - ...` over the given indices in order.
    pub fn alternating(indices: &[usize]) -> Self {
        Self::from_terms(
            indices
                .iter()
                .enumerate()
                .map(|(pos, &i)| (i, if pos % 2 == 0 { rational::int(1) } else { rational::int(-1) })),
        )
    }

    fn accumulate(&mut self, index: usize, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(index).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.terms.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        FormalVector {
            terms: self.terms.iter().map(|(&i, c)| (i, c * factor)).collect(),
        }
    }

    /// Replaces each symbol found in `map` by its image; other symbols are kept.
    pub fn substitute(&self, map: &BTreeMap<usize, FormalVector>) -> Self {
        let mut out = FormalVector::zero();
        for (&i, c) in &self.terms {
            match map.get(&i) {
                Some(image) => {
                    for (j, d) in image.terms() {
                        out.accumulate(j, &(c * d));
                    }
                }
                None => out.accumulate(i, c),
            }
        }
        out
    }
}

impl Add for &FormalVector {
    type Output = FormalVector;

    fn add(self, rhs: &FormalVector) -> FormalVector {
        let mut out = self.clone();
        for (&i, c) in &rhs.terms {
            out.accumulate(i, c);
        }
        out
    }
}

impl Add for FormalVector {
    type Output = FormalVector;

    fn add(self, rhs: FormalVector) -> FormalVector {
        &self + &rhs
    }
}

impl Sub for &FormalVector {
    type Output = FormalVector;

    fn sub(self, rhs: &FormalVector) -> FormalVector {
        self + &(-rhs)
    }
}

impl Sub for FormalVector {
    type Output = FormalVector;

    fn sub(self, rhs: FormalVector) -> FormalVector {
        &self - &rhs
    }
}

impl Neg for &FormalVector {
    type Output = FormalVector;

    fn neg(self) -> FormalVector {
        FormalVector {
            terms: self.terms.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }
}

impl Neg for FormalVector {
    type Output = FormalVector;

    fn neg(self) -> FormalVector {
        -&self
    }
}

/// Rational combination of `‖x_i‖²` and `Re(x_i, x_j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    coeffs: BTreeMap<(usize, usize), Rational>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl QuadraticForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Expands `‖v‖²`.
    pub fn norm_sq(v: &FormalVector) -> Self {
        Self::inner(v, v)
    }

    /// Expands `Re(u, v)`.
    ///
    /// `Re(x_p, x_q) = Re(x_q, x_p)`, so both orders land on the same basis
    /// element.
    pub fn inner(u: &FormalVector, v: &FormalVector) -> Self {
        let mut out = QuadraticForm::zero();
        for (p, a) in u.terms() {
            for (q, b) in v.terms() {
                out.accumulate(ordered(p, q), &(a * b));
            }
        }
        out
    }

    /// Builds a form from `((i, j), coeff)` pairs; keys may be given in either order.
    pub fn from_coeffs<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), Rational)>,
    {
        let mut out = QuadraticForm::zero();
        for ((i, j), c) in entries {
            assert!(i >= 1 && j >= 1, "point indices are 1-based");
            out.accumulate(ordered(i, j), &c);
        }
        out
    }

    fn accumulate(&mut self, key: (usize, usize), coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Coefficient of `‖x_i‖²` when `i == j`, otherwise of `Re(x_i, x_j)`.
    pub fn coefficient(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(&ordered(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients keyed by `(i, j)` with `i <= j`, in lexicographic order.
    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        QuadraticForm {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * factor)).collect(),
        }
    }

    /// The first nonzero coefficient in key order, if any.
    pub fn first_term(&self) -> Option<((usize, usize), &Rational)> {
        self.coeffs.iter().next().map(|(&k, c)| (k, c))
    }

    /// Returns `λ` with `self = λ · other`, if such a `λ` exists.
    ///
    /// Two zero forms are proportional with `λ = 1`.
    pub fn ratio_to(&self, other: &QuadraticForm) -> Option<Rational> {
        if self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let Some((key, denom)) = other.first_term() else {
            return Some(Rational::one());
        };
        let lambda = self.coefficient(key.0, key.1) / denom;
        (self == &other.scale(&lambda)).then_some(lambda)
    }

    /// Pulls the form back along a substitution of point symbols.
    pub fn substitute(&self, map: &BTreeMap<usize, FormalVector>) -> Self {
        let mut out = QuadraticForm::zero();
        for (&(i, j), c) in &self.coeffs {
            let u = FormalVector::point(i).substitute(map);
            let v = FormalVector::point(j).substitute(map);
            out = &out + &QuadraticForm::inner(&u, &v).scale(c);
        }
        out
    }

    /// `Σ c_ij g_ij` over the supplied Gram matrix.
    pub fn evaluate<S: Scalar>(&self, gram: &GramMatrix<S>) -> Result<S> {
        if let Some(max) = self.max_index() {
            if max > gram.dim() {
                return Err(Error::DimensionMismatch {
                    expected: max,
                    found: gram.dim(),
                });
            }
        }
        let mut total = S::zero();
        for (&(i, j), c) in &self.coeffs {
            total = total + S::from_rational(c) * gram.entry(i, j).clone();
        }
        Ok(total)
    }
}

impl Add for &QuadraticForm {
    type Output = QuadraticForm;

    fn add(self, rhs: &QuadraticForm) -> QuadraticForm {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.accumulate(k, c);
        }
        out
    }
}

impl Add for QuadraticForm {
    type Output = QuadraticForm;

    fn add(self, rhs: QuadraticForm) -> QuadraticForm {
        &self + &rhs
    }
}

impl Sub for &QuadraticForm {
    type Output = QuadraticForm;

    fn sub(self, rhs: &QuadraticForm) -> QuadraticForm {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.accumulate(k, &-c);
        }
        out
    }
}

impl Sub for QuadraticForm {
    type Output = QuadraticForm;

    fn sub(self, rhs: QuadraticForm) -> QuadraticForm {
        &self - &rhs
    }
}

impl Neg for &QuadraticForm {
    type Output = QuadraticForm;

    fn neg(self) -> QuadraticForm {
        self.scale(&-Rational::one())
    }
}

impl std::iter::Sum for QuadraticForm {
    fn sum<I: Iterator<Item = QuadraticForm>>(iter: I) -> Self {
        iter.fold(QuadraticForm::zero(), |acc, f| &acc + &f)
    }
}

/// Names a basis element, e.g. `|x1|^2` or `Re(x1,x3)`.
pub fn basis_name(i: usize, j: usize) -> String {
    let (i, j) = ordered(i, j);
    if i == j {
        format!("|x{i}|^2")
    } else {
        format!("Re(x{i},x{j})")
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (pos, (&(i, j), c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if pos == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let magnitude = c.abs();
            if !magnitude.is_one() {
                write!(f, "{}*", rational::display(&magnitude))?;
            }
            f.write_str(&basis_name(i, j))?;
        }
        Ok(())
    }
}

/// Scalars a quadratic form can be evaluated over.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn from_rational(value: &Rational) -> Self;

    fn from_count(count: usize) -> Self {
        Self::from_rational(&rational::int(count as i64))
    }

    fn to_f64(&self) -> f64;

    /// Exact zero test for rationals; for floats, `|self| <= tol * max(1, |scale|)`.
    fn negligible(&self, scale: &Self) -> bool;

    fn render(&self) -> String;
}

impl Scalar for Rational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }

    fn negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        rational::display(self)
    }
}

impl Scalar for f64 {
    fn from_rational(value: &Rational) -> Self {
        rational::to_f64(value)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self, scale: &Self) -> bool {
        self.abs() <= FLOAT_REL_TOL * scale.abs().max(1.0)
    }

    fn render(&self) -> String {
        format!("{self:e}")
    }
}

/// Symmetric matrix of `Re(x_i, x_j)`, addressed with 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Clone + PartialEq> GramMatrix<S> {
    /// Builds an `n × n` matrix from `entry(i, j)` evaluated for `i <= j`.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> S) -> Self
    where
        S: Zero,
    {
        let mut entries = vec![S::zero(); n * n];
        for i in 1..=n {
            for j in i..=n {
                let value = entry(i, j);
                entries[(i - 1) * n + (j - 1)] = value.clone();
                entries[(j - 1) * n + (i - 1)] = value;
            }
        }
        GramMatrix { dim: n, entries }
    }

    /// Validates squareness and symmetry.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Domain(format!(
                        "Gram matrix not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(GramMatrix {
            dim: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Panics when out of range; use [`GramMatrix::get`] for a checked lookup.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        self.get(i, j).expect("Gram index out of range")
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        if i == 0 || j == 0 || i > self.dim || j > self.dim {
            return None;
        }
        self.entries.get((i - 1) * self.dim + (j - 1))
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }
}

/// Real part of `Σ a_d conj(b_d)`.
pub fn re_inner_complex(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x * y.conj()).re).sum()
}
