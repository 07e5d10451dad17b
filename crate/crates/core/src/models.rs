//! Concrete inner product spaces and the geometric quantities derived from
//! point configurations.
//!
//! Coordinates may be exact rationals, `f64` or `Complex64`. Gram matrices
//! hold only real parts `Re(x_i, x_j)`, so complex points feed the same
//! quadratic forms as real ones.

use std::fmt::Debug;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::identities::{lookup, IdentitySpec, Side};
use crate::quadform::{FormalVector, GramMatrix, Scalar};
use crate::rational::{self, Rational};

/// A coordinate field together with the real scalar its inner products live in.
pub trait Coordinate:
    Clone + Debug + PartialEq + Zero + Add<Output = Self> + Sub<Output = Self>
{
    type Real: Scalar;

    /// `Re(a · conj(b))`
    fn re_product(&self, other: &Self) -> Self::Real;

    fn div_count(&self, count: usize) -> Self;

    fn scaled(&self, factor: &Rational) -> Self;
}

impl Coordinate for Rational {
    type Real = Rational;

    fn re_product(&self, other: &Self) -> Rational {
        self * other
    }

    fn div_count(&self, count: usize) -> Self {
        self / Rational::from_integer(BigInt::from(count))
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self * factor
    }
}

impl Coordinate for f64 {
    type Real = f64;

    fn re_product(&self, other: &Self) -> f64 {
        self * other
    }

    fn div_count(&self, count: usize) -> Self {
        self / count as f64
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self * rational::to_f64(factor)
    }
}

impl Coordinate for Complex64 {
    type Real = f64;

    fn re_product(&self, other: &Self) -> f64 {
        (self * other.conj()).re
    }

    fn div_count(&self, count: usize) -> Self {
        self / count as f64
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self * rational::to_f64(factor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Rational,
    Real,
    Complex,
}

/// An ordered list of points of one common dimension. Repeated points are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig<C> {
    dimension: usize,
    points: Vec<Vec<C>>,
}

impl<C: Coordinate> PointConfig<C> {
    pub fn new(dimension: usize, points: Vec<Vec<C>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        for p in &points {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.len(),
                });
            }
        }
        Ok(PointConfig { dimension, points })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<C>] {
        &self.points
    }

    /// 1-based lookup.
    pub fn point(&self, index: usize) -> Result<&[C]> {
        index
            .checked_sub(1)
            .and_then(|i| self.points.get(i))
            .map(Vec::as_slice)
            .ok_or_else(|| {
                Error::Domain(format!("point index {index} outside 1..={}", self.points.len()))
            })
    }

    /// This configuration followed by `extra`.
    pub fn extended(&self, extra: &[Vec<C>]) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend(extra.iter().cloned());
        PointConfig::new(self.dimension, points)
    }

    /// Applies `f` to every point.
    pub fn map_points(&self, f: impl Fn(&[C]) -> Vec<C>) -> Result<Self> {
        PointConfig::new(self.dimension, self.points.iter().map(|p| f(p)).collect())
    }
}

pub fn inner<C: Coordinate>(a: &[C], b: &[C]) -> C::Real {
    a.iter()
        .zip(b)
        .fold(C::Real::zero(), |acc, (x, y)| acc + x.re_product(y))
}

pub fn sub_points<C: Coordinate>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add_points<C: Coordinate>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// `‖a - b‖²`
pub fn dist_sq<C: Coordinate>(a: &[C], b: &[C]) -> C::Real {
    let d = sub_points(a, b);
    inner(&d, &d)
}

/// `Re(x_i, x_j)` for every pair of points.
pub fn gram<C: Coordinate>(cfg: &PointConfig<C>) -> GramMatrix<C::Real> {
    GramMatrix::from_fn(cfg.len(), |i, j| inner(&cfg.points[i - 1], &cfg.points[j - 1]))
}

/// Gram matrix of real (rational or `f64`) coordinates.
pub fn gram_euclidean<C: Coordinate<Real = C> + Scalar>(cfg: &PointConfig<C>) -> GramMatrix<C> {
    gram(cfg)
}

/// Gram matrix of real parts for complex coordinates.
pub fn gram_complex(cfg: &PointConfig<Complex64>) -> GramMatrix<f64> {
    gram(cfg)
}

/// Monomials `f_k(x) = x^k` under `(f, g) = ∫₀^∞ e^{-x} f(x) g(x) dx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolySpace {
    pub degrees: Vec<u32>,
}

impl WeightedPolySpace {
    pub fn new(degrees: Vec<u32>) -> Self {
        WeightedPolySpace { degrees }
    }
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(f_a, f_b) = (a + b)!`, the `e^{-x}` moment of `x^{a+b}`.
pub fn gram_poly_exp(space: &WeightedPolySpace) -> GramMatrix<Rational> {
    let d = &space.degrees;
    GramMatrix::from_fn(d.len(), |i, j| {
        rational::from_bigint(factorial(d[i - 1] + d[j - 1]))
    })
}

pub fn midpoint<C: Coordinate>(cfg: &PointConfig<C>, i: usize, j: usize) -> Result<Vec<C>> {
    centroid(cfg, &[i, j])
}

/// Componentwise average of the listed points (1-based).
pub fn centroid<C: Coordinate>(cfg: &PointConfig<C>, indices: &[usize]) -> Result<Vec<C>> {
    if indices.is_empty() {
        return Err(Error::Domain("centroid of an empty index set".into()));
    }
    let mut sum = vec![C::zero(); cfg.dimension];
    for &i in indices {
        sum = add_points(&sum, cfg.point(i)?);
    }
    Ok(sum.iter().map(|c| c.div_count(indices.len())).collect())
}

pub fn centroid_all<C: Coordinate>(cfg: &PointConfig<C>) -> Result<Vec<C>> {
    centroid(cfg, &(1..=cfg.len()).collect::<Vec<_>>())
}

/// Both sides of an identity evaluated on a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<S> {
    pub lhs: S,
    pub rhs: S,
    /// `lhs - rhs`
    pub value: S,
}

impl<S: Scalar> Residual<S> {
    /// Exact zero for rationals; relative to `max(1, |lhs|)` for floats.
    pub fn vanishes(&self) -> bool {
        self.value.negligible(&self.lhs)
    }

    /// `|lhs - rhs| / max(1, |lhs|)`
    pub fn relative(&self) -> f64 {
        self.value.to_f64().abs() / self.lhs.to_f64().abs().max(1.0)
    }
}

/// The point `Σ a_i p_i` named by a formal vector.
pub fn realize<C: Coordinate>(v: &FormalVector, cfg: &PointConfig<C>) -> Result<Vec<C>> {
    let mut out = vec![C::zero(); cfg.dimension];
    for (i, a) in v.terms() {
        let p = cfg.point(i)?;
        out = out
            .iter()
            .zip(p)
            .map(|(acc, c)| acc.clone() + c.scaled(a))
            .collect();
    }
    Ok(out)
}

/// Evaluates a side term by term: every `‖v‖²` is computed from the
/// realized point `v`, not from the expanded quadratic form.
pub fn evaluate_side<C: Coordinate>(side: &Side, cfg: &PointConfig<C>) -> Result<C::Real> {
    let mut total = C::Real::zero();
    for group in &side.groups {
        let mut inner_sum = C::Real::zero();
        for term in &group.terms {
            let p = realize(&term.vector, cfg)?;
            inner_sum = inner_sum + C::Real::from_rational(&term.coeff) * inner(&p, &p);
        }
        total = total + C::Real::from_rational(&group.factor) * inner_sum;
    }
    Ok(total)
}

fn check_extra<C>(spec: &IdentitySpec, extra: &[Vec<C>]) -> Result<()> {
    if extra.len() != spec.extra_symbols {
        return Err(Error::Domain(format!(
            "{} needs {} auxiliary point(s), got {}",
            spec.name,
            spec.extra_symbols,
            extra.len()
        )));
    }
    Ok(())
}

/// Evaluates both sides of `spec` on `cfg`, with `extra` supplying the
/// auxiliary points (numbered after the configuration's own points).
///
/// Each squared norm is computed directly from coordinates, which keeps this
/// path independent of the symbolic expansion; [`form_residual`] is the
/// Gram-matrix route.
pub fn numeric_residual<C: Coordinate>(
    spec: &IdentitySpec,
    cfg: &PointConfig<C>,
    extra: &[Vec<C>],
) -> Result<Residual<C::Real>> {
    let n = cfg.len();
    spec.check_arity(n)?;
    check_extra(spec, extra)?;
    let all = cfg.extended(extra)?;
    let sides = spec.build(n)?;
    let lhs = evaluate_side(&sides.lhs, &all)?;
    let rhs = evaluate_side(&sides.rhs, &all)?;
    let value = lhs.clone() - rhs.clone();
    Ok(Residual { lhs, rhs, value })
}

/// Evaluates the expanded forms of both sides on the Gram matrix.
pub fn form_residual<C: Coordinate>(
    spec: &IdentitySpec,
    cfg: &PointConfig<C>,
    extra: &[Vec<C>],
) -> Result<Residual<C::Real>> {
    let n = cfg.len();
    spec.check_arity(n)?;
    check_extra(spec, extra)?;
    let g = gram(&cfg.extended(extra)?);
    let (lhs_form, rhs_form) = spec.forms(n)?;
    let lhs = lhs_form.evaluate(&g)?;
    let rhs = rhs_form.evaluate(&g)?;
    let value = lhs.clone() - rhs.clone();
    Ok(Residual { lhs, rhs, value })
}

/// Both sides of `Σ_{k<l} |A_k A_l|² = n² (R² - |OG|²)` for points on the
/// sphere of squared radius `radius_sq` about `center`.
///
/// Every point must lie on that sphere (exactly for rationals, to relative
/// tolerance for floats); otherwise the worst offender is reported.
pub fn circumradius_check<C: Coordinate>(
    cfg: &PointConfig<C>,
    center: &[C],
    radius_sq: &C::Real,
) -> Result<(C::Real, C::Real)> {
    if center.len() != cfg.dimension {
        return Err(Error::DimensionMismatch {
            expected: cfg.dimension,
            found: center.len(),
        });
    }
    if cfg.is_empty() {
        return Err(Error::Domain("circumradius check needs at least one point".into()));
    }
    let mut worst: Option<(usize, f64)> = None;
    for (k, p) in cfg.points.iter().enumerate() {
        let off = dist_sq(p, center) - radius_sq.clone();
        if !off.negligible(radius_sq) {
            let size = off.to_f64().abs();
            if worst.is_none_or(|(_, w)| size > w) {
                worst = Some((k + 1, size));
            }
        }
    }
    if let Some((k, size)) = worst {
        return Err(Error::Precondition(format!(
            "point {k} is off the sphere: | |OA_{k}|^2 - R^2 | = {size:e}"
        )));
    }

    let n = cfg.len();
    let mut lhs = C::Real::zero();
    for k in 0..n {
        for l in k + 1..n {
            lhs = lhs + dist_sq(&cfg.points[k], &cfg.points[l]);
        }
    }
    let g = centroid_all(cfg)?;
    let n_sq = C::Real::from_count(n * n);
    let rhs = n_sq * (radius_sq.clone() - dist_sq(center, &g));
    Ok((lhs, rhs))
}

/// Outcome of the generalized parallelogram test on `2m` points.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelogramTest<S> {
    /// Cyclic side sum equals the signed middle sum.
    pub eq33_holds: bool,
    /// Centroid of odd-indexed points equals centroid of even-indexed points.
    pub centroids_equal: bool,
    /// Cyclic side sum minus signed middle sum.
    pub gap: S,
    /// `|G_1 G_2|²`
    pub centroid_dist_sq: S,
    /// `m`, half the number of points.
    pub half: usize,
}

fn parity_centroids<C: Coordinate>(cfg: &PointConfig<C>) -> Result<(Vec<C>, Vec<C>)> {
    let odd: Vec<usize> = (1..=cfg.len()).step_by(2).collect();
    let even: Vec<usize> = (2..=cfg.len()).step_by(2).collect();
    Ok((centroid(cfg, &odd)?, centroid(cfg, &even)?))
}

fn check_even_count(count: usize) -> Result<()> {
    if count < 4 || count % 2 != 0 {
        return Err(Error::Domain(format!(
            "need an even number of points >= 4, got {count}"
        )));
    }
    Ok(())
}

/// Compares the cyclic side sum over all `2m` sides with the signed middle sum,
/// and the centroids of the odd- and even-indexed points.
pub fn parallelogram_characterization<C: Coordinate>(
    cfg: &PointConfig<C>,
) -> Result<ParallelogramTest<C::Real>> {
    let count = cfg.len();
    check_even_count(count)?;
    let euler_even = lookup("euler_even").expect("euler_even is in the catalog");
    let mut sides = euler_even.build(count)?;
    // drop ‖Σ (-1)^(i-1) x_i‖²
    sides.rhs.groups.pop();
    let g = gram(cfg);
    let lhs = sides.lhs.form().evaluate(&g)?;
    let rhs = sides.rhs.form().evaluate(&g)?;
    let gap = lhs.clone() - rhs;

    let (g1, g2) = parity_centroids(cfg)?;
    let centroid_dist_sq = dist_sq(&g1, &g2);
    Ok(ParallelogramTest {
        eq33_holds: gap.negligible(&lhs),
        centroids_equal: centroid_dist_sq.negligible(&lhs),
        gap,
        centroid_dist_sq,
        half: count / 2,
    })
}

/// `|G_1 G_2|²` for an even number of points (odd- vs even-indexed centroids).
pub fn alternating_centroid_gap_sq<C: Coordinate>(cfg: &PointConfig<C>) -> Result<C::Real> {
    check_even_count(cfg.len())?;
    let (g1, g2) = parity_centroids(cfg)?;
    Ok(dist_sq(&g1, &g2))
}

/// `|LM|²` for a quadrilateral, `L` and `M` the midpoints of the diagonals
/// `A_1 A_3` and `A_2 A_4`.
pub fn diagonal_midpoint_gap_sq<C: Coordinate>(cfg: &PointConfig<C>) -> Result<C::Real> {
    if cfg.len() != 4 {
        return Err(Error::Domain(format!("need 4 points, got {}", cfg.len())));
    }
    Ok(dist_sq(&midpoint(cfg, 1, 3)?, &midpoint(cfg, 2, 4)?))
}
