//! Random point configurations for sweeps and the acceptance suite.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;

use crate::models::PointConfig;
use crate::rational::{self, Rational};

/// `p / q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rational_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> Vec<Rational> {
    (0..dim).map(|_| rational(rng, bound)).collect()
}

/// `n` random rational points. With `repeat`, some points are copies of earlier ones.
pub fn rational_config<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    dim: usize,
    bound: i64,
    repeat: bool,
) -> PointConfig<Rational> {
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for k in 0..n {
        if repeat && k > 0 && rng.gen_bool(0.5) {
            let source = rng.gen_range(0..k);
            points.push(points[source].clone());
        } else {
            points.push(rational_point(rng, dim, bound));
        }
    }
    PointConfig::new(dim, points).expect("uniform dimension")
}

pub fn float_config<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize, half_width: f64) -> PointConfig<f64> {
    let points = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-half_width..=half_width)).collect())
        .collect();
    PointConfig::new(dim, points).expect("uniform dimension")
}

pub fn complex_config<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    dim: usize,
    half_width: f64,
) -> PointConfig<Complex64> {
    let points = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    Complex64::new(
                        rng.gen_range(-half_width..=half_width),
                        rng.gen_range(-half_width..=half_width),
                    )
                })
                .collect()
        })
        .collect();
    PointConfig::new(dim, points).expect("uniform dimension")
}

/// `n` rational points on the circle of radius `radius` about `center`,
/// via `((1 - t²) / (1 + t²), 2t / (1 + t²))`.
pub fn cocircular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    center: &[Rational; 2],
    radius: &Rational,
    bound: i64,
) -> PointConfig<Rational> {
    let one = rational::int(1);
    let two = rational::int(2);
    let points = (0..n)
        .map(|_| {
            let t = rational(rng, bound);
            let t_sq = &t * &t;
            let denom = &one + &t_sq;
            let cos = (&one - &t_sq) / &denom;
            let sin = &two * &t / &denom;
            vec![&center[0] + radius * cos, &center[1] + radius * sin]
        })
        .collect();
    PointConfig::new(2, points).expect("planar points")
}

/// `2m` rational points whose odd- and even-indexed centroids coincide.
pub fn balanced_config<R: Rng + ?Sized>(rng: &mut R, m: usize, dim: usize, bound: i64) -> PointConfig<Rational> {
    assert!(m >= 2);
    let odd: Vec<Vec<Rational>> = (0..m).map(|_| rational_point(rng, dim, bound)).collect();
    let mut even: Vec<Vec<Rational>> = (0..m - 1).map(|_| rational_point(rng, dim, bound)).collect();
    // last even point closes the balance: Σ even = Σ odd
    let last = (0..dim)
        .map(|d| {
            let odd_sum: Rational = odd.iter().map(|p| p[d].clone()).sum();
            let even_sum: Rational = even.iter().map(|p| p[d].clone()).sum();
            odd_sum - even_sum
        })
        .collect();
    even.push(last);
    let points = odd.into_iter().zip(even).flat_map(|(a, b)| [a, b]).collect();
    PointConfig::new(dim, points).expect("uniform dimension")
}

/// Parallelogram `A, B, C, A + C - B`.
pub fn parallelogram<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> PointConfig<Rational> {
    let a = rational_point(rng, dim, bound);
    let b = rational_point(rng, dim, bound);
    let c = rational_point(rng, dim, bound);
    let d = (0..dim).map(|i| &a[i] + &c[i] - &b[i]).collect();
    PointConfig::new(dim, vec![a, b, c, d]).expect("uniform dimension")
}
