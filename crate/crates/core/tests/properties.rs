use std::collections::BTreeMap;

use metricid::identities::{catalog, lookup};
use metricid::models::{self, centroid, dist_sq, form_residual, midpoint, numeric_residual, PointConfig};
use metricid::rational::{int, rat};
use metricid::{FormalVector, GramMatrix, QuadraticForm, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn formal_vector(max_index: usize) -> impl Strategy<Value = FormalVector> {
    prop::collection::vec((1..=max_index, small_rational()), 0..6).prop_map(FormalVector::from_terms)
}

fn rational_points(n: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(small_rational(), dim), n)
}

fn config(points: Vec<Vec<Rational>>) -> PointConfig<Rational> {
    let dim = points[0].len();
    PointConfig::new(dim, points).unwrap()
}

/// Admissible arity for `spec` chosen from a seed value.
fn arity_for(spec: &metricid::identities::IdentitySpec, seed: usize) -> usize {
    let options: Vec<usize> = (1..=7).filter(|&n| spec.arity_rule.admits(n)).collect();
    options[seed % options.len()]
}

proptest! {
    #[test]
    fn norm_sq_of_combination(u in formal_vector(5), v in formal_vector(5), a in small_rational(), b in small_rational()) {
        let combo = &u.scale(&a) + &v.scale(&b);
        let cross = QuadraticForm::inner(&u, &v).scale(&(int(2) * &a * &b));
        let expected = &(&QuadraticForm::norm_sq(&u).scale(&(&a * &a))
            + &QuadraticForm::norm_sq(&v).scale(&(&b * &b)))
            + &cross;
        prop_assert_eq!(QuadraticForm::norm_sq(&combo), expected);
    }

    #[test]
    fn norm_sq_even(v in formal_vector(6)) {
        prop_assert_eq!(QuadraticForm::norm_sq(&-&v), QuadraticForm::norm_sq(&v));
    }

    #[test]
    fn forms_stay_canonical(u in formal_vector(4), v in formal_vector(4)) {
        let f = QuadraticForm::norm_sq(&u) - QuadraticForm::norm_sq(&v);
        prop_assert!(f.coeffs().values().all(|c| *c != int(0)));
        prop_assert!(f.coeffs().keys().all(|&(i, j)| i <= j));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn evaluation_is_linear(u in formal_vector(4), v in formal_vector(4), pts in rational_points(4, 3)) {
        let g = models::gram(&config(pts));
        let (a, b) = (QuadraticForm::norm_sq(&u), QuadraticForm::norm_sq(&v));
        let sum = (&a + &b).evaluate(&g).unwrap();
        prop_assert_eq!(sum, a.evaluate(&g).unwrap() + b.evaluate(&g).unwrap());
    }

    #[test]
    fn squared_norms_nonnegative_on_real_points(v in formal_vector(5), pts in rational_points(5, 2)) {
        let g = models::gram(&config(pts));
        prop_assert!(QuadraticForm::norm_sq(&v).evaluate(&g).unwrap() >= int(0));
    }

    #[test]
    fn euler_residual_vanishes_on_any_symmetric_gram(entries in prop::collection::vec(small_rational(), 10)) {
        // arbitrary symmetric rational matrix, not necessarily positive semidefinite
        let mut it = entries.into_iter();
        let upper: Vec<Vec<Rational>> = (0..4).map(|i| (i..4).map(|_| it.next().unwrap()).collect()).collect();
        let g = GramMatrix::from_fn(4, |i, j| upper[i - 1][j - i].clone());
        let residual = lookup("euler4").unwrap().residual(4).unwrap();
        prop_assert_eq!(residual.evaluate(&g).unwrap(), int(0));
    }

    #[test]
    fn identities_are_homogeneous(which in 0usize..8, seed in 0usize..100, lambda in small_rational()) {
        let spec = &catalog()[which];
        let n = arity_for(spec, seed);
        let (lhs, rhs) = spec.forms(n).unwrap();
        let scaling: BTreeMap<usize, FormalVector> = (1..=spec.symbol_count(n))
            .map(|i| (i, FormalVector::point(i).scale(&lambda)))
            .collect();
        let l2 = &lambda * &lambda;
        prop_assert_eq!(lhs.substitute(&scaling), lhs.scale(&l2));
        prop_assert_eq!(rhs.substitute(&scaling), rhs.scale(&l2));
    }

    #[test]
    fn residuals_survive_translation(which in 0usize..8, seed in 0usize..100, pts in rational_points(8, 2), shift in rational_points(1, 2)) {
        let spec = &catalog()[which];
        let n = arity_for(spec, seed);
        let total = spec.symbol_count(n);
        let cfg = config(pts[..n].to_vec());
        let extra = pts[n..total].to_vec();
        let r = numeric_residual(spec, &cfg, &extra).unwrap();
        prop_assert_eq!(&r.value, &int(0));

        let t = &shift[0];
        let moved = cfg.map_points(|p| models::add_points(p, t)).unwrap();
        let moved_extra: Vec<Vec<Rational>> = extra.iter().map(|p| models::add_points(p, t)).collect();
        let r = numeric_residual(spec, &moved, &moved_extra).unwrap();
        prop_assert_eq!(&r.value, &int(0));
        let r = form_residual(spec, &moved, &moved_extra).unwrap();
        prop_assert_eq!(&r.value, &int(0));
    }

    #[test]
    fn centroid_identities_numeric(pts in rational_points(7, 3), x in rational_points(1, 3), n in 1usize..=6) {
        let cfg = config(pts[..n].to_vec());
        let g = models::centroid_all(&cfg).unwrap();
        let x = &x[0];
        let to_x: Rational = cfg.points().iter().map(|p| dist_sq(p, x)).sum();
        let to_g: Rational = cfg.points().iter().map(|p| dist_sq(p, &g)).sum();
        let nr = int(n as i64);
        prop_assert_eq!(&to_x - &to_g - &nr * dist_sq(x, &g), int(0));

        let mut pairs = int(0);
        for k in 0..n {
            for l in k + 1..n {
                pairs += dist_sq(&cfg.points()[k], &cfg.points()[l]);
            }
        }
        prop_assert_eq!(pairs, nr * to_g);
    }

    #[test]
    fn alternating_sum_is_scaled_centroid_gap(pts in rational_points(10, 2), m in 2usize..=5) {
        let cfg = config(pts[..2 * m].to_vec());
        let alt = FormalVector::alternating(&(1..=2 * m).collect::<Vec<_>>());
        let p = models::realize(&alt, &cfg).unwrap();
        let lhs = models::inner(&p, &p);
        let gap = models::alternating_centroid_gap_sq(&cfg).unwrap();
        prop_assert_eq!(lhs, int((m * m) as i64) * gap);
    }

    #[test]
    fn midpoint_gap_form(pts in rational_points(6, 2), idx in prop::sample::subsequence((1..=6).collect::<Vec<usize>>(), 4)) {
        let cfg = config(pts);
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let m_ik = midpoint(&cfg, i, k).unwrap();
        let m_jl = midpoint(&cfg, j, l).unwrap();
        let v = models::realize(&FormalVector::alternating(&[i, j, k, l]), &cfg).unwrap();
        prop_assert_eq!(int(4) * dist_sq(&m_ik, &m_jl), models::inner(&v, &v));
    }

    #[test]
    fn c_coeff_translation_invariance(n in 4usize..=20, k_off in 0usize..=16, p in 1usize..=20, span in 1usize..=19) {
        let k = 4 + k_off % (n - 3);
        prop_assume!(p + span <= n);
        let q = p + span;
        prop_assert_eq!(
            metricid::combinatorics::c_coeff(n, k, p, q).unwrap(),
            metricid::combinatorics::c_coeff(n, k, 1, span + 1).unwrap()
        );
    }
}

#[test]
fn centroid_of_subset() {
    let cfg = config(vec![vec![int(0), int(0)], vec![int(4), int(2)], vec![int(2), int(4)]]);
    assert_eq!(centroid(&cfg, &[1, 2]).unwrap(), vec![int(2), int(1)]);
    assert_eq!(centroid(&cfg, &[1, 2, 3]).unwrap(), vec![int(2), int(2)]);
}
