mod common;

use bqmaxwell::biquat::exp_vector;
use bqmaxwell::dirac::{OperatorConfig, Sign};
use bqmaxwell::parabolic::PropagatorCache;
use bqmaxwell::{Biquaternion, Conjugation, Quaternion, SpatialGrid};
use common::{exp_series_dd, table_product, table_product_real};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int_biquat(rng: &mut ChaCha8Rng) -> Biquaternion {
    Biquaternion(std::array::from_fn(|_| {
        Complex64::new(rng.gen_range(-1000..=1000) as f64, rng.gen_range(-1000..=1000) as f64)
    }))
}

// Integer coefficients keep every partial sum exact, so any summation order
// must agree bit for bit.
#[test]
fn product_matches_table_expansion_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let a = int_biquat(&mut rng);
        let b = int_biquat(&mut rng);
        assert_eq!(a * b, table_product(&a, &b));
        assert_eq!(a.mul_split(&b), table_product(&a, &b));
        let (p, q) = (a.re(), b.im());
        assert_eq!(p * q, table_product_real(&p, &q));
    }
}

#[test]
fn product_matches_table_expansion_on_floats() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10_000 {
        let a = Biquaternion(std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }));
        let b = Biquaternion(std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }));
        assert!((a * b - table_product(&a, &b)).max_abs() <= 1e-15);
    }
}

#[test]
fn exp_matches_extended_precision_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst = 0.0f64;
    for _ in 0..2_000 {
        let r: f64 = rng.gen_range(0.0..10.0);
        let dir: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = common::dot(dir, dir).sqrt();
        let v = dir.map(|c| r * c / n);
        let got = Quaternion::pure(v).exp_pure().unwrap();
        let want = exp_series_dd(v, 60);
        worst = worst.max((got - want).norm());
    }
    assert!(worst <= 1e-12, "max error {worst:e}");
}

#[test]
fn exp_small_argument_branch() {
    for r in [0.0, 1e-300, 1e-14, 1e-12, 1e-8] {
        let v = [r, -0.5 * r, 0.25 * r];
        let got = exp_vector(v);
        let want = exp_series_dd(v, 60);
        assert!((got - want).norm() <= 1e-16, "r = {r:e}");
    }
}

#[test]
fn propagators_have_unit_norm() {
    let grid = SpatialGrid::new(16, 2.0).unwrap();
    for (sign, lambda) in [(Sign::Plus, 1.0), (Sign::Minus, 2.0), (Sign::Plus, 2f64.sqrt())] {
        for dt in [1e-3, 0.01, 0.37] {
            let cache = PropagatorCache::new(grid, OperatorConfig::new(sign, lambda).unwrap(), dt);
            let worst = cache.steps().iter().map(|q| (q.norm() - 1.0).abs()).fold(0.0, f64::max);
            assert!(worst <= 1e-14, "{worst:e}");
        }
    }
}

fn small() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

fn quat() -> impl Strategy<Value = Quaternion> {
    [small(), small(), small(), small()].prop_map(Quaternion)
}

fn biquat() -> impl Strategy<Value = Biquaternion> {
    (quat(), quat()).prop_map(|(u, v)| Biquaternion::from_parts(u, v))
}

fn close(a: Biquaternion, b: Biquaternion, tol: f64) -> bool {
    (a - b).max_abs() <= tol * (1.0 + a.max_abs().max(b.max_abs()))
}

proptest! {
    #[test]
    fn associative(a in biquat(), b in biquat(), c in biquat()) {
        prop_assert!(close((a * b) * c, a * (b * c), 1e-13));
    }

    #[test]
    fn distributive(a in biquat(), b in biquat(), c in biquat()) {
        prop_assert!(close(a * (b + c), a * b + a * c, 1e-14));
        prop_assert!(close((b + c) * a, b * a + c * a, 1e-14));
    }

    #[test]
    fn quaternion_norm_is_multiplicative(p in quat(), q in quat()) {
        let lhs = (p * q).norm();
        prop_assert!((lhs - p.norm() * q.norm()).abs() <= 1e-13 * (1.0 + lhs));
    }

    #[test]
    fn conjugation_reverses_products(a in biquat(), b in biquat()) {
        let qc = |x: Biquaternion| x.conjugate(Conjugation::Quaternionic);
        prop_assert!(close(qc(a * b), qc(b) * qc(a), 1e-14));
        let cc = |x: Biquaternion| x.conjugate(Conjugation::Complex);
        prop_assert!(close(cc(a * b), cc(a) * cc(b), 1e-14));
    }

    #[test]
    fn imaginary_unit_is_central(a in biquat(), b in biquat()) {
        prop_assert!(close(a.mul_i() * b, a * b.mul_i(), 1e-14));
        prop_assert!(close((a * b).mul_i(), a.mul_i() * b, 1e-14));
    }

    #[test]
    fn decomposition_recombines(a in biquat()) {
        let d = a.decompose();
        prop_assert_eq!(Biquaternion::from_parts(d.re, d.im), a);
        prop_assert_eq!(Biquaternion::from_scalar(d.scalar) + d.vector, a);
    }

    #[test]
    fn exp_is_unit_and_inverts(v in [small(), small(), small()]) {
        let e = exp_vector(v);
        prop_assert!((e.norm() - 1.0).abs() <= 1e-14);
        let back = e * exp_vector(v.map(|c| -c));
        prop_assert!((back - Quaternion::ONE).norm() <= 1e-14);
    }

    #[test]
    fn pure_vector_squares_to_minus_norm(v in [small(), small(), small()]) {
        let q = Quaternion::pure(v);
        let sq = q * q;
        prop_assert!((sq.scalar() + q.norm_sqr()).abs() <= 1e-13 * (1.0 + q.norm_sqr()));
        prop_assert!(sq.vector().iter().all(|c| c.abs() <= 1e-13 * (1.0 + q.norm_sqr())));
    }
}
