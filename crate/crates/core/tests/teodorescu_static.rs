mod common;

use bqmaxwell::dirac::{apply_d, DiffMethod};
use bqmaxwell::teodorescu::{cauchy_kernel, teodorescu, teodorescu_at, DomainMask, Quadrature};
use bqmaxwell::{BiquatField, Biquaternion, Error, SpatialGrid};
use common::{dot, random_field};
use num_complex::Complex64;
use proptest::prelude::*;

fn quadrature(n: usize) -> Quadrature {
    if n <= 32 {
        Quadrature::Direct
    } else {
        Quadrature::Fft
    }
}

/// Interior relative error of `T_Ω[1]` against `-x/3` on the unit ball.
fn unit_ball_error(n: usize) -> f64 {
    let g = SpatialGrid::new(n, 4.0).unwrap();
    let mask = DomainMask::ball(g, 1.0).unwrap();
    let t = teodorescu(&BiquatField::constant(g, Biquaternion::ONE), &mask, quadrature(n)).unwrap();
    let (mut num, mut den) = (0.0, 0.0);
    for idx in 0..g.len() {
        if mask.inside()[idx] {
            let ex = Biquaternion::real_vector(g.point(idx).map(|c| -c / 3.0));
            num += (t.values()[idx] - ex).norm_sqr();
            den += ex.norm_sqr();
        }
    }
    (num / den).sqrt()
}

#[test]
fn unit_ball_of_ones_converges_to_minus_x_over_three() {
    let errs: Vec<f64> = [16, 32, 64].into_iter().map(unit_ball_error).collect();
    assert!(errs[1] <= 0.05, "{errs:?}");
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
}

#[test]
fn exterior_field_of_the_ball_is_a_point_source() {
    let g = SpatialGrid::new(32, 4.0).unwrap();
    let mask = DomainMask::ball(g, 1.0).unwrap();
    let ones = BiquatField::constant(g, Biquaternion::ONE);
    // the quadrature sees the staircase volume, not 4π/3
    let vol = mask.count() as f64 * g.cell_volume();
    let pts = [[1.9, 0.1, -0.2], [0.0, -1.7, 1.0], [1.5, 1.5, 0.3]];
    for (p, v) in pts.iter().zip(teodorescu_at(&ones, &mask, &pts).unwrap()) {
        let r3 = dot(*p, *p).powf(1.5);
        let want = Biquaternion::real_vector(p.map(|c| -vol * c / (4.0 * std::f64::consts::PI * r3)));
        assert!((v - want).norm() <= 1e-2 * want.norm(), "{p:?}");
    }
}

#[test]
fn direct_and_fft_quadratures_agree() {
    let g = SpatialGrid::new(16, 2.0).unwrap();
    let mask = DomainMask::ball(g, 0.45).unwrap();
    let w = random_field(g, 1);
    let a = teodorescu(&w, &mask, Quadrature::Direct).unwrap();
    let b = teodorescu(&w, &mask, Quadrature::Fft).unwrap();
    assert!(a.sub(&b).max_abs() <= 1e-12 * a.max_abs());
    let pts: Vec<[f64; 3]> = (0..g.len()).step_by(97).map(|i| g.point(i)).collect();
    for (p, v) in pts.iter().zip(teodorescu_at(&w, &mask, &pts).unwrap()) {
        let idx = (0..g.len()).find(|&i| g.point(i) == *p).unwrap();
        assert!((v - a.values()[idx]).max_abs() <= 1e-13 * a.max_abs());
    }
}

#[test]
fn d_of_transform_recovers_the_density_inside() {
    let mut errs = Vec::new();
    for n in [16, 32, 64] {
        let g = SpatialGrid::new(n, 4.0).unwrap();
        let mask = DomainMask::ball(g, 1.0).unwrap();
        let w = BiquatField::from_fn(g, |x| {
            Biquaternion::new(
                Complex64::new(1.0 + x[0], 0.0),
                Complex64::new(0.0, x[1] * x[2]),
                Complex64::new(0.5, 0.0),
                Complex64::new(x[0] - x[2], 0.2),
            )
        });
        let t = teodorescu(&w, &mask, quadrature(n)).unwrap();
        let dt = apply_d(&t, DiffMethod::Fd2).unwrap();
        let (mut num, mut den) = (0.0, 0.0);
        for idx in 0..g.len() {
            let x = g.point(idx);
            if dot(x, x).sqrt() <= 0.6 {
                num += (dt.values()[idx] - w.values()[idx]).norm_sqr();
                den += w.values()[idx].norm_sqr();
            }
        }
        errs.push((num / den).sqrt());
    }
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] <= 0.1, "{errs:?}");
}

#[test]
fn periodic_inverse_is_an_exact_right_inverse_of_spectral_d() {
    let g = SpatialGrid::new(16, 2.0).unwrap();
    let whole = DomainMask::whole_box(g);
    // zero mean and nothing on the Nyquist planes, which D cannot reach
    let w = random_field(g, 7)
        .dft_forward()
        .unwrap()
        .map_modes(|k, v| {
            if k == [0.0; 3] || g.derivative_k(k) != k {
                Biquaternion::ZERO
            } else {
                v
            }
        })
        .unwrap()
        .dft_inverse()
        .unwrap();
    let t = teodorescu(&w, &whole, Quadrature::Periodic).unwrap();
    let back = apply_d(&t, DiffMethod::Spectral).unwrap();
    assert!(back.sub(&w).max_abs() <= 1e-12 * w.max_abs());

    let shifted = w.add(&BiquatField::constant(g, Biquaternion::ONE));
    assert!(matches!(
        teodorescu(&shifted, &whole, Quadrature::Periodic),
        Err(Error::Domain(_))
    ));
    let ball = DomainMask::ball(g, 0.4).unwrap();
    assert!(matches!(
        teodorescu(&w, &ball, Quadrature::Periodic),
        Err(Error::Config(_))
    ));
}

#[test]
fn kernel_and_mask_contracts() {
    assert!(matches!(cauchy_kernel([0.0; 3]), Err(Error::Domain(_))));
    let e = cauchy_kernel([2.0, 0.0, 0.0]).unwrap();
    assert!((e.vector()[0] + 1.0 / (16.0 * std::f64::consts::PI)).abs() <= 1e-16);
    let g = SpatialGrid::new(8, 2.0).unwrap();
    assert!(DomainMask::ball(g, 0.6).is_err());
    assert!(DomainMask::new(g, vec![false; g.len()]).is_err());
    assert!(DomainMask::new(g, vec![true; 3]).is_err());
    let big = SpatialGrid::new(64, 2.0).unwrap();
    let mask = DomainMask::ball(big, 0.3).unwrap();
    let r = teodorescu(&BiquatField::zeros(big), &mask, Quadrature::Direct);
    assert!(matches!(r, Err(Error::Config(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // The kernel acts from the left, so constants factor out on the right.
    #[test]
    fn right_constants_factor_out(seed in 0u64..1000) {
        let g = SpatialGrid::new(8, 2.0).unwrap();
        let mask = DomainMask::ball(g, 0.5).unwrap();
        let w = random_field(g, seed);
        let c = random_field(g, seed + 1).values()[3];
        let lhs = teodorescu(&w.right_mul(c), &mask, Quadrature::Fft).unwrap();
        let rhs = teodorescu(&w, &mask, Quadrature::Fft).unwrap().right_mul(c);
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn outside_values_are_ignored(seed in 0u64..1000) {
        let g = SpatialGrid::new(8, 2.0).unwrap();
        let mask = DomainMask::ball(g, 0.5).unwrap();
        let w = random_field(g, seed);
        let clipped = BiquatField::from_values(
            g,
            w.values().iter().zip(mask.inside()).map(|(v, &i)| if i { *v } else { Biquaternion::ZERO }).collect(),
            bqmaxwell::Domain::Physical,
        ).unwrap();
        let a = teodorescu(&w, &mask, Quadrature::Direct).unwrap();
        let b = teodorescu(&clipped, &mask, Quadrature::Direct).unwrap();
        prop_assert_eq!(a, b);
    }
}
