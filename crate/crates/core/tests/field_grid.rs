mod common;

use std::f64::consts::PI;

use bqmaxwell::dirac::{apply_d, dirac_symbol, DiffMethod};
use bqmaxwell::grid::io::{read_bqmx, write_bqmx, write_csv_planes, PlaneSelection, CSV_HEADER};
use bqmaxwell::{BiquatField, Biquaternion, Domain, Error, SpaceTimeField, SpatialGrid};
use common::{direct_dft, observed_order, random_field};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: &BiquatField, b: &BiquatField) -> f64 {
    a.sub(b).l2_norm() / b.l2_norm()
}

#[test]
fn roundtrip_and_plancherel_on_random_fields() {
    for (n, l) in [(4, 1.0), (8, 2.0), (16, 3.5)] {
        let g = SpatialGrid::new(n, l).unwrap();
        for seed in 0..3 {
            let f = random_field(g, seed);
            let back = f.dft_forward().unwrap().dft_inverse().unwrap();
            assert!(back.sub(&f).max_abs() <= 1e-12);
            assert!(f.plancherel_residual().unwrap() <= 1e-10);
        }
    }
}

#[test]
fn fft_matches_direct_summation() {
    let g = SpatialGrid::new(8, 1.7).unwrap();
    let f = random_field(g, 5);
    let spec = f.dft_forward().unwrap();
    let scale = f.max_abs() * g.length().powi(3);
    for idx in 0..g.len() {
        let d = (spec.values()[idx] - direct_dft(&f, idx)).max_abs();
        assert!(d <= 1e-13 * scale, "mode {:?}: {d:e}", g.unflatten(idx));
    }
}

#[test]
fn single_mode_lands_on_one_coefficient() {
    let g = SpatialGrid::new(8, 2.0).unwrap();
    let m = [1i64, -2, 3];
    let k = m.map(|c| c as f64 / g.length());
    let f = BiquatField::from_fn(g, |x| {
        Biquaternion::from_scalar(Complex64::from_polar(1.0, 2.0 * PI * common::dot(k, x)))
    });
    let spec = f.dft_forward().unwrap();
    let at = g.index(m.map(|c| g.mode_index(c)));
    for (idx, v) in spec.values().iter().enumerate() {
        let want = if idx == at { g.length().powi(3) } else { 0.0 };
        assert!((v[0] - Complex64::new(want, 0.0)).norm() <= 1e-12);
    }
}

#[test]
fn storage_order_and_lattice() {
    let g = SpatialGrid::new(8, 2.0).unwrap();
    let modes: Vec<i64> = (0..8).map(|q| g.mode(q)).collect();
    assert_eq!(modes, vec![0, 1, 2, 3, -4, -3, -2, -1]);
    assert_eq!(g.frequency_lattice()[0], -2.0);
    assert!(g.is_nyquist(g.index([4, 0, 0])));
    assert_eq!(g.coord(0), -1.0);
    assert!(SpatialGrid::new(15, 1.0).is_err());
    assert!(SpatialGrid::new(2, 1.0).is_err());
    assert!(SpatialGrid::new(8, -1.0).is_err());
}

#[test]
fn domain_tags_are_enforced() {
    let g = SpatialGrid::new(4, 1.0).unwrap();
    let f = BiquatField::zeros(g);
    assert!(matches!(f.dft_inverse(), Err(Error::State(_))));
    assert!(matches!(f.dft_forward().unwrap().dft_forward(), Err(Error::State(_))));
}

#[test]
fn spectral_d_is_the_symbol_multiplier() {
    let g = SpatialGrid::new(16, 2.0).unwrap();
    let f = random_field(g, 9);
    let via_symbol = f
        .dft_forward()
        .unwrap()
        .map_modes(|k, v| dirac_symbol(g.derivative_k(k)) * v)
        .unwrap()
        .dft_inverse()
        .unwrap();
    assert!(rel(&apply_d(&f, DiffMethod::Spectral).unwrap(), &via_symbol) <= 1e-13);
}

#[test]
fn spectral_derivatives_keep_real_fields_real() {
    let g = SpatialGrid::new(8, 2.0).unwrap();
    let f = random_field(g, 2).map(|v| Biquaternion(v.0.map(|c| Complex64::new(c.re, 0.0))));
    let d = apply_d(&f, DiffMethod::Spectral).unwrap();
    let im = d
        .values()
        .iter()
        .flat_map(|v| v.0)
        .map(|c| c.im.abs())
        .fold(0.0, f64::max);
    assert!(im <= 1e-13 * d.max_abs(), "{im:e}");
}

#[test]
fn centred_differences_converge_at_second_order() {
    let mut hs = Vec::new();
    let mut errs = Vec::new();
    for n in [16, 32] {
        let g = SpatialGrid::new(n, 2.0).unwrap();
        let k = [0.5, -0.5, 1.0];
        let f = BiquatField::from_fn(g, |x| {
            let s = (2.0 * PI * common::dot(k, x)).sin();
            Biquaternion::new(
                Complex64::new(s, 0.0),
                Complex64::new(0.0, s),
                Complex64::new(2.0 * s, -s),
                Complex64::new(0.0, 0.0),
            )
        });
        let exact = apply_d(&f, DiffMethod::Spectral).unwrap();
        errs.push(rel(&apply_d(&f, DiffMethod::Fd2).unwrap(), &exact));
        hs.push(g.spacing());
    }
    let p = observed_order(&hs, &errs);
    assert!((1.8..=2.2).contains(&p), "order {p}");
}

#[test]
fn bqmx_roundtrip_is_bitwise() {
    let g = SpatialGrid::new(4, 1.5).unwrap();
    let slices = (0..3).map(|s| random_field(g, 20 + s)).collect();
    let field = SpaceTimeField::new(slices, 0.125).unwrap();
    let mut a = Vec::new();
    write_bqmx(&mut a, &field).unwrap();
    let back = read_bqmx(a.as_slice()).unwrap();
    assert_eq!(back, field);
    let mut b = Vec::new();
    write_bqmx(&mut b, &back).unwrap();
    assert_eq!(a, b);

    let spec = field.dft_forward().unwrap();
    let mut c = Vec::new();
    write_bqmx(&mut c, &spec).unwrap();
    assert_eq!(read_bqmx(c.as_slice()).unwrap().domain(), Domain::Spectral);
}

#[test]
fn bqmx_rejects_bad_headers() {
    assert!(matches!(read_bqmx(&b"NOPE\x01\0\0\0"[..]), Err(Error::Parse(_))));
    assert!(matches!(read_bqmx(&b"BQMX\x07\0\0\0"[..]), Err(Error::Parse(_))));
    let g = SpatialGrid::new(4, 1.0).unwrap();
    let mut buf = Vec::new();
    write_bqmx(&mut buf, &SpaceTimeField::zeros(g, 2, 0.1).unwrap()).unwrap();
    buf.truncate(buf.len() - 5);
    assert!(read_bqmx(buf.as_slice()).is_err());
}

#[test]
fn csv_planes_have_one_row_per_node() {
    let g = SpatialGrid::new(4, 1.0).unwrap();
    let field = SpaceTimeField::from_fn(g, 3, 0.5, |x, t| Biquaternion::real_vector([x[0], x[1], t])).unwrap();
    let planes = [
        PlaneSelection {
            axis: 2,
            index: 1,
            time: 2,
        },
        PlaneSelection {
            axis: 0,
            index: 0,
            time: 0,
        },
    ];
    let mut buf = Vec::new();
    write_csv_planes(&mut buf, &field, &planes).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 32);
    let first: Vec<f64> = rows[0].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(first[2], g.coord(1));
    assert_eq!(first[3], 1.0);
    assert_eq!(first[10], 1.0);

    let bad = [PlaneSelection {
        axis: 3,
        index: 0,
        time: 0,
    }];
    assert!(write_csv_planes(Vec::new(), &field, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_is_linear(seed in 0u64..1000, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let g = SpatialGrid::new(4, 1.3).unwrap();
        let (f, h) = (random_field(g, seed), random_field(g, seed + 1));
        let s = Complex64::new(re, im);
        let lhs = f.scale(s).add(&h).dft_forward().unwrap();
        let rhs = f.dft_forward().unwrap().scale(s).add(&h.dft_forward().unwrap());
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn transform_commutes_with_constant_left_products(seed in 0u64..1000) {
        let g = SpatialGrid::new(4, 0.9).unwrap();
        let f = random_field(g, seed);
        let c = random_field(g, seed + 7).values()[0];
        let lhs = f.left_mul(c).dft_forward().unwrap();
        let rhs = f.dft_forward().unwrap().left_mul(c);
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
    }
}
