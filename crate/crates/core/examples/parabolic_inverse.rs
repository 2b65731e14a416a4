//! The right inverse of `D ± iλ∂t` on a random band-limited source, and its
//! closed form on a single Fourier mode.

use std::f64::consts::PI;

use bqmaxwell::cli::inverse_residual;
use bqmaxwell::cli::presets::random_band_limited;
use bqmaxwell::dirac::{OperatorConfig, Sign};
use bqmaxwell::parabolic::{parabolic_teodorescu_with, single_mode_transform, TimeQuadrature, TransformOptions};
use bqmaxwell::{Biquaternion, SpaceTimeField, SpatialGrid};
use num_complex::Complex64;

fn main() -> bqmaxwell::Result<()> {
    let g = SpatialGrid::new(16, 2.0)?;
    for lambda in [1.0, 2.0, 2f64.sqrt()] {
        for sign in [Sign::Plus, Sign::Minus] {
            let op = OperatorConfig::new(sign, lambda)?;
            let r: Vec<String> = [(64, 0.01), (127, 0.005), (253, 0.0025)]
                .into_iter()
                .map(|(nt, dt)| {
                    let w = random_band_limited(g, nt, dt, 6, 1, 7)?;
                    Ok(format!("{:.2e}", inverse_residual(&w, &op)?))
                })
                .collect::<bqmaxwell::Result<_>>()?;
            println!("λ={lambda:.3} {sign:?}  residual over dt = 0.01, 0.005, 0.0025: {r:?}");
        }
    }

    let k0 = [0.5, -1.0, 0.5];
    let w = SpaceTimeField::from_fn(g, 64, 0.01, |x, _| {
        let ph = 2.0 * PI * (k0[0] * x[0] + k0[1] * x[1] + k0[2] * x[2]);
        Biquaternion::from_scalar(Complex64::from_polar(1.0, ph))
    })?;
    for quadrature in [TimeQuadrature::Trapezoid, TimeQuadrature::Exponential] {
        let opts = TransformOptions {
            quadrature,
            ..TransformOptions::default()
        };
        let t = parabolic_teodorescu_with(&w, &OperatorConfig::unit(Sign::Plus), &opts)?;
        let exact = SpaceTimeField::from_fn(g, 64, 0.01, |x, t| single_mode_transform(x, t, k0, Sign::Plus))?;
        println!("single mode, {quadrature:?}: max error {:.2e}", t.sub(&exact).max_abs());
    }
    Ok(())
}
