//! Completing a wave solution `u` to `u + iv` in the kernel of `D + i∂t`.

use bqmaxwell::completion::{metaharmonic_conjugate, CompletionOptions};
use bqmaxwell::dirac::{kernel_residual, DiffMethod, OperatorConfig, Sign};
use bqmaxwell::gauge::GaugeSpec;
use bqmaxwell::teodorescu::{DomainMask, Quadrature};
use bqmaxwell::{Biquaternion, Quaternion, Region, SpaceTimeField, SpatialGrid};

fn main() -> bqmaxwell::Result<()> {
    let op = OperatorConfig::unit(Sign::Plus);
    for (n, nt, dt) in [(16, 9, 0.02), (32, 17, 0.01)] {
        let g = SpatialGrid::new(n, 4.0)?;
        let mask = DomainMask::ball(g, 1.0)?;
        let opts = CompletionOptions {
            method: DiffMethod::Fd2,
            quadrature: Quadrature::Direct,
            wave_region: Region::interior_slices().away_from_seam(&g, 2),
            ..CompletionOptions::default()
        };
        let u = SpaceTimeField::from_fn(g, nt, dt, |x, t| Biquaternion::from(Quaternion::new(t, x[0], x[1], x[2])))?;
        let v = metaharmonic_conjugate(&u, &op, &GaugeSpec::Zero, &mask, &opts)?;

        let exact = SpaceTimeField::from_fn(g, nt, dt, |x, t| {
            Biquaternion::from(Quaternion::new(-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0))
        })?;
        let ball = Region::all().within_ball(&g, 1.0);
        let w = u.add(&v.field.map(|b| b.mul_i()));
        let r = kernel_residual(&w, &op, DiffMethod::Fd2, &Region::all().within_ball(&g, 0.8))?;
        println!(
            "n={n}  precondition {:?}  |v - v_exact| rel {:.3e}  kernel residual {:.3e}",
            v.status,
            v.field.sub(&exact).norm_over(&ball) / exact.norm_over(&ball),
            r.max()
        );
    }
    Ok(())
}
