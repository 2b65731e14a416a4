//! Closed-form members of the kernel of `D ± iλ∂t` and their residuals.

use bqmaxwell::dirac::{apply_parabolic, kernel_residual, DiffMethod, OperatorConfig, Sign};
use bqmaxwell::{Biquaternion, Quaternion, Region, SpaceTimeField, SpatialGrid};
use num_complex::Complex64;

fn main() -> bqmaxwell::Result<()> {
    let g = SpatialGrid::new(16, 2.0)?;
    let inner = Region::all().away_from_seam(&g, 1);

    for sign in [Sign::Plus, Sign::Minus] {
        let s = sign.factor();
        let op = OperatorConfig::unit(sign);

        let linear = SpaceTimeField::from_fn(g, 8, 0.01, |x, t| {
            Biquaternion::from_parts(
                Quaternion::new(t, x[0], x[1], x[2]),
                Quaternion::new(-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0).scale(s),
            )
        })?;
        let quadratic = SpaceTimeField::from_fn(g, 8, 0.01, |x, t| {
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            Biquaternion::new(
                Complex64::new(r2 + 3.0 * t * t, 0.0),
                Complex64::new(0.0, s * 2.0 * t * x[0]),
                Complex64::new(0.0, s * 2.0 * t * x[1]),
                Complex64::new(0.0, s * 2.0 * t * x[2]),
            )
        })?;

        for (name, w) in [("linear", &linear), ("quadratic", &quadratic)] {
            let r = kernel_residual(w, &op, DiffMethod::Fd2, &inner)?;
            let other = apply_parabolic(w, &op.with_sign(sign.flip()), DiffMethod::Fd2)?;
            println!(
                "{sign:?} {name:9}  residuals {:?}  opposite sign {:.2e}",
                r.as_array().map(|x| format!("{x:.1e}")),
                other.max_abs_over(&inner)
            );
        }
    }
    Ok(())
}
