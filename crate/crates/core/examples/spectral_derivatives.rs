//! Forward/inverse transforms and the Dirac operator on a periodic grid,
//! spectral against second-order differences.

use std::f64::consts::PI;

use bqmaxwell::dirac::{apply_d, div_grad_curl, laplacian, DiffMethod};
use bqmaxwell::{Biquaternion, BiquatField, SpatialGrid};
use num_complex::Complex64;

fn field(g: SpatialGrid) -> BiquatField {
    BiquatField::from_fn(g, |x| {
        let s = (2.0 * PI * (x[0] - 0.5 * x[1])).sin();
        let c = (2.0 * PI * x[2]).cos();
        Biquaternion::new(
            Complex64::new(s * c, 0.0),
            Complex64::new(0.0, c),
            Complex64::new(s, 0.0),
            Complex64::new(0.0, s * s),
        )
    })
}

fn main() -> bqmaxwell::Result<()> {
    for n in [8, 16, 32, 64] {
        let g = SpatialGrid::new(n, 2.0)?;
        let f = field(g);
        let back = f.dft_forward()?.dft_inverse()?;
        let exact = apply_d(&f, DiffMethod::Spectral)?;
        let fd = apply_d(&f, DiffMethod::Fd2)?;
        println!(
            "n={n:3}  roundtrip {:.1e}  plancherel {:.1e}  |D_fd2 - D| / |D| = {:.3e}",
            back.sub(&f).max_abs(),
            f.plancherel_residual()?,
            fd.sub(&exact).l2_norm() / exact.l2_norm()
        );
    }

    let g = SpatialGrid::new(16, 2.0)?;
    let f = field(g);
    let parts = div_grad_curl(&f, DiffMethod::Spectral)?;
    let d = apply_d(&f, DiffMethod::Spectral)?;
    println!("-div + grad + curl vs D: {:.1e}", parts.recombine().sub(&d).max_abs());
    let dd = apply_d(&d, DiffMethod::Spectral)?;
    println!("D² + Δ: {:.1e}", dd.add(&laplacian(&f, DiffMethod::Spectral)?).max_abs());
    Ok(())
}
