//! `T_Ω` on a ball: the transform of a constant against `-x/3`, and `D T_Ω`
//! recovering the density.

use bqmaxwell::dirac::{apply_d, DiffMethod};
use bqmaxwell::teodorescu::{teodorescu, DomainMask, Quadrature};
use bqmaxwell::{Biquaternion, BiquatField, SpatialGrid};

fn main() -> bqmaxwell::Result<()> {
    for n in [16, 32, 64] {
        let g = SpatialGrid::new(n, 4.0)?;
        let mask = DomainMask::ball(g, 1.0)?;
        let q = if n <= 32 { Quadrature::Direct } else { Quadrature::Fft };
        let one = BiquatField::constant(g, Biquaternion::ONE);
        let t = teodorescu(&one, &mask, q)?;
        let (mut num, mut den) = (0.0, 0.0);
        for idx in (0..g.len()).filter(|&i| mask.inside()[i]) {
            let want = Biquaternion::real_vector(g.point(idx).map(|c| -c / 3.0));
            num += (t.values()[idx] - want).norm_sqr();
            den += want.norm_sqr();
        }
        let dt = apply_d(&t, DiffMethod::Fd2)?;
        let inner: Vec<usize> = (0..g.len())
            .filter(|&i| g.point(i).iter().map(|c| c * c).sum::<f64>() <= 0.36)
            .collect();
        let dev = inner.iter().map(|&i| (dt.values()[i] - Biquaternion::ONE).norm()).fold(0.0, f64::max);
        println!(
            "n={n:3}  {} nodes  |T[1] + x/3| rel {:.3e}  max |D T[1] - 1| (r<0.6) {dev:.3e}",
            mask.count(),
            (num / den).sqrt()
        );
    }
    Ok(())
}
