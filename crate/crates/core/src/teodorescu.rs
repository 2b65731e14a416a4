//! The Cauchy kernel `E(x) = -x / (4π|x|³)` and the volume transform
//! `T_Ω[w](x) = -∫_Ω E(y - x) w(y) dy`.
//!
//! The integral is a midpoint sum over the masked nodes with weight `h³`. The
//! cell containing `y = x` contributes zero: `E` is odd and the cell is
//! symmetric about its center. Since `E` is odd, `-E(y - x) = E(x - y)` and
//! the sum is a discrete aperiodic convolution, which the FFT path evaluates
//! exactly (up to rounding) on a doubled grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biquat::{Biquaternion, Quaternion};
use crate::dirac::dirac_symbol;
use crate::error::{Error, Result};
use crate::grid::fft::{fft3, Direction};
use crate::grid::{BiquatField, Domain, SpatialGrid};

/// Largest grid the direct O(N²) quadrature accepts.
pub const DIRECT_MAX_N: usize = 32;

/// `E(x) = -x / (4π|x|³)`; singular at the origin.
pub fn cauchy_kernel(x: [f64; 3]) -> Result<Quaternion> {
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if r2 == 0.0 {
        return Err(Error::Domain("Cauchy kernel is singular at x = 0".into()));
    }
    Ok(Quaternion::pure(kernel_vector(x, r2)))
}

#[inline]
fn kernel_vector(x: [f64; 3], r2: f64) -> [f64; 3] {
    let s = -1.0 / (4.0 * PI * r2 * r2.sqrt());
    x.map(|c| c * s)
}

/// Selection of grid nodes making up `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainMask {
    grid: SpatialGrid,
    inside: Vec<bool>,
}

impl DomainMask {
    /// Validated mask: nonempty and inside the closed central sub-box
    /// `|x_i| <= L/4`, so that zero extension to the rest of the box is valid.
    pub fn new(grid: SpatialGrid, inside: Vec<bool>) -> Result<Self> {
        let mask = Self::unchecked(grid, inside)?;
        let quarter = 0.25 * grid.length() * (1.0 + 1e-12);
        if let Some(idx) =
            (0..grid.len()).find(|&idx| mask.inside[idx] && grid.point(idx).iter().any(|c| c.abs() > quarter))
        {
            return Err(Error::Config(format!(
                "domain mask node {:?} lies outside the padded sub-box |x_i| <= L/4",
                grid.point(idx)
            )));
        }
        Ok(mask)
    }

    /// Origin-centered ball `|x| <= radius`.
    pub fn ball(grid: SpatialGrid, radius: f64) -> Result<Self> {
        if radius > 0.25 * grid.length() * (1.0 + 1e-12) {
            return Err(Error::Config(format!(
                "ball radius {radius} exceeds L/4 = {}",
                0.25 * grid.length()
            )));
        }
        let inside = (0..grid.len())
            .map(|idx| {
                let x = grid.point(idx);
                x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= radius * radius
            })
            .collect();
        Self::new(grid, inside)
    }

    /// Every node of the box. Used as the domain of the periodic surrogate,
    /// where there is no padding to respect.
    pub fn whole_box(grid: SpatialGrid) -> Self {
        Self {
            grid,
            inside: vec![true; grid.len()],
        }
    }

    fn unchecked(grid: SpatialGrid, inside: Vec<bool>) -> Result<Self> {
        if inside.len() != grid.len() {
            return Err(Error::Config(format!(
                "domain mask has {} entries, grid has {} nodes",
                inside.len(),
                grid.len()
            )));
        }
        if !inside.iter().any(|&b| b) {
            return Err(Error::Config("domain mask is empty".into()));
        }
        Ok(Self { grid, inside })
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn inside(&self) -> &[bool] {
        &self.inside
    }

    pub fn count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }
}

/// Evaluation strategy for the midpoint sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    /// Explicit double loop, `n <= DIRECT_MAX_N`.
    #[default]
    Direct,
    /// Zero-padded FFT convolution on a `2n` grid; same sum, any `n`.
    Fft,
    /// Periodic right inverse of the spectral `D` on the whole box:
    /// `σ(k) ŵ / (4π²|k|²)`. Needs the whole-box mask and zero-mean data.
    Periodic,
}

/// `T_Ω[w]` at every grid node.
pub fn teodorescu(w: &BiquatField, mask: &DomainMask, quadrature: Quadrature) -> Result<BiquatField> {
    w.expect_domain(Domain::Physical, "teodorescu")?;
    if w.grid() != mask.grid() {
        return Err(Error::Config("mask and field live on different grids".into()));
    }
    match quadrature {
        Quadrature::Direct => {
            if w.grid().n() > DIRECT_MAX_N {
                return Err(Error::Config(format!(
                    "direct Teodorescu quadrature is limited to n <= {DIRECT_MAX_N} (got {}); use the FFT quadrature",
                    w.grid().n()
                )));
            }
            let grid = *w.grid();
            let points: Vec<[f64; 3]> = (0..grid.len()).map(|idx| grid.point(idx)).collect();
            let values = direct_sum(w, mask, &points);
            BiquatField::from_values(grid, values, Domain::Physical)
        }
        Quadrature::Fft => fft_sum(w, mask),
        Quadrature::Periodic => periodic_inverse(w, mask),
    }
}

/// Relative size of the mean, measured against the largest value, above which
/// the periodic inverse refuses the data.
pub const PERIODIC_MEAN_TOLERANCE: f64 = 1e-10;

fn periodic_inverse(w: &BiquatField, mask: &DomainMask) -> Result<BiquatField> {
    let grid = *w.grid();
    if mask.count() != grid.len() {
        return Err(Error::Config(
            "the periodic inverse of D needs the whole-box mask".into(),
        ));
    }
    let spec = w.dft_forward()?;
    let mean = spec.values()[0].max_abs() / grid.length().powi(3);
    if mean > PERIODIC_MEAN_TOLERANCE * w.max_abs() {
        return Err(Error::Domain(format!(
            "periodic inverse of D needs zero-mean data (mean {mean:e}, max {:e})",
            w.max_abs()
        )));
    }
    spec.map_modes(|k, v| {
        let kd = grid.derivative_k(k);
        let k2 = kd[0] * kd[0] + kd[1] * kd[1] + kd[2] * kd[2];
        if k2 == 0.0 {
            return Biquaternion::ZERO;
        }
        (dirac_symbol(kd) * v) * (1.0 / (4.0 * PI * PI * k2))
    })?
    .dft_inverse()
}

/// `T_Ω[w]` at arbitrary points by the direct sum. A point that coincides
/// with a source node skips that node.
pub fn teodorescu_at(w: &BiquatField, mask: &DomainMask, points: &[[f64; 3]]) -> Result<Vec<Biquaternion>> {
    w.expect_domain(Domain::Physical, "teodorescu_at")?;
    if w.grid() != mask.grid() {
        return Err(Error::Config("mask and field live on different grids".into()));
    }
    Ok(direct_sum(w, mask, points))
}

fn direct_sum(w: &BiquatField, mask: &DomainMask, points: &[[f64; 3]]) -> Vec<Biquaternion> {
    let grid = *w.grid();
    let h3 = grid.cell_volume();
    let sources: Vec<([f64; 3], Biquaternion)> = (0..grid.len())
        .filter(|&idx| mask.inside[idx])
        .map(|idx| (grid.point(idx), w.values()[idx]))
        .filter(|(_, v)| *v != Biquaternion::ZERO)
        .collect();
    points
        .par_iter()
        .map(|x| {
            let mut acc = Biquaternion::ZERO;
            for (y, wy) in &sources {
                let d = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
                let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
                if r2 == 0.0 {
                    continue;
                }
                acc += Quaternion::pure(kernel_vector(d, r2)) * *wy;
            }
            acc * h3
        })
        .collect()
}

fn fft_sum(w: &BiquatField, mask: &DomainMask) -> Result<BiquatField> {
    let grid = *w.grid();
    let n = grid.n();
    let m = 2 * n;
    let len = m * m * m;
    let h = grid.spacing();
    let pidx = |i: [usize; 3]| (i[0] * m + i[1]) * m + i[2];

    // kernel E(d h) at offsets d in (-n, n), wrapped onto the 2n grid
    let mut kernel: Vec<Vec<Complex64>> = vec![vec![Complex64::default(); len]; 3];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let off = [a, b, c].map(|q| if q < n { q as f64 } else { q as f64 - m as f64 });
                if [a, b, c].contains(&n) {
                    continue;
                }
                let d = off.map(|o| o * h);
                let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
                if r2 == 0.0 {
                    continue;
                }
                let e = kernel_vector(d, r2);
                let p = pidx([a, b, c]);
                for comp in 0..3 {
                    kernel[comp][p] = Complex64::new(e[comp], 0.0);
                }
            }
        }
    }
    let mut source: Vec<Vec<Complex64>> = vec![vec![Complex64::default(); len]; 4];
    for idx in 0..grid.len() {
        if !mask.inside[idx] {
            continue;
        }
        let p = pidx(grid.unflatten(idx));
        for (comp, buf) in source.iter_mut().enumerate() {
            buf[p] = w.values()[idx][comp];
        }
    }
    kernel
        .par_iter_mut()
        .chain(source.par_iter_mut())
        .for_each(|buf| fft3(m, buf, Direction::Forward));

    let mut product: Vec<Vec<Complex64>> = vec![vec![Complex64::default(); len]; 4];
    for p in 0..len {
        let k = Biquaternion::from_vector([kernel[0][p], kernel[1][p], kernel[2][p]]);
        let s = Biquaternion(std::array::from_fn(|c| source[c][p]));
        let prod = k.mul_complex(&s);
        for comp in 0..4 {
            product[comp][p] = prod[comp];
        }
    }
    product.par_iter_mut().for_each(|buf| fft3(m, buf, Direction::Inverse));

    let scale = grid.cell_volume() / len as f64;
    let values = (0..grid.len())
        .map(|idx| {
            let p = pidx(grid.unflatten(idx));
            Biquaternion(std::array::from_fn(|c| product[c][p] * scale))
        })
        .collect();
    BiquatField::from_values(grid, values, Domain::Physical)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_values() {
        let e = cauchy_kernel([1.0, 0.0, 0.0]).unwrap();
        assert!((e - Quaternion::E1.scale(-1.0 / (4.0 * PI))).norm() < 1e-17);
        let x = [0.3, -1.2, 0.7];
        let a = cauchy_kernel(x).unwrap();
        let b = cauchy_kernel(x.map(|c| -c)).unwrap();
        assert_eq!(a, -b);
        assert!(matches!(cauchy_kernel([0.0; 3]), Err(Error::Domain(_))));
    }

    #[test]
    fn mask_validation() {
        let g = SpatialGrid::new(8, 4.0).unwrap();
        assert!(DomainMask::ball(g, 1.0).is_ok());
        assert!(DomainMask::ball(g, 1.5).is_err());
        assert!(matches!(
            DomainMask::new(g, vec![false; g.len()]),
            Err(Error::Config(_))
        ));
        let mut corner = vec![false; g.len()];
        corner[0] = true;
        assert!(DomainMask::new(g, corner).is_err());
        assert!(DomainMask::new(g, vec![true; 3]).is_err());
    }

    #[test]
    fn zero_in_zero_out() {
        let g = SpatialGrid::new(8, 4.0).unwrap();
        let mask = DomainMask::ball(g, 1.0).unwrap();
        let t = teodorescu(&BiquatField::zeros(g), &mask, Quadrature::Direct).unwrap();
        assert_eq!(t.max_abs(), 0.0);
    }

    #[test]
    fn direct_rejects_large_grids() {
        let g = SpatialGrid::new(64, 4.0).unwrap();
        let mask = DomainMask::ball(g, 0.5).unwrap();
        let err = teodorescu(&BiquatField::zeros(g), &mask, Quadrature::Direct).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn symmetric_ball_cancels_at_center() {
        let g = SpatialGrid::new(16, 4.0).unwrap();
        let mask = DomainMask::ball(g, 1.0).unwrap();
        let one = BiquatField::constant(g, Biquaternion::ONE);
        let t = teodorescu(&one, &mask, Quadrature::Direct).unwrap();
        let center = g.index([8, 8, 8]);
        assert!(t.values()[center].max_abs() < 1e-15);
    }
}
