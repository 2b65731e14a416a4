//! The Moisil–Teodorescu operator `D = Σ e_i ∂_i`, its div/grad/curl split,
//! the parabolic operators `D ± iλ∂t`, and residual evaluators.
//!
//! `D` always acts from the left. Spatial derivatives are either spectral
//! (exact on lattice modes) or second-order centered differences with
//! periodic wrap. Time derivatives are second-order centered in the interior
//! and second-order one-sided at the first and last slice.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biquat::Biquaternion;
use crate::error::{Error, Result};
use crate::grid::{BiquatField, Region, SpaceTimeField};

/// Sign selector of `D ± iλ∂t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    #[inline]
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Sign and time scale of a parabolic Dirac operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorConfig {
    pub sign: Sign,
    lambda: f64,
}

impl OperatorConfig {
    pub fn new(sign: Sign, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Config(format!(
                "operator.lambda must be positive (got {lambda})"
            )));
        }
        Ok(Self { sign, lambda })
    }

    /// `λ = 1`.
    pub fn unit(sign: Sign) -> Self {
        Self { sign, lambda: 1.0 }
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Propagation speed `c = 1/λ`.
    #[inline]
    pub fn speed(&self) -> f64 {
        1.0 / self.lambda
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        Self { sign, ..*self }
    }
}

/// How spatial derivatives are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiffMethod {
    #[default]
    Spectral,
    /// Second-order centered differences, periodic wrap.
    Fd2,
}

fn lincomb(terms: &[(Complex64, &BiquatField)]) -> BiquatField {
    let first = terms[0].1;
    let values = (0..first.grid().len())
        .map(|idx| {
            let mut acc = Biquaternion::ZERO;
            for (c, f) in terms {
                acc += f.values()[idx] * *c;
            }
            acc
        })
        .collect();
    BiquatField::from_values(*first.grid(), values, first.domain()).expect("same grid")
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn centered_difference(f: &BiquatField, axis: usize) -> BiquatField {
    let grid = *f.grid();
    let n = grid.n();
    let inv2h = 1.0 / (2.0 * grid.spacing());
    let values = (0..grid.len())
        .map(|idx| {
            let mut up = grid.unflatten(idx);
            let mut down = up;
            up[axis] = (up[axis] + 1) % n;
            down[axis] = (down[axis] + n - 1) % n;
            (f.at(up) - f.at(down)) * inv2h
        })
        .collect();
    BiquatField::from_values(grid, values, f.domain()).expect("same grid")
}

/// `[∂1 f, ∂2 f, ∂3 f]`.
pub fn partials(f: &BiquatField, method: DiffMethod) -> Result<[BiquatField; 3]> {
    match method {
        DiffMethod::Fd2 => {
            f.expect_domain(crate::grid::Domain::Physical, "partials")?;
            Ok(std::array::from_fn(|axis| centered_difference(f, axis)))
        }
        DiffMethod::Spectral => {
            let spec = f.dft_forward()?;
            let grid = *f.grid();
            let mut out = Vec::with_capacity(3);
            for axis in 0..3 {
                let d = spec.map_modes(|k, v| v * Complex64::new(0.0, 2.0 * PI * grid.derivative_k(k)[axis]))?;
                out.push(d.dft_inverse()?);
            }
            Ok(out.try_into().expect("three partials"))
        }
    }
}

/// Symbol of `D` at wave vector `k`: the pure vector `2πik`.
#[inline]
pub fn dirac_symbol(k: [f64; 3]) -> Biquaternion {
    Biquaternion::from_vector(k.map(|ki| Complex64::new(0.0, 2.0 * PI * ki)))
}

/// `D f = Σ e_i ∂_i f`, basis elements multiplying from the left.
pub fn apply_d(f: &BiquatField, method: DiffMethod) -> Result<BiquatField> {
    match method {
        DiffMethod::Spectral => {
            let grid = *f.grid();
            f.dft_forward()?
                .map_modes(|k, v| dirac_symbol(grid.derivative_k(k)) * v)?
                .dft_inverse()
        }
        DiffMethod::Fd2 => {
            let [d1, d2, d3] = partials(f, method)?;
            let basis = [
                Biquaternion::real_vector([1.0, 0.0, 0.0]),
                Biquaternion::real_vector([0.0, 1.0, 0.0]),
                Biquaternion::real_vector([0.0, 0.0, 1.0]),
            ];
            let values = (0..f.grid().len())
                .map(|idx| basis[0] * d1.values()[idx] + basis[1] * d2.values()[idx] + basis[2] * d3.values()[idx])
                .collect();
            BiquatField::from_values(*f.grid(), values, f.domain())
        }
    }
}

/// `Δ f`, component-wise.
pub fn laplacian(f: &BiquatField, method: DiffMethod) -> Result<BiquatField> {
    match method {
        DiffMethod::Spectral => f
            .dft_forward()?
            .map_modes(|k, v| v * (-4.0 * PI * PI * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2])))?
            .dft_inverse(),
        DiffMethod::Fd2 => {
            f.expect_domain(crate::grid::Domain::Physical, "laplacian")?;
            let grid = *f.grid();
            let n = grid.n();
            let inv_h2 = 1.0 / grid.spacing().powi(2);
            let values = (0..grid.len())
                .map(|idx| {
                    let i = grid.unflatten(idx);
                    let mut acc = f.values()[idx] * -6.0;
                    for axis in 0..3 {
                        let mut up = i;
                        let mut down = i;
                        up[axis] = (up[axis] + 1) % n;
                        down[axis] = (down[axis] + n - 1) % n;
                        acc += f.at(up) + f.at(down);
                    }
                    acc * inv_h2
                })
                .collect();
            BiquatField::from_values(grid, values, f.domain())
        }
    }
}

/// Classical operators acting on the scalar and vector parts of a field.
#[derive(Debug, Clone)]
pub struct DivGradCurl {
    /// `div` of the vector part, stored as a scalar field.
    pub div: BiquatField,
    /// `∇` of the scalar part, stored as a vector field.
    pub grad: BiquatField,
    /// `curl` of the vector part, stored as a vector field.
    pub curl: BiquatField,
}

impl DivGradCurl {
    /// `-div + grad + curl`, which equals `D u`.
    pub fn recombine(&self) -> BiquatField {
        let g = self.grad.add(&self.curl);
        g.zip_map(&self.div, |gv, d| gv - d)
    }
}

pub fn div_grad_curl(u: &BiquatField, method: DiffMethod) -> Result<DivGradCurl> {
    let [d1, d2, d3] = partials(u, method)?;
    let d = [d1.values(), d2.values(), d3.values()];
    let grid = *u.grid();
    let len = grid.len();
    let mut div = Vec::with_capacity(len);
    let mut grad = Vec::with_capacity(len);
    let mut curl = Vec::with_capacity(len);
    #[allow(clippy::needless_range_loop)]
    for idx in 0..len {
        let p = |axis: usize, comp: usize| d[axis][idx][comp];
        div.push(Biquaternion::from_scalar(p(0, 1) + p(1, 2) + p(2, 3)));
        grad.push(Biquaternion::from_vector([p(0, 0), p(1, 0), p(2, 0)]));
        curl.push(Biquaternion::from_vector([
            p(1, 3) - p(2, 2),
            p(2, 1) - p(0, 3),
            p(0, 2) - p(1, 1),
        ]));
    }
    Ok(DivGradCurl {
        div: BiquatField::from_values(grid, div, u.domain())?,
        grad: BiquatField::from_values(grid, grad, u.domain())?,
        curl: BiquatField::from_values(grid, curl, u.domain())?,
    })
}

fn require_slices(w: &SpaceTimeField, min: usize, op: &str) -> Result<()> {
    if w.nt() < min {
        return Err(Error::Size(format!(
            "{op} needs at least {min} time slices, got {}",
            w.nt()
        )));
    }
    Ok(())
}

/// `∂t` per slice: centered inside, second-order one-sided at both ends.
pub fn time_derivative(w: &SpaceTimeField) -> Result<Vec<BiquatField>> {
    require_slices(w, 3, "time derivative")?;
    let s = w.slices();
    let nt = s.len();
    let inv = 1.0 / (2.0 * w.dt());
    Ok((0..nt)
        .into_par_iter()
        .map(|j| {
            if j == 0 {
                lincomb(&[(re(-3.0 * inv), &s[0]), (re(4.0 * inv), &s[1]), (re(-inv), &s[2])])
            } else if j == nt - 1 {
                lincomb(&[
                    (re(3.0 * inv), &s[nt - 1]),
                    (re(-4.0 * inv), &s[nt - 2]),
                    (re(inv), &s[nt - 3]),
                ])
            } else {
                lincomb(&[(re(inv), &s[j + 1]), (re(-inv), &s[j - 1])])
            }
        })
        .collect())
}

/// `∂t` of the first slice only (second-order one-sided).
pub fn initial_rate(w: &SpaceTimeField) -> Result<BiquatField> {
    require_slices(w, 3, "initial rate")?;
    let s = w.slices();
    let inv = 1.0 / (2.0 * w.dt());
    Ok(lincomb(&[
        (re(-3.0 * inv), &s[0]),
        (re(4.0 * inv), &s[1]),
        (re(-inv), &s[2]),
    ]))
}

/// `∂tt` per slice: centered inside; at the ends second-order one-sided when
/// four slices are available, first-order otherwise.
pub fn second_time_derivative(w: &SpaceTimeField) -> Result<Vec<BiquatField>> {
    require_slices(w, 3, "second time derivative")?;
    let s = w.slices();
    let nt = s.len();
    let inv = 1.0 / (w.dt() * w.dt());
    let end = |a: usize, b: usize, c: usize, d: Option<usize>| match d {
        Some(d) => lincomb(&[
            (re(2.0 * inv), &s[a]),
            (re(-5.0 * inv), &s[b]),
            (re(4.0 * inv), &s[c]),
            (re(-inv), &s[d]),
        ]),
        None => lincomb(&[(re(inv), &s[a]), (re(-2.0 * inv), &s[b]), (re(inv), &s[c])]),
    };
    Ok((0..nt)
        .into_par_iter()
        .map(|j| {
            if j == 0 {
                end(0, 1, 2, (nt >= 4).then_some(3))
            } else if j == nt - 1 {
                end(nt - 1, nt - 2, nt - 3, (nt >= 4).then(|| nt - 4))
            } else {
                lincomb(&[(re(inv), &s[j + 1]), (re(-2.0 * inv), &s[j]), (re(inv), &s[j - 1])])
            }
        })
        .collect())
}

/// `D` applied slice by slice.
pub fn apply_d_series(w: &SpaceTimeField, method: DiffMethod) -> Result<SpaceTimeField> {
    let slices = w
        .slices()
        .par_iter()
        .map(|s| apply_d(s, method))
        .collect::<Result<Vec<_>>>()?;
    SpaceTimeField::new(slices, w.dt())
}

/// `(D ± iλ∂t) w`.
pub fn apply_parabolic(w: &SpaceTimeField, cfg: &OperatorConfig, method: DiffMethod) -> Result<SpaceTimeField> {
    require_slices(w, 3, "apply_parabolic")?;
    let dw = apply_d_series(w, method)?;
    let dtw = time_derivative(w)?;
    let coef = Complex64::new(0.0, cfg.sign.factor() * cfg.lambda);
    let slices = dw
        .slices()
        .par_iter()
        .zip(&dtw)
        .map(|(a, b)| lincomb(&[(re(1.0), a), (coef, b)]))
        .collect();
    SpaceTimeField::new(slices, w.dt())
}

/// `L^2` norms of the four component equations of `(D ± iλ∂t) w = 0`,
/// with `w = u + iv`:
///
/// * `scalar_real`: `-div u_vec ∓ λ ∂t v0`
/// * `vector_real`: `∇u0 + curl u_vec ∓ λ ∂t v_vec`
/// * `scalar_imag`: `-div v_vec ± λ ∂t u0`
/// * `vector_imag`: `∇v0 + curl v_vec ± λ ∂t u_vec`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResidual {
    pub scalar_real: f64,
    pub vector_real: f64,
    pub scalar_imag: f64,
    pub vector_imag: f64,
}

impl KernelResidual {
    pub fn as_array(&self) -> [f64; 4] {
        [self.scalar_real, self.vector_real, self.scalar_imag, self.vector_imag]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }
}

/// Evaluates the four kernel equations through explicit div/grad/curl of the
/// real and imaginary parts, independently of [`apply_parabolic`].
pub fn kernel_residual(
    w: &SpaceTimeField,
    cfg: &OperatorConfig,
    method: DiffMethod,
    region: &Region,
) -> Result<KernelResidual> {
    require_slices(w, 3, "kernel_residual")?;
    let u = w.map(|v| Biquaternion::from(v.re()));
    let v = w.map(|v| Biquaternion::from(v.im()));
    let dtu = time_derivative(&u)?;
    let dtv = time_derivative(&v)?;
    let s = cfg.sign.factor() * cfg.lambda;
    let h3dt = w.grid().cell_volume() * w.dt();

    let mut acc = [0.0f64; 4];
    for j in region.slice_range(w.nt()) {
        let du = div_grad_curl(u.slice(j), method)?;
        let dv = div_grad_curl(v.slice(j), method)?;
        for idx in 0..w.grid().len() {
            if !region.contains_node(idx) {
                continue;
            }
            // derivatives of real fields are real
            let r = |f: &BiquatField, c: usize| f.values()[idx][c].re;
            let e1 = -r(&du.div, 0) - s * r(&dtv[j], 0);
            let e3 = -r(&dv.div, 0) + s * r(&dtu[j], 0);
            let mut e2 = 0.0;
            let mut e4 = 0.0;
            for c in 1..4 {
                let a = r(&du.grad, c) + r(&du.curl, c) - s * r(&dtv[j], c);
                let b = r(&dv.grad, c) + r(&dv.curl, c) + s * r(&dtu[j], c);
                e2 += a * a;
                e4 += b * b;
            }
            acc[0] += e1 * e1;
            acc[1] += e2;
            acc[2] += e3 * e3;
            acc[3] += e4;
        }
    }
    let [a, b, c, d] = acc.map(|x| (x * h3dt).sqrt());
    Ok(KernelResidual {
        scalar_real: a,
        vector_real: b,
        scalar_imag: c,
        vector_imag: d,
    })
}

/// `(-Δ + λ²∂tt) w`, component-wise.
pub fn wave_residual(w: &SpaceTimeField, lambda: f64, method: DiffMethod) -> Result<SpaceTimeField> {
    require_slices(w, 3, "wave_residual")?;
    let dtt = second_time_derivative(w)?;
    let slices = w
        .slices()
        .par_iter()
        .zip(&dtt)
        .map(|(s, tt)| {
            let lap = laplacian(s, method)?;
            Ok(lincomb(&[(re(-1.0), &lap), (re(lambda * lambda), tt)]))
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceTimeField::new(slices, w.dt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SpatialGrid;

    fn grid() -> SpatialGrid {
        SpatialGrid::new(8, 2.0).unwrap()
    }

    #[test]
    fn lambda_must_be_positive() {
        assert!(OperatorConfig::new(Sign::Plus, 0.0).is_err());
        assert!(OperatorConfig::new(Sign::Plus, -1.0).is_err());
        let cfg = OperatorConfig::new(Sign::Minus, 2.0).unwrap();
        assert_eq!(cfg.speed(), 0.5);
    }

    #[test]
    fn fd2_is_exact_on_linear_vector_field() {
        // u = x: D u = -3 on nodes away from the seam
        let g = grid();
        let f = BiquatField::from_fn(g, Biquaternion::real_vector);
        let du = apply_d(&f, DiffMethod::Fd2).unwrap();
        let region = Region::all().away_from_seam(&g, 1);
        for (idx, v) in du.values().iter().enumerate() {
            if region.contains_node(idx) {
                assert!((*v - Biquaternion::from_scalar(re(-3.0))).max_abs() < 1e-13);
            }
        }
        let dgc = div_grad_curl(&f, DiffMethod::Fd2).unwrap();
        let i = g.index([3, 4, 5]);
        assert!((dgc.div.values()[i].sc() - re(3.0)).norm() < 1e-13);
        assert!(dgc.curl.values()[i].max_abs() < 1e-13);
    }

    #[test]
    fn gradient_of_linear_scalar() {
        let g = grid();
        let f = BiquatField::from_fn(g, |x| Biquaternion::from_scalar(re(x[0])));
        let dgc = div_grad_curl(&f, DiffMethod::Fd2).unwrap();
        let i = g.index([4, 4, 4]);
        assert!((dgc.grad.values()[i] - Biquaternion::real_vector([1.0, 0.0, 0.0])).max_abs() < 1e-13);
    }

    #[test]
    fn parabolic_needs_three_slices() {
        let w = SpaceTimeField::zeros(grid(), 2, 0.1).unwrap();
        let err = apply_parabolic(&w, &OperatorConfig::unit(Sign::Plus), DiffMethod::Spectral).unwrap_err();
        assert!(matches!(err, Error::Size(_)));
    }

    #[test]
    fn constant_field_is_in_kernel() {
        let c = Biquaternion::new(re(1.0), Complex64::new(0.0, 2.0), re(-1.0), re(0.5));
        let w = SpaceTimeField::from_fn(grid(), 4, 0.1, |_, _| c).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let r = apply_parabolic(&w, &OperatorConfig::unit(sign), DiffMethod::Spectral).unwrap();
            assert!(r.max_abs() < 1e-12);
        }
    }

    #[test]
    fn time_derivative_exact_on_quadratics() {
        let w = SpaceTimeField::from_fn(grid(), 5, 0.1, |_, t| Biquaternion::from_scalar(re(3.0 * t * t + t))).unwrap();
        let d = time_derivative(&w).unwrap();
        let dd = second_time_derivative(&w).unwrap();
        for j in 0..5 {
            let t = w.time(j);
            assert!((d[j].values()[0].sc() - re(6.0 * t + 1.0)).norm() < 1e-12);
            assert!((dd[j].values()[0].sc() - re(6.0)).norm() < 1e-10);
        }
    }
}
