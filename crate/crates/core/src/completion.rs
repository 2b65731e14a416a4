//! Completion of wave-equation solutions to null solutions of `D ± iλ∂t`.
//!
//! If `(-Δ + λ²∂tt) u = 0`, then
//! `v = (1/λ) ∫₀ᵗ D u ds - λ T_Ω[∂t u](·, 0) + ∇φ`
//! makes `u ± i v` a null solution of `D ± iλ∂t` on `Ω`. For a scalar `u0`,
//! `iλ v` reduces to the purely vectorial
//! `𝒰_λ[u0] = i ∫₀ᵗ ∇u0 ds - iλ² T_Ω[∂t u0](·, 0)`, and `u0 ± (1/λ) 𝒰_λ[u0]`
//! lies in the kernel. At `λ = 1` the two scalings coincide.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biquat::Biquaternion;
use crate::dirac::{apply_d, initial_rate, laplacian, second_time_derivative, DiffMethod, OperatorConfig};
use crate::error::{Error, Result};
use crate::gauge::GaugeSpec;
use crate::grid::{BiquatField, Region, SpaceTimeField};
use crate::teodorescu::{teodorescu, DomainMask, Quadrature};

#[derive(Debug, Clone)]
pub struct CompletionOptions {
    pub method: DiffMethod,
    pub quadrature: Quadrature,
    /// Largest relative wave-equation residual accepted without a warning.
    pub wave_tolerance: f64,
    /// Nodes and slices over which the wave residual is measured.
    pub wave_region: Region,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        Self {
            method: DiffMethod::Spectral,
            quadrature: Quadrature::Fft,
            wave_tolerance: 1e-2,
            wave_region: Region::interior_slices(),
        }
    }
}

/// Outcome of the wave-equation precondition check. Violations do not abort
/// the construction; the kernel contract just no longer holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PreconditionStatus {
    Satisfied { residual: f64 },
    Violated { residual: f64, tolerance: f64 },
}

impl PreconditionStatus {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, PreconditionStatus::Satisfied { .. })
    }

    pub fn residual(&self) -> f64 {
        match *self {
            PreconditionStatus::Satisfied { residual } | PreconditionStatus::Violated { residual, .. } => residual,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Completed {
    pub field: SpaceTimeField,
    pub status: PreconditionStatus,
}

/// `‖(-Δ + λ²∂tt) u‖ / (‖Δu‖ + λ²‖∂tt u‖)` over `region`. Residuals below
/// the rounding floor of the stencils count as zero.
pub fn relative_wave_residual(u: &SpaceTimeField, lambda: f64, method: DiffMethod, region: &Region) -> Result<f64> {
    let lap = u
        .slices()
        .par_iter()
        .map(|s| laplacian(s, method))
        .collect::<Result<Vec<_>>>()?;
    let lap = SpaceTimeField::new(lap, u.dt())?;
    let tt = SpaceTimeField::new(second_time_derivative(u)?, u.dt())?;
    let l2 = lambda * lambda;
    let res = tt.scale(Complex64::new(l2, 0.0)).sub(&lap);
    let num = res.norm_over(region);
    let den = lap.norm_over(region) + l2 * tt.norm_over(region);
    let h = u.grid().spacing();
    let floor = 64.0 * f64::EPSILON * u.norm_over(region) * (12.0 / (h * h) + 12.0 * l2 / (u.dt() * u.dt()));
    Ok(if num <= floor { 0.0 } else { num / den })
}

fn check_wave(u: &SpaceTimeField, cfg: &OperatorConfig, opts: &CompletionOptions) -> Result<PreconditionStatus> {
    let residual = relative_wave_residual(u, cfg.lambda(), opts.method, &opts.wave_region)?;
    Ok(if residual <= opts.wave_tolerance {
        PreconditionStatus::Satisfied { residual }
    } else {
        PreconditionStatus::Violated {
            residual,
            tolerance: opts.wave_tolerance,
        }
    })
}

/// Cumulative trapezoid `∫₀^{t_j} f ds` for every slice.
pub fn cumulative_integral(f: &[BiquatField], dt: f64) -> Vec<BiquatField> {
    let half = Complex64::new(0.5 * dt, 0.0);
    let mut out = Vec::with_capacity(f.len());
    let mut acc = f[0].scale(Complex64::new(0.0, 0.0));
    out.push(acc.clone());
    for pair in f.windows(2) {
        acc = acc.add(&pair[0].add(&pair[1]).scale(half));
        out.push(acc.clone());
    }
    out
}

fn check_mask(u: &SpaceTimeField, mask: &DomainMask) -> Result<()> {
    if u.grid() != mask.grid() {
        return Err(Error::Config("domain mask and field live on different grids".into()));
    }
    Ok(())
}

/// `T_Ω[rate0]`, skipping the quadrature when the rate vanishes.
fn initial_correction(rate0: &BiquatField, mask: &DomainMask, quadrature: Quadrature) -> Result<BiquatField> {
    if rate0.max_abs() == 0.0 {
        return Ok(BiquatField::zeros(*rate0.grid()));
    }
    teodorescu(rate0, mask, quadrature)
}

fn add_gradient(field: &mut SpaceTimeField, gauge: &GaugeSpec, scale: Complex64) -> Result<()> {
    if gauge.is_zero() {
        return Ok(());
    }
    let grid = *field.grid();
    let grad: Vec<Biquaternion> = (0..grid.len())
        .map(|idx| Biquaternion::real_vector(gauge.gradient(grid.point(idx))) * scale)
        .collect();
    let grad = BiquatField::from_values(grid, grad, field.domain())?;
    let slices = field.slices().iter().map(|s| s.add(&grad)).collect();
    *field = SpaceTimeField::new(slices, field.dt())?;
    Ok(())
}

/// The conjugate `v` of `u`, with `∂t u(·, 0)` taken by one-sided differences.
pub fn metaharmonic_conjugate(
    u: &SpaceTimeField,
    cfg: &OperatorConfig,
    gauge: &GaugeSpec,
    mask: &DomainMask,
    opts: &CompletionOptions,
) -> Result<Completed> {
    let rate0 = initial_rate(u)?;
    metaharmonic_conjugate_from_rate(u, &rate0, cfg, gauge, mask, opts)
}

/// As [`metaharmonic_conjugate`] with a caller-supplied `∂t u(·, 0)`.
pub fn metaharmonic_conjugate_from_rate(
    u: &SpaceTimeField,
    rate0: &BiquatField,
    cfg: &OperatorConfig,
    gauge: &GaugeSpec,
    mask: &DomainMask,
    opts: &CompletionOptions,
) -> Result<Completed> {
    check_mask(u, mask)?;
    let status = check_wave(u, cfg, opts)?;
    let lambda = cfg.lambda();
    let du = u
        .slices()
        .par_iter()
        .map(|s| apply_d(s, opts.method))
        .collect::<Result<Vec<_>>>()?;
    let integral = cumulative_integral(&du, u.dt());
    let v0 = initial_correction(rate0, mask, opts.quadrature)?.scale(Complex64::new(-lambda, 0.0));
    let inv = Complex64::new(1.0 / lambda, 0.0);
    let slices = integral.iter().map(|s| s.scale(inv).add(&v0)).collect();
    let mut field = SpaceTimeField::new(slices, u.dt())?;
    add_gradient(&mut field, gauge, Complex64::new(1.0, 0.0))?;
    Ok(Completed { field, status })
}

fn require_scalar(u0: &SpaceTimeField) -> Result<()> {
    let nonscalar = u0.slices().iter().any(|s| {
        s.values()
            .iter()
            .any(|v| v[1] != Complex64::ZERO || v[2] != Complex64::ZERO || v[3] != Complex64::ZERO)
    });
    if nonscalar {
        return Err(Error::Domain("conjugate operator needs a scalar field".into()));
    }
    Ok(())
}

/// `𝒰_λ[u0] = i ∫₀ᵗ ∇u0 ds - iλ² T_Ω[∂t u0](·, 0)`; purely vectorial.
pub fn conjugate_operator_u(
    u0: &SpaceTimeField,
    cfg: &OperatorConfig,
    mask: &DomainMask,
    opts: &CompletionOptions,
) -> Result<SpaceTimeField> {
    require_scalar(u0)?;
    let rate0 = initial_rate(u0)?;
    conjugate_operator_u_from_rate(u0, &rate0, cfg, mask, opts)
}

/// As [`conjugate_operator_u`] with a caller-supplied `∂t u0(·, 0)`.
pub fn conjugate_operator_u_from_rate(
    u0: &SpaceTimeField,
    rate0: &BiquatField,
    cfg: &OperatorConfig,
    mask: &DomainMask,
    opts: &CompletionOptions,
) -> Result<SpaceTimeField> {
    require_scalar(u0)?;
    check_mask(u0, mask)?;
    let grads = u0
        .slices()
        .par_iter()
        .map(|s| apply_d(s, opts.method))
        .collect::<Result<Vec<_>>>()?;
    let integral = cumulative_integral(&grads, u0.dt());
    let l2 = cfg.lambda() * cfg.lambda();
    let corr = initial_correction(rate0, mask, opts.quadrature)?.scale(Complex64::new(0.0, -l2));
    let i = Complex64::new(0.0, 1.0);
    let slices = integral.iter().map(|s| s.scale(i).add(&corr).vector_part()).collect();
    SpaceTimeField::new(slices, u0.dt())
}

/// `u0 ± (1/λ) 𝒰_λ[u0] + ∇h`.
pub fn complete_to_kernel(
    u0: &SpaceTimeField,
    cfg: &OperatorConfig,
    gauge: &GaugeSpec,
    mask: &DomainMask,
    opts: &CompletionOptions,
) -> Result<Completed> {
    require_scalar(u0)?;
    let rate0 = initial_rate(u0)?;
    complete_to_kernel_from_rate(u0, &rate0, cfg, gauge, mask, opts)
}

pub fn complete_to_kernel_from_rate(
    u0: &SpaceTimeField,
    rate0: &BiquatField,
    cfg: &OperatorConfig,
    gauge: &GaugeSpec,
    mask: &DomainMask,
    opts: &CompletionOptions,
) -> Result<Completed> {
    let status = check_wave(u0, cfg, opts)?;
    let op = conjugate_operator_u_from_rate(u0, rate0, cfg, mask, opts)?;
    let c = Complex64::new(cfg.sign.factor() / cfg.lambda(), 0.0);
    let mut field = u0.add(&op.scale(c));
    add_gradient(&mut field, gauge, Complex64::new(1.0, 0.0))?;
    Ok(Completed { field, status })
}
