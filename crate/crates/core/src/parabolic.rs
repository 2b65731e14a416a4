//! Parabolic Teodorescu transforms
//! `T_±,λ[w](x,t) = ∫₀ᵗ ∫ Φ±(x - y, t - s) w(y, s) dy ds`, realized per Fourier
//! mode with `Φ̂±(k, τ) = exp(∓2π τ k / λ)`.
//!
//! With this kernel `(D ± iλ∂t) T_±,λ[g] = ±iλ g`, so `T_±,λ[∓i w / λ]` is a
//! right inverse of `D ± iλ∂t`.
//!
//! The time integral is accumulated incrementally:
//! `S(k, t_{j+1}) = P(k) S(k, t_j) + local(k, j)` with `P(k) = Φ̂±(k, dt)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biquat::{exp_vector, Biquaternion, Quaternion};
use crate::dirac::{partials, time_derivative, DiffMethod, OperatorConfig, Sign};
use crate::error::{Error, Result};
use crate::grid::{BiquatField, Domain, SpaceTimeField, SpatialGrid};

/// Below this phase `a = ω dt` the interval weights use their Taylor series.
const SMALL_PHASE: f64 = 1e-2;

/// How the `s`-integral is discretized on each interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TimeQuadrature {
    /// Composite trapezoid on the full integrand.
    #[default]
    Trapezoid,
    /// Exact integration of the propagator against piecewise-linear `ŵ`.
    Exponential,
}

/// How the source is extended beyond the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Support {
    /// The source is one period of a periodic field.
    #[default]
    Periodic,
    /// The source vanishes outside the central sub-box and is extended by
    /// zero; checked on entry.
    ZeroExtended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TransformOptions {
    pub quadrature: TimeQuadrature,
    pub support: Support,
}

/// One-step propagators `exp(∓2π dt k / λ)` for every lattice mode.
#[derive(Debug, Clone)]
pub struct PropagatorCache {
    grid: SpatialGrid,
    cfg: OperatorConfig,
    dt: f64,
    steps: Vec<Quaternion>,
}

impl PropagatorCache {
    pub fn new(grid: SpatialGrid, cfg: OperatorConfig, dt: f64) -> Self {
        let c = -cfg.sign.factor() * 2.0 * PI * dt / cfg.lambda();
        let steps = (0..grid.len())
            .into_par_iter()
            .map(|idx| exp_vector(grid.derivative_k(grid.k_vec(idx)).map(|k| c * k)))
            .collect();
        Self { grid, cfg, dt, steps }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn config(&self) -> &OperatorConfig {
        &self.cfg
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Propagator of the mode stored at flat index `idx`.
    #[inline]
    pub fn step(&self, idx: usize) -> Quaternion {
        self.steps[idx]
    }

    pub fn steps(&self) -> &[Quaternion] {
        &self.steps
    }
}

/// `(I0, I1)` with `I0 = ∫₀^dt P(τ) dτ`, `I1 = ∫₀^dt τ P(τ) dτ`,
/// `P(τ) = cos(ωτ) + u sin(ωτ)`.
fn interval_weights(grid: &SpatialGrid, cfg: &OperatorConfig, dt: f64, idx: usize) -> (Quaternion, Quaternion) {
    let k = grid.derivative_k(grid.k_vec(idx));
    let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if kn == 0.0 {
        return (Quaternion::ONE.scale(dt), Quaternion::ONE.scale(0.5 * dt * dt));
    }
    let u = k.map(|c| -cfg.sign.factor() * c / kn);
    let a = 2.0 * PI * kn / cfg.lambda() * dt;
    let (s0, v0, s1, v1) = if a < SMALL_PHASE {
        let a2 = a * a;
        (
            1.0 - a2 / 6.0 + a2 * a2 / 120.0 - a2 * a2 * a2 / 5040.0,
            a / 2.0 - a * a2 / 24.0 + a * a2 * a2 / 720.0,
            0.5 - a2 / 8.0 + a2 * a2 / 144.0 - a2 * a2 * a2 / 5760.0,
            a / 3.0 - a * a2 / 30.0 + a * a2 * a2 / 840.0,
        )
    } else {
        let (sin, cos) = a.sin_cos();
        (
            sin / a,
            (1.0 - cos) / a,
            sin / a + (cos - 1.0) / (a * a),
            (sin - a * cos) / (a * a),
        )
    };
    let i0 = Quaternion::new(s0, v0 * u[0], v0 * u[1], v0 * u[2]).scale(dt);
    let i1 = Quaternion::new(s1, v1 * u[0], v1 * u[1], v1 * u[2]).scale(dt * dt);
    (i0, i1)
}

/// Rejects sources with support outside the central sub-box.
pub fn check_zero_extension(w: &SpaceTimeField) -> Result<()> {
    let grid = *w.grid();
    let scale = w.max_abs();
    for (j, slice) in w.slices().iter().enumerate() {
        for (idx, v) in slice.values().iter().enumerate() {
            if !grid.in_central_subbox(idx) && v.max_abs() > 1e-14 * scale {
                return Err(Error::Config(format!(
                    "source is nonzero outside the padded sub-box (node {:?}, slice {j}, |w| = {:.3e})",
                    grid.point(idx),
                    v.max_abs()
                )));
            }
        }
    }
    Ok(())
}

/// `T_±,λ[w]` with trapezoid quadrature and periodic support.
pub fn parabolic_teodorescu(w: &SpaceTimeField, cfg: &OperatorConfig) -> Result<SpaceTimeField> {
    parabolic_teodorescu_with(w, cfg, &TransformOptions::default())
}

pub fn parabolic_teodorescu_with(
    w: &SpaceTimeField,
    cfg: &OperatorConfig,
    opts: &TransformOptions,
) -> Result<SpaceTimeField> {
    if w.domain() != Domain::Physical {
        return Err(Error::State(
            "parabolic_teodorescu expects a physical-domain field".into(),
        ));
    }
    if opts.support == Support::ZeroExtended {
        check_zero_extension(w)?;
    }
    let grid = *w.grid();
    let dt = w.dt();
    let spec = w.dft_forward()?;
    let cache = PropagatorCache::new(grid, *cfg, dt);
    let weights: Option<Vec<(Quaternion, Quaternion)>> = match opts.quadrature {
        TimeQuadrature::Trapezoid => None,
        TimeQuadrature::Exponential => Some(
            (0..grid.len())
                .into_par_iter()
                .map(|idx| interval_weights(&grid, cfg, dt, idx))
                .collect(),
        ),
    };

    let half = 0.5 * dt;
    let mut out = Vec::with_capacity(w.nt());
    let mut acc = vec![Biquaternion::ZERO; grid.len()];
    out.push(BiquatField::zeros_in(grid, Domain::Spectral));
    for j in 0..w.nt() - 1 {
        let a = spec.slice(j).values();
        let b = spec.slice(j + 1).values();
        acc.par_iter_mut().enumerate().for_each(|(idx, s)| {
            let p = cache.step(idx);
            *s = match &weights {
                None => p * (*s + a[idx] * half) + b[idx] * half,
                Some(wts) => {
                    let (i0, i1) = wts[idx];
                    p * *s + i0 * b[idx] - i1.scale(1.0 / dt) * (b[idx] - a[idx])
                }
            };
        });
        out.push(BiquatField::from_values(grid, acc.clone(), Domain::Spectral)?);
    }
    SpaceTimeField::new(out, dt)?.dft_inverse()
}

/// `T_±,λ[∓i w / λ]`, so that `(D ± iλ∂t)` of the result reproduces `w`.
pub fn right_inverse_apply(w: &SpaceTimeField, cfg: &OperatorConfig) -> Result<SpaceTimeField> {
    right_inverse_apply_with(w, cfg, &TransformOptions::default())
}

pub fn right_inverse_apply_with(
    w: &SpaceTimeField,
    cfg: &OperatorConfig,
    opts: &TransformOptions,
) -> Result<SpaceTimeField> {
    let c = Complex64::new(0.0, -cfg.sign.factor() / cfg.lambda());
    parabolic_teodorescu_with(&w.scale(c), cfg, opts)
}

/// `div w_vec ± iλ ∂t w0` as a complex scalar field (stored in component 0).
pub fn compatibility_residual(w: &SpaceTimeField, cfg: &OperatorConfig, method: DiffMethod) -> Result<SpaceTimeField> {
    let dt0 = time_derivative(&w.scalar_part())?;
    let coef = Complex64::new(0.0, cfg.sign.factor() * cfg.lambda());
    let slices = w
        .slices()
        .par_iter()
        .zip(&dt0)
        .map(|(s, d0)| {
            let [p1, p2, p3] = partials(s, method)?;
            let values = (0..s.grid().len())
                .map(|idx| {
                    let div = p1.values()[idx][1] + p2.values()[idx][2] + p3.values()[idx][3];
                    Biquaternion::from_scalar(div + coef * d0.values()[idx][0])
                })
                .collect();
            BiquatField::from_values(*s.grid(), values, Domain::Physical)
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceTimeField::new(slices, w.dt())
}

/// Closed-form `T_±,1` of the time-constant mode `e^{2πi⟨x,k0⟩}`:
/// `e^{2πi⟨x,k0⟩} [sin θ ∓ k̂0 (1 - cos θ)] / (2π|k0|)`, `θ = 2π|k0| t`.
pub fn single_mode_transform(x: [f64; 3], t: f64, k0: [f64; 3], sign: Sign) -> Biquaternion {
    let kn = (k0[0] * k0[0] + k0[1] * k0[1] + k0[2] * k0[2]).sqrt();
    let phase = Complex64::from_polar(1.0, 2.0 * PI * (x[0] * k0[0] + x[1] * k0[1] + x[2] * k0[2]));
    if kn == 0.0 {
        return Biquaternion::from_scalar(phase * t);
    }
    let theta = 2.0 * PI * kn * t;
    let c = -sign.factor() * (1.0 - theta.cos());
    let q = Quaternion::new(theta.sin(), c * k0[0] / kn, c * k0[1] / kn, c * k0[2] / kn).scale(1.0 / (2.0 * PI * kn));
    Biquaternion::from(q).scale(phase)
}
