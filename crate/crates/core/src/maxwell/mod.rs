//! Time-dependent Maxwell equations through the parabolic Dirac operator
//! `D - iλ∂t`.
//!
//! Gaussian units (`λ = 1`): `φ = E + iB` satisfies
//! `(D - i∂t) φ = -4π(ρ - i j)`.
//!
//! Homogeneous isotropic medium in SI units (`λ = √(εμ)`):
//! `φ = √ε E + i B/√μ` satisfies `(D - iλ∂t) φ = -(ρ/√ε - i√μ j)`.
//! In both cases the sources must obey `div j + ∂tρ = 0`.
//!
//! A solution is built as `φ_raw = T_-,λ[i w / λ]`, which solves the
//! biquaternionic equation but carries a scalar part `u0`. Since `u0` solves
//! the wave equation, `u0 - (1/λ) 𝒰_λ[u0]` lies in the kernel of `D - iλ∂t`,
//! and subtracting it leaves the purely vectorial `Vec φ_raw + (1/λ) 𝒰_λ[u0]`.

pub mod sources;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biquat::Biquaternion;
use crate::completion::{conjugate_operator_u_from_rate, CompletionOptions};
use crate::dirac::{div_grad_curl, time_derivative, DiffMethod, OperatorConfig, Sign};
use crate::error::{Error, Result};
use crate::gauge::GaugeSpec;
use crate::grid::{BiquatField, Region, SpaceTimeField};
use crate::parabolic::{right_inverse_apply_with, Support, TimeQuadrature, TransformOptions};
use crate::teodorescu::{DomainMask, Quadrature};

/// Name used when a source fails the continuity check.
pub const CONSERVATION_LAW: &str = "charge conservation (continuity equation)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Gaussian,
    Si,
}

/// Units plus permittivity and permeability (both 1 in Gaussian units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    units: Units,
    eps: f64,
    mu: f64,
}

impl Medium {
    pub fn gaussian() -> Self {
        Self {
            units: Units::Gaussian,
            eps: 1.0,
            mu: 1.0,
        }
    }

    pub fn si(eps: f64, mu: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Config(format!("medium.eps must be positive (got {eps})")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Config(format!("medium.mu must be positive (got {mu})")));
        }
        Ok(Self {
            units: Units::Si,
            eps,
            mu,
        })
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `√(εμ)`, the reciprocal wave speed.
    pub fn lambda(&self) -> f64 {
        (self.eps * self.mu).sqrt()
    }

    pub fn operator(&self) -> OperatorConfig {
        OperatorConfig::new(Sign::Minus, self.lambda()).expect("positive medium")
    }

    /// Weights `(a, b)` of the biquaternion `a E + i b B`.
    fn field_weights(&self) -> (f64, f64) {
        match self.units {
            Units::Gaussian => (1.0, 1.0),
            Units::Si => (self.eps.sqrt(), 1.0 / self.mu.sqrt()),
        }
    }

    /// Weights `(a, b)` of the right-hand side `-(a ρ - i b j)`.
    fn source_weights(&self) -> (f64, f64) {
        match self.units {
            Units::Gaussian => (4.0 * PI, 4.0 * PI),
            Units::Si => (1.0 / self.eps.sqrt(), self.mu.sqrt()),
        }
    }
}

/// Real charge density `ρ` (scalar) and current density `j` (vector).
#[derive(Debug, Clone)]
pub struct SourceSpec {
    rho: SpaceTimeField,
    j: SpaceTimeField,
}

impl SourceSpec {
    pub fn new(rho: SpaceTimeField, j: SpaceTimeField) -> Result<Self> {
        if rho.grid() != j.grid() || rho.nt() != j.nt() || rho.dt() != j.dt() {
            return Err(Error::Config("rho and j must share grid and time sampling".into()));
        }
        let real_scalar = |v: &Biquaternion| v.0.iter().skip(1).all(|c| *c == Complex64::ZERO) && v[0].im == 0.0;
        let real_vector = |v: &Biquaternion| v[0] == Complex64::ZERO && v.0.iter().all(|c| c.im == 0.0);
        if !rho.slices().iter().all(|s| s.values().iter().all(real_scalar)) {
            return Err(Error::Config("charge density must be a real scalar field".into()));
        }
        if !j.slices().iter().all(|s| s.values().iter().all(real_vector)) {
            return Err(Error::Config("current density must be a real vector field".into()));
        }
        Ok(Self { rho, j })
    }

    pub fn zeros(grid: crate::grid::SpatialGrid, nt: usize, dt: f64) -> Result<Self> {
        Self::new(
            SpaceTimeField::zeros(grid, nt, dt)?,
            SpaceTimeField::zeros(grid, nt, dt)?,
        )
    }

    pub fn rho(&self) -> &SpaceTimeField {
        &self.rho
    }

    pub fn j(&self) -> &SpaceTimeField {
        &self.j
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(self.rho.add(&other.rho), self.j.add(&other.j))
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        let c = Complex64::new(s, 0.0);
        Self::new(self.rho.scale(c), self.j.scale(c))
    }

    /// Right-hand side `w` of `(D - iλ∂t) φ = w` for `medium`.
    pub fn biquaternion_rhs(&self, medium: &Medium) -> SpaceTimeField {
        let (a, b) = medium.source_weights();
        self.rho.zip_map(&self.j, |r, j| r * (-a) + j * Complex64::new(0.0, b))
    }
}

/// Electric and magnetic fields over space-time.
#[derive(Debug, Clone)]
pub struct EMSolution {
    pub e: SpaceTimeField,
    pub b: SpaceTimeField,
    pub medium: Medium,
}

impl EMSolution {
    pub fn new(e: SpaceTimeField, b: SpaceTimeField, medium: Medium) -> Result<Self> {
        if e.grid() != b.grid() || e.nt() != b.nt() || e.dt() != b.dt() {
            return Err(Error::Config("E and B must share grid and time sampling".into()));
        }
        Ok(Self { e, b, medium })
    }

    /// `E + iB` (Gaussian) or `√ε E + i B/√μ` (SI).
    pub fn to_biquaternion(&self) -> SpaceTimeField {
        let (a, b) = self.medium.field_weights();
        self.e.zip_map(&self.b, |e, bb| e * a + bb * Complex64::new(0.0, b))
    }

    /// Inverse of [`EMSolution::to_biquaternion`] for a purely vectorial `φ`.
    pub fn from_biquaternion(phi: &SpaceTimeField, medium: Medium) -> Result<Self> {
        let (a, b) = medium.field_weights();
        let e = phi.map(|v| Biquaternion::from(v.re()).vec_part() * (1.0 / a));
        let bf = phi.map(|v| Biquaternion::from(v.im()).vec_part() * (1.0 / b));
        Self::new(e, bf, medium)
    }
}

/// Continuity-equation imbalance `div j + ∂tρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationCheck {
    pub absolute: f64,
    /// `absolute / (‖div j‖ + ‖∂tρ‖)`, zero for an exactly balanced source.
    pub relative: f64,
}

pub fn validate_charge_conservation(src: &SourceSpec, method: DiffMethod) -> Result<ConservationCheck> {
    let drho = time_derivative(&src.rho)?;
    let div: Vec<BiquatField> = src
        .j
        .slices()
        .par_iter()
        .map(|s| div_grad_curl(s, method).map(|d| d.div))
        .collect::<Result<_>>()?;
    let div = SpaceTimeField::new(div, src.j.dt())?;
    let drho = SpaceTimeField::new(drho, src.rho.dt())?;
    let all = Region::all();
    let absolute = div.add(&drho).norm_over(&all);
    let scale = div.norm_over(&all) + drho.norm_over(&all);
    let relative = if absolute == 0.0 { 0.0 } else { absolute / scale };
    Ok(ConservationCheck { absolute, relative })
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: DiffMethod,
    pub time_quadrature: TimeQuadrature,
    pub support: Support,
    /// Static correction quadrature for the zero-extended support; the
    /// periodic support always uses the periodic inverse.
    pub static_quadrature: Quadrature,
    /// Largest accepted relative continuity imbalance.
    pub conservation_tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            method: DiffMethod::Spectral,
            time_quadrature: TimeQuadrature::Trapezoid,
            support: Support::Periodic,
            static_quadrature: Quadrature::Fft,
            conservation_tolerance: 1e-6,
        }
    }
}

/// Gaussian-unit solve.
pub fn solve_gaussian(src: &SourceSpec, h1: &GaugeSpec, h2: &GaugeSpec, opts: &SolveOptions) -> Result<EMSolution> {
    solve(src, Medium::gaussian(), h1, h2, opts)
}

/// SI solve in a medium with permittivity `eps` and permeability `mu`.
pub fn solve_si(
    src: &SourceSpec,
    eps: f64,
    mu: f64,
    h1: &GaugeSpec,
    h2: &GaugeSpec,
    opts: &SolveOptions,
) -> Result<EMSolution> {
    solve(src, Medium::si(eps, mu)?, h1, h2, opts)
}

pub fn solve(
    src: &SourceSpec,
    medium: Medium,
    h1: &GaugeSpec,
    h2: &GaugeSpec,
    opts: &SolveOptions,
) -> Result<EMSolution> {
    let check = validate_charge_conservation(src, opts.method)?;
    if check.relative > opts.conservation_tolerance {
        return Err(Error::Precondition {
            law: CONSERVATION_LAW,
            measured: check.relative,
            tolerance: opts.conservation_tolerance,
        });
    }
    let phi = vector_potential(src, &medium, opts)?;
    let mut sol = EMSolution::from_biquaternion(&phi, medium)?;
    add_gauge(&mut sol.e, h1)?;
    add_gauge(&mut sol.b, h2)?;
    Ok(sol)
}

/// The purely vectorial `φ` solving `(D - iλ∂t) φ = w`, before gauge terms.
pub fn vector_potential(src: &SourceSpec, medium: &Medium, opts: &SolveOptions) -> Result<SpaceTimeField> {
    let cfg = medium.operator();
    let w = src.biquaternion_rhs(medium);
    let transform = TransformOptions {
        quadrature: opts.time_quadrature,
        support: opts.support,
    };
    let raw = right_inverse_apply_with(&w, &cfg, &transform)?;
    let u0 = raw.scalar_part();
    if u0.max_abs() == 0.0 {
        return Ok(raw);
    }
    // ∂t T[g](·, 0) = g(·, 0), so the initial rate of u0 is exact
    let input_scale = Complex64::new(0.0, -cfg.sign.factor() / cfg.lambda());
    let rate0 = w.slice(0).scalar_part().scale(input_scale);
    let grid = *w.grid();
    let (mask, quadrature) = match opts.support {
        Support::Periodic => (DomainMask::whole_box(grid), Quadrature::Periodic),
        Support::ZeroExtended => (
            DomainMask::new(grid, (0..grid.len()).map(|idx| grid.in_central_subbox(idx)).collect())?,
            opts.static_quadrature,
        ),
    };
    let copts = CompletionOptions {
        method: opts.method,
        quadrature,
        ..CompletionOptions::default()
    };
    let op = conjugate_operator_u_from_rate(&u0, &rate0, &cfg, &mask, &copts)?;
    Ok(raw
        .vector_part()
        .add(&op.scale(Complex64::new(1.0 / cfg.lambda(), 0.0))))
}

fn add_gauge(field: &mut SpaceTimeField, gauge: &GaugeSpec) -> Result<()> {
    if gauge.is_zero() {
        return Ok(());
    }
    let grid = *field.grid();
    let grad = BiquatField::from_fn(grid, |x| Biquaternion::real_vector(gauge.gradient(x)));
    let slices = field.slices().iter().map(|s| s.add(&grad)).collect();
    *field = SpaceTimeField::new(slices, field.dt())?;
    Ok(())
}

pub const EQUATION_NAMES: [&str; 4] = ["gauss_electric", "gauss_magnetic", "faraday", "ampere_maxwell"];

/// Imbalances of the four field equations.
///
/// Gaussian: `div E - 4πρ`, `div B`, `curl E + ∂tB`, `curl B - 4πj - ∂tE`.
/// SI: `div E - ρ/ε`, `div B`, `curl E + ∂tB`, `curl B - μ(j + ε∂tE)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResidual {
    pub absolute: [f64; 4],
    pub relative: [f64; 4],
    /// Common normalization: the largest sum of term norms over the equations.
    pub scale: f64,
}

impl MaxwellResidual {
    pub fn max_relative(&self) -> f64 {
        self.relative.into_iter().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ResidualOptions {
    pub method: DiffMethod,
    pub region: Region,
}

impl ResidualOptions {
    /// Spectral derivatives, interior time slices.
    pub fn interior() -> Self {
        Self {
            method: DiffMethod::Spectral,
            region: Region::interior_slices(),
        }
    }
}

struct Terms {
    div_e: SpaceTimeField,
    div_b: SpaceTimeField,
    curl_e: SpaceTimeField,
    curl_b: SpaceTimeField,
    dt_e: SpaceTimeField,
    dt_b: SpaceTimeField,
}

fn terms(sol: &EMSolution, method: DiffMethod) -> Result<Terms> {
    let split = |f: &SpaceTimeField| -> Result<(SpaceTimeField, SpaceTimeField)> {
        let parts = f
            .slices()
            .par_iter()
            .map(|s| div_grad_curl(s, method))
            .collect::<Result<Vec<_>>>()?;
        let (div, curl): (Vec<_>, Vec<_>) = parts.into_iter().map(|p| (p.div, p.curl)).unzip();
        Ok((SpaceTimeField::new(div, f.dt())?, SpaceTimeField::new(curl, f.dt())?))
    };
    let (div_e, curl_e) = split(&sol.e)?;
    let (div_b, curl_b) = split(&sol.b)?;
    Ok(Terms {
        div_e,
        div_b,
        curl_e,
        curl_b,
        dt_e: SpaceTimeField::new(time_derivative(&sol.e)?, sol.e.dt())?,
        dt_b: SpaceTimeField::new(time_derivative(&sol.b)?, sol.b.dt())?,
    })
}

fn check_compatible(sol: &EMSolution, src: &SourceSpec) -> Result<()> {
    if sol.e.grid() != src.rho.grid() || sol.e.nt() != src.rho.nt() || sol.e.dt() != src.rho.dt() {
        return Err(Error::Config("solution and source use different samplings".into()));
    }
    Ok(())
}

pub fn maxwell_residual(sol: &EMSolution, src: &SourceSpec, opts: &ResidualOptions) -> Result<MaxwellResidual> {
    check_compatible(sol, src)?;
    let t = terms(sol, opts.method)?;
    let m = &sol.medium;
    let re = |x: f64| Complex64::new(x, 0.0);
    let (rho_w, j_w, dte_w) = match m.units {
        Units::Gaussian => (4.0 * PI, 4.0 * PI, 1.0),
        Units::Si => (1.0 / m.eps, m.mu, m.mu * m.eps),
    };
    let rho = src.rho.scale(re(rho_w));
    let j = src.j.scale(re(j_w));
    let dte = t.dt_e.scale(re(dte_w));
    let r = &opts.region;
    let eqs: [(SpaceTimeField, f64); 4] = [
        (t.div_e.sub(&rho), t.div_e.norm_over(r) + rho.norm_over(r)),
        (t.div_b.clone(), t.div_b.norm_over(r)),
        (t.curl_e.add(&t.dt_b), t.curl_e.norm_over(r) + t.dt_b.norm_over(r)),
        (
            t.curl_b.sub(&j).sub(&dte),
            t.curl_b.norm_over(r) + j.norm_over(r) + dte.norm_over(r),
        ),
    ];
    let absolute = std::array::from_fn(|k| eqs[k].0.norm_over(r));
    let scale = eqs.iter().map(|e| e.1).fold(0.0, f64::max);
    let relative = absolute.map(|a| if a == 0.0 { 0.0 } else { a / scale });
    Ok(MaxwellResidual {
        absolute,
        relative,
        scale,
    })
}

/// Norms of `(D - iλ∂t) φ - w`, split as
/// `[Re Sc, Im Sc, Re Vec, Im Vec]`.
pub fn biquaternion_residual(sol: &EMSolution, src: &SourceSpec, opts: &ResidualOptions) -> Result<[f64; 4]> {
    check_compatible(sol, src)?;
    let phi = sol.to_biquaternion();
    let lhs = crate::dirac::apply_parabolic(&phi, &sol.medium.operator(), opts.method)?;
    let res = lhs.sub(&src.biquaternion_rhs(&sol.medium));
    let part = |f: fn(&Biquaternion) -> Biquaternion| res.map(|v| f(&v)).norm_over(&opts.region);
    Ok([
        part(|v| Biquaternion::from_scalar(Complex64::new(v[0].re, 0.0))),
        part(|v| Biquaternion::from_scalar(Complex64::new(v[0].im, 0.0))),
        part(|v| Biquaternion::from(v.re()).vec_part()),
        part(|v| Biquaternion::from(v.im()).vec_part()),
    ])
}

/// Factors `c` with `biquaternion_residual[k] = c[k] · maxwell_residual.absolute[k]`.
pub fn equivalence_constants(medium: &Medium) -> [f64; 4] {
    match medium.units {
        Units::Gaussian => [1.0; 4],
        Units::Si => {
            let (se, sm) = (medium.eps.sqrt(), medium.mu.sqrt());
            [se, 1.0 / sm, se, 1.0 / sm]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SpatialGrid;

    #[test]
    fn medium_validation() {
        assert!(Medium::si(-1.0, 1.0).is_err());
        assert!(Medium::si(1.0, 0.0).is_err());
        let m = Medium::si(4.0, 1.0).unwrap();
        assert_eq!(m.lambda(), 2.0);
        assert_eq!(Medium::gaussian().lambda(), 1.0);
    }

    #[test]
    fn source_must_be_real() {
        let g = SpatialGrid::new(4, 1.0).unwrap();
        let z = SpaceTimeField::zeros(g, 3, 0.1).unwrap();
        let bad =
            SpaceTimeField::from_fn(g, 3, 0.1, |_, _| Biquaternion::from_scalar(Complex64::new(0.0, 1.0))).unwrap();
        assert!(SourceSpec::new(bad.clone(), z.clone()).is_err());
        assert!(SourceSpec::new(z, bad).is_err());
    }

    #[test]
    fn zero_source_gives_zero_fields() {
        let g = SpatialGrid::new(8, 2.0).unwrap();
        let src = SourceSpec::zeros(g, 4, 0.01).unwrap();
        let sol = solve_gaussian(&src, &GaugeSpec::Zero, &GaugeSpec::Zero, &SolveOptions::default()).unwrap();
        assert_eq!(sol.e.max_abs(), 0.0);
        assert_eq!(sol.b.max_abs(), 0.0);
        assert_eq!(
            validate_charge_conservation(&src, DiffMethod::Spectral)
                .unwrap()
                .absolute,
            0.0
        );
    }

    #[test]
    fn biquaternion_roundtrip_si() {
        let g = SpatialGrid::new(4, 1.0).unwrap();
        let e = SpaceTimeField::from_fn(g, 3, 0.1, |x, t| Biquaternion::real_vector([x[0], t, 1.0])).unwrap();
        let b = SpaceTimeField::from_fn(g, 3, 0.1, |x, _| Biquaternion::real_vector([0.5, x[2], -x[1]])).unwrap();
        let m = Medium::si(4.0, 9.0).unwrap();
        let sol = EMSolution::new(e.clone(), b.clone(), m).unwrap();
        let phi = sol.to_biquaternion();
        assert_eq!(phi.slice(1).values()[3][1].re, 2.0 * e.slice(1).values()[3][1].re);
        let back = EMSolution::from_biquaternion(&phi, m).unwrap();
        assert!(back.e.sub(&e).max_abs() < 1e-15);
        assert!(back.b.sub(&b).max_abs() < 1e-15);
    }
}
