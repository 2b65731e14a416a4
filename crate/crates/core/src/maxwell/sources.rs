//! Constructed sources and exact fields used by the demos and the acceptance
//! harness. All are single lattice modes, so spectral derivatives are exact.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{EMSolution, Medium, SourceSpec};
use crate::biquat::Biquaternion;
use crate::error::{Error, Result};
use crate::grid::{SpaceTimeField, SpatialGrid};

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scalar(x: f64) -> Biquaternion {
    Biquaternion::from_scalar(Complex64::new(x, 0.0))
}

/// Wave vector `m / L` of an integer lattice mode, rejecting modes outside
/// the resolved band `|m_i| < n/2`.
pub fn lattice_k(grid: &SpatialGrid, mode: [i64; 3]) -> Result<[f64; 3]> {
    let half = (grid.n() / 2) as i64;
    if mode.iter().any(|m| m.abs() >= half) {
        return Err(Error::Config(format!(
            "mode {mode:?} is not resolved on an n = {} grid",
            grid.n()
        )));
    }
    if mode == [0, 0, 0] {
        return Err(Error::Config("the zero mode carries no wave vector".into()));
    }
    Ok(mode.map(|m| m as f64 / grid.length()))
}

fn unit_polarization(k: [f64; 3], p: [f64; 3]) -> Result<[f64; 3]> {
    let pn = dot(p, p).sqrt();
    if pn == 0.0 || dot(k, p).abs() > 1e-12 * pn * dot(k, k).sqrt() {
        return Err(Error::Config(format!(
            "polarization {p:?} must be nonzero and orthogonal to k = {k:?}"
        )));
    }
    Ok(p.map(|c| c / pn))
}

/// `ρ = 0`, `j = A p cos(2π⟨k, x⟩) sin(2π ν t)` with `p ⊥ k`: divergence free.
pub fn solenoidal_mode(
    grid: SpatialGrid,
    nt: usize,
    dt: f64,
    mode: [i64; 3],
    polarization: [f64; 3],
    amplitude: f64,
    frequency: f64,
) -> Result<SourceSpec> {
    let k = lattice_k(&grid, mode)?;
    let p = unit_polarization(k, polarization)?;
    let rho = SpaceTimeField::zeros(grid, nt, dt)?;
    let j = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        let a = amplitude * (2.0 * PI * dot(k, x)).cos() * (2.0 * PI * frequency * t).sin();
        Biquaternion::real_vector(p.map(|c| a * c))
    })?;
    SourceSpec::new(rho, j)
}

/// `ρ = 0`, `j = A p cos(2π(⟨k, x⟩ - c|k| t))` with `p ⊥ k` and `c = 1/λ`:
/// a current travelling with the medium's wave speed.
pub fn plane_wave_current(
    grid: SpatialGrid,
    nt: usize,
    dt: f64,
    mode: [i64; 3],
    polarization: [f64; 3],
    amplitude: f64,
    medium: &Medium,
) -> Result<SourceSpec> {
    let k = lattice_k(&grid, mode)?;
    let p = unit_polarization(k, polarization)?;
    let omega = 2.0 * PI * dot(k, k).sqrt() / medium.lambda();
    let rho = SpaceTimeField::zeros(grid, nt, dt)?;
    let j = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        let a = amplitude * (2.0 * PI * dot(k, x) - omega * t).cos();
        Biquaternion::real_vector(p.map(|c| a * c))
    })?;
    SourceSpec::new(rho, j)
}

/// `ρ = t g`, `j = -∇Δ⁻¹ g` with `g = A cos(2π⟨k, x⟩)`, so `div j + ∂tρ = 0`.
pub fn charging(grid: SpatialGrid, nt: usize, dt: f64, mode: [i64; 3], amplitude: f64) -> Result<SourceSpec> {
    let k = lattice_k(&grid, mode)?;
    let k2 = dot(k, k);
    let rho = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        scalar(amplitude * t * (2.0 * PI * dot(k, x)).cos())
    })?;
    let j = SpaceTimeField::from_fn(grid, nt, dt, |x, _| {
        let s = -amplitude * (2.0 * PI * dot(k, x)).sin() / (2.0 * PI * k2);
        Biquaternion::real_vector(k.map(|c| s * c))
    })?;
    SourceSpec::new(rho, j)
}

/// `ρ = t g`, `j = 0`: violates charge conservation by `∂tρ = g`.
pub fn charge_violating(grid: SpatialGrid, nt: usize, dt: f64, mode: [i64; 3], amplitude: f64) -> Result<SourceSpec> {
    let k = lattice_k(&grid, mode)?;
    let rho = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        scalar(amplitude * t * (2.0 * PI * dot(k, x)).cos())
    })?;
    let j = SpaceTimeField::zeros(grid, nt, dt)?;
    SourceSpec::new(rho, j)
}

/// Source-free travelling wave `E = A p cos(2π(⟨k, x⟩ - c|k| t))`,
/// `B = λ k̂ × E`, solving the homogeneous equations of `medium`.
pub fn vacuum_plane_wave(
    grid: SpatialGrid,
    nt: usize,
    dt: f64,
    mode: [i64; 3],
    polarization: [f64; 3],
    amplitude: f64,
    medium: Medium,
) -> Result<EMSolution> {
    let k = lattice_k(&grid, mode)?;
    let p = unit_polarization(k, polarization)?;
    let kn = dot(k, k).sqrt();
    let lambda = medium.lambda();
    let omega = 2.0 * PI * kn / lambda;
    let bdir = cross(k.map(|c| c / kn), p).map(|c| lambda * c);
    let phase = |x: [f64; 3], t: f64| amplitude * (2.0 * PI * dot(k, x) - omega * t).cos();
    let e = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        Biquaternion::real_vector(p.map(|c| c * phase(x, t)))
    })?;
    let b = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        Biquaternion::real_vector(bdir.map(|c| c * phase(x, t)))
    })?;
    EMSolution::new(e, b, medium)
}
