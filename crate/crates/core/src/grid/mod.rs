//! Periodic sampling grids, biquaternion fields and their Fourier transforms.
//!
//! The box `[-L/2, L/2)^3` is sampled with `n` points per axis and treated as a
//! torus. Transforms carry continuum weights: the forward transform is the
//! Riemann sum `h^3 Σ exp(-2πi<k,x>) f(x)` evaluated on the lattice
//! `k = m/L`, `m ∈ [-n/2, n/2)`, and the inverse carries the mode weight
//! `1/L^3`. Spectral values therefore approximate the continuum transform of a
//! field supported in the box.
//!
//! Spectral data are stored in standard DFT order; callers get physical
//! wavenumbers through [`SpatialGrid::k_vec`] and never see the layout.

pub(crate) mod fft;
pub mod io;
mod region;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biquat::Biquaternion;
use crate::error::{Error, Result};

pub use region::{Region, SmoothWindow};

use fft::{fft3, Direction};

/// Uniform periodic grid with `n` points per axis on a box of edge `length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    n: usize,
    length: f64,
}

impl SpatialGrid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Config(format!("grid.n must be even, ≥4 (got {n})")));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::Config(format!(
                "grid.L must be positive and finite (got {length})"
            )));
        }
        Ok(Self { n, length })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    #[inline]
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    /// Number of nodes, `n^3`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn index(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n + i[1]) * self.n + i[2]
    }

    #[inline]
    pub fn unflatten(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    /// Coordinate of index `i` along one axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -0.5 * self.length + i as f64 * self.spacing()
    }

    #[inline]
    pub fn point(&self, idx: usize) -> [f64; 3] {
        self.unflatten(idx).map(|i| self.coord(i))
    }

    pub fn axis_coords(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.coord(i)).collect()
    }

    /// Signed mode number for storage index `q`.
    #[inline]
    pub fn mode(&self, q: usize) -> i64 {
        let n = self.n as i64;
        let q = q as i64;
        if q < n / 2 {
            q
        } else {
            q - n
        }
    }

    /// Storage index of signed mode `m` (taken modulo `n`).
    #[inline]
    pub fn mode_index(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    /// Wavenumber `m/L` at storage index `q`.
    #[inline]
    pub fn wavenumber(&self, q: usize) -> f64 {
        self.mode(q) as f64 / self.length
    }

    /// Frequency lattice along one axis in ascending order.
    pub fn frequency_lattice(&self) -> Vec<f64> {
        let half = (self.n / 2) as i64;
        (-half..half).map(|m| m as f64 / self.length).collect()
    }

    /// Physical wave vector of the mode stored at flat index `idx`.
    #[inline]
    pub fn k_vec(&self, idx: usize) -> [f64; 3] {
        self.unflatten(idx).map(|q| self.wavenumber(q))
    }

    /// Wave vector used by first-derivative symbols: the Nyquist component,
    /// whose sine derivative vanishes on the grid, is set to zero so that
    /// odd derivatives map real fields to real fields.
    #[inline]
    pub fn derivative_k(&self, k: [f64; 3]) -> [f64; 3] {
        let nyquist = self.wavenumber(self.n / 2);
        k.map(|c| if c == nyquist { 0.0 } else { c })
    }

    /// True if any component of the mode at `idx` sits on the Nyquist plane.
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> bool {
        self.unflatten(idx).contains(&(self.n / 2))
    }

    /// Node lies in the central sub-box of edge `L/2` (closed on the low side,
    /// open on the high side, so exactly `n/2` nodes per axis).
    #[inline]
    pub fn in_central_subbox(&self, idx: usize) -> bool {
        let (lo, hi) = (self.n / 4, self.n / 4 + self.n / 2);
        self.unflatten(idx).iter().all(|&i| i >= lo && i < hi)
    }
}

/// Representation a field is stored in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Physical,
    Spectral,
}

impl Domain {
    pub(crate) fn tag(self) -> u8 {
        match self {
            Domain::Physical => 0,
            Domain::Spectral => 1,
        }
    }

    pub(crate) fn from_tag(t: u8) -> Result<Self> {
        match t {
            0 => Ok(Domain::Physical),
            1 => Ok(Domain::Spectral),
            other => Err(Error::Parse(format!("unknown domain tag {other}"))),
        }
    }
}

/// Biquaternion samples on every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BiquatField {
    grid: SpatialGrid,
    values: Vec<Biquaternion>,
    domain: Domain,
}

impl BiquatField {
    pub fn zeros(grid: SpatialGrid) -> Self {
        Self::zeros_in(grid, Domain::Physical)
    }

    pub fn zeros_in(grid: SpatialGrid, domain: Domain) -> Self {
        Self {
            grid,
            values: vec![Biquaternion::ZERO; grid.len()],
            domain,
        }
    }

    pub fn constant(grid: SpatialGrid, value: Biquaternion) -> Self {
        Self {
            grid,
            values: vec![value; grid.len()],
            domain: Domain::Physical,
        }
    }

    /// Physical field sampled from `f(x)`.
    pub fn from_fn(grid: SpatialGrid, f: impl Fn([f64; 3]) -> Biquaternion) -> Self {
        let values = (0..grid.len()).map(|idx| f(grid.point(idx))).collect();
        Self {
            grid,
            values,
            domain: Domain::Physical,
        }
    }

    pub fn from_values(grid: SpatialGrid, values: Vec<Biquaternion>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Size(format!(
                "field has {} values, grid needs {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values, domain })
    }

    #[inline]
    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    #[inline]
    pub fn domain(&self) -> Domain {
        self.domain
    }

    #[inline]
    pub fn values(&self) -> &[Biquaternion] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Biquaternion] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Biquaternion> {
        self.values
    }

    #[inline]
    pub fn at(&self, i: [usize; 3]) -> Biquaternion {
        self.values[self.grid.index(i)]
    }

    pub(crate) fn expect_domain(&self, domain: Domain, op: &str) -> Result<()> {
        if self.domain != domain {
            return Err(Error::State(format!(
                "{op} requires a {domain:?} field, got {:?}",
                self.domain
            )));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        assert_eq!(self.domain, other.domain, "fields are in different domains");
    }

    /// Continuum-weighted forward transform, component by component.
    pub fn dft_forward(&self) -> Result<Self> {
        self.expect_domain(Domain::Physical, "dft_forward")?;
        let weight = self.grid.cell_volume();
        Ok(Self {
            grid: self.grid,
            values: transform(&self.grid, &self.values, Direction::Forward, weight),
            domain: Domain::Spectral,
        })
    }

    /// Inverse of [`dft_forward`](Self::dft_forward).
    pub fn dft_inverse(&self) -> Result<Self> {
        self.expect_domain(Domain::Spectral, "dft_inverse")?;
        let weight = 1.0 / self.grid.length.powi(3);
        Ok(Self {
            grid: self.grid,
            values: transform(&self.grid, &self.values, Direction::Inverse, weight),
            domain: Domain::Physical,
        })
    }

    /// Replaces each spectral coefficient by `f(k, value)`.
    pub fn map_modes(&self, f: impl Fn([f64; 3], Biquaternion) -> Biquaternion) -> Result<Self> {
        self.expect_domain(Domain::Spectral, "map_modes")?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, &v)| f(self.grid.k_vec(idx), v))
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
            domain: Domain::Spectral,
        })
    }

    pub fn map(&self, f: impl Fn(Biquaternion) -> Biquaternion) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            domain: self.domain,
        }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(Biquaternion, Biquaternion) -> Biquaternion) -> Self {
        self.check_compatible(other);
        Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
            domain: self.domain,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }

    /// `c · f` pointwise.
    pub fn left_mul(&self, c: Biquaternion) -> Self {
        self.map(|v| c * v)
    }

    /// `f · c` pointwise.
    pub fn right_mul(&self, c: Biquaternion) -> Self {
        self.map(|v| v * c)
    }

    pub fn scalar_part(&self) -> Self {
        self.map(|v| Biquaternion::from_scalar(v.sc()))
    }

    pub fn vector_part(&self) -> Self {
        self.map(|v| v.vec_part())
    }

    /// Continuum `L^2` norm: `h^3 Σ|f|^2` in physical space, `L^-3 Σ|f̂|^2` in spectral space.
    pub fn l2_norm(&self) -> f64 {
        let weight = match self.domain {
            Domain::Physical => self.grid.cell_volume(),
            Domain::Spectral => 1.0 / self.grid.length.powi(3),
        };
        (weight * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.max_abs()).fold(0.0, f64::max)
    }

    /// Relative Plancherel defect `|‖f‖² - ‖f̂‖²| / ‖f‖²`; zero for the zero field.
    pub fn plancherel_residual(&self) -> Result<f64> {
        self.expect_domain(Domain::Physical, "plancherel_residual")?;
        let phys = self.l2_norm().powi(2);
        if phys == 0.0 {
            return Ok(0.0);
        }
        let spec = self.dft_forward()?.l2_norm().powi(2);
        Ok((phys - spec).abs() / phys)
    }
}

/// Component-wise continuum-weighted transform including the phase that
/// accounts for the origin-centered coordinates, `(-1)^(q0+q1+q2)`.
fn transform(grid: &SpatialGrid, values: &[Biquaternion], dir: Direction, weight: f64) -> Vec<Biquaternion> {
    let n = grid.n();
    let mut comps: Vec<Vec<Complex64>> = (0..4)
        .map(|c| {
            let mut buf: Vec<Complex64> = values.iter().map(|v| v[c]).collect();
            if dir == Direction::Inverse {
                apply_phase(grid, &mut buf);
            }
            buf
        })
        .collect();
    comps.par_iter_mut().for_each(|buf| fft3(n, buf, dir));
    if dir == Direction::Forward {
        for buf in comps.iter_mut() {
            apply_phase(grid, buf);
        }
    }
    (0..values.len())
        .map(|idx| Biquaternion(std::array::from_fn(|c| comps[c][idx] * weight)))
        .collect()
}

fn apply_phase(grid: &SpatialGrid, buf: &mut [Complex64]) {
    for (idx, v) in buf.iter_mut().enumerate() {
        let q = grid.unflatten(idx);
        if (q[0] + q[1] + q[2]) % 2 == 1 {
            *v = -*v;
        }
    }
}

/// Biquaternion fields at the times `t_j = j·dt`, `j = 0..nt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    slices: Vec<BiquatField>,
    dt: f64,
}

impl SpaceTimeField {
    pub fn new(slices: Vec<BiquatField>, dt: f64) -> Result<Self> {
        if slices.len() < 2 {
            return Err(Error::Size(format!(
                "need at least 2 time slices, got {}",
                slices.len()
            )));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Config(format!("time.dt must be positive (got {dt})")));
        }
        let (grid, domain) = (slices[0].grid, slices[0].domain);
        if slices.iter().any(|s| s.grid != grid || s.domain != domain) {
            return Err(Error::Config(
                "all time slices must share one grid and one domain".into(),
            ));
        }
        Ok(Self { slices, dt })
    }

    /// Physical field sampled from `f(x, t)`.
    pub fn from_fn(
        grid: SpatialGrid,
        nt: usize,
        dt: f64,
        f: impl Fn([f64; 3], f64) -> Biquaternion + Sync,
    ) -> Result<Self> {
        let slices = (0..nt)
            .into_par_iter()
            .map(|j| {
                let t = j as f64 * dt;
                BiquatField::from_fn(grid, |x| f(x, t))
            })
            .collect();
        Self::new(slices, dt)
    }

    pub fn zeros(grid: SpatialGrid, nt: usize, dt: f64) -> Result<Self> {
        Self::new(vec![BiquatField::zeros(grid); nt], dt)
    }

    #[inline]
    pub fn grid(&self) -> &SpatialGrid {
        &self.slices[0].grid
    }

    #[inline]
    pub fn domain(&self) -> Domain {
        self.slices[0].domain
    }

    #[inline]
    pub fn dt(&self) -> f64 {
        self.dt
    }

    #[inline]
    pub fn nt(&self) -> usize {
        self.slices.len()
    }

    #[inline]
    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    #[inline]
    pub fn slices(&self) -> &[BiquatField] {
        &self.slices
    }

    #[inline]
    pub fn slice(&self, j: usize) -> &BiquatField {
        &self.slices[j]
    }

    pub fn into_slices(self) -> Vec<BiquatField> {
        self.slices
    }

    pub(crate) fn with_slices(&self, slices: Vec<BiquatField>) -> Self {
        debug_assert_eq!(slices.len(), self.slices.len());
        Self { slices, dt: self.dt }
    }

    pub fn map(&self, f: impl Fn(Biquaternion) -> Biquaternion + Sync) -> Self {
        self.with_slices(self.slices.par_iter().map(|s| s.map(&f)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(Biquaternion, Biquaternion) -> Biquaternion + Sync) -> Self {
        assert_eq!(self.nt(), other.nt(), "time grids differ");
        self.with_slices(
            self.slices
                .par_iter()
                .zip(&other.slices)
                .map(|(a, b)| a.zip_map(b, &f))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }

    pub fn scalar_part(&self) -> Self {
        self.map(|v| Biquaternion::from_scalar(v.sc()))
    }

    pub fn vector_part(&self) -> Self {
        self.map(|v| v.vec_part())
    }

    pub fn dft_forward(&self) -> Result<Self> {
        let slices = self
            .slices
            .par_iter()
            .map(|s| s.dft_forward())
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_slices(slices))
    }

    pub fn dft_inverse(&self) -> Result<Self> {
        let slices = self
            .slices
            .par_iter()
            .map(|s| s.dft_inverse())
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_slices(slices))
    }

    pub fn max_abs(&self) -> f64 {
        self.slices.iter().map(|s| s.max_abs()).fold(0.0, f64::max)
    }

    /// Discrete space-time `L^2` norm over `region`, weights `h^3·dt`.
    pub fn norm_over(&self, region: &Region) -> f64 {
        let h3 = self.grid().cell_volume();
        let mut acc = 0.0;
        for j in region.slice_range(self.nt()) {
            let vals = self.slices[j].values();
            acc += match region.nodes() {
                Some(mask) => vals
                    .iter()
                    .zip(mask)
                    .filter(|(_, &m)| m)
                    .map(|(v, _)| v.norm_sqr())
                    .sum::<f64>(),
                None => vals.iter().map(|v| v.norm_sqr()).sum::<f64>(),
            };
        }
        (acc * h3 * self.dt).sqrt()
    }

    /// Largest coefficient modulus over `region`.
    pub fn max_abs_over(&self, region: &Region) -> f64 {
        let mut out: f64 = 0.0;
        for j in region.slice_range(self.nt()) {
            for (idx, v) in self.slices[j].values().iter().enumerate() {
                if region.contains_node(idx) {
                    out = out.max(v.max_abs());
                }
            }
        }
        out
    }
}
