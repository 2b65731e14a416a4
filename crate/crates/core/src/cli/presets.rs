//! Sources named in run configurations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Preset, RunConfig, SourceKind};
use crate::biquat::Biquaternion;
use crate::error::{Error, Result};
use crate::grid::io::read_bqmx;
use crate::grid::{Domain, SpaceTimeField, SpatialGrid};
use crate::maxwell::{sources, SourceSpec};

/// Builds the configured source on the configured space-time grid.
pub fn build_source(cfg: &RunConfig) -> Result<SourceSpec> {
    let grid = cfg.spatial_grid()?;
    let (nt, dt) = (cfg.time.nt, cfg.time.dt);
    let s = &cfg.source;
    match s.kind {
        SourceKind::Preset => match s.preset {
            Preset::SolenoidalMode => {
                sources::solenoidal_mode(grid, nt, dt, s.mode, s.polarization, s.amplitude, s.frequency)
            }
            Preset::PlaneWave => {
                sources::plane_wave_current(grid, nt, dt, s.mode, s.polarization, s.amplitude, &cfg.medium()?)
            }
            Preset::Charging => sources::charging(grid, nt, dt, s.mode, s.amplitude),
            Preset::ChargeViolating => sources::charge_violating(grid, nt, dt, s.mode, s.amplitude),
            Preset::Zero => SourceSpec::zeros(grid, nt, dt),
        },
        SourceKind::File => {
            let path = cfg.resolve(s.path.as_deref().expect("validated"));
            let file = std::fs::File::open(&path)?;
            let field = read_bqmx(std::io::BufReader::new(file))?;
            source_from_field(&field, grid, nt, dt)
        }
    }
}

/// Splits a field with `ρ` in `c0.re` and `j` in `c1..c3 .re`.
pub fn source_from_field(field: &SpaceTimeField, grid: SpatialGrid, nt: usize, dt: f64) -> Result<SourceSpec> {
    if field.domain() != Domain::Physical {
        return Err(Error::Config("source file must hold a physical-domain field".into()));
    }
    if *field.grid() != grid || field.nt() != nt || field.dt() != dt {
        return Err(Error::Config(format!(
            "source file sampling (n = {}, L = {}, nt = {}, dt = {}) does not match the configuration",
            field.grid().n(),
            field.grid().length(),
            field.nt(),
            field.dt()
        )));
    }
    if field
        .slices()
        .iter()
        .any(|s| s.values().iter().any(|v| v.0.iter().any(|c| c.im != 0.0)))
    {
        return Err(Error::Config("source file has nonzero imaginary parts".into()));
    }
    SourceSpec::new(field.scalar_part(), field.vector_part())
}

/// Packs a source into the file layout read by [`source_from_field`].
pub fn source_to_field(src: &SourceSpec) -> SpaceTimeField {
    src.rho().add(src.j())
}

/// Smooth band-limited random biquaternion field: `terms` lattice modes with
/// `|m_i| <= max_mode`, each with a random coefficient and a cosine time
/// factor of frequency in `[0.1, 0.5]`.
pub fn random_band_limited(
    grid: SpatialGrid,
    nt: usize,
    dt: f64,
    terms: usize,
    max_mode: i64,
    seed: u64,
) -> Result<SpaceTimeField> {
    if max_mode < 1 || 2 * max_mode >= grid.n() as i64 {
        return Err(Error::Config(format!(
            "max_mode {max_mode} is not resolved on n = {}",
            grid.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes: Vec<([f64; 3], Biquaternion, f64, f64)> = (0..terms)
        .map(|_| {
            let m: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-max_mode..=max_mode));
            let k = m.map(|c| c as f64 / grid.length());
            let coef = Biquaternion(std::array::from_fn(|_| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }));
            let freq = rng.gen_range(0.1..0.5);
            let phase = rng.gen_range(0.0..2.0 * PI);
            (k, coef, freq, phase)
        })
        .collect();
    SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
        let mut acc = Biquaternion::ZERO;
        for (k, coef, freq, phase) in &modes {
            let e = Complex64::from_polar(1.0, 2.0 * PI * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2]));
            acc += *coef * (e * (2.0 * PI * freq * t + phase).cos());
        }
        acc
    })
}
