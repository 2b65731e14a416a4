//! TOML run configuration.
//!
//! ```toml
//! threads = 4
//!
//! [grid]
//! n = 16
//! L = 2.0
//!
//! [time]
//! nt = 64
//! dt = 0.01
//!
//! [operator]
//! sign = "minus"
//! lambda = 1.0
//!
//! [medium]
//! units = "gaussian"      # or "si" with eps, mu
//!
//! [source]
//! kind = "preset"         # or "file" with path = "source.bqmx"
//! preset = "solenoidal_mode"
//! amplitude = 1.0
//! mode = [1, 0, 0]
//! polarization = [0.0, 1.0, 0.0]
//! frequency = 1.0
//!
//! [gauge]
//! h1 = [{ coef = 1.0, powers = [1, 0, 0] }]
//!
//! [tolerances]
//! conservation = 1e-6
//! residual = 5e-3
//! inverse = 1e-3
//!
//! [output]
//! directory = "out"
//! formats = ["bqmx", "csv"]
//! slices = [{ axis = 2, index = 8, time = 63 }]
//! ```
//!
//! Every section and key is optional; missing values take the defaults shown
//! by [`RunConfig::default`].

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::dirac::{DiffMethod, OperatorConfig, Sign};
use crate::error::{Error, Result};
use crate::gauge::{GaugeSpec, Monomial};
use crate::grid::io::PlaneSelection;
use crate::grid::SpatialGrid;
use crate::maxwell::sources::lattice_k;
use crate::maxwell::Medium;
use crate::parabolic::{Support, TimeQuadrature};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub n: usize,
    #[serde(rename = "L")]
    pub length: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { n: 16, length: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeSection {
    pub nt: usize,
    pub dt: f64,
}

impl Default for TimeSection {
    fn default() -> Self {
        Self { nt: 64, dt: 0.01 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignKey {
    Plus,
    Minus,
}

impl From<SignKey> for Sign {
    fn from(s: SignKey) -> Self {
        match s {
            SignKey::Plus => Sign::Plus,
            SignKey::Minus => Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OperatorSection {
    pub sign: SignKey,
    pub lambda: f64,
}

impl Default for OperatorSection {
    fn default() -> Self {
        Self {
            sign: SignKey::Minus,
            lambda: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitsKey {
    Gaussian,
    Si,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumSection {
    pub units: UnitsKey,
    pub eps: f64,
    pub mu: f64,
}

impl Default for MediumSection {
    fn default() -> Self {
        Self {
            units: UnitsKey::Gaussian,
            eps: 1.0,
            mu: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Preset,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    SolenoidalMode,
    PlaneWave,
    Charging,
    ChargeViolating,
    Zero,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::SolenoidalMode => "solenoidal_mode",
            Preset::PlaneWave => "plane_wave",
            Preset::Charging => "charging",
            Preset::ChargeViolating => "charge_violating",
            Preset::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SourceSection {
    pub kind: SourceKind,
    pub preset: Preset,
    pub amplitude: f64,
    /// Integer lattice mode `m`; the wave vector is `m / L`.
    pub mode: [i64; 3],
    pub polarization: [f64; 3],
    /// Temporal frequency of the solenoidal preset.
    pub frequency: f64,
    /// BQMX file whose coefficient `c0.re` holds `ρ` and `c1..c3 .re` hold `j`.
    pub path: Option<PathBuf>,
}

impl Default for SourceSection {
    fn default() -> Self {
        Self {
            kind: SourceKind::Preset,
            preset: Preset::SolenoidalMode,
            amplitude: 1.0,
            mode: [1, 0, 0],
            polarization: [0.0, 1.0, 0.0],
            frequency: 1.0,
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaugeSection {
    pub h1: Vec<Monomial>,
    pub h2: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative continuity imbalance accepted by the solver.
    pub conservation: f64,
    /// Relative Maxwell residual per equation.
    pub residual: f64,
    /// Relative right-inverse residual.
    pub inverse: f64,
    /// Closed-form comparisons in `oracle`.
    pub oracle: f64,
    /// Exact-arithmetic kernel checks.
    pub exact: f64,
    /// Completion against closed forms that go through the `T_Ω` quadrature.
    pub quadrature: f64,
    /// Constant `C` of the `C (h² + dt²)` bound on discretization residuals.
    pub discretization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            conservation: 1e-6,
            residual: 5e-3,
            inverse: 1e-3,
            oracle: 1e-6,
            exact: 1e-9,
            quadrature: 0.05,
            discretization: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKey {
    Spectral,
    Fd2,
}

impl From<MethodKey> for DiffMethod {
    fn from(m: MethodKey) -> Self {
        match m {
            MethodKey::Spectral => DiffMethod::Spectral,
            MethodKey::Fd2 => DiffMethod::Fd2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureKey {
    Trapezoid,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportKey {
    Periodic,
    ZeroExtended,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub method: MethodKey,
    pub time_quadrature: QuadratureKey,
    pub support: SupportKey,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            method: MethodKey::Spectral,
            time_quadrature: QuadratureKey::Trapezoid,
            support: SupportKey::Periodic,
        }
    }
}

impl SolverSection {
    pub fn method(&self) -> DiffMethod {
        self.method.into()
    }

    pub fn time_quadrature(&self) -> TimeQuadrature {
        match self.time_quadrature {
            QuadratureKey::Trapezoid => TimeQuadrature::Trapezoid,
            QuadratureKey::Exponential => TimeQuadrature::Exponential,
        }
    }

    pub fn support(&self) -> Support {
        match self.support {
            SupportKey::Periodic => Support::Periodic,
            SupportKey::ZeroExtended => Support::ZeroExtended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Bqmx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceKey {
    pub axis: usize,
    pub index: usize,
    pub time: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub directory: PathBuf,
    pub formats: Vec<Format>,
    pub slices: Vec<SliceKey>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            formats: vec![Format::Bqmx],
            slices: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub threads: Option<usize>,
    /// Seed of the random sources used by `verify-inverse`.
    pub seed: u64,
    pub grid: GridSection,
    pub time: TimeSection,
    pub operator: OperatorSection,
    pub medium: MediumSection,
    pub source: SourceSection,
    pub gauge: GaugeSection,
    pub tolerances: Tolerances,
    pub solver: SolverSection,
    pub output: OutputSection,
    /// Directory relative paths in the file are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn spatial_grid(&self) -> Result<SpatialGrid> {
        SpatialGrid::new(self.grid.n, self.grid.length)
    }

    pub fn operator_config(&self) -> Result<OperatorConfig> {
        OperatorConfig::new(self.operator.sign.into(), self.operator.lambda)
    }

    pub fn medium(&self) -> Result<Medium> {
        match self.medium.units {
            UnitsKey::Gaussian => Ok(Medium::gaussian()),
            UnitsKey::Si => Medium::si(self.medium.eps, self.medium.mu),
        }
    }

    pub fn gauges(&self) -> Result<(GaugeSpec, GaugeSpec)> {
        let h1 = GaugeSpec::polynomial(self.gauge.h1.clone()).map_err(|e| prefix("gauge.h1", e))?;
        let h2 = GaugeSpec::polynomial(self.gauge.h2.clone()).map_err(|e| prefix("gauge.h2", e))?;
        Ok((h1, h2))
    }

    pub fn planes(&self) -> Vec<PlaneSelection> {
        self.output
            .slices
            .iter()
            .map(|s| PlaneSelection {
                axis: s.axis,
                index: s.index,
                time: s.time,
            })
            .collect()
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    /// Re-checks every numeric constraint of the modules the config feeds.
    pub fn validate(&self) -> Result<()> {
        let grid = self.spatial_grid()?;
        if self.time.nt < 3 {
            return Err(Error::Config(format!(
                "time.nt must be at least 3 (got {})",
                self.time.nt
            )));
        }
        if !(self.time.dt > 0.0 && self.time.dt.is_finite()) {
            return Err(Error::Config(format!(
                "time.dt must be positive (got {})",
                self.time.dt
            )));
        }
        self.operator_config()?;
        self.medium()?;
        self.gauges()?;
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        let t = &self.tolerances;
        for (key, v) in [
            ("tolerances.conservation", t.conservation),
            ("tolerances.residual", t.residual),
            ("tolerances.inverse", t.inverse),
            ("tolerances.oracle", t.oracle),
            ("tolerances.exact", t.exact),
            ("tolerances.quadrature", t.quadrature),
            ("tolerances.discretization", t.discretization),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{key} must be positive (got {v})")));
            }
        }
        match self.source.kind {
            SourceKind::Preset => {
                if self.source.preset != Preset::Zero {
                    lattice_k(&grid, self.source.mode).map_err(|e| prefix("source.mode", e))?;
                }
                if !self.source.amplitude.is_finite() {
                    return Err(Error::Config("source.amplitude must be finite".into()));
                }
            }
            SourceKind::File => {
                if self.source.path.is_none() {
                    return Err(Error::Config(
                        "source.path is required when source.kind = \"file\"".into(),
                    ));
                }
            }
        }
        for s in &self.output.slices {
            if s.axis > 2 || s.index >= grid.n() || s.time >= self.time.nt {
                return Err(Error::Config(format!(
                    "output.slices entry {{axis = {}, index = {}, time = {}}} is out of range",
                    s.axis, s.index, s.time
                )));
            }
        }
        Ok(())
    }
}

fn prefix(key: &str, e: Error) -> Error {
    match e {
        Error::Config(msg) => Error::Config(format!("{key}: {msg}")),
        other => other,
    }
}

/// Parses and validates a TOML configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads `path`, resolving relative paths inside the file against its directory.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = parse_config(&text)?;
    cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(cfg)
}
