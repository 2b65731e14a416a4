//! Config-driven runs behind the `bqmaxwell` binary.

pub mod config;
pub mod presets;
pub mod report;

use std::f64::consts::PI;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::biquat::{Biquaternion, Quaternion};
use crate::completion::{complete_to_kernel, metaharmonic_conjugate, CompletionOptions};
use crate::dirac::{apply_parabolic, kernel_residual, DiffMethod, OperatorConfig, Sign};
use crate::error::{Error, Result};
use crate::gauge::GaugeSpec;
use crate::grid::io::{write_bqmx, write_csv_planes};
use crate::grid::{BiquatField, Region, SpaceTimeField, SpatialGrid};
use crate::maxwell::{self, sources, Medium, ResidualOptions, SolveOptions, EQUATION_NAMES};
use crate::parabolic::{
    parabolic_teodorescu_with, right_inverse_apply, right_inverse_apply_with, single_mode_transform, Support,
    TimeQuadrature, TransformOptions,
};
use crate::teodorescu::{teodorescu, DomainMask, Quadrature, DIRECT_MAX_N};

pub use config::{load_config, parse_config, RunConfig};
pub use report::{Check, Report};

/// Grid size used for checks that go through the `T_Ω` quadrature.
pub const QUADRATURE_MIN_N: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Solve,
    VerifyInverse,
    KernelCheck,
    Oracle,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Solve => "solve",
            Subcommand::VerifyInverse => "verify-inverse",
            Subcommand::KernelCheck => "kernel-check",
            Subcommand::Oracle => "oracle",
        }
    }
}

/// Runs `cmd`, writes `<out>/<cmd>.txt` and any field outputs, and returns
/// the report. `out` overrides the configured output directory.
pub fn run(cmd: Subcommand, cfg: &RunConfig, out: Option<&Path>) -> Result<Report> {
    let dir: PathBuf = match out {
        Some(d) => d.to_path_buf(),
        None => cfg.resolve(&cfg.output.directory),
    };
    fs::create_dir_all(&dir)?;
    let report = match cmd {
        Subcommand::Solve => solve(cfg, &dir)?,
        Subcommand::VerifyInverse => verify_inverse(cfg)?,
        Subcommand::KernelCheck => kernel_check(cfg)?,
        Subcommand::Oracle => oracle(cfg)?,
    };
    fs::write(dir.join(format!("{}.txt", cmd.name())), report.render())?;
    Ok(report)
}

fn describe(cfg: &RunConfig, report: &mut Report) {
    report.note(format!(
        "grid n={} L={}  time nt={} dt={}",
        cfg.grid.n, cfg.grid.length, cfg.time.nt, cfg.time.dt
    ));
}

fn solve(cfg: &RunConfig, dir: &Path) -> Result<Report> {
    let mut report = Report::new("bqmaxwell solve");
    describe(cfg, &mut report);
    let medium = cfg.medium()?;
    let (h1, h2) = cfg.gauges()?;
    let src = presets::build_source(cfg)?;
    let method = cfg.solver.method();
    report.note(format!(
        "source {}  units {:?}  eps={} mu={}",
        match cfg.source.kind {
            config::SourceKind::Preset => cfg.source.preset.name().to_string(),
            config::SourceKind::File => format!("file {}", cfg.source.path.as_ref().expect("validated").display()),
        },
        medium.units(),
        medium.eps(),
        medium.mu()
    ));

    let conservation = maxwell::validate_charge_conservation(&src, method)?;
    report.note(format!(
        "{}: |div j + dt rho| = {:.3e} (relative {:.3e})",
        maxwell::CONSERVATION_LAW,
        conservation.absolute,
        conservation.relative
    ));
    report.check_le(
        "charge_conservation",
        conservation.relative,
        cfg.tolerances.conservation,
    );

    let opts = SolveOptions {
        method,
        time_quadrature: cfg.solver.time_quadrature(),
        support: cfg.solver.support(),
        static_quadrature: Quadrature::Fft,
        conservation_tolerance: cfg.tolerances.conservation,
    };
    let sol = match maxwell::solve(&src, medium, &h1, &h2, &opts) {
        Ok(sol) => sol,
        Err(e @ Error::Precondition { .. }) => {
            report.note(format!("solver rejected the source: {e}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };

    let mut region = Region::interior_slices();
    if opts.support == Support::ZeroExtended {
        region = region.with_nodes(
            (0..sol.e.grid().len())
                .map(|i| sol.e.grid().in_central_subbox(i))
                .collect(),
        );
    }
    let res = maxwell::maxwell_residual(&sol, &src, &ResidualOptions { method, region })?;
    for (k, name) in EQUATION_NAMES.iter().enumerate() {
        report.check_le(format!("maxwell.{name}"), res.relative[k], cfg.tolerances.residual);
    }
    report.note(format!(
        "|E(.,0)| = {:.3e}  |B(.,0)| = {:.3e}",
        sol.e.slice(0).l2_norm(),
        sol.b.slice(0).l2_norm()
    ));
    write_fields(cfg, dir, &[("e", &sol.e), ("b", &sol.b)])?;
    Ok(report)
}

fn write_fields(cfg: &RunConfig, dir: &Path, fields: &[(&str, &SpaceTimeField)]) -> Result<()> {
    for (name, field) in fields {
        for format in &cfg.output.formats {
            match format {
                config::Format::Bqmx => {
                    let f = fs::File::create(dir.join(format!("{name}.bqmx")))?;
                    write_bqmx(BufWriter::new(f), field)?;
                }
                config::Format::Csv => {
                    let f = fs::File::create(dir.join(format!("{name}_planes.csv")))?;
                    write_csv_planes(BufWriter::new(f), field, &cfg.planes())?;
                }
            }
        }
    }
    Ok(())
}

fn sign_name(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

/// `‖(D ± iλ∂t) T[∓iw/λ] - w‖ / ‖w‖` with spectral space derivatives.
pub fn inverse_residual(w: &SpaceTimeField, cfg: &OperatorConfig) -> Result<f64> {
    let phi = right_inverse_apply(w, cfg)?;
    let back = apply_parabolic(&phi, cfg, DiffMethod::Spectral)?;
    let all = Region::all();
    Ok(back.sub(w).norm_over(&all) / w.norm_over(&all))
}

fn verify_inverse(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new("bqmaxwell verify-inverse");
    describe(cfg, &mut report);
    let grid = cfg.spatial_grid()?;
    let (nt, dt) = (cfg.time.nt, cfg.time.dt);
    report.note(format!(
        "random band-limited source, seed {}, lambda {}",
        cfg.seed, cfg.operator.lambda
    ));
    let coarse = presets::random_band_limited(grid, nt, dt, 6, 1, cfg.seed)?;
    let fine = presets::random_band_limited(grid, 2 * nt - 1, 0.5 * dt, 6, 1, cfg.seed)?;
    for sign in [Sign::Plus, Sign::Minus] {
        let op = OperatorConfig::new(sign, cfg.operator.lambda)?;
        let r = inverse_residual(&coarse, &op)?;
        let r_fine = inverse_residual(&fine, &op)?;
        report.check_le(format!("inverse.{}", sign_name(sign)), r, cfg.tolerances.inverse);
        report.check_ge(format!("inverse.{}.refinement_ratio", sign_name(sign)), r / r_fine, 2.0);
    }
    Ok(report)
}

fn quadrature_for(n: usize) -> Quadrature {
    if n <= DIRECT_MAX_N {
        Quadrature::Direct
    } else {
        Quadrature::Fft
    }
}

/// Relative `L²` distance between `field` and `exact` over `region`.
fn relative_error(
    field: &SpaceTimeField,
    exact: impl Fn([f64; 3], f64) -> Biquaternion + Sync,
    region: &Region,
) -> Result<f64> {
    let ex = SpaceTimeField::from_fn(*field.grid(), field.nt(), field.dt(), exact)?;
    Ok(field.sub(&ex).norm_over(region) / ex.norm_over(region))
}

fn kernel_check(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new("bqmaxwell kernel-check");
    describe(cfg, &mut report);
    let tol = &cfg.tolerances;
    let grid = cfg.spatial_grid()?;
    let (nt, dt) = (cfg.time.nt, cfg.time.dt);
    let h = grid.spacing();
    let inner = Region::all().away_from_seam(&grid, 1);

    for sign in [Sign::Plus, Sign::Minus] {
        let s = sign.factor();
        let op = OperatorConfig::unit(sign);
        let name = sign_name(sign);

        // x + t ± i(x/3 - 3t)
        let w1 = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
            Biquaternion::from_parts(
                Quaternion::new(t, x[0], x[1], x[2]),
                Quaternion::new(-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0).scale(s),
            )
        })?;
        let r = apply_parabolic(&w1, &op, DiffMethod::Fd2)?.max_abs_over(&inner);
        report.check_le(format!("linear.{name}.parabolic"), r, tol.exact);
        let k = kernel_residual(&w1, &op, DiffMethod::Fd2, &inner)?;
        report.check_le(format!("linear.{name}.kernel"), k.max(), tol.exact);

        // |x|² + 3t² ± 2itx
        let w2 = SpaceTimeField::from_fn(grid, nt, dt, |x, t| {
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            Biquaternion::new(
                Complex64::new(r2 + 3.0 * t * t, 0.0),
                Complex64::new(0.0, s * 2.0 * t * x[0]),
                Complex64::new(0.0, s * 2.0 * t * x[1]),
                Complex64::new(0.0, s * 2.0 * t * x[2]),
            )
        })?;
        let bound = tol.discretization * (h * h + dt * dt);
        let r = apply_parabolic(&w2, &op, DiffMethod::Fd2)?.max_abs_over(&inner);
        report.check_le(format!("quadratic.{name}.parabolic"), r, bound);
        let k = kernel_residual(&w2, &op, DiffMethod::Fd2, &inner)?;
        report.check_le(format!("quadratic.{name}.kernel"), k.max(), bound);
    }

    // constructions through T_Ω on a ball of radius L/4
    let n = cfg.grid.n.max(QUADRATURE_MIN_N);
    let qgrid = SpatialGrid::new(n, cfg.grid.length)?;
    let radius = 0.25 * qgrid.length();
    let mask = DomainMask::ball(qgrid, radius)?;
    let ball = Region::all().within_ball(&qgrid, radius);
    let qnt = nt.min(16);
    let opts = CompletionOptions {
        method: DiffMethod::Fd2,
        quadrature: quadrature_for(n),
        wave_region: Region::interior_slices().away_from_seam(&qgrid, 2),
        ..CompletionOptions::default()
    };
    report.note(format!("completion checks on n={n}, ball radius {radius}, nt={qnt}"));
    let op = OperatorConfig::unit(Sign::Plus);
    let u = SpaceTimeField::from_fn(qgrid, qnt, dt, |x, t| {
        Biquaternion::from(Quaternion::new(t, x[0], x[1], x[2]))
    })?;
    let v = metaharmonic_conjugate(&u, &op, &GaugeSpec::Zero, &mask, &opts)?;
    let err = relative_error(
        &v.field,
        |x, t| Biquaternion::from(Quaternion::new(-3.0 * t, x[0] / 3.0, x[1] / 3.0, x[2] / 3.0)),
        &ball,
    )?;
    report.check_le("linear.conjugate", err, tol.quadrature);

    let u0 = SpaceTimeField::from_fn(qgrid, qnt, dt, |x, t| {
        Biquaternion::from_scalar(Complex64::new(
            x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + 3.0 * t * t,
            0.0,
        ))
    })?;
    for sign in [Sign::Plus, Sign::Minus] {
        let s = sign.factor();
        let done = complete_to_kernel(&u0, &OperatorConfig::unit(sign), &GaugeSpec::Zero, &mask, &opts)?;
        let err = relative_error(
            &done.field,
            |x, t| {
                let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                Biquaternion::new(
                    Complex64::new(r2 + 3.0 * t * t, 0.0),
                    Complex64::new(0.0, s * 2.0 * t * x[0]),
                    Complex64::new(0.0, s * 2.0 * t * x[1]),
                    Complex64::new(0.0, s * 2.0 * t * x[2]),
                )
            },
            &ball,
        )?;
        report.check_le(format!("quadratic.{}.completion", sign_name(sign)), err, tol.quadrature);
    }
    Ok(report)
}

fn oracle(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::new("bqmaxwell oracle");
    describe(cfg, &mut report);
    let tol = &cfg.tolerances;
    let grid = cfg.spatial_grid()?;
    let (nt, dt) = (cfg.time.nt, cfg.time.dt);
    let mode = cfg.source.mode;
    let k0 = sources::lattice_k(&grid, mode)?;
    report.note(format!("single mode m = {mode:?}"));
    let w = SpaceTimeField::from_fn(grid, nt, dt, |x, _| {
        Biquaternion::from_scalar(Complex64::from_polar(
            1.0,
            2.0 * PI * (k0[0] * x[0] + k0[1] * x[1] + k0[2] * x[2]),
        ))
    })?;
    for sign in [Sign::Plus, Sign::Minus] {
        let op = OperatorConfig::unit(sign);
        let name = sign_name(sign);
        let exact = SpaceTimeField::from_fn(grid, nt, dt, |x, t| single_mode_transform(x, t, k0, sign))?;
        for (qname, quadrature) in [
            ("exponential", TimeQuadrature::Exponential),
            ("trapezoid", TimeQuadrature::Trapezoid),
        ] {
            let opts = TransformOptions {
                quadrature,
                support: Support::Periodic,
            };
            let t = parabolic_teodorescu_with(&w, &op, &opts)?;
            let err = t.sub(&exact).max_abs();
            let bound = match quadrature {
                TimeQuadrature::Exponential => tol.oracle,
                TimeQuadrature::Trapezoid => tol.discretization * dt * dt,
            };
            report.check_le(format!("single_mode.{name}.{qname}"), err, bound);
        }
        let phi = right_inverse_apply_with(&w, &op, &TransformOptions::default())?;
        let back = apply_parabolic(&phi, &op, DiffMethod::Spectral)?;
        let all = Region::all();
        report.check_le(
            format!("single_mode.{name}.inverse"),
            back.sub(&w).norm_over(&all) / w.norm_over(&all),
            tol.inverse,
        );
    }

    let omega = 2.0 * PI * (k0[0] * k0[0] + k0[1] * k0[1] + k0[2] * k0[2]).sqrt();
    let pol = perpendicular(k0);
    let wave = sources::vacuum_plane_wave(grid, nt, dt, mode, pol, 1.0, Medium::gaussian())?;
    let zero = maxwell::SourceSpec::zeros(grid, nt, dt)?;
    let res = maxwell::maxwell_residual(&wave, &zero, &ResidualOptions::interior())?;
    report.check_le("plane_wave.maxwell", res.max_relative(), omega * omega * dt * dt);

    let n = cfg.grid.n.max(QUADRATURE_MIN_N);
    let qgrid = SpatialGrid::new(n, cfg.grid.length)?;
    let radius = 0.25 * qgrid.length();
    let mask = DomainMask::ball(qgrid, radius)?;
    let t1 = teodorescu(
        &BiquatField::constant(qgrid, Biquaternion::ONE),
        &mask,
        quadrature_for(n),
    )?;
    let (mut num, mut den) = (0.0, 0.0);
    for idx in 0..qgrid.len() {
        if mask.inside()[idx] {
            let x = qgrid.point(idx);
            let ex = Biquaternion::real_vector(x.map(|c| -c / 3.0));
            num += (t1.values()[idx] - ex).norm_sqr();
            den += ex.norm_sqr();
        }
    }
    report.check_le("ball.teodorescu_one", (num / den).sqrt(), tol.quadrature);
    Ok(report)
}

/// A unit vector orthogonal to `k`.
fn perpendicular(k: [f64; 3]) -> [f64; 3] {
    let axis = if k[2].abs() <= k[0].abs().min(k[1].abs()) {
        [0.0, 0.0, 1.0]
    } else if k[0].abs() <= k[1].abs() {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let c = [
        k[1] * axis[2] - k[2] * axis[1],
        k[2] * axis[0] - k[0] * axis[2],
        k[0] * axis[1] - k[1] * axis[0],
    ];
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    c.map(|x| x / n)
}
