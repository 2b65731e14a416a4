//! Fields of a driven solenoidal current in vacuum and in a dielectric,
//! with the four equation residuals. Writes `E` and `B` to BQMX files in the
//! system temp directory.

use std::fs::File;
use std::io::BufWriter;

use bqmaxwell::gauge::GaugeSpec;
use bqmaxwell::grid::io::write_bqmx;
use bqmaxwell::maxwell::sources::{charging, solenoidal_mode};
use bqmaxwell::maxwell::{
    maxwell_residual, solve, validate_charge_conservation, Medium, ResidualOptions, SolveOptions, EQUATION_NAMES,
};
use bqmaxwell::SpatialGrid;

fn main() -> bqmaxwell::Result<()> {
    let g = SpatialGrid::new(16, 2.0)?;
    let (nt, dt) = (64, 0.01);
    let sources = [
        ("solenoidal", solenoidal_mode(g, nt, dt, [1, 0, 0], [0.0, 1.0, 0.0], 1.0, 1.0)?),
        ("charging", charging(g, nt, dt, [1, 1, 0], 1.0)?),
    ];
    let opts = SolveOptions::default();
    for (name, src) in &sources {
        let c = validate_charge_conservation(src, opts.method)?;
        println!("{name}: continuity imbalance {:.1e}", c.relative);
        for medium in [Medium::gaussian(), Medium::si(4.0, 1.0)?] {
            let sol = solve(src, medium, &GaugeSpec::Zero, &GaugeSpec::Zero, &opts)?;
            let r = maxwell_residual(&sol, src, &ResidualOptions::interior())?;
            print!("  {:?} eps={} mu={}:", medium.units(), medium.eps(), medium.mu());
            for (eq, v) in EQUATION_NAMES.iter().zip(r.relative) {
                print!("  {eq} {v:.1e}");
            }
            println!();
        }
    }

    let src = &sources[0].1;
    let sol = solve(src, Medium::gaussian(), &GaugeSpec::Zero, &GaugeSpec::Zero, &opts)?;
    let dir = std::env::temp_dir();
    write_bqmx(BufWriter::new(File::create(dir.join("e.bqmx"))?), &sol.e)?;
    write_bqmx(BufWriter::new(File::create(dir.join("b.bqmx"))?), &sol.b)?;
    println!("wrote e.bqmx and b.bqmx to {}", dir.display());
    Ok(())
}
