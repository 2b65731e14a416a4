//! Driving the same pipeline as the `bqmaxwell` binary from a TOML string.

use bqmaxwell::cli::{parse_config, run, Subcommand};

const CONFIG: &str = r#"
[grid]
n = 16
L = 2.0

[time]
nt = 32
dt = 0.01

[medium]
units = "si"
eps = 2.0
mu = 1.5

[source]
preset = "plane_wave"
mode = [0, 1, 0]
polarization = [1.0, 0.0, 0.0]
"#;

fn main() -> bqmaxwell::Result<()> {
    let out = std::env::temp_dir().join("bqmaxwell-config-run");
    let cfg = parse_config(CONFIG)?;
    for cmd in [Subcommand::Solve, Subcommand::Oracle] {
        let report = run(cmd, &cfg, Some(&out))?;
        print!("{}", report.render());
        println!("{} -> {}\n", cmd.name(), if report.passed() { "pass" } else { "fail" });
    }
    Ok(())
}
