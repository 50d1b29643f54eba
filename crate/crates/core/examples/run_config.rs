//! Driving a run from an INI configuration, as the `swarmdim` binary does.

use swarmdim::cli::{execute, parse_config_with, Command};

const CONFIG: &str = "
[potential]
alpha = 2.5
gamma = 15

[particles]
n = 90
dim = 2
seed = 4

[solver]
max_iters = 2000
";

pub fn run_example() -> swarmdim::Result<()> {
    let dir = std::env::temp_dir().join("swarmdim-run-config");
    let config = parse_config_with(
        CONFIG,
        Some(Command::Minimize),
        &[("output.directory".into(), dir.display().to_string())],
    )?;
    let code = execute(&config, &mut std::io::stdout())?;
    println!("exit code {code}");
    for f in ["final.csv", "report.json", "energy_trace.dat", "radial_hist.dat"] {
        println!("  {f}: {} bytes", std::fs::metadata(dir.join(f))?.len());
    }
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
