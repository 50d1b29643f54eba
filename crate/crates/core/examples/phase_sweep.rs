//! A small phase diagram along `gamma = 5`, written as JSON, a text grid and
//! curve polylines.

use swarmdim::minimize::MinimizerSettings;
use swarmdim::sweep::{diagram_table, emit_diagram, fattening_curve_2d, run_sweep, SweepGrid};

pub fn run_example() -> swarmdim::Result<()> {
    let grid = SweepGrid {
        gammas: vec![5.0],
        alphas: vec![0.01, 1.1, 1.5, 2.2, 5.0],
        ambient_dim: 2,
        n_particles: 120,
        init_radius: 1.0,
        seeds: vec![1, 2],
    };
    let settings = MinimizerSettings {
        max_iters: 1500,
        ..Default::default()
    };
    let diagram = run_sweep(&grid, &settings)?;
    println!("fattening at gamma = 5: alpha = {}", fattening_curve_2d(5.0)?);
    print!("{}", diagram_table(&diagram));

    let dir = std::env::temp_dir().join("swarmdim-phase-sweep");
    emit_diagram(&diagram, &dir)?;
    println!("written to {}", dir.display());
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
