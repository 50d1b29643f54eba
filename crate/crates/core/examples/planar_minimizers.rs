//! The four planar minimizers of the power-law family: three points, three
//! curves, a disk and an annulus.
//!
//! `cargo run --release --example planar_minimizers -- 600` runs at the
//! acceptance size; the default is smaller.

use swarmdim::diagnostics::classify_dimension;
use swarmdim::minimize::{init_configuration, minimize, MinimizerSettings};
use swarmdim::potentials::PotentialSpec;

pub fn table(n: usize, max_iters: u64) -> swarmdim::Result<Vec<(f64, f64, Option<usize>)>> {
    let settings = MinimizerSettings {
        max_iters,
        ..Default::default()
    };
    let mut out = Vec::new();
    for (alpha, gamma) in [(2.5, 15.0), (1.5, 7.0), (1.5, 2.0), (0.5, 5.0)] {
        let spec = PotentialSpec::power_law(alpha, gamma);
        let init = init_configuration(n, 2, 1.0, 1, None)?;
        let (end, run) = minimize(&init, &spec, &settings)?;
        let dims = classify_dimension(&end, Some(&spec))?;
        println!(
            "alpha {alpha:>4} gamma {gamma:>4}: dim {:?}  corr {:.2}  clusters {:>3}  ({:?}, E = {:.8})",
            dims.classified_dim, dims.corr_dim, dims.cluster_count, run.termination, run.final_energy
        );
        out.push((alpha, gamma, dims.classified_dim));
    }
    Ok(out)
}

pub fn run_example() -> swarmdim::Result<()> {
    table(150, 1500).map(|_| ())
}

fn main() -> swarmdim::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(150);
    table(n, 3000).map(|_| ())
}
