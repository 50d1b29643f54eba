//! The tanh well in three dimensions: a shell around a layered core. The
//! radial histogram shows the gap between them.

use swarmdim::diagnostics::{classify_dimension, radial_histogram};
use swarmdim::minimize::{init_configuration, minimize, MinimizerSettings};
use swarmdim::potentials::PotentialSpec;

pub fn shell(n: usize, max_iters: u64) -> swarmdim::Result<Vec<(f64, usize)>> {
    let spec = PotentialSpec::tanh_well(5.0, 0.5);
    let init = init_configuration(n, 3, 1.0, 1, None)?;
    let settings = MinimizerSettings {
        max_iters,
        ..Default::default()
    };
    let (end, run) = minimize(&init, &spec, &settings)?;
    let dims = classify_dimension(&end, Some(&spec))?;
    println!(
        "{:?}, E = {:.8}, dim {:?}, local {:.3?}",
        run.termination, run.final_energy, dims.classified_dim, dims.local_dim_fractions
    );
    let hist = radial_histogram(&end, 40);
    for (center, count) in hist.iter().filter(|b| b.1 > 0) {
        println!("  r = {center:.3}  {count:>4} {}", "#".repeat((count * 60 / n).max(1)));
    }
    Ok(hist)
}

pub fn run_example() -> swarmdim::Result<()> {
    shell(250, 1500).map(|_| ())
}

fn main() -> swarmdim::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(250);
    shell(n, std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(3000)).map(|_| ())
}
