//! Values, slopes and Laplacians of the built-in potentials, and what their
//! behavior at the origin predicts about minimizers.

use swarmdim::potentials::{classify_repulsion, PotentialSpec};

pub fn run_example() -> swarmdim::Result<()> {
    let specs = [
        PotentialSpec::power_law(2.5, 15.0),
        PotentialSpec::power_law(1.5, 2.0),
        PotentialSpec::power_law(0.5, 5.0),
        PotentialSpec::power_law(2.0, 4.0),
        PotentialSpec::cosine_perturbed(1.5, 2.0, 3.0),
        PotentialSpec::tanh_well(5.0, 0.5),
    ];
    for spec in &specs {
        let class = classify_repulsion(spec, 2)?;
        println!("{spec}\n  {}", class.note);
        println!("  {:>6} {:>12} {:>12} {:>12}", "r", "w", "w'", "lap W");
        for r in [0.1, 0.5, 1.0, 1.5] {
            let lap = spec.eval_laplacian(&[r, 0.0, 0.0], 2)?;
            println!(
                "  {r:>6} {:>12.5} {:>12.5} {:>12.5}",
                spec.eval_w(r)?,
                spec.eval_w_prime(r)?,
                lap
            );
        }
    }
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
