//! A smooth perturbation `3/(2p) cos(p r)` leaves the repulsion at the
//! origin unchanged but turns the planar disk minimizer into a curve.

use swarmdim::diagnostics::classify_dimension;
use swarmdim::minimize::{init_configuration, minimize, MinimizerSettings};
use swarmdim::potentials::{classify_repulsion, PotentialSpec};

pub fn run_example() -> swarmdim::Result<()> {
    let settings = MinimizerSettings {
        max_iters: 1500,
        ..Default::default()
    };
    for spec in [
        PotentialSpec::power_law(1.5, 2.0),
        PotentialSpec::cosine_perturbed(1.5, 2.0, 3.0),
    ] {
        let class = classify_repulsion(&spec, 2)?;
        let init = init_configuration(200, 2, 1.0, 1, None)?;
        let (end, _) = minimize(&init, &spec, &settings)?;
        let dims = classify_dimension(&end, Some(&spec))?;
        println!(
            "{spec}: beta {:?}, dim {:?}, local {:.2?}",
            class.beta, dims.classified_dim, dims.local_dim_fractions
        );
    }
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
