//! First-order optimality of a converged ring: the generated potential is
//! flat on the support, not lower off it, and `Delta W * mu >= 0` at the
//! particles.

use swarmdim::diagnostics::euler_lagrange_check;
use swarmdim::minimize::{init_configuration, minimize, MinimizerSettings};
use swarmdim::potentials::PotentialSpec;

pub fn run_example() -> swarmdim::Result<()> {
    let spec = PotentialSpec::power_law(1.5, 7.0);
    let init = init_configuration(200, 2, 1.0, 3, None)?;
    let (ring, run) = minimize(&init, &spec, &MinimizerSettings::default())?;
    println!("{:?} after {} iterations", run.termination, run.iterations);

    let el = euler_lagrange_check(&ring, &spec, 1000, 11, None)?;
    println!("2E                  {}", el.two_e);
    println!("components          {:?}", el.component_sizes);
    println!("max sd(V) / |2E|    {:.3e}", el.max_relative_stddev);
    println!(
        "off support         {} violations in {} samples ({} skipped inside the support)",
        el.off_support_violations, el.off_support_samples, el.near_support_samples
    );
    println!("min Laplacian       {:.4} (scale {:.4})", el.laplacian_min, el.laplacian_scale);
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
