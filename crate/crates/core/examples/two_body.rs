//! Two particles: the descent finds the root of `w'`, and the generated
//! potential equals `2E` at both.

use swarmdim::diagnostics::euler_lagrange_check;
use swarmdim::energy::{total_energy, ParticleConfiguration, Provenance};
use swarmdim::minimize::{minimize, MinimizerSettings};
use swarmdim::potentials::PotentialSpec;

pub fn run_example() -> swarmdim::Result<()> {
    // w(r) = -r^2/2 + r^4/4 has w'(1) = 0.
    let spec = PotentialSpec::power_law(2.0, 4.0);
    let start = ParticleConfiguration::with_equal_masses(
        1,
        vec![[0.0; 3], [3.0, 0.0, 0.0]],
        Provenance::default(),
    )?;
    let (end, report) = minimize(&start, &spec, &MinimizerSettings::default())?;
    let d = (end.positions()[1][0] - end.positions()[0][0]).abs();
    println!("{:?} after {} iterations, distance {d:.12}", report.termination, report.iterations);

    let el = euler_lagrange_check(&end, &spec, 100, 0, Some(1e-9))?;
    println!("V = {:?}, 2E = {}", el.v_values, el.two_e);

    // Unequal masses m and 1 - m at distance 1 under -x^2 + x^4/2.
    let w = PotentialSpec::scaled_power_law(2.0, 4.0, 2.0, 2.0);
    for m in [0.3, 0.5, 0.7] {
        let c = ParticleConfiguration::new(
            1,
            vec![[0.0; 3], [1.0, 0.0, 0.0]],
            vec![m, 1.0 - m],
            Provenance::default(),
        )?;
        let e = total_energy(&c, &w)?;
        println!("m = {m}: E = {e:.17} vs {:.17}", 0.5 * (m - 0.5) * (m - 0.5) - 0.125);
    }
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
