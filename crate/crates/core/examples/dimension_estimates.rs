//! Dimension estimates on sampled shapes: the correlation slope, the local
//! principal-component dimensions and the resulting classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swarmdim::diagnostics::{classify_dimension, estimate_correlation_dimension};
use swarmdim::energy::{ParticleConfiguration, Provenance};
use swarmdim::Point;

fn shape(name: &str, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            match name {
                "circle" => [t.cos(), t.sin(), 0.0],
                "disk" => {
                    let r = rng.random::<f64>().sqrt();
                    [r * t.cos(), r * t.sin(), 0.0]
                }
                "three points" => {
                    let c = (k % 3) as f64 * std::f64::consts::TAU / 3.0;
                    [c.cos() + 1e-6 * t.cos(), c.sin() + 1e-6 * t.sin(), 0.0]
                }
                _ => {
                    let z: f64 = rng.random_range(-1.0..1.0);
                    let s = (1.0 - z * z).sqrt();
                    [s * t.cos(), s * t.sin(), z]
                }
            }
        })
        .collect()
}

pub fn run_example() -> swarmdim::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, dim) in [("circle", 2), ("disk", 2), ("three points", 2), ("sphere", 3)] {
        let pts = shape(name, 1000, &mut rng);
        let c = ParticleConfiguration::with_equal_masses(dim, pts, Provenance::default())?;
        let fit = estimate_correlation_dimension(&c)?;
        let report = classify_dimension(&c, None)?;
        println!(
            "{name:>12}: corr {:.3} (R^2 {:.4})  local {:.2?}  dim {:?}",
            fit.corr_dim, fit.fit_r2, report.local_dim_fractions, report.classified_dim
        );
    }
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
