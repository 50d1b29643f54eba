//! The ball-averaged Laplacian of `-|x|^alpha / alpha` at the origin
//! against its closed form, and its blow-up as the ball shrinks.

use swarmdim::potentials::{approx_laplacian_at, default_quad_order, AttractiveCore};

pub fn run_example() -> swarmdim::Result<()> {
    println!("{:>2} {:>5} {:>6} {:>14} {:>14} {:>10}", "N", "alpha", "eps", "quadrature", "closed form", "rel err");
    for dim in [2, 3] {
        for alpha in [0.5, 1.0, 1.5] {
            let core = AttractiveCore { alpha };
            for eps in [0.1, 0.05, 0.01] {
                let q = -approx_laplacian_at(&core, &[0.0; 3], dim, eps, default_quad_order(dim))?;
                let exact = core.neg_approx_laplacian_at_origin(dim, eps);
                println!(
                    "{dim:>2} {alpha:>5} {eps:>6} {q:>14.6} {exact:>14.6} {:>10.2e}",
                    (q - exact).abs() / exact
                );
            }
        }
    }
    Ok(())
}

fn main() -> swarmdim::Result<()> {
    run_example()
}
