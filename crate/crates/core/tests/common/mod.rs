//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use swarmdim::energy::{total_energy, ParticleConfiguration, Provenance};
use swarmdim::minimize::{step_rk4, step_adaptive_euler, MinimizerSettings};
use swarmdim::potentials::PotentialSpec;
use swarmdim::Point;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn config(dim: usize, positions: Vec<Point>) -> ParticleConfiguration {
    ParticleConfiguration::with_equal_masses(dim, positions, Provenance::default()).unwrap()
}

pub fn weighted(dim: usize, positions: Vec<Point>, masses: Vec<f64>) -> ParticleConfiguration {
    ParticleConfiguration::new(dim, positions, masses, Provenance::default()).unwrap()
}

/// Closed-form radial profiles, written out again here so the library is
/// checked against something it does not share code with.
pub fn w_oracle(spec: &PotentialSpec, r: f64) -> f64 {
    fn power(c: f64, e: f64, r: f64) -> f64 {
        if e == 0.0 {
            c * r.ln()
        } else {
            c * r.powf(e) / e
        }
    }
    match *spec {
        PotentialSpec::PowerLaw {
            alpha,
            gamma,
            coeff_a,
            coeff_g,
        } => -power(coeff_a, alpha, r) + power(coeff_g, gamma, r),
        PotentialSpec::CosinePerturbed { alpha, gamma, p } => {
            -power(1.0, alpha, r) + power(1.0, gamma, r) + 1.5 / p * (p * r).cos()
        }
        PotentialSpec::TanhWell { a, b } => {
            -b * r + ((a * (1.0 - r)).cosh().ln() - a.cosh().ln()) / a
        }
    }
}

pub fn energy_oracle(config: &ParticleConfiguration, spec: &PotentialSpec) -> f64 {
    let x = config.positions();
    let m = config.masses();
    let mut e = 0.0;
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            e += m[i] * m[j] * w_oracle(spec, dist(&x[i], &x[j]));
        }
    }
    e
}

pub fn dist(a: &Point, b: &Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// A random admissible potential from each family in turn.
pub fn random_spec(r: &mut ChaCha8Rng, dim: usize, k: usize) -> PotentialSpec {
    let lo = (2.0 - dim as f64).max(-0.9) + 0.1;
    match k % 3 {
        0 => PotentialSpec::power_law(r.random_range(lo..4.0), r.random_range(4.5..12.0)),
        1 => PotentialSpec::cosine_perturbed(
            r.random_range(lo.max(0.2)..1.9),
            r.random_range(2.0..6.0),
            r.random_range(1.0..5.0),
        ),
        _ => PotentialSpec::tanh_well(r.random_range(1.0..8.0), r.random_range(0.1..0.9)),
    }
}

pub fn random_point(r: &mut ChaCha8Rng, dim: usize, scale: f64) -> Point {
    let mut p = [0.0; 3];
    for c in p.iter_mut().take(dim) {
        *c = r.random_range(-scale..scale);
    }
    p
}

/// Five-point central difference of `W(|x|)` along each axis.
pub fn fd_gradient(spec: &PotentialSpec, x: &Point, dim: usize) -> Point {
    let h = 1e-3 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let w = |y: Point| w_oracle(spec, (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt());
    let mut g = [0.0; 3];
    for k in 0..dim {
        let at = |s: f64| {
            let mut y = *x;
            y[k] += s * h;
            w(y)
        };
        g[k] = (at(-2.0) - 8.0 * at(-1.0) + 8.0 * at(1.0) - at(2.0)) / (12.0 * h);
    }
    g
}

/// Worst relative gradient error over `cases` random points and potentials.
/// Errors are relative to `max(|grad W|, |W| / |x|)`, the natural size of
/// the gradient where it happens to vanish.
pub fn worst_gradient_error(cases: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for k in 0..cases {
        let dim = 1 + k % 3;
        let spec = random_spec(&mut r, dim, k);
        let x = loop {
            let x = random_point(&mut r, dim, 1.5);
            let n = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
            if n > 0.05 {
                break x;
            }
        };
        let g = spec.eval_gradient(&x).unwrap();
        let fd = fd_gradient(&spec, &x, dim);
        let rn = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let scale = norm(&g).max(w_oracle(&spec, rn).abs() / rn);
        let err = norm(&[g[0] - fd[0], g[1] - fd[1], g[2] - fd[2]]) / scale;
        worst = worst.max(err);
    }
    worst
}

pub fn norm(p: &Point) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

pub fn random_configuration(r: &mut ChaCha8Rng, dim: usize, n: usize) -> ParticleConfiguration {
    let positions = (0..n).map(|_| random_point(r, dim, 1.0)).collect();
    let raw: Vec<f64> = (0..n).map(|_| r.random_range(0.5..1.5)).collect();
    let total: f64 = raw.iter().sum();
    weighted(dim, positions, raw.iter().map(|m| m / total).collect())
}

/// Rotation by angles about the three axes (only the first one in 2D).
pub fn rotate(p: &Point, dim: usize, angles: [f64; 3]) -> Point {
    let rot = |p: Point, i: usize, j: usize, t: f64| {
        let mut q = p;
        q[i] = t.cos() * p[i] - t.sin() * p[j];
        q[j] = t.sin() * p[i] + t.cos() * p[j];
        q
    };
    match dim {
        1 => [-p[0], 0.0, 0.0],
        2 => rot(*p, 0, 1, angles[0]),
        _ => rot(rot(rot(*p, 0, 1, angles[0]), 1, 2, angles[1]), 0, 2, angles[2]),
    }
}

/// Largest relative energy change under a translation, a rotation and a
/// reversal of particle order.
pub fn worst_invariance_error(cases: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for k in 0..cases {
        let dim = 1 + k % 3;
        let spec = random_spec(&mut r, dim, k);
        let c = random_configuration(&mut r, dim, 12);
        let e = total_energy(&c, &spec).unwrap();
        let shift = random_point(&mut r, dim, 3.0);
        let angles = [r.random_range(0.0..2.0 * PI), r.random_range(0.0..2.0 * PI), r.random_range(0.0..2.0 * PI)];
        let moved = c
            .with_positions(
                c.positions()
                    .iter()
                    .map(|p| [p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]])
                    .collect(),
            )
            .unwrap();
        let turned = c
            .with_positions(c.positions().iter().map(|p| rotate(p, dim, angles)).collect())
            .unwrap();
        let reversed = weighted(
            dim,
            c.positions().iter().rev().copied().collect(),
            c.masses().iter().rev().copied().collect(),
        );
        for other in [moved, turned, reversed] {
            let e2 = total_energy(&other, &spec).unwrap();
            worst = worst.max((e2 - e).abs() / e.abs().max(f64::MIN_POSITIVE));
        }
    }
    worst
}

/// Runs adaptive Euler steps and returns the number of accepted steps that
/// failed to lower the energy.
pub fn monotonicity_breaks(spec: &PotentialSpec, start: &ParticleConfiguration, steps: usize) -> (usize, usize) {
    let settings = MinimizerSettings::default();
    let mut c = start.clone();
    let mut e = total_energy(&c, spec).unwrap();
    let mut dt = settings.dt_init;
    let (mut accepted, mut breaks) = (0, 0);
    for _ in 0..steps {
        let out = step_adaptive_euler(&c, spec, dt, &settings).unwrap();
        if out.accepted {
            accepted += 1;
            let fresh = total_energy(&out.config, spec).unwrap();
            if !(fresh < e) {
                breaks += 1;
            }
            e = fresh;
        }
        c = out.config;
        dt = out.dt_next;
    }
    (accepted, breaks)
}

/// Observed order of RK4 from the errors at `T / k` steps against a fine
/// reference, for `k = 10, 20`.
pub fn rk4_observed_order() -> f64 {
    let spec = PotentialSpec::power_law(1.5, 4.0);
    let start = config(2, vec![[0.0, 0.0, 0.0], [1.3, 0.2, 0.0], [0.4, 0.9, 0.0], [-0.5, 0.6, 0.0]]);
    let t = 0.4;
    let run = |k: usize| {
        let mut c = start.clone();
        for _ in 0..k {
            c = step_rk4(&c, &spec, t / k as f64).unwrap();
        }
        c
    };
    let reference = run(1280);
    let err = |c: &ParticleConfiguration| {
        c.positions()
            .iter()
            .zip(reference.positions())
            .map(|(a, b)| dist(a, b))
            .fold(0.0, f64::max)
    };
    let (e1, e2) = (err(&run(10)), err(&run(20)));
    (e1 / e2).log2()
}

pub fn circle(n: usize, seed: u64) -> ParticleConfiguration {
    let mut r = rng(seed);
    config(
        2,
        (0..n)
            .map(|_| {
                let t = r.random_range(0.0..2.0 * PI);
                [t.cos(), t.sin(), 0.0]
            })
            .collect(),
    )
}

pub fn disk(n: usize, seed: u64) -> ParticleConfiguration {
    let mut r = rng(seed);
    config(
        2,
        (0..n)
            .map(|_| {
                let rad = r.random_range(0.0f64..1.0).sqrt();
                let t = r.random_range(0.0..2.0 * PI);
                [rad * t.cos(), rad * t.sin(), 0.0]
            })
            .collect(),
    )
}

/// `n` points split among the vertices of an equilateral triangle, each
/// jittered by a Gaussian of width `sigma`.
pub fn point_clusters(n: usize, sigma: f64, seed: u64) -> ParticleConfiguration {
    let mut r = rng(seed);
    let noise = Normal::new(0.0, sigma).unwrap();
    config(
        2,
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * (i % 3) as f64 / 3.0;
                [t.cos() + noise.sample(&mut r), t.sin() + noise.sample(&mut r), 0.0]
            })
            .collect(),
    )
}
