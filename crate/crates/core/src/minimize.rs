//! Energy descent for the particle gradient flow
//! `dX_i/dt = -sum_{j != i} m_j grad W(X_i - X_j)`.
//!
//! The default scheme is explicit Euler with a backtracking time step: a
//! step is accepted only if it strictly lowers the discrete energy, after
//! which the step grows; otherwise it shrinks. An explicit RK4 step wrapped
//! in the same acceptance test is available for stiff potentials.

use std::collections::VecDeque;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energy::{accumulate, EvalMode, PairAccumulator, ParticleConfiguration, Provenance};
use crate::potentials::{PotentialSpec, RadialKernel};
use crate::{Error, Point, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    #[default]
    AdaptiveEuler,
    Rk4,
}

/// Free parameters of the descent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizerSettings {
    pub scheme: Scheme,
    pub dt_init: f64,
    pub grow: f64,
    pub shrink: f64,
    pub dt_min: f64,
    pub max_iters: u64,
    /// Threshold on `max_i |F_i|`.
    pub grad_tol: f64,
    /// Relative energy decrease over [`PLATEAU_WINDOW`] iterations.
    pub energy_tol: f64,
    pub eval_mode: EvalMode,
    /// Write a CSV snapshot every this many accepted steps (0 disables).
    pub snapshot_every: u64,
    pub snapshot_dir: Option<PathBuf>,
}

/// Iteration window of the energy-plateau test.
pub const PLATEAU_WINDOW: usize = 50;

/// Maximum number of points kept in [`RunReport::energy_trace`].
const TRACE_CAPACITY: usize = 2048;

impl Default for MinimizerSettings {
    fn default() -> Self {
        MinimizerSettings {
            scheme: Scheme::AdaptiveEuler,
            dt_init: 1e-2,
            grow: 1.2,
            shrink: 0.5,
            dt_min: 1e-12,
            max_iters: 200_000,
            grad_tol: 1e-8,
            energy_tol: 1e-13,
            eval_mode: EvalMode::Sequential,
            snapshot_every: 0,
            snapshot_dir: None,
        }
    }
}

impl MinimizerSettings {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSettings(msg));
        if !(self.dt_init > 0.0 && self.dt_init.is_finite()) {
            return bad(format!("dt_init must be positive, got {}", self.dt_init));
        }
        if !(self.dt_min > 0.0 && self.dt_min < self.dt_init) {
            return bad(format!(
                "need 0 < dt_min < dt_init, got dt_min = {}, dt_init = {}",
                self.dt_min, self.dt_init
            ));
        }
        if !(self.grow > 1.0 && self.grow.is_finite()) {
            return bad(format!("grow must exceed 1, got {}", self.grow));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad(format!("shrink must lie in (0, 1), got {}", self.shrink));
        }
        if !(self.grad_tol > 0.0) {
            return bad(format!("grad_tol must be positive, got {}", self.grad_tol));
        }
        if !(self.energy_tol > 0.0) {
            return bad(format!("energy_tol must be positive, got {}", self.energy_tol));
        }
        if self.snapshot_every > 0 && self.snapshot_dir.is_none() {
            return bad("snapshots requested without a snapshot directory".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    GradTol,
    EnergyPlateau,
    MaxIters,
    StepUnderflow,
}

/// Convergence record of one descent run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub iterations: u64,
    pub accepted_steps: u64,
    pub rejected_steps: u64,
    pub final_energy: f64,
    pub final_grad_norm: f64,
    pub termination: Termination,
    pub wall_seconds: f64,
    /// `(iteration, energy)` after accepted steps, subsampled.
    pub energy_trace: Vec<(u64, f64)>,
}

/// Points i.i.d. uniform in the ball of the given radius around the origin,
/// drawn from ChaCha8 seeded with `seed`.
pub fn init_configuration(
    n: usize,
    ambient_dim: usize,
    radius: f64,
    seed: u64,
    masses: Option<Vec<f64>>,
) -> Result<ParticleConfiguration> {
    if n == 0 {
        return Err(Error::InvalidConfiguration("need at least one particle".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidConfiguration(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if !(1..=3).contains(&ambient_dim) {
        return Err(Error::InvalidConfiguration(format!(
            "dimension must be 1, 2 or 3, got {ambient_dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positions: Vec<Point> = (0..n)
        .map(|_| loop {
            let mut p = [0.0; 3];
            for c in p.iter_mut().take(ambient_dim) {
                *c = rng.random_range(-1.0..1.0);
            }
            if p.iter().map(|c| c * c).sum::<f64>() <= 1.0 {
                break p.map(|c| c * radius);
            }
        })
        .collect();
    let masses = masses.unwrap_or_else(|| vec![1.0 / n as f64; n]);
    ParticleConfiguration::new(
        ambient_dim,
        positions,
        masses,
        Provenance {
            seed,
            recipe: format!("uniform-ball(n={n}, dim={ambient_dim}, radius={radius})"),
        },
    )
}

fn euler_candidate(config: &ParticleConfiguration, forces: &[Point], dt: f64) -> ParticleConfiguration {
    let mut next = config.clone();
    for (x, f) in next.positions_mut().iter_mut().zip(forces) {
        for k in 0..3 {
            x[k] += dt * f[k];
        }
    }
    next
}

/// Outcome of one backtracking Euler step.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub config: ParticleConfiguration,
    pub energy: f64,
    pub dt_next: f64,
    pub accepted: bool,
}

/// One adaptive Euler step from `config` with step `dt`.
///
/// Accepts `X + dt F` if it strictly lowers the energy (next step
/// `dt * grow`); otherwise returns `config` unchanged with `dt * shrink`.
pub fn step_adaptive_euler(
    config: &ParticleConfiguration,
    spec: &PotentialSpec,
    dt: f64,
    settings: &MinimizerSettings,
) -> Result<StepOutcome> {
    if dt < settings.dt_min {
        return Err(Error::StepUnderflow {
            dt_min: settings.dt_min,
        });
    }
    let kernel = spec.kernel(config.dim())?;
    let current = accumulate(config, &kernel, settings.eval_mode)?;
    let candidate = euler_candidate(config, &current.forces, dt);
    let trial = accumulate(&candidate, &kernel, settings.eval_mode);
    Ok(match trial {
        Ok(acc) if acc.energy < current.energy => StepOutcome {
            config: candidate,
            energy: acc.energy,
            dt_next: dt * settings.grow,
            accepted: true,
        },
        Ok(_) | Err(Error::SingularPair { .. }) | Err(Error::NonFinite(_)) => StepOutcome {
            config: config.clone(),
            energy: current.energy,
            dt_next: dt * settings.shrink,
            accepted: false,
        },
        Err(e) => return Err(e),
    })
}

/// Classical RK4 step of the gradient flow (no acceptance test).
pub fn step_rk4(
    config: &ParticleConfiguration,
    spec: &PotentialSpec,
    dt: f64,
) -> Result<ParticleConfiguration> {
    let kernel = spec.kernel(config.dim())?;
    rk4_with_kernel(config, &kernel, dt, EvalMode::Sequential, None)
}

fn rk4_with_kernel(
    config: &ParticleConfiguration,
    kernel: &RadialKernel,
    dt: f64,
    mode: EvalMode,
    k1: Option<&[Point]>,
) -> Result<ParticleConfiguration> {
    let owned;
    let k1 = match k1 {
        Some(k) => k,
        None => {
            owned = accumulate(config, kernel, mode)?.forces;
            &owned
        }
    };
    let k2 = accumulate(&euler_candidate(config, k1, 0.5 * dt), kernel, mode)?.forces;
    let k3 = accumulate(&euler_candidate(config, &k2, 0.5 * dt), kernel, mode)?.forces;
    let k4 = accumulate(&euler_candidate(config, &k3, dt), kernel, mode)?.forces;
    let mut next = config.clone();
    for (i, x) in next.positions_mut().iter_mut().enumerate() {
        for k in 0..3 {
            x[k] += dt / 6.0 * (k1[i][k] + 2.0 * k2[i][k] + 2.0 * k3[i][k] + k4[i][k]);
        }
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("particle {i} left the finite range")));
        }
    }
    Ok(next)
}

struct Trace {
    points: Vec<(u64, f64)>,
    stride: u64,
    counter: u64,
}

impl Trace {
    fn new() -> Self {
        Trace {
            points: Vec::new(),
            stride: 1,
            counter: 0,
        }
    }

    fn record(&mut self, iteration: u64, energy: f64) {
        if self.counter.is_multiple_of(self.stride) {
            self.points.push((iteration, energy));
            if self.points.len() >= TRACE_CAPACITY {
                // Keep the first point and every other one after it.
                let kept: Vec<_> = self.points.iter().copied().step_by(2).collect();
                self.points = kept;
                self.stride *= 2;
            }
        }
        self.counter += 1;
    }

    fn finish(mut self, iteration: u64, energy: f64) -> Vec<(u64, f64)> {
        if self.points.last().map(|p| p.0) != Some(iteration) {
            self.points.push((iteration, energy));
        }
        self.points
    }
}

/// Whether backtracking failed only because the energy cannot resolve the
/// decrease a step would bring.
///
/// The first-order decrease of an Euler step of size `dt` is
/// `dt * sum_i m_i |F_i|^2`; the rounding noise of the pair sum is of order
/// `eps * n * |E|`.
fn is_roundoff_stall(acc: &PairAccumulator, masses: &[f64], dt: f64) -> bool {
    let descent: f64 = acc
        .forces
        .iter()
        .zip(masses)
        .map(|(f, m)| m * (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]))
        .sum();
    let noise = 64.0 * f64::EPSILON * masses.len() as f64 * acc.energy.abs().max(f64::MIN_POSITIVE);
    dt * descent <= noise
}

/// Runs the descent until a termination condition holds.
///
/// The returned configuration never has higher energy than the input.
pub fn minimize(
    config: &ParticleConfiguration,
    spec: &PotentialSpec,
    settings: &MinimizerSettings,
) -> Result<(ParticleConfiguration, RunReport)> {
    settings.validate()?;
    let kernel = spec.kernel(config.dim())?;
    let start = Instant::now();

    let mut state = config.clone();
    let mut acc: PairAccumulator = accumulate(&state, &kernel, settings.eval_mode)?;
    let mut dt = settings.dt_init;
    let mut last_accepted_dt = settings.dt_init;
    let mut iterations = 0u64;
    let mut accepted = 0u64;
    let mut rejected = 0u64;
    let mut window: VecDeque<f64> = VecDeque::with_capacity(PLATEAU_WINDOW + 1);
    let mut trace = Trace::new();
    trace.record(0, acc.energy);
    window.push_back(acc.energy);

    let termination = loop {
        if acc.max_force() < settings.grad_tol {
            break Termination::GradTol;
        }
        if window.len() > PLATEAU_WINDOW {
            let old = window.pop_front().unwrap();
            if old - acc.energy <= settings.energy_tol * acc.energy.abs() {
                break Termination::EnergyPlateau;
            }
        }
        if iterations >= settings.max_iters {
            break Termination::MaxIters;
        }
        if dt < settings.dt_min {
            break if is_roundoff_stall(&acc, state.masses(), last_accepted_dt) {
                Termination::EnergyPlateau
            } else {
                Termination::StepUnderflow
            };
        }
        iterations += 1;

        let candidate = match settings.scheme {
            Scheme::AdaptiveEuler => Ok(euler_candidate(&state, &acc.forces, dt)),
            Scheme::Rk4 => rk4_with_kernel(&state, &kernel, dt, settings.eval_mode, Some(&acc.forces)),
        };
        let trial = candidate.and_then(|c| accumulate(&c, &kernel, settings.eval_mode).map(|a| (c, a)));
        match trial {
            Ok((next, next_acc)) if next_acc.energy < acc.energy => {
                state = next;
                acc = next_acc;
                last_accepted_dt = dt;
                dt *= settings.grow;
                accepted += 1;
                trace.record(iterations, acc.energy);
                if settings.snapshot_every > 0 && accepted.is_multiple_of(settings.snapshot_every) {
                    if let Some(dir) = &settings.snapshot_dir {
                        state.write_csv(&dir.join(format!("snapshot_{accepted:08}.csv")))?;
                    }
                }
            }
            Ok(_) | Err(Error::SingularPair { .. }) | Err(Error::NonFinite(_)) => {
                dt *= settings.shrink;
                rejected += 1;
            }
            Err(e) => return Err(e),
        }
        window.push_back(acc.energy);
    };

    let report = RunReport {
        iterations,
        accepted_steps: accepted,
        rejected_steps: rejected,
        final_energy: acc.energy,
        final_grad_norm: acc.max_force(),
        termination,
        wall_seconds: start.elapsed().as_secs_f64(),
        energy_trace: trace.finish(iterations, acc.energy),
    };
    Ok((state, report))
}
