//! The `swarmdim` command line.
//!
//! ```text
//! swarmdim <command> [config.ini] [--section.key=value ...] [--threads k]
//! ```
//!
//! Commands are `minimize`, `diagnose`, `sweep` and `potential-table`. Exit
//! codes: 0 on success, 1 for configuration errors, 2 for numerical failure
//! (step-size underflow, coincident particles under a singular potential,
//! non-finite state).

mod config;
mod ini;

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use config::{
    parse_config, parse_config_with, Command, DiagnosticsConfig, Format, OutputConfig, ParticlesConfig,
    RunConfig, SweepConfig, TableConfig, DEFAULT_OUTPUT, OUTPUT_ENV,
};
pub use ini::{parse_ini, IniEntry};

use crate::diagnostics::{classify_dimension, euler_lagrange_check, DimensionReport, EulerLagrangeReport};
use crate::energy::ParticleConfiguration;
use crate::minimize::{init_configuration, minimize, RunReport, Termination};
use crate::potentials::{classify_repulsion, PotentialSpec, RepulsionClass};
use crate::sweep::{diagram_table, emit_diagram, run_sweep, SweepGrid};
use crate::{fmt17, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Descent statistics as written to `report.json`. Wall time is left out so
/// that reruns produce identical files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSection {
    pub iterations: u64,
    pub accepted_steps: u64,
    pub rejected_steps: u64,
    pub final_energy: f64,
    pub final_grad_norm: f64,
    pub termination: Termination,
}

impl From<&RunReport> for RunSection {
    fn from(r: &RunReport) -> Self {
        RunSection {
            iterations: r.iterations,
            accepted_steps: r.accepted_steps,
            rejected_steps: r.rejected_steps,
            final_energy: r.final_energy,
            final_grad_norm: r.final_grad_norm,
            termination: r.termination,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticlesSection {
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    pub recipe: String,
}

/// Contents of `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub potential: PotentialSpec,
    pub repulsion: RepulsionClass,
    pub particles: ParticlesSection,
    /// Absent for `diagnose`.
    pub run: Option<RunSection>,
    pub dimension: DimensionReport,
    pub euler_lagrange: EulerLagrangeReport,
}

/// Maps an error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SingularPair { .. } | Error::StepUnderflow { .. } | Error::NonFinite(_) => EXIT_NUMERICAL,
        _ => EXIT_CONFIG,
    }
}

struct Invocation {
    command: Command,
    config_path: Option<String>,
    overrides: Vec<(String, String)>,
    threads: Option<usize>,
}

const USAGE: &str = "usage: swarmdim <minimize|diagnose|sweep|potential-table> [config.ini] \
[--section.key=value ...] [--threads k]";

fn parse_args(args: &[String]) -> Result<Invocation> {
    let mut it = args.iter();
    let command = it
        .next()
        .ok_or_else(|| Error::Parse(USAGE.into()))?
        .parse::<Command>()?;
    let mut inv = Invocation {
        command,
        config_path: None,
        overrides: Vec::new(),
        threads: None,
    };
    while let Some(arg) = it.next() {
        if arg == "--threads" || arg.starts_with("--threads=") {
            let value = match arg.strip_prefix("--threads=") {
                Some(v) => v.to_string(),
                None => it
                    .next()
                    .cloned()
                    .ok_or_else(|| Error::Parse("--threads needs a value".into()))?,
            };
            let k = value
                .parse::<usize>()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| Error::Parse(format!("--threads must be a positive integer, got '{value}'")))?;
            inv.threads = Some(k);
        } else if let Some(rest) = arg.strip_prefix("--") {
            let (key, value) = rest
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("override must look like --section.key=value, got '{arg}'")))?;
            inv.overrides.push((key.to_string(), value.to_string()));
        } else if inv.config_path.is_none() {
            inv.config_path = Some(arg.clone());
        } else {
            return Err(Error::Parse(format!("unexpected argument '{arg}'\n{USAGE}")));
        }
    }
    Ok(inv)
}

/// Runs the command line and returns the process exit code. Messages go to
/// `out` and `err`.
pub fn run_with(args: &[String], out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32 {
    let inv = match parse_args(args) {
        Ok(inv) => inv,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_CONFIG;
        }
    };
    let text = match &inv.config_path {
        Some(p) => match fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "cannot read {p}: {e}");
                return EXIT_CONFIG;
            }
        },
        None => String::new(),
    };
    let config = match parse_config_with(&text, Some(inv.command), &inv.overrides) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_CONFIG;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = inv.threads {
        pool = pool.num_threads(k);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "cannot start worker threads: {e}");
            return EXIT_CONFIG;
        }
    };
    match pool.install(|| execute(&config, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}

/// `run_with` on the process's standard streams.
pub fn run(args: &[String]) -> i32 {
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Executes a parsed configuration, returning the exit code.
pub fn execute(config: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    match config.command {
        Command::Minimize => cmd_minimize(config, out),
        Command::Diagnose => cmd_diagnose(config, out),
        Command::Sweep => cmd_sweep(config, out),
        Command::PotentialTable => cmd_potential_table(config, out),
    }
}

fn spec_of(config: &RunConfig) -> Result<&PotentialSpec> {
    config
        .potential
        .as_ref()
        .ok_or_else(|| Error::Parse("command needs a [potential] section".into()))
}

fn write_dat(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> Result<()> {
    let mut text = format!("# {header}\n");
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

fn diagnose_and_write(
    config: &RunConfig,
    spec: &PotentialSpec,
    state: &ParticleConfiguration,
    run: Option<&RunReport>,
    out: &mut (dyn Write + Send),
) -> Result<Report> {
    let repulsion = classify_repulsion(spec, state.dim())?;
    let dimension = classify_dimension(state, Some(spec))?;
    let d = &config.diagnostics;
    let euler_lagrange = euler_lagrange_check(state, spec, d.off_support_samples, d.seed, d.tol)?;
    let report = Report {
        command: match config.command {
            Command::Diagnose => "diagnose",
            _ => "minimize",
        }
        .into(),
        potential: spec.clone(),
        repulsion,
        particles: ParticlesSection {
            n: state.len(),
            dim: state.dim(),
            seed: state.provenance().seed,
            recipe: state.provenance().recipe.clone(),
        },
        run: run.map(RunSection::from),
        dimension,
        euler_lagrange,
    };

    let dir = &config.output.directory;
    fs::create_dir_all(dir)?;
    if config.output.wants(Format::Csv) {
        state.write_csv(&dir.join("final.csv"))?;
    }
    if config.output.wants(Format::Json) {
        fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    }
    if config.output.wants(Format::Dat) {
        if let Some(r) = run {
            write_dat(
                &dir.join("energy_trace.dat"),
                "iteration energy",
                r.energy_trace.iter().map(|(i, e)| format!("{i} {}", fmt17(*e))),
            )?;
        }
        write_dat(
            &dir.join("radial_hist.dat"),
            "bin_center count",
            report
                .dimension
                .radial_histogram
                .iter()
                .map(|(c, k)| format!("{} {k}", fmt17(*c))),
        )?;
    }

    let dim = &report.dimension;
    let el = &report.euler_lagrange;
    writeln!(out, "potential        {spec}")?;
    writeln!(out, "repulsion        {}", report.repulsion.note)?;
    if let Some(r) = run {
        writeln!(
            out,
            "descent          {:?} after {} iterations ({} accepted), E = {}, max|F| = {:.3e}, {:.2} s",
            r.termination, r.iterations, r.accepted_steps, r.final_energy, r.final_grad_norm, r.wall_seconds
        )?;
    }
    match dim.classified_dim {
        Some(k) => writeln!(out, "dimension        {k}")?,
        None => writeln!(out, "dimension        refused (n = {})", dim.n)?,
    }
    writeln!(
        out,
        "correlation dim  {:.3} (R^2 {:.4}), {} clusters",
        dim.corr_dim, dim.fit_r2, dim.cluster_count
    )?;
    writeln!(
        out,
        "euler-lagrange   2E = {}, max sd(V)/|2E| = {:.2e}, off-support violations {}/{}, min Laplacian {:.3e}",
        el.two_e, el.max_relative_stddev, el.off_support_violations, el.off_support_samples, el.laplacian_min
    )?;
    writeln!(out, "output           {}", dir.display())?;
    Ok(report)
}

/// Seeded initialization, descent, classification and residual checks.
pub fn cmd_minimize(config: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let spec = spec_of(config)?;
    let p = &config.particles;
    classify_repulsion(spec, p.dim)?;
    let init = init_configuration(p.n, p.dim, p.radius, p.seed, p.masses.clone())?;
    let (state, report) = minimize(&init, spec, &config.solver)?;
    diagnose_and_write(config, spec, &state, Some(&report), out)?;
    Ok(if report.termination == Termination::StepUnderflow {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    })
}

/// Diagnostics of a configuration read from `diagnostics.input`.
pub fn cmd_diagnose(config: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let spec = spec_of(config)?;
    let path = config
        .diagnostics
        .input
        .as_ref()
        .ok_or_else(|| Error::Parse("diagnose needs diagnostics.input".into()))?;
    let state = ParticleConfiguration::read_csv(path)?;
    diagnose_and_write(config, spec, &state, None, out)?;
    Ok(EXIT_OK)
}

/// A phase diagram over the `[sweep]` grid.
pub fn cmd_sweep(config: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let s = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Parse("sweep needs a [sweep] section".into()))?;
    let grid = SweepGrid {
        gammas: s.gammas.clone(),
        alphas: s.alphas.clone(),
        ambient_dim: config.particles.dim,
        n_particles: config.particles.n,
        init_radius: config.particles.radius,
        seeds: s.seeds.clone(),
    };
    let diagram = run_sweep(&grid, &config.solver)?;
    emit_diagram(&diagram, &config.output.directory)?;
    write!(out, "{}", diagram_table(&diagram))?;
    let failed: usize = diagram.cells.iter().map(|c| c.failed_runs).sum();
    let anomalous = diagram.cells.iter().filter(|c| c.anomalous).count();
    writeln!(
        out,
        "{} cells, {failed} failed runs, {anomalous} anomalous cells; output {}",
        diagram.cells.len(),
        config.output.directory.display()
    )?;
    Ok(EXIT_OK)
}

/// Tabulates `w`, `w'` and `Delta W` and states the repulsivity class.
pub fn cmd_potential_table(config: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32> {
    let spec = spec_of(config)?;
    let dim = config.particles.dim;
    let class = classify_repulsion(spec, dim)?;
    let t = &config.table;
    let radii: Vec<f64> = (0..t.points)
        .map(|k| t.r_min + (t.r_max - t.r_min) * k as f64 / (t.points - 1) as f64)
        .collect();
    let mut rows = Vec::with_capacity(radii.len());
    for &r in &radii {
        let w = spec.eval_w(r)?;
        let dw = spec.eval_w_prime(r)?;
        let lap = spec.eval_laplacian(&[r, 0.0, 0.0], dim)?;
        rows.push((r, w, dw, lap));
    }

    writeln!(out, "potential  {spec} in R^{dim}")?;
    writeln!(out, "class      {}", class.kind)?;
    match class.beta {
        Some(b) => writeln!(out, "beta       {b}")?,
        None => writeln!(out, "beta       -")?,
    }
    writeln!(out, "predicts   {}", class.note)?;
    writeln!(out, "{:>24} {:>24} {:>24} {:>24}", "r", "w", "w'", "laplacian")?;
    for (r, w, dw, lap) in &rows {
        writeln!(out, "{:>24} {:>24} {:>24} {:>24}", fmt17(*r), fmt17(*w), fmt17(*dw), fmt17(*lap))?;
    }

    if config.output.wants(Format::Dat) {
        let dir = &config.output.directory;
        fs::create_dir_all(dir)?;
        for (name, col) in [("w", 1), ("w_prime", 2), ("laplacian", 3)] {
            write_dat(
                &dir.join(format!("{name}.dat")),
                &format!("r {name}"),
                rows.iter().map(|row| {
                    let v = [row.0, row.1, row.2, row.3][col];
                    format!("{} {}", fmt17(row.0), fmt17(v))
                }),
            )?;
        }
    }
    Ok(EXIT_OK)
}
