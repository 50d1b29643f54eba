//! Phase diagrams over `(gamma, alpha)` grids of the power-law family.
//!
//! Every valid cell is minimized from several seeds and classified; the
//! cell's dimension is the most common classification. Cells are
//! independent and run in parallel, and the result does not depend on the
//! order in which they finish.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::classify_dimension;
use crate::minimize::{init_configuration, minimize, MinimizerSettings, Termination};
use crate::potentials::PotentialSpec;
use crate::{Error, Result};

/// Points per sampled curve.
pub const CURVE_SAMPLES: usize = 101;

/// The curve `alpha = gamma / (gamma - 1)` below which rings fatten into
/// annuli in two dimensions.
pub fn fattening_curve_2d(gamma: f64) -> Result<f64> {
    if !(gamma > 1.0) {
        return Err(Error::Domain(format!("fattening curve needs gamma > 1, got {gamma}")));
    }
    Ok(gamma / (gamma - 1.0))
}

/// Parses `start:stop:step` (stop included when hit) or a comma list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse(format!("not a number: '{}'", s.trim())))
    };
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("range must be start:stop:step, got '{text}'")));
        }
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || stop < start {
            return Err(Error::Parse(format!(
                "range needs step > 0 and stop >= start, got '{text}'"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|k| start + k as f64 * step).collect());
    }
    text.split(',').map(num).collect()
}

/// Grid and particle parameters of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub gammas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub ambient_dim: usize,
    pub n_particles: usize,
    pub init_radius: f64,
    pub seeds: Vec<u64>,
}

/// Outcome of one seeded run inside a cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub termination: Option<Termination>,
    pub iterations: u64,
    pub final_energy: Option<f64>,
    pub final_grad_norm: Option<f64>,
    pub classified_dim: Option<usize>,
    pub corr_dim: Option<f64>,
    pub cluster_count: usize,
    /// Set when the run failed; the sweep carries on.
    pub error: Option<String>,
}

impl RunSummary {
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.termination == Some(Termination::StepUnderflow)
    }

    pub fn converged(&self) -> bool {
        matches!(
            self.termination,
            Some(Termination::GradTol) | Some(Termination::EnergyPlateau)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseCell {
    pub gamma: f64,
    pub alpha: f64,
    /// False when `alpha >= gamma`; such cells have no runs.
    pub valid: bool,
    pub seeds_used: Vec<u64>,
    pub runs: Vec<RunSummary>,
    /// Most common dimension over runs that did not fail; ties go to the
    /// smaller dimension.
    pub majority_dim: Option<usize>,
    /// Fraction of those runs agreeing with the majority.
    pub agreement: f64,
    pub failed_runs: usize,
    /// A converged run above `alpha = 2` that is not point-like.
    pub anomalous: bool,
}

/// A named analytic curve in the `(gamma, alpha)` plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagram {
    pub ambient_dim: usize,
    pub n_particles: usize,
    pub gammas: Vec<f64>,
    pub alphas: Vec<f64>,
    /// Row-major: all gammas for the first alpha, then the next alpha.
    pub cells: Vec<PhaseCell>,
    pub curves: Vec<Curve>,
}

impl PhaseDiagram {
    pub fn cell(&self, gamma: f64, alpha: f64) -> Option<&PhaseCell> {
        self.cells.iter().find(|c| c.gamma == gamma && c.alpha == alpha)
    }
}

fn run_one(grid: &SweepGrid, gamma: f64, alpha: f64, seed: u64, settings: &MinimizerSettings) -> RunSummary {
    let mut summary = RunSummary {
        seed,
        termination: None,
        iterations: 0,
        final_energy: None,
        final_grad_norm: None,
        classified_dim: None,
        corr_dim: None,
        cluster_count: 0,
        error: None,
    };
    let spec = PotentialSpec::power_law(alpha, gamma);
    let outcome = init_configuration(grid.n_particles, grid.ambient_dim, grid.init_radius, seed, None)
        .and_then(|init| minimize(&init, &spec, settings))
        .and_then(|(out, report)| Ok((classify_dimension(&out, Some(&spec))?, report)));
    match outcome {
        Ok((dims, report)) => {
            summary.termination = Some(report.termination);
            summary.iterations = report.iterations;
            summary.final_energy = Some(report.final_energy);
            summary.final_grad_norm = Some(report.final_grad_norm);
            summary.classified_dim = dims.classified_dim;
            summary.corr_dim = Some(dims.corr_dim);
            summary.cluster_count = dims.cluster_count;
        }
        Err(e) => summary.error = Some(e.to_string()),
    }
    summary
}

fn aggregate(gamma: f64, alpha: f64, seeds: &[u64], runs: Vec<RunSummary>) -> PhaseCell {
    let failed_runs = runs.iter().filter(|r| r.failed()).count();
    let dims: Vec<usize> = runs
        .iter()
        .filter(|r| !r.failed())
        .filter_map(|r| r.classified_dim)
        .collect();
    let mut majority_dim = None;
    let mut best = 0;
    for d in 0..=3 {
        let count = dims.iter().filter(|&&x| x == d).count();
        if count > best {
            best = count;
            majority_dim = Some(d);
        }
    }
    let agreement = if dims.is_empty() { 0.0 } else { best as f64 / dims.len() as f64 };
    let anomalous = alpha > 2.0
        && runs
            .iter()
            .any(|r| r.converged() && r.classified_dim.is_some_and(|d| d != 0));
    PhaseCell {
        gamma,
        alpha,
        valid: true,
        seeds_used: seeds.to_vec(),
        runs,
        majority_dim,
        agreement,
        failed_runs,
        anomalous,
    }
}

fn invalid_cell(gamma: f64, alpha: f64) -> PhaseCell {
    PhaseCell {
        gamma,
        alpha,
        valid: false,
        seeds_used: Vec::new(),
        runs: Vec::new(),
        majority_dim: None,
        agreement: 0.0,
        failed_runs: 0,
        anomalous: false,
    }
}

fn sample(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    if !(hi > lo) {
        return vec![(lo, f(lo))];
    }
    (0..CURVE_SAMPLES)
        .map(|k| {
            let g = lo + (hi - lo) * k as f64 / (CURVE_SAMPLES - 1) as f64;
            (g, f(g))
        })
        .collect()
}

/// Reference curves over the gamma range `[lo, hi]`.
pub fn reference_curves(ambient_dim: usize, lo: f64, hi: f64) -> Vec<Curve> {
    let mut curves = Vec::new();
    if ambient_dim == 2 {
        let start = lo.max(1.05);
        if hi >= start {
            curves.push(Curve {
                name: "fattening".into(),
                points: sample(start, hi, |g| g / (g - 1.0)),
                note: None,
            });
        }
    }
    curves.push(Curve {
        name: "mild_repulsion".into(),
        points: sample(lo, hi, |_| 2.0),
        note: Some("alpha = 2; above it minimizers are point-like".into()),
    });
    curves.push(Curve {
        name: "confinement".into(),
        points: sample(lo, hi, |g| g),
        note: Some("alpha = gamma; cells on or above it are invalid".into()),
    });
    if ambient_dim == 3 {
        curves.push(Curve {
            name: "shell_instability".into(),
            points: Vec::new(),
            note: Some("no closed form available; not drawn".into()),
        });
    }
    curves
}

/// Minimizes and classifies every valid cell from every seed.
pub fn run_sweep(grid: &SweepGrid, settings: &MinimizerSettings) -> Result<PhaseDiagram> {
    if !(1..=3).contains(&grid.ambient_dim) {
        return Err(Error::InvalidSettings(format!(
            "ambient dimension must be 1, 2 or 3, got {}",
            grid.ambient_dim
        )));
    }
    if grid.seeds.is_empty() {
        return Err(Error::InvalidSettings("sweep needs at least one seed".into()));
    }
    settings.validate()?;

    let cells: Vec<(f64, f64)> = grid
        .alphas
        .iter()
        .flat_map(|&a| grid.gammas.iter().map(move |&g| (g, a)))
        .collect();
    let jobs: Vec<(usize, u64)> = cells
        .iter()
        .enumerate()
        .filter(|(_, (g, a))| a < g)
        .flat_map(|(c, _)| grid.seeds.iter().map(move |&s| (c, s)))
        .collect();
    let mut results: Vec<(usize, RunSummary)> = jobs
        .par_iter()
        .map(|&(c, seed)| (c, run_one(grid, cells[c].0, cells[c].1, seed, settings)))
        .collect();
    results.sort_by_key(|(c, r)| (*c, grid.seeds.iter().position(|&s| s == r.seed)));

    let mut by_cell: Vec<Vec<RunSummary>> = vec![Vec::new(); cells.len()];
    for (c, r) in results {
        by_cell[c].push(r);
    }
    let phase_cells = cells
        .iter()
        .zip(by_cell)
        .map(|(&(g, a), runs)| {
            if a < g {
                aggregate(g, a, &grid.seeds, runs)
            } else {
                invalid_cell(g, a)
            }
        })
        .collect();

    let lo = grid.gammas.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.gammas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let curves = if lo.is_finite() {
        reference_curves(grid.ambient_dim, lo, hi)
    } else {
        Vec::new()
    };
    Ok(PhaseDiagram {
        ambient_dim: grid.ambient_dim,
        n_particles: grid.n_particles,
        gammas: grid.gammas.clone(),
        alphas: grid.alphas.clone(),
        cells: phase_cells,
        curves,
    })
}

/// The grid as text: one column per gamma, one row per alpha, largest alpha
/// on top. `-` marks invalid cells, `?` cells without a classification and
/// `*` anomalous ones.
pub fn diagram_table(diagram: &PhaseDiagram) -> String {
    let mut out = String::from("alpha\\gamma");
    for g in &diagram.gammas {
        out.push_str(&format!("\t{g}"));
    }
    out.push('\n');
    for (row, a) in diagram.alphas.iter().enumerate().rev() {
        out.push_str(&format!("{a}"));
        for col in 0..diagram.gammas.len() {
            let cell = &diagram.cells[row * diagram.gammas.len() + col];
            let mark = match (cell.valid, cell.majority_dim) {
                (false, _) => "-".to_string(),
                (true, None) => "?".to_string(),
                (true, Some(d)) if cell.anomalous => format!("{d}*"),
                (true, Some(d)) => d.to_string(),
            };
            out.push('\t');
            out.push_str(&mark);
        }
        out.push('\n');
    }
    out
}

/// Writes `diagram.json`, `diagram.txt` and one `curve_<name>.dat` per
/// drawn curve into `dir`.
pub fn emit_diagram(diagram: &PhaseDiagram, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("diagram.json"), serde_json::to_string_pretty(diagram)?)?;
    fs::write(dir.join("diagram.txt"), diagram_table(diagram))?;
    for curve in diagram.curves.iter().filter(|c| !c.points.is_empty()) {
        let mut text = format!("# {} gamma alpha\n", curve.name);
        for (g, a) in &curve.points {
            text.push_str(&format!("{} {}\n", crate::fmt17(*g), crate::fmt17(*a)));
        }
        fs::write(dir.join(format!("curve_{}.dat", curve.name)), text)?;
    }
    Ok(())
}

pub fn read_diagram(path: &Path) -> Result<PhaseDiagram> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fattening_curve_values() {
        assert_eq!(fattening_curve_2d(5.0).unwrap(), 1.25);
        assert_eq!(fattening_curve_2d(2.0).unwrap(), 2.0);
        assert!((fattening_curve_2d(1e9).unwrap() - 1.0).abs() < 1e-8);
        assert!(fattening_curve_2d(1.0).is_err());
        assert!(fattening_curve_2d(0.5).is_err());
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("1:2:0.5").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("1.5:15:0.5").unwrap().len(), 28);
        assert_eq!(parse_grid("0.01, 1.1,2.2").unwrap(), vec![0.01, 1.1, 2.2]);
        assert_eq!(parse_grid("3").unwrap(), vec![3.0]);
        assert!(parse_grid("").unwrap().is_empty());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("2:1:0.5").is_err());
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn invalid_cells_have_no_runs() {
        let grid = SweepGrid {
            gammas: vec![2.0],
            alphas: vec![2.0, 3.0],
            ambient_dim: 2,
            n_particles: 10,
            init_radius: 1.0,
            seeds: vec![1],
        };
        let d = run_sweep(&grid, &MinimizerSettings::default()).unwrap();
        assert_eq!(d.cells.len(), 2);
        assert!(d.cells.iter().all(|c| !c.valid && c.runs.is_empty()));
        assert!(diagram_table(&d).contains("-\n"));
    }

    #[test]
    fn majority_prefers_smaller_on_ties() {
        let run = |seed, d| RunSummary {
            seed,
            termination: Some(Termination::EnergyPlateau),
            iterations: 1,
            final_energy: Some(0.0),
            final_grad_norm: Some(0.0),
            classified_dim: Some(d),
            corr_dim: Some(d as f64),
            cluster_count: 1,
            error: None,
        };
        let c = aggregate(5.0, 1.0, &[1, 2], vec![run(1, 2), run(2, 1)]);
        assert_eq!(c.majority_dim, Some(1));
        assert_eq!(c.agreement, 0.5);
        let c = aggregate(5.0, 2.5, &[1], vec![run(1, 1)]);
        assert!(c.anomalous);
    }

    #[test]
    fn curves_by_dimension() {
        let two: Vec<_> = reference_curves(2, 1.5, 15.0).into_iter().map(|c| c.name).collect();
        assert_eq!(two, ["fattening", "mild_repulsion", "confinement"]);
        let three = reference_curves(3, 1.5, 15.0);
        assert!(three.iter().any(|c| c.name == "shell_instability" && c.points.is_empty()));
        assert!(!three.iter().any(|c| c.name == "fattening"));
    }
}
