//! Typed run configuration built from INI entries and `--section.key=value`
//! overrides. Every key must be consumed; leftovers are reported with their
//! line.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use super::ini::{parse_ini, IniEntry};
use crate::energy::EvalMode;
use crate::minimize::{MinimizerSettings, Scheme};
use crate::potentials::PotentialSpec;
use crate::sweep::parse_grid;
use crate::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUTPUT_ENV: &str = "SWARMDIM_OUTPUT";
pub const DEFAULT_OUTPUT: &str = "swarmdim-out";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Minimize,
    Diagnose,
    Sweep,
    PotentialTable,
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimize" => Ok(Command::Minimize),
            "diagnose" => Ok(Command::Diagnose),
            "sweep" => Ok(Command::Sweep),
            "potential-table" => Ok(Command::PotentialTable),
            _ => Err(Error::Parse(format!(
                "unknown command '{s}' (expected minimize, diagnose, sweep or potential-table)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParticlesConfig {
    pub n: usize,
    pub dim: usize,
    pub radius: f64,
    pub seed: u64,
    pub masses: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Dat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub snapshot_every: u64,
    pub formats: Vec<Format>,
}

impl OutputConfig {
    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    /// Configuration CSV read by `diagnose`.
    pub input: Option<PathBuf>,
    pub off_support_samples: usize,
    pub seed: u64,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub gammas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub potential: Option<PotentialSpec>,
    pub particles: ParticlesConfig,
    pub solver: MinimizerSettings,
    pub output: OutputConfig,
    pub diagnostics: DiagnosticsConfig,
    pub sweep: Option<SweepConfig>,
    pub table: TableConfig,
}

/// Parses a config file; the command must be given by a top-level
/// `command = ...` key.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with(text, None, &[])
}

/// Parses a config file, then applies `command` (if given) and overrides of
/// the form `("section.key", "value")`, which replace file values.
pub fn parse_config_with(
    text: &str,
    command: Option<Command>,
    overrides: &[(String, String)],
) -> Result<RunConfig> {
    let mut entries = parse_ini(text)?;
    for (path, value) in overrides {
        let (section, key) = path.rsplit_once('.').unwrap_or(("", path.as_str()));
        entries.retain(|e| !(e.section == section && e.key == key));
        entries.push(IniEntry {
            section: section.to_string(),
            key: key.to_string(),
            value: value.clone(),
            line: 0,
        });
    }
    let default_dir = std::env::var_os(OUTPUT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT));
    build(entries, command, default_dir)
}

struct Entries {
    map: BTreeMap<(String, String), IniEntry>,
}

impl Entries {
    fn take(&mut self, section: &str, key: &str) -> Option<IniEntry> {
        self.map.remove(&(section.to_string(), key.to_string()))
    }

    fn has_section(&self, section: &str) -> bool {
        self.map.keys().any(|(s, _)| s == section)
    }

    fn parse<T: FromStr>(&mut self, section: &str, key: &str, what: &str) -> Result<Option<T>> {
        match self.take(section, key) {
            None => Ok(None),
            Some(e) => e.value.parse::<T>().map(Some).map_err(|_| {
                Error::Parse(format!(
                    "{}: {} must be {what}, got '{}'",
                    e.location(),
                    e.path(),
                    e.value
                ))
            }),
        }
    }

    fn real(&mut self, section: &str, key: &str) -> Result<Option<f64>> {
        self.parse(section, key, "a real number")
    }

    fn int<T: FromStr>(&mut self, section: &str, key: &str) -> Result<Option<T>> {
        self.parse(section, key, "a non-negative integer")
    }

    fn list<T>(&mut self, section: &str, key: &str, f: impl Fn(&str) -> Result<T>) -> Result<Option<T>> {
        match self.take(section, key) {
            None => Ok(None),
            Some(e) => f(&e.value).map(Some).map_err(|err| {
                Error::Parse(format!("{}: {}: {}", e.location(), e.path(), err))
            }),
        }
    }
}

fn seeds(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("not a seed: '{}'", s.trim())))
        })
        .collect()
}

fn potential(e: &mut Entries) -> Result<Option<PotentialSpec>> {
    if !e.has_section("potential") {
        return Ok(None);
    }
    let family = e
        .take("potential", "family")
        .map(|x| (x.value.clone(), x.location()))
        .unwrap_or(("powerlaw".into(), String::new()));
    let need = |v: Option<f64>, key: &str| {
        v.ok_or_else(|| Error::Parse(format!("[potential] needs '{key}' for family {}", family.0)))
    };
    let spec = match family.0.as_str() {
        "powerlaw" => {
            let alpha = need(e.real("potential", "alpha")?, "alpha")?;
            let gamma = need(e.real("potential", "gamma")?, "gamma")?;
            let ca = e.real("potential", "coeff_a")?.unwrap_or(1.0);
            let cg = e.real("potential", "coeff_g")?.unwrap_or(1.0);
            PotentialSpec::scaled_power_law(alpha, gamma, ca, cg)
        }
        "cosine" => {
            let alpha = need(e.real("potential", "alpha")?, "alpha")?;
            let gamma = need(e.real("potential", "gamma")?, "gamma")?;
            let p = need(e.real("potential", "p")?, "p")?;
            PotentialSpec::cosine_perturbed(alpha, gamma, p)
        }
        "tanh" => {
            let a = need(e.real("potential", "a")?, "a")?;
            let b = need(e.real("potential", "b")?, "b")?;
            PotentialSpec::tanh_well(a, b)
        }
        other => {
            return Err(Error::Parse(format!(
                "{}: unknown potential family '{other}' (expected powerlaw, cosine or tanh)",
                family.1
            )))
        }
    };
    Ok(Some(spec))
}

fn build(entries: Vec<IniEntry>, command: Option<Command>, default_dir: PathBuf) -> Result<RunConfig> {
    let mut e = Entries {
        map: entries
            .into_iter()
            .map(|x| ((x.section.clone(), x.key.clone()), x))
            .collect(),
    };
    let file_command = e.list("", "command", |s| s.parse::<Command>())?;
    let command = command
        .or(file_command)
        .ok_or_else(|| Error::Parse("no command given".into()))?;

    let potential = potential(&mut e)?;

    let particles = ParticlesConfig {
        n: e.int("particles", "n")?.unwrap_or(0),
        dim: e.int("particles", "dim")?.unwrap_or(2),
        radius: e.real("particles", "radius")?.unwrap_or(1.0),
        seed: e.int("particles", "seed")?.unwrap_or(1),
        masses: e.list("particles", "masses", |s| {
            s.split(',')
                .map(|m| {
                    m.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("not a mass: '{}'", m.trim())))
                })
                .collect()
        })?,
    };

    let mut solver = MinimizerSettings::default();
    if let Some(s) = e.list("solver", "scheme", |s| match s {
        "euler" => Ok(Scheme::AdaptiveEuler),
        "rk4" => Ok(Scheme::Rk4),
        _ => Err(Error::Parse(format!("scheme must be euler or rk4, got '{s}'"))),
    })? {
        solver.scheme = s;
    }
    if let Some(m) = e.list("solver", "eval", |s| match s {
        "sequential" => Ok(EvalMode::Sequential),
        "parallel" => Ok(EvalMode::Parallel),
        _ => Err(Error::Parse(format!("eval must be sequential or parallel, got '{s}'"))),
    })? {
        solver.eval_mode = m;
    }
    for (key, slot) in [
        ("dt_init", &mut solver.dt_init),
        ("grow", &mut solver.grow),
        ("shrink", &mut solver.shrink),
        ("dt_min", &mut solver.dt_min),
        ("grad_tol", &mut solver.grad_tol),
        ("energy_tol", &mut solver.energy_tol),
    ] {
        if let Some(v) = e.real("solver", key)? {
            *slot = v;
        }
    }
    if let Some(v) = e.int("solver", "max_iters")? {
        solver.max_iters = v;
    }

    let output = OutputConfig {
        directory: e
            .take("output", "directory")
            .map(|x| PathBuf::from(x.value))
            .unwrap_or(default_dir),
        snapshot_every: e.int("output", "snapshot_every")?.unwrap_or(0),
        formats: e
            .list("output", "formats", |s| {
                s.split(',')
                    .map(|f| match f.trim() {
                        "csv" => Ok(Format::Csv),
                        "json" => Ok(Format::Json),
                        "dat" => Ok(Format::Dat),
                        other => Err(Error::Parse(format!("unknown format '{other}' (csv, json, dat)"))),
                    })
                    .collect()
            })?
            .unwrap_or_else(|| vec![Format::Csv, Format::Json, Format::Dat]),
    };
    if output.snapshot_every > 0 {
        solver.snapshot_every = output.snapshot_every;
        solver.snapshot_dir = Some(output.directory.join("snapshots"));
    }

    let diagnostics = DiagnosticsConfig {
        input: e.take("diagnostics", "input").map(|x| PathBuf::from(x.value)),
        off_support_samples: e.int("diagnostics", "off_support_samples")?.unwrap_or(2000),
        seed: e.int("diagnostics", "seed")?.unwrap_or(0),
        tol: e.real("diagnostics", "tol")?,
    };

    let sweep = if e.has_section("sweep") {
        Some(SweepConfig {
            gammas: e.list("sweep", "gammas", parse_grid)?.unwrap_or_default(),
            alphas: e.list("sweep", "alphas", parse_grid)?.unwrap_or_default(),
            seeds: e.list("sweep", "seeds", seeds)?.unwrap_or_else(|| vec![1, 2, 3]),
        })
    } else {
        None
    };

    let table = TableConfig {
        r_min: e.real("table", "r_min")?.unwrap_or(0.01),
        r_max: e.real("table", "r_max")?.unwrap_or(2.0),
        points: e.int("table", "points")?.unwrap_or(200),
    };

    if let Some(left) = e.map.values().min_by_key(|x| (x.line == 0, x.line)) {
        return Err(Error::Parse(format!("{}: unknown key '{}'", left.location(), left.path())));
    }

    let config = RunConfig {
        command,
        potential,
        particles,
        solver,
        output,
        diagnostics,
        sweep,
        table,
    };
    check(&config)?;
    Ok(config)
}

fn check(c: &RunConfig) -> Result<()> {
    let missing = |what: &str| Err(Error::Parse(format!("command needs {what}")));
    if !(1..=3).contains(&c.particles.dim) {
        return Err(Error::Parse(format!("particles.dim must be 1, 2 or 3, got {}", c.particles.dim)));
    }
    match c.command {
        Command::Minimize => {
            if c.potential.is_none() {
                return missing("a [potential] section");
            }
            if c.particles.n == 0 {
                return missing("particles.n > 0");
            }
        }
        Command::Diagnose => {
            if c.potential.is_none() {
                return missing("a [potential] section");
            }
            if c.diagnostics.input.is_none() {
                return missing("diagnostics.input");
            }
        }
        Command::Sweep => {
            if c.sweep.is_none() {
                return missing("a [sweep] section");
            }
            if c.particles.n == 0 {
                return missing("particles.n > 0");
            }
        }
        Command::PotentialTable => {
            if c.potential.is_none() {
                return missing("a [potential] section");
            }
            if !(c.table.r_min > 0.0 && c.table.r_max > c.table.r_min && c.table.points >= 2) {
                return Err(Error::Parse(
                    "table needs 0 < r_min < r_max and at least 2 points".into(),
                ));
            }
        }
    }
    Ok(())
}
