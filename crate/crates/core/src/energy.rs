//! Particle configurations, the discrete interaction energy
//! `E = 1/2 sum_{i != j} m_i m_j W(X_i - X_j)`, the particle velocities
//! `F_i = -sum_{j != i} m_j grad W(X_i - X_j)` of the gradient flow, and the
//! generated potential `V = W * mu`.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::potentials::{PotentialSpec, RadialKernel};
use crate::{fmt17, norm, sub, Error, Point, Result};

/// Where a configuration came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub recipe: String,
}

/// `n` weighted particles in `R^N`, `N in {1, 2, 3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticleConfiguration {
    dim: usize,
    positions: Vec<Point>,
    masses: Vec<f64>,
    provenance: Provenance,
}

const MASS_TOLERANCE: f64 = 1e-12;

impl ParticleConfiguration {
    /// Builds a configuration, checking that masses are positive and sum to
    /// one, coordinates are finite, and unused coordinates are zero.
    pub fn new(
        dim: usize,
        positions: Vec<Point>,
        masses: Vec<f64>,
        provenance: Provenance,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidConfiguration(format!(
                "dimension must be 1, 2 or 3, got {dim}"
            )));
        }
        if positions.is_empty() {
            return Err(Error::InvalidConfiguration("no particles".into()));
        }
        if positions.len() != masses.len() {
            return Err(Error::InvalidConfiguration(format!(
                "{} positions but {} masses",
                positions.len(),
                masses.len()
            )));
        }
        for (i, p) in positions.iter().enumerate() {
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidConfiguration(format!(
                    "particle {i} has a non-finite coordinate"
                )));
            }
            if p[dim..].iter().any(|&c| c != 0.0) {
                return Err(Error::InvalidConfiguration(format!(
                    "particle {i} has non-zero coordinates beyond dimension {dim}"
                )));
            }
        }
        if let Some(i) = masses.iter().position(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(Error::InvalidConfiguration(format!(
                "mass of particle {i} must be positive, got {}",
                masses[i]
            )));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidConfiguration(format!(
                "masses sum to {total}, expected 1"
            )));
        }
        Ok(ParticleConfiguration {
            dim,
            positions,
            masses,
            provenance,
        })
    }

    /// Equal masses `1/n`.
    pub fn with_equal_masses(dim: usize, positions: Vec<Point>, provenance: Provenance) -> Result<Self> {
        let n = positions.len().max(1);
        Self::new(dim, positions, vec![1.0 / n as f64; n], provenance)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn set_provenance(&mut self, provenance: Provenance) {
        self.provenance = provenance;
    }

    /// Replaces the positions, keeping masses and provenance.
    pub fn with_positions(&self, positions: Vec<Point>) -> Result<Self> {
        Self::new(self.dim, positions, self.masses.clone(), self.provenance.clone())
    }

    pub(crate) fn positions_mut(&mut self) -> &mut [Point] {
        &mut self.positions
    }

    /// Mass-weighted centroid.
    pub fn centroid(&self) -> Point {
        let mut c = [0.0; 3];
        for (p, m) in self.positions.iter().zip(&self.masses) {
            for k in 0..3 {
                c[k] += m * p[k];
            }
        }
        c
    }

    /// Diagonal of the axis-aligned bounding box; within a factor `sqrt(N)`
    /// of the diameter.
    pub fn bounding_diagonal(&self) -> f64 {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &self.positions {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        norm(&sub(&hi, &lo))
    }

    /// Exact diameter (largest pairwise distance), `O(n^2)`.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.positions.iter().enumerate() {
            for b in &self.positions[i + 1..] {
                d = d.max(norm(&sub(a, b)));
            }
        }
        d
    }

    /// Writes the CSV form: a `# dim=<N> n=<n>` header, then one
    /// `x[,y[,z]],mass` row per particle with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# dim={} n={}\n", self.dim, self.len());
        for (p, m) in self.positions.iter().zip(&self.masses) {
            for c in &p[..self.dim] {
                out.push_str(&fmt17(*c));
                out.push(',');
            }
            let _ = writeln!(out, "{}", fmt17(*m));
        }
        out
    }

    /// Parses the CSV form written by [`ParticleConfiguration::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty configuration file".into()))?;
        let (dim, n) = parse_header(header)?;
        let mut positions = Vec::with_capacity(n);
        let mut masses = Vec::with_capacity(n);
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != dim + 1 {
                return Err(Error::Parse(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    dim + 1,
                    fields.len()
                )));
            }
            let mut values = [0.0; 4];
            for (k, f) in fields.iter().enumerate() {
                values[k] = f.parse::<f64>().map_err(|e| {
                    Error::Parse(format!("line {}: bad number {f:?}: {e}", lineno + 1))
                })?;
            }
            let mut p = [0.0; 3];
            p[..dim].copy_from_slice(&values[..dim]);
            positions.push(p);
            masses.push(values[dim]);
        }
        if positions.len() != n {
            return Err(Error::Parse(format!(
                "header announces {n} particles, found {}",
                positions.len()
            )));
        }
        Self::new(
            dim,
            positions,
            masses,
            Provenance {
                seed: 0,
                recipe: "csv".into(),
            },
        )
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut config = Self::from_csv(&text)?;
        config.provenance.recipe = format!("csv:{}", path.display());
        Ok(config)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse("line 1: expected header `# dim=<N> n=<n>`".into()))?;
    let mut dim = None;
    let mut n = None;
    for token in body.split_whitespace() {
        match token.split_once('=') {
            Some(("dim", v)) => dim = v.parse::<usize>().ok(),
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            _ => {}
        }
    }
    match (dim, n) {
        (Some(d), Some(n)) if (1..=3).contains(&d) => Ok((d, n)),
        _ => Err(Error::Parse(format!("line 1: malformed header {line:?}"))),
    }
}

/// How the pair loops are evaluated.
///
/// `Sequential` visits each unordered pair once and is bitwise
/// reproducible. `Parallel` evaluates one row per particle on the rayon pool
/// and reduces rows in index order, so its result does not depend on the
/// thread count; it may differ from `Sequential` by rounding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvalMode {
    #[default]
    Sequential,
    Parallel,
}

/// Result of one fused pass over all pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct PairAccumulator {
    pub energy: f64,
    /// `F_i = -sum_j m_j grad W(X_i - X_j)`.
    pub forces: Vec<Point>,
    pub min_pair_distance: f64,
    /// Pairs closer than the coincidence threshold (only possible for
    /// potentials finite at the origin; they contribute `W(0)` and no force).
    pub singular_pair_count: usize,
}

impl PairAccumulator {
    /// `max_i |F_i|`.
    pub fn max_force(&self) -> f64 {
        self.forces.iter().map(norm).fold(0.0, f64::max)
    }

    /// `sum_i m_i F_i`, zero up to rounding since `grad W` is odd.
    pub fn momentum(&self, masses: &[f64]) -> Point {
        let mut s = [0.0; 3];
        for (f, m) in self.forces.iter().zip(masses) {
            for k in 0..3 {
                s[k] += m * f[k];
            }
        }
        s
    }
}

/// Distances below this fraction of the configuration size count as
/// coincident.
const COINCIDENCE_FRACTION: f64 = 1e-14;

/// Energy and forces in one pass.
pub fn accumulate(
    config: &ParticleConfiguration,
    kernel: &RadialKernel,
    mode: EvalMode,
) -> Result<PairAccumulator> {
    let threshold = COINCIDENCE_FRACTION * config.bounding_diagonal();
    let singular = kernel.singular_at_origin();
    let w0 = if singular { 0.0 } else { kernel.value(0.0) };
    match mode {
        EvalMode::Sequential => accumulate_sequential(config, kernel, threshold, singular, w0),
        EvalMode::Parallel => accumulate_parallel(config, kernel, threshold, singular, w0),
    }
}

fn accumulate_sequential(
    config: &ParticleConfiguration,
    kernel: &RadialKernel,
    threshold: f64,
    singular: bool,
    w0: f64,
) -> Result<PairAccumulator> {
    let x = &config.positions;
    let m = &config.masses;
    let n = x.len();
    let mut forces = vec![[0.0; 3]; n];
    let mut energy = 0.0;
    let mut min_d = f64::INFINITY;
    let mut coincident = 0;
    for i in 0..n {
        let xi = x[i];
        let mi = m[i];
        let mut fi = [0.0; 3];
        let mut ei = 0.0;
        for j in (i + 1)..n {
            let d = sub(&xi, &x[j]);
            let r = norm(&d);
            min_d = min_d.min(r);
            if r <= threshold {
                if singular {
                    return Err(Error::SingularPair { i, j });
                }
                coincident += 1;
                ei += m[j] * w0;
                continue;
            }
            let (w, slope) = kernel.value_and_slope(r);
            let s = slope / r;
            ei += m[j] * w;
            let g = [s * d[0], s * d[1], s * d[2]];
            let fj = &mut forces[j];
            for k in 0..3 {
                fi[k] -= m[j] * g[k];
                fj[k] += mi * g[k];
            }
        }
        energy += mi * ei;
        for k in 0..3 {
            forces[i][k] += fi[k];
        }
    }
    if !energy.is_finite() {
        return Err(Error::NonFinite(format!("energy evaluated to {energy}")));
    }
    Ok(PairAccumulator {
        energy,
        forces,
        min_pair_distance: min_d,
        singular_pair_count: coincident,
    })
}

struct Row {
    energy: f64,
    force: Point,
    min_d: f64,
    coincident: usize,
    singular_with: Option<usize>,
}

fn accumulate_parallel(
    config: &ParticleConfiguration,
    kernel: &RadialKernel,
    threshold: f64,
    singular: bool,
    w0: f64,
) -> Result<PairAccumulator> {
    let x = &config.positions;
    let m = &config.masses;
    let rows: Vec<Row> = (0..x.len())
        .into_par_iter()
        .map(|i| {
            let xi = x[i];
            let mut row = Row {
                energy: 0.0,
                force: [0.0; 3],
                min_d: f64::INFINITY,
                coincident: 0,
                singular_with: None,
            };
            for (j, xj) in x.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = sub(&xi, xj);
                let r = norm(&d);
                row.min_d = row.min_d.min(r);
                if r <= threshold {
                    if singular {
                        row.singular_with.get_or_insert(j);
                    } else {
                        row.coincident += 1;
                        row.energy += m[j] * w0;
                    }
                    continue;
                }
                let (w, slope) = kernel.value_and_slope(r);
                let s = m[j] * slope / r;
                row.energy += m[j] * w;
                for k in 0..3 {
                    row.force[k] -= s * d[k];
                }
            }
            row
        })
        .collect();

    let mut energy = 0.0;
    let mut min_d = f64::INFINITY;
    let mut coincident = 0;
    let mut forces = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.singular_with {
            return Err(Error::SingularPair {
                i: i.min(j),
                j: i.max(j),
            });
        }
        energy += m[i] * row.energy;
        min_d = min_d.min(row.min_d);
        coincident += row.coincident;
        forces.push(row.force);
    }
    energy *= 0.5;
    if !energy.is_finite() {
        return Err(Error::NonFinite(format!("energy evaluated to {energy}")));
    }
    Ok(PairAccumulator {
        energy,
        forces,
        min_pair_distance: min_d,
        singular_pair_count: coincident / 2,
    })
}

/// Energy only; skips the force bookkeeping.
pub fn energy_with_kernel(
    config: &ParticleConfiguration,
    kernel: &RadialKernel,
    mode: EvalMode,
) -> Result<f64> {
    accumulate(config, kernel, mode).map(|acc| acc.energy)
}

/// `E = 1/2 sum_{i != j} m_i m_j W(X_i - X_j)`.
pub fn total_energy(config: &ParticleConfiguration, spec: &PotentialSpec) -> Result<f64> {
    let kernel = spec.kernel(config.dim)?;
    energy_with_kernel(config, &kernel, EvalMode::Sequential)
}

/// `F_i = -sum_{j != i} m_j grad W(X_i - X_j)`, the right-hand side of the
/// particle gradient flow.
pub fn forces(config: &ParticleConfiguration, spec: &PotentialSpec) -> Result<Vec<Point>> {
    Ok(pair_accumulator(config, spec)?.forces)
}

pub fn pair_accumulator(config: &ParticleConfiguration, spec: &PotentialSpec) -> Result<PairAccumulator> {
    let kernel = spec.kernel(config.dim)?;
    accumulate(config, &kernel, EvalMode::Sequential)
}

/// A point at which the generated potential is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QueryPoint {
    /// An arbitrary point; all particles contribute.
    Free(Point),
    /// The position of particle `i`, with its own term excluded.
    Particle(usize),
}

/// `V(x) = sum_j m_j W(x - X_j)`, `+inf` where a free query hits a particle
/// of a singular potential.
pub fn generated_potential(
    config: &ParticleConfiguration,
    spec: &PotentialSpec,
    queries: &[QueryPoint],
) -> Result<Vec<f64>> {
    let kernel = spec.kernel(config.dim)?;
    queries
        .iter()
        .map(|q| generated_potential_at(config, &kernel, *q))
        .collect()
}

pub(crate) fn generated_potential_at(
    config: &ParticleConfiguration,
    kernel: &RadialKernel,
    query: QueryPoint,
) -> Result<f64> {
    let (x, skip) = match query {
        QueryPoint::Free(p) => (p, None),
        QueryPoint::Particle(i) => {
            let p = *config.positions.get(i).ok_or_else(|| {
                Error::Domain(format!("particle index {i} out of range"))
            })?;
            (p, Some(i))
        }
    };
    let mut v = 0.0;
    for (j, (xj, mj)) in config.positions.iter().zip(&config.masses).enumerate() {
        if Some(j) == skip {
            continue;
        }
        let w = kernel.value(norm(&sub(&x, xj)));
        if let (true, Some(i)) = (w == f64::INFINITY, skip) {
            return Err(Error::SingularPair {
                i: i.min(j),
                j: i.max(j),
            });
        }
        v += mj * w;
    }
    Ok(v)
}

/// Order statistics of the `n(n-1)/2` pairwise distances.
#[derive(Clone, Debug, PartialEq)]
pub struct PairDistanceStats {
    pub min: f64,
    pub max: f64,
    pub median: f64,
    pub all_pairs_sorted: Vec<f64>,
}

impl PairDistanceStats {
    /// Empirical quantile (nearest rank on the sorted list), `q in [0, 1]`.
    pub fn quantile(&self, q: f64) -> f64 {
        quantile_sorted(&self.all_pairs_sorted, q)
    }
}

pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let pos = (q.clamp(0.0, 1.0) * (n - 1) as f64).round() as usize;
    sorted[pos.min(n - 1)]
}

pub fn pair_distance_stats(config: &ParticleConfiguration) -> Result<PairDistanceStats> {
    let n = config.len();
    if n < 2 {
        return Err(Error::InvalidConfiguration(
            "pair statistics need at least two particles".into(),
        ));
    }
    let x = &config.positions;
    let mut d = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            d.push(norm(&sub(&x[i], &x[j])));
        }
    }
    d.sort_by(f64::total_cmp);
    let len = d.len();
    let median = if len % 2 == 1 {
        d[len / 2]
    } else {
        0.5 * (d[len / 2 - 1] + d[len / 2])
    };
    Ok(PairDistanceStats {
        min: d[0],
        max: d[len - 1],
        median,
        all_pairs_sorted: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64], masses: &[f64]) -> ParticleConfiguration {
        ParticleConfiguration::new(
            1,
            points.iter().map(|&x| [x, 0.0, 0.0]).collect(),
            masses.to_vec(),
            Provenance::default(),
        )
        .unwrap()
    }

    /// `W(x) = -x^2 + x^4 / 2`.
    fn quartic() -> PotentialSpec {
        PotentialSpec::scaled_power_law(2.0, 4.0, 2.0, 2.0)
    }

    #[test]
    fn two_dirac_energy() {
        let e = total_energy(&line(&[0.0, 1.0], &[0.5, 0.5]), &quartic()).unwrap();
        assert_eq!(e, -0.125);
        let third = 1.0 / 3.0;
        let e = total_energy(&line(&[0.0, 1.0], &[third, 1.0 - third]), &quartic()).unwrap();
        assert!((e - (-1.0 / 9.0)).abs() < 1e-16);
    }

    #[test]
    fn single_particle_has_zero_energy() {
        let e = total_energy(&line(&[0.3], &[1.0]), &quartic()).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn equilibrium_pair_and_triangle_have_zero_force() {
        let f = forces(&line(&[0.0, 1.0], &[0.5, 0.5]), &PotentialSpec::power_law(2.0, 4.0)).unwrap();
        assert_eq!(f, vec![[0.0; 3]; 2]);

        let h = 3f64.sqrt() / 2.0;
        let tri = ParticleConfiguration::with_equal_masses(
            2,
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, h, 0.0]],
            Provenance::default(),
        )
        .unwrap();
        let f = forces(&tri, &PotentialSpec::power_law(1.5, 7.0)).unwrap();
        for fi in f {
            assert!(norm(&fi) < 1e-14, "{fi:?}");
        }
    }

    #[test]
    fn coincident_particles() {
        let cfg = line(&[0.5, 0.5], &[0.5, 0.5]);
        assert_eq!(
            total_energy(&cfg, &PotentialSpec::power_law(-0.5, 5.0)),
            Err(Error::SingularPair { i: 0, j: 1 })
        );
        let acc = pair_accumulator(&cfg, &PotentialSpec::power_law(2.5, 5.0)).unwrap();
        assert_eq!(acc.singular_pair_count, 1);
        assert_eq!(acc.energy, 0.0);
        let kernel = PotentialSpec::power_law(-0.5, 5.0).kernel(1).unwrap();
        assert!(accumulate(&cfg, &kernel, EvalMode::Parallel).is_err());
    }

    #[test]
    fn generated_potential_queries() {
        let one = ParticleConfiguration::with_equal_masses(2, vec![[0.0; 3]], Provenance::default())
            .unwrap();
        let spec = PotentialSpec::power_law(2.0, 4.0);
        let v = generated_potential(&one, &spec, &[QueryPoint::Free([1.0, 0.0, 0.0])]).unwrap();
        assert_eq!(v, vec![-0.25]);

        let pair = line(&[-1.5, 1.5], &[0.5, 0.5]);
        let v = generated_potential(&pair, &spec, &[QueryPoint::Free([0.0; 3])]).unwrap();
        let expected = 2.0 * 0.5 * spec.eval_w(1.5).unwrap();
        assert!((v[0] - expected).abs() < 1e-15);

        let singular = PotentialSpec::power_law(-0.5, 5.0);
        let v = generated_potential(&pair, &singular, &[QueryPoint::Free([1.5, 0.0, 0.0])]).unwrap();
        assert_eq!(v[0], f64::INFINITY);
        let v = generated_potential(&pair, &singular, &[QueryPoint::Particle(1)]).unwrap();
        assert!(v[0].is_finite());
    }

    #[test]
    fn pair_stats_small_cases() {
        let sq = ParticleConfiguration::with_equal_masses(
            2,
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]],
            Provenance::default(),
        )
        .unwrap();
        let s = pair_distance_stats(&sq).unwrap();
        assert_eq!(s.min, 1.0);
        assert_eq!(s.max, 2f64.sqrt());
        let two = line(&[0.0, 3.0], &[0.5, 0.5]);
        let s = pair_distance_stats(&two).unwrap();
        assert_eq!((s.min, s.max, s.median), (3.0, 3.0, 3.0));
        assert!(pair_distance_stats(&line(&[0.0], &[1.0])).is_err());
    }

    #[test]
    fn configuration_validation() {
        let p = Provenance::default();
        assert!(ParticleConfiguration::new(2, vec![[0.0; 3]], vec![0.5], p.clone()).is_err());
        assert!(ParticleConfiguration::new(2, vec![], vec![], p.clone()).is_err());
        assert!(ParticleConfiguration::new(2, vec![[f64::NAN, 0.0, 0.0]], vec![1.0], p.clone()).is_err());
        assert!(ParticleConfiguration::new(1, vec![[0.0, 1.0, 0.0]], vec![1.0], p.clone()).is_err());
        assert!(ParticleConfiguration::new(4, vec![[0.0; 3]], vec![1.0], p).is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let cfg = ParticleConfiguration::new(
            2,
            vec![[0.1, -2.0, 0.0], [1.0 / 3.0, 5.0, 0.0]],
            vec![0.25, 0.75],
            Provenance::default(),
        )
        .unwrap();
        let text = cfg.to_csv();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# dim=2 n=2"));
        assert_eq!(
            lines.next(),
            Some("1.0000000000000001e-1,-2.0000000000000000e0,2.5000000000000000e-1")
        );
        let back = ParticleConfiguration::from_csv(&text).unwrap();
        assert_eq!(back.positions(), cfg.positions());
        assert_eq!(back.masses(), cfg.masses());
    }

    #[test]
    fn malformed_csv() {
        assert!(ParticleConfiguration::from_csv("").is_err());
        assert!(ParticleConfiguration::from_csv("dim=2 n=1\n0,0,1\n").is_err());
        assert!(ParticleConfiguration::from_csv("# dim=2 n=1\n0,1\n").is_err());
        assert!(ParticleConfiguration::from_csv("# dim=2 n=2\n0,0,1\n").is_err());
        assert!(ParticleConfiguration::from_csv("# dim=2 n=1\n0,x,1\n").is_err());
    }
}
