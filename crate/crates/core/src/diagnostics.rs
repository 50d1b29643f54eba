//! Diagnostics of converged configurations: correlation dimension,
//! single-linkage clusters, radial layers, Riesz energies and residuals of
//! the Euler-Lagrange conditions of a local minimizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energy::{
    generated_potential_at, pair_distance_stats, quantile_sorted, total_energy, ParticleConfiguration,
    QueryPoint,
};
use crate::potentials::{classify_repulsion, PotentialSpec};
use crate::{norm, sub, Error, Point, Result};

/// Clusters are linked at this fraction of the configuration diameter.
pub const LINK_FRACTION: f64 = 0.01;
/// Pair distances below this fraction of the diameter are unresolved.
pub const RESOLUTION_FRACTION: f64 = 1e-3;
/// Quantiles of the pair-distance distribution bounding the fit range.
/// Going up to the 25% quantile lets the boundary pull a uniform disk down
/// to about 1.8.
pub const FIT_QUANTILES: (f64, f64) = (0.01, 0.10);
pub const FIT_RADII: usize = 16;
pub const HISTOGRAM_BINS: usize = 40;
/// Below this many particles no dimension is assigned.
pub const MIN_CLASSIFIABLE: usize = 10;
/// Local neighbourhoods reach this multiple of the distance to the N-th
/// nearest neighbour.
pub const LOCAL_SCALE: f64 = 2.0;
/// Principal axes weaker than this fraction of the strongest are dropped.
pub const LOCAL_VARIANCE_RATIO: f64 = 0.1;
/// Mass a local dimension must carry to count toward the support dimension.
pub const SUPPORT_FRACTION: f64 = 0.05;

/// `C(r) = 2/(n(n-1)) #{i < j : |X_i - X_j| < r}` for each radius.
pub fn correlation_integral(config: &ParticleConfiguration, radii: &[f64]) -> Result<Vec<f64>> {
    if radii.windows(2).any(|w| w[1] < w[0]) || radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Domain("radii must be positive and ascending".into()));
    }
    let stats = pair_distance_stats(config)?;
    Ok(correlation_from_sorted(&stats.all_pairs_sorted, radii))
}

fn correlation_from_sorted(sorted: &[f64], radii: &[f64]) -> Vec<f64> {
    let total = sorted.len() as f64;
    radii
        .iter()
        .map(|&r| sorted.partition_point(|&d| d < r) as f64 / total)
        .collect()
}

/// Least-squares slope of `log C(r)` against `log r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationFit {
    /// An estimate of the dimension, not a certificate.
    pub corr_dim: f64,
    pub fit_range: (f64, f64),
    pub fit_r2: f64,
}

impl CorrelationFit {
    fn degenerate(r: f64) -> Self {
        CorrelationFit {
            corr_dim: 0.0,
            fit_range: (r, r),
            fit_r2: 1.0,
        }
    }
}

/// Correlation dimension over radii spanning the 1% to 10% quantiles of the
/// pairwise distances (16 log-spaced radii).
///
/// Distances below `RESOLUTION_FRACTION * diameter` are treated as
/// coincident: the fit range is raised to at least that scale, so tight
/// point clusters read as dimension zero.
pub fn estimate_correlation_dimension(config: &ParticleConfiguration) -> Result<CorrelationFit> {
    let stats = pair_distance_stats(config)?;
    Ok(fit_from_sorted(&stats.all_pairs_sorted))
}

fn fit_from_sorted(sorted: &[f64]) -> CorrelationFit {
    let diameter = *sorted.last().unwrap();
    if !(diameter > 0.0) {
        return CorrelationFit::degenerate(0.0);
    }
    let floor = RESOLUTION_FRACTION * diameter;
    let q_lo = quantile_sorted(sorted, FIT_QUANTILES.0);
    let q_hi = quantile_sorted(sorted, FIT_QUANTILES.1);
    let r_lo = q_lo.max(floor);
    let r_hi = if q_lo < floor { q_hi.max(10.0 * floor) } else { q_hi };
    if !(r_hi > r_lo) {
        return CorrelationFit::degenerate(r_lo);
    }
    // Endpoints are pair distances themselves; pin them so rounding in the
    // geometric grid cannot drop a pair at r_hi.
    let mut radii: Vec<f64> = (0..FIT_RADII)
        .map(|k| r_lo * (r_hi / r_lo).powf(k as f64 / (FIT_RADII - 1) as f64))
        .collect();
    radii[FIT_RADII - 1] = r_hi;
    let c = correlation_from_sorted(sorted, &radii);
    let pts: Vec<(f64, f64)> = radii
        .iter()
        .zip(&c)
        .filter(|(_, &c)| c > 0.0)
        .map(|(&r, &c)| (r.ln(), c.ln()))
        .collect();
    if pts.len() < 2 {
        return CorrelationFit::degenerate(r_lo);
    }
    let (slope, r2) = least_squares(&pts);
    CorrelationFit {
        // a flat C(r) can fit to -1e-17
        corr_dim: slope.max(0.0),
        fit_range: (r_lo, r_hi),
        fit_r2: r2,
    }
}

/// Slope and coefficient of determination of a straight-line fit.
fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    (slope, r2)
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// A connected component of the single-linkage graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    /// Particle indices, ascending.
    pub indices: Vec<usize>,
    pub diameter: f64,
    /// Mass-weighted centroid.
    pub centroid: Point,
    pub mass: f64,
}

/// Connected components of the graph linking particles closer than
/// `link_distance`, ordered by smallest member index.
pub fn cluster_decomposition(config: &ParticleConfiguration, link_distance: f64) -> Vec<Cluster> {
    let x = config.positions();
    let n = x.len();
    let mut sets = DisjointSet::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if norm(&sub(&x[i], &x[j])) <= link_distance {
                sets.union(i, j);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = sets.find(i);
        if label[root] == usize::MAX {
            label[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[label[root]].push(i);
    }
    let m = config.masses();
    groups
        .into_iter()
        .map(|indices| {
            let mut diameter: f64 = 0.0;
            for (a, &i) in indices.iter().enumerate() {
                for &j in &indices[a + 1..] {
                    diameter = diameter.max(norm(&sub(&x[i], &x[j])));
                }
            }
            let mass: f64 = indices.iter().map(|&i| m[i]).sum();
            let mut centroid = [0.0; 3];
            for &i in &indices {
                for k in 0..3 {
                    centroid[k] += m[i] * x[i][k] / mass;
                }
            }
            Cluster {
                indices,
                diameter,
                centroid,
                mass,
            }
        })
        .collect()
}

/// Histogram of distances from the mass-weighted centroid over
/// `[0, max distance]` as `(bin_center, count)` pairs.
pub fn radial_histogram(config: &ParticleConfiguration, bins: usize) -> Vec<(f64, usize)> {
    let bins = bins.max(1);
    let c = config.centroid();
    let radii: Vec<f64> = config.positions().iter().map(|p| norm(&sub(p, &c))).collect();
    let max = radii.iter().copied().fold(0.0, f64::max);
    let width = max / bins as f64;
    let mut counts = vec![0usize; bins];
    for r in &radii {
        let b = if width > 0.0 {
            ((r / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[b] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(b, k)| ((b as f64 + 0.5) * width, k))
        .collect()
}

/// `sum_{i != j} m_i m_j |X_i - X_j|^(-s)`; `+inf` if two particles coincide.
pub fn riesz_energy(config: &ParticleConfiguration, s: f64) -> f64 {
    let x = config.positions();
    let m = config.masses();
    let mut total = 0.0;
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let d = norm(&sub(&x[i], &x[j]));
            if d == 0.0 {
                return f64::INFINITY;
            }
            total += m[i] * m[j] * d.powf(-s);
        }
    }
    2.0 * total
}

/// Local principal-component dimension of each particle.
///
/// The neighbourhood of `X_i` is the open ball of radius
/// `LOCAL_SCALE * d_N(i)`, where `d_N(i)` is the distance to the N-th nearest
/// particle not coincident with it. The dimension is the number of
/// eigenvalues of the second-moment matrix of the neighbour offsets above
/// `LOCAL_VARIANCE_RATIO` times the largest. Isolated particles get 0.
pub fn local_dimensions(config: &ParticleConfiguration) -> Vec<usize> {
    let dim = config.dim();
    let x = config.positions();
    let n = x.len();
    let coincident = 1e-14 * config.bounding_diagonal();
    let mut dists = Vec::with_capacity(n);
    (0..n)
        .map(|i| {
            dists.clear();
            dists.extend(
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| norm(&sub(&x[j], &x[i])))
                    .filter(|&d| d > coincident),
            );
            if dists.is_empty() {
                return 0;
            }
            let k = dim.min(dists.len());
            dists.select_nth_unstable_by(k - 1, f64::total_cmp);
            let h = LOCAL_SCALE * dists[k - 1];
            let mut moment = nalgebra::DMatrix::<f64>::zeros(dim, dim);
            for j in 0..n {
                let y = sub(&x[j], &x[i]);
                let d = norm(&y);
                if j == i || d <= coincident || d >= h {
                    continue;
                }
                for a in 0..dim {
                    for b in 0..dim {
                        moment[(a, b)] += y[a] * y[b];
                    }
                }
            }
            let ev = moment.symmetric_eigenvalues();
            let top = ev.max();
            if !(top > 0.0) {
                return 0;
            }
            ev.iter().filter(|&&e| e > LOCAL_VARIANCE_RATIO * top).count()
        })
        .collect()
}

/// Mass carried by each local dimension `0..=N`.
pub fn local_dimension_fractions(config: &ParticleConfiguration) -> Vec<f64> {
    let mut fractions = vec![0.0; config.dim() + 1];
    for (d, m) in local_dimensions(config).into_iter().zip(config.masses()) {
        fractions[d] += m;
    }
    // masses sum to one only up to rounding
    fractions.iter_mut().for_each(|f| *f = f.min(1.0));
    fractions
}

/// Largest `d >= 1` such that particles of local dimension at least `d`
/// carry `SUPPORT_FRACTION` of the mass. A ball inside a shell is 3.
fn support_dimension(fractions: &[f64]) -> usize {
    let mut tail = 0.0;
    for d in (1..fractions.len()).rev() {
        tail += fractions[d];
        if tail >= SUPPORT_FRACTION {
            return d;
        }
    }
    1
}

/// Dimension diagnostics of a configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub n: usize,
    pub corr_dim: f64,
    pub fit_range: (f64, f64),
    pub fit_r2: f64,
    pub cluster_count: usize,
    pub max_cluster_diameter: f64,
    pub diameter: f64,
    /// Integer dimension in `0..=N`; `None` when classification was refused.
    pub classified_dim: Option<usize>,
    pub classification_refused: bool,
    pub radial_histogram: Vec<(f64, usize)>,
    /// Mass fraction of each local dimension `0..=N`.
    pub local_dim_fractions: Vec<f64>,
    /// Lower bound implied by the potential's repulsivity, when known.
    pub beta_lower_bound: Option<f64>,
}

/// Assigns an integer dimension to a configuration.
///
/// If every single-linkage cluster at `LINK_FRACTION * diameter` is smaller
/// than that same length and clusters hold two particles on average, the
/// support is point-like and the dimension is 0. Otherwise it is the
/// support dimension from the local principal components, in `[1, N]`.
/// The correlation dimension is reported alongside; at a few hundred
/// particles its boundary bias pulls balls and disks a full unit low.
pub fn classify_dimension(
    config: &ParticleConfiguration,
    spec: Option<&PotentialSpec>,
) -> Result<DimensionReport> {
    let n = config.len();
    let dim = config.dim();
    let beta_lower_bound = match spec {
        Some(s) => Some(classify_repulsion(s, dim)?.predicted_dim_lower_bound),
        None => None,
    };
    let radial_histogram = radial_histogram(config, HISTOGRAM_BINS);
    if n < 2 {
        return Ok(DimensionReport {
            n,
            corr_dim: 0.0,
            fit_range: (0.0, 0.0),
            fit_r2: 1.0,
            cluster_count: n,
            max_cluster_diameter: 0.0,
            diameter: 0.0,
            classified_dim: None,
            classification_refused: true,
            radial_histogram,
            local_dim_fractions: vec![0.0; dim + 1],
            beta_lower_bound,
        });
    }
    let stats = pair_distance_stats(config)?;
    let diameter = stats.max;
    let fit = fit_from_sorted(&stats.all_pairs_sorted);
    let link = LINK_FRACTION * diameter;
    let clusters = cluster_decomposition(config, link);
    let max_cluster_diameter = clusters.iter().map(|c| c.diameter).fold(0.0, f64::max);
    let refused = n < MIN_CLASSIFIABLE;
    let local_dim_fractions = local_dimension_fractions(config);
    let classified_dim = if refused {
        None
    } else if diameter == 0.0 || (max_cluster_diameter < link && 2 * clusters.len() <= n) {
        Some(0)
    } else {
        Some(support_dimension(&local_dim_fractions))
    };
    Ok(DimensionReport {
        n,
        corr_dim: fit.corr_dim,
        fit_range: fit.fit_range,
        fit_r2: fit.fit_r2,
        cluster_count: clusters.len(),
        max_cluster_diameter,
        diameter,
        classified_dim,
        classification_refused: refused,
        radial_histogram,
        local_dim_fractions,
        beta_lower_bound,
    })
}

/// Residuals of the first-order optimality conditions of a local minimizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerLagrangeReport {
    /// `V(X_i)` with the self-interaction excluded.
    pub v_values: Vec<f64>,
    /// Population standard deviation of `V` within each cluster.
    pub per_component_stddev: Vec<f64>,
    pub component_sizes: Vec<usize>,
    /// `max(per_component_stddev) / |2E|`.
    pub max_relative_stddev: f64,
    /// `2 E[mu]`, the value `V` takes on the support.
    pub two_e: f64,
    pub tol: f64,
    /// Samples farther from every particle than that particle's nearest
    /// neighbour.
    pub off_support_samples: usize,
    /// Samples inside the support's own resolution, skipped.
    pub near_support_samples: usize,
    /// Samples with `V(x) < min_i V(X_i) - tol`.
    pub off_support_violations: usize,
    /// `min_i sum_{j != i} m_j Delta W(X_i - X_j)`.
    pub laplacian_min: f64,
    /// Mean over particles of `sum_{j != i} m_j |Delta W(X_i - X_j)|`.
    pub laplacian_scale: f64,
}

impl EulerLagrangeReport {
    pub fn violation_fraction(&self) -> f64 {
        if self.off_support_samples == 0 {
            0.0
        } else {
            self.off_support_violations as f64 / self.off_support_samples as f64
        }
    }
}

/// Checks `V = 2E` on each connected component of the support, `V >= 2E`
/// at random points off it, and `Delta W * mu >= 0` at the particles.
///
/// `tol` defaults to `1e-6 |2E|`. Off-support points are drawn uniformly
/// from the ball around the centroid of 1.5 times the configuration radius;
/// a draw within the nearest-neighbour distance of some particle lies inside
/// the discretised support and is not tested.
pub fn euler_lagrange_check(
    config: &ParticleConfiguration,
    spec: &PotentialSpec,
    n_off_samples: usize,
    seed: u64,
    tol: Option<f64>,
) -> Result<EulerLagrangeReport> {
    let dim = config.dim();
    let kernel = spec.kernel(dim)?;
    let n = config.len();
    let two_e = 2.0 * total_energy(config, spec)?;
    let tol = tol.unwrap_or(1e-6 * two_e.abs());

    let v_values = (0..n)
        .map(|i| generated_potential_at(config, &kernel, QueryPoint::Particle(i)))
        .collect::<Result<Vec<f64>>>()?;

    // Components of a discretised continuum are linked at twice the typical
    // spacing, point clusters at the usual fraction of the diameter. Too few
    // particles to sample a continuum are treated as points.
    let x = config.positions();
    let nearest: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| norm(&sub(&x[i], &x[j])))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let link = if n >= MIN_CLASSIFIABLE {
        let mut spacing = nearest.clone();
        spacing.sort_by(f64::total_cmp);
        let median = quantile_sorted(&spacing, 0.5);
        (LINK_FRACTION * pair_distance_stats(config)?.max).max(LOCAL_SCALE * median)
    } else if n >= 2 {
        LINK_FRACTION * pair_distance_stats(config)?.max
    } else {
        0.0
    };
    let clusters = cluster_decomposition(config, link);
    let mut per_component_stddev = Vec::with_capacity(clusters.len());
    let mut component_sizes = Vec::with_capacity(clusters.len());
    for c in &clusters {
        let k = c.indices.len() as f64;
        let mean = c.indices.iter().map(|&i| v_values[i]).sum::<f64>() / k;
        let var = c
            .indices
            .iter()
            .map(|&i| (v_values[i] - mean).powi(2))
            .sum::<f64>()
            / k;
        per_component_stddev.push(var.sqrt());
        component_sizes.push(c.indices.len());
    }
    let max_sd = per_component_stddev.iter().copied().fold(0.0, f64::max);
    let max_relative_stddev = if two_e != 0.0 {
        max_sd / two_e.abs()
    } else if max_sd == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };

    let v_min = v_values.iter().copied().fold(f64::INFINITY, f64::min);
    let centroid = config.centroid();
    let radius = x
        .iter()
        .map(|p| norm(&sub(p, &centroid)))
        .fold(0.0, f64::max);
    let sample_radius = 1.5 * radius.max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut near = 0;
    for _ in 0..n_off_samples {
        let y = loop {
            let mut u = [0.0; 3];
            for c in u.iter_mut().take(dim) {
                *c = rng.random_range(-1.0..1.0);
            }
            if norm(&u) <= 1.0 {
                break u;
            }
        };
        let p = [
            centroid[0] + sample_radius * y[0],
            centroid[1] + sample_radius * y[1],
            centroid[2] + sample_radius * y[2],
        ];
        if (0..n).any(|j| norm(&sub(&p, &x[j])) <= nearest[j]) {
            near += 1;
            continue;
        }
        let v = generated_potential_at(config, &kernel, QueryPoint::Free(p))?;
        if v < v_min - tol {
            violations += 1;
        }
    }

    let m = config.masses();
    let threshold = 1e-14 * config.bounding_diagonal();
    let mut laplacian_min = f64::INFINITY;
    let mut scale = 0.0;
    for i in 0..n {
        let mut lap = 0.0;
        let mut abs = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let r = norm(&sub(&x[i], &x[j]));
            if r <= threshold {
                continue;
            }
            let l = kernel.laplacian(r, dim);
            lap += m[j] * l;
            abs += m[j] * l.abs();
        }
        laplacian_min = laplacian_min.min(lap);
        scale += abs / n as f64;
    }

    Ok(EulerLagrangeReport {
        v_values,
        per_component_stddev,
        component_sizes,
        max_relative_stddev,
        two_e,
        tol,
        off_support_samples: n_off_samples - near,
        near_support_samples: near,
        off_support_violations: violations,
        laplacian_min,
        laplacian_scale: scale,
    })
}
