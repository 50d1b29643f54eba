//! Product quadrature for averages over balls in `R^N`, `N <= 3`.

use std::f64::consts::PI;

use crate::Point;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Returns `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A normalized quadrature rule for the uniform average over the unit ball.
///
/// Radial nodes carry the `N r^(N-1)` density; directions are a rule for the
/// uniform average over the unit sphere. Both weight sets sum to one.
#[derive(Clone, Debug)]
pub struct BallRule {
    dim: usize,
    radial: Vec<(f64, f64)>,
    directions: Vec<(Point, f64)>,
}

impl BallRule {
    /// `order` is the number of radial Gauss-Legendre nodes. In 2D the circle
    /// uses `2 * order` equispaced angles; in 3D the sphere uses `order`
    /// Gauss-Legendre nodes in `cos(theta)` times `2 * order` azimuths.
    pub fn new(dim: usize, order: usize) -> Self {
        assert!((1..=3).contains(&dim), "dimension must be 1, 2 or 3");
        let order = order.max(1);
        let (xs, ws) = gauss_legendre(order);
        let radial = xs
            .iter()
            .zip(&ws)
            .map(|(&x, &w)| {
                let r = 0.5 * (x + 1.0);
                (r, 0.5 * w * dim as f64 * r.powi(dim as i32 - 1))
            })
            .collect();

        let directions = match dim {
            1 => vec![([1.0, 0.0, 0.0], 0.5), ([-1.0, 0.0, 0.0], 0.5)],
            2 => {
                let m = 2 * order;
                (0..m)
                    .map(|j| {
                        let t = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                        ([t.cos(), t.sin(), 0.0], 1.0 / m as f64)
                    })
                    .collect()
            }
            _ => {
                let m = 2 * order;
                let mut dirs = Vec::with_capacity(order * m);
                for (&z, &wz) in xs.iter().zip(&ws) {
                    let s = (1.0 - z * z).max(0.0).sqrt();
                    for j in 0..m {
                        let t = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                        dirs.push(([s * t.cos(), s * t.sin(), z], 0.5 * wz / m as f64));
                    }
                }
                dirs
            }
        };
        BallRule {
            dim,
            radial,
            directions,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Average of `f` over the ball `B(center, radius)`.
    pub fn average<F: Fn(&Point) -> f64>(&self, center: &Point, radius: f64, f: F) -> f64 {
        let mut total = 0.0;
        for &(r, wr) in &self.radial {
            let mut shell = 0.0;
            for (u, wu) in &self.directions {
                let y = [
                    center[0] + radius * r * u[0],
                    center[1] + radius * r * u[1],
                    center[2] + radius * r * u[2],
                ];
                shell += wu * f(&y);
            }
            total += wr * shell;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        // Exact up to degree 9.
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((integral - 2.0 / 9.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn ball_average_of_squared_radius() {
        // Mean of |y|^2 over the unit ball is N / (N + 2).
        for dim in 1..=3 {
            let rule = BallRule::new(dim, 8);
            let avg = rule.average(&[0.0; 3], 1.0, |y| y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            let expected = dim as f64 / (dim as f64 + 2.0);
            assert!((avg - expected).abs() < 1e-13, "dim {dim}: {avg}");
        }
    }

    #[test]
    fn ball_average_of_linear_function_is_center_value() {
        let rule = BallRule::new(3, 6);
        let c = [0.3, -1.0, 2.0];
        let avg = rule.average(&c, 0.7, |y| 2.0 * y[0] - y[1] + 0.5 * y[2]);
        assert!((avg - (0.6 + 1.0 + 1.0)).abs() < 1e-13);
    }
}
