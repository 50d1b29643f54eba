//! Radial interaction potentials `W(x) = w(|x|)`.
//!
//! Three families are built in:
//!
//! * power laws `W(x) = -a |x|^alpha / alpha + g |x|^gamma / gamma`, with
//!   `|x|^0 / 0` read as `log |x|`;
//! * power laws perturbed by `3/(2p) cos(p |x|)`;
//! * the tanh well, defined through `-w'(r) = tanh((1 - r) a) + b` with
//!   `w(0) = 0`.
//!
//! Hot loops go through [`RadialKernel`], a precompiled form of a validated
//! [`PotentialSpec`].

mod quadrature;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use quadrature::{gauss_legendre, BallRule};

use crate::{norm, Error, Point, Result};

/// Description of an interaction potential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum PotentialSpec {
    PowerLaw {
        alpha: f64,
        gamma: f64,
        coeff_a: f64,
        coeff_g: f64,
    },
    CosinePerturbed {
        alpha: f64,
        gamma: f64,
        p: f64,
    },
    TanhWell {
        a: f64,
        b: f64,
    },
}

impl PotentialSpec {
    /// `-|x|^alpha / alpha + |x|^gamma / gamma`.
    pub fn power_law(alpha: f64, gamma: f64) -> Self {
        PotentialSpec::PowerLaw {
            alpha,
            gamma,
            coeff_a: 1.0,
            coeff_g: 1.0,
        }
    }

    pub fn scaled_power_law(alpha: f64, gamma: f64, coeff_a: f64, coeff_g: f64) -> Self {
        PotentialSpec::PowerLaw {
            alpha,
            gamma,
            coeff_a,
            coeff_g,
        }
    }

    pub fn cosine_perturbed(alpha: f64, gamma: f64, p: f64) -> Self {
        PotentialSpec::CosinePerturbed { alpha, gamma, p }
    }

    pub fn tanh_well(a: f64, b: f64) -> Self {
        PotentialSpec::TanhWell { a, b }
    }

    /// Exponent governing the behavior at the origin.
    ///
    /// The tanh well has `w'(0) != 0`, a cone at the origin, which behaves
    /// like `alpha = 1`.
    pub fn origin_exponent(&self) -> f64 {
        match *self {
            PotentialSpec::PowerLaw { alpha, .. } | PotentialSpec::CosinePerturbed { alpha, .. } => {
                alpha
            }
            PotentialSpec::TanhWell { .. } => 1.0,
        }
    }

    /// Lists every violated hypothesis; empty when the spec is usable in
    /// dimension `ambient_dim`.
    pub fn validate(&self, ambient_dim: usize) -> Vec<String> {
        let mut out = self.validate_shape();
        if let PotentialSpec::PowerLaw { alpha, .. } | PotentialSpec::CosinePerturbed { alpha, .. } =
            *self
        {
            let n = ambient_dim as f64;
            if alpha.is_finite() && alpha <= -n {
                out.push(format!(
                    "local integrability (alpha > -N) violated: alpha = {alpha} <= -{ambient_dim}"
                ));
            }
        }
        if !(1..=3).contains(&ambient_dim) {
            out.push(format!("ambient dimension must be 1, 2 or 3, got {ambient_dim}"));
        }
        out
    }

    /// Dimension-free part of [`PotentialSpec::validate`].
    fn validate_shape(&self) -> Vec<String> {
        let mut out = Vec::new();
        let finite = |name: &str, v: f64, out: &mut Vec<String>| {
            if !v.is_finite() {
                out.push(format!("{name} must be finite, got {v}"));
            }
        };
        match *self {
            PotentialSpec::PowerLaw {
                alpha,
                gamma,
                coeff_a,
                coeff_g,
            } => {
                finite("alpha", alpha, &mut out);
                finite("gamma", gamma, &mut out);
                if !(alpha < gamma) {
                    out.push(format!(
                        "confinement (alpha < gamma) violated: alpha = {alpha}, gamma = {gamma}"
                    ));
                }
                if !(coeff_a > 0.0 && coeff_a.is_finite()) {
                    out.push(format!("coeff_a must be positive, got {coeff_a}"));
                }
                if !(coeff_g > 0.0 && coeff_g.is_finite()) {
                    out.push(format!("coeff_g must be positive, got {coeff_g}"));
                }
            }
            PotentialSpec::CosinePerturbed { alpha, gamma, p } => {
                finite("alpha", alpha, &mut out);
                finite("gamma", gamma, &mut out);
                if !(alpha < gamma) {
                    out.push(format!(
                        "confinement (alpha < gamma) violated: alpha = {alpha}, gamma = {gamma}"
                    ));
                }
                if !(p > 0.0 && p.is_finite()) {
                    out.push(format!("frequency p must be positive, got {p}"));
                }
            }
            PotentialSpec::TanhWell { a, b } => {
                if !(a > 0.0 && a.is_finite()) {
                    out.push(format!("tanh steepness a must be positive, got {a}"));
                }
                if !(b > 0.0 && b.is_finite()) {
                    out.push(format!("tanh offset b must be positive, got {b}"));
                }
            }
        }
        out
    }

    fn checked(&self) -> Result<RadialKernel> {
        let violations = self.validate_shape();
        if violations.is_empty() {
            Ok(RadialKernel::compile(self))
        } else {
            Err(Error::InvalidPotential(violations))
        }
    }

    /// Compiles the spec for repeated evaluation in dimension `ambient_dim`.
    pub fn kernel(&self, ambient_dim: usize) -> Result<RadialKernel> {
        let violations = self.validate(ambient_dim);
        if violations.is_empty() {
            Ok(RadialKernel::compile(self))
        } else {
            Err(Error::InvalidPotential(violations))
        }
    }

    /// `w(r)`; `+inf` at `r = 0` when the potential is singular there.
    pub fn eval_w(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
        }
        Ok(self.checked()?.value(r))
    }

    /// `w'(r)` for `r > 0`.
    pub fn eval_w_prime(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!(
                "w' is only defined for r > 0, got {r}"
            )));
        }
        Ok(self.checked()?.value_and_slope(r).1)
    }

    /// `grad W(x) = w'(|x|) x / |x|`.
    pub fn eval_gradient(&self, x: &Point) -> Result<Point> {
        let r = norm(x);
        if !(r > 0.0) {
            return Err(Error::Domain("gradient requested at the origin".into()));
        }
        let s = self.checked()?.value_and_slope(r).1 / r;
        Ok([s * x[0], s * x[1], s * x[2]])
    }

    /// Analytic `Delta W(x)` in `R^N` for `x != 0`.
    pub fn eval_laplacian(&self, x: &Point, ambient_dim: usize) -> Result<f64> {
        let r = norm(x);
        if !(r > 0.0) {
            return Err(Error::Domain("Laplacian requested at the origin".into()));
        }
        Ok(self.kernel(ambient_dim)?.laplacian(r, ambient_dim))
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PotentialSpec::PowerLaw {
                alpha,
                gamma,
                coeff_a,
                coeff_g,
            } => write!(
                f,
                "powerlaw(alpha={alpha}, gamma={gamma}, coeff_a={coeff_a}, coeff_g={coeff_g})"
            ),
            PotentialSpec::CosinePerturbed { alpha, gamma, p } => {
                write!(f, "cosine(alpha={alpha}, gamma={gamma}, p={p})")
            }
            PotentialSpec::TanhWell { a, b } => write!(f, "tanh(a={a}, b={b})"),
        }
    }
}

/// `r^e` with cheap paths for exponents that are multiples of 1/4.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Power {
    Int(i32),
    Frac(i32, u8),
    General(f64),
}

impl Power {
    fn new(e: f64) -> Self {
        let q = e * 4.0;
        if q.fract() == 0.0 && q.abs() <= 400.0 {
            let k = e.floor();
            let quarters = ((e - k) * 4.0).round() as u8;
            if quarters == 0 {
                Power::Int(k as i32)
            } else {
                Power::Frac(k as i32, quarters)
            }
        } else {
            Power::General(e)
        }
    }

    #[inline]
    fn eval(self, r: f64) -> f64 {
        match self {
            Power::Int(k) => r.powi(k),
            Power::Frac(k, q) => {
                let s = r.sqrt();
                let frac = match q {
                    1 => s.sqrt(),
                    2 => s,
                    _ => s * s.sqrt(),
                };
                r.powi(k) * frac
            }
            Power::General(e) => r.powf(e),
        }
    }
}

/// One term `c * r^e / e` (or `c * log r` when `e = 0`).
#[derive(Clone, Copy, Debug)]
pub struct PowerTerm {
    coeff: f64,
    exponent: f64,
    power: Power,
}

impl PowerTerm {
    fn new(coeff: f64, exponent: f64) -> Self {
        PowerTerm {
            coeff,
            exponent,
            power: Power::new(exponent),
        }
    }

    /// Returns `(c r^e / e, c r^e)`; the second entry times `1/r` is the slope.
    #[inline]
    fn eval(&self, r: f64) -> (f64, f64) {
        if self.exponent == 0.0 {
            (self.coeff * r.ln(), self.coeff)
        } else {
            let p = self.power.eval(r);
            (self.coeff * p / self.exponent, self.coeff * p)
        }
    }

    fn at_origin(&self) -> f64 {
        if self.exponent > 0.0 {
            0.0
        } else if self.coeff > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    }

    fn laplacian(&self, r: f64, dim: usize) -> f64 {
        self.coeff * (self.exponent + dim as f64 - 2.0) * Power::new(self.exponent - 2.0).eval(r)
    }
}

/// Precompiled radial profile used in the pair loops.
#[derive(Clone, Copy, Debug)]
pub enum RadialKernel {
    #[doc(hidden)]
    Power {
        attractive: PowerTerm,
        confining: PowerTerm,
        cosine: Option<(f64, f64)>,
    },
    #[doc(hidden)]
    Tanh { a: f64, b: f64, log_cosh_a: f64 },
}

fn log_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
}

impl RadialKernel {
    fn compile(spec: &PotentialSpec) -> Self {
        match *spec {
            PotentialSpec::PowerLaw {
                alpha,
                gamma,
                coeff_a,
                coeff_g,
            } => RadialKernel::Power {
                attractive: PowerTerm::new(-coeff_a, alpha),
                confining: PowerTerm::new(coeff_g, gamma),
                cosine: None,
            },
            PotentialSpec::CosinePerturbed { alpha, gamma, p } => RadialKernel::Power {
                attractive: PowerTerm::new(-1.0, alpha),
                confining: PowerTerm::new(1.0, gamma),
                cosine: Some((1.5 / p, p)),
            },
            PotentialSpec::TanhWell { a, b } => RadialKernel::Tanh {
                a,
                b,
                log_cosh_a: log_cosh(a),
            },
        }
    }

    /// Whether `w(0) = +inf`.
    pub fn singular_at_origin(&self) -> bool {
        self.value(0.0) == f64::INFINITY
    }

    /// `w(r)` for `r >= 0`.
    pub fn value(&self, r: f64) -> f64 {
        if r == 0.0 {
            return match *self {
                RadialKernel::Power {
                    attractive,
                    confining,
                    cosine,
                } => {
                    let (a0, g0) = (attractive.at_origin(), confining.at_origin());
                    // The more singular term dominates at the origin.
                    let base = if a0.is_infinite() && g0.is_infinite() && a0 != g0 {
                        if attractive.exponent <= confining.exponent {
                            a0
                        } else {
                            g0
                        }
                    } else {
                        a0 + g0
                    };
                    base + cosine.map_or(0.0, |(c, _)| c)
                }
                RadialKernel::Tanh { .. } => 0.0,
            };
        }
        self.value_and_slope(r).0
    }

    /// `(w(r), w'(r))` for `r > 0`.
    #[inline]
    pub fn value_and_slope(&self, r: f64) -> (f64, f64) {
        match *self {
            RadialKernel::Power {
                attractive,
                confining,
                cosine,
            } => {
                let (wa, sa) = attractive.eval(r);
                let (wg, sg) = confining.eval(r);
                let mut w = wa + wg;
                let mut slope = (sa + sg) / r;
                if let Some((c, p)) = cosine {
                    let (s, co) = (p * r).sin_cos();
                    w += c * co;
                    slope -= c * p * s;
                }
                (w, slope)
            }
            RadialKernel::Tanh { a, b, log_cosh_a } => {
                let u = a * (1.0 - r);
                let w = (log_cosh(u) - log_cosh_a) / a - b * r;
                (w, -u.tanh() - b)
            }
        }
    }

    /// Analytic `Delta W` at radius `r > 0` in `R^dim`.
    pub fn laplacian(&self, r: f64, dim: usize) -> f64 {
        match *self {
            RadialKernel::Power {
                attractive,
                confining,
                cosine,
            } => {
                let mut lap = attractive.laplacian(r, dim) + confining.laplacian(r, dim);
                if let Some((c, p)) = cosine {
                    let (s, co) = (p * r).sin_cos();
                    lap += -c * p * p * co - (dim as f64 - 1.0) * c * p * s / r;
                }
                lap
            }
            RadialKernel::Tanh { a, b, .. } => {
                let t = (a * (1.0 - r)).tanh();
                let second = a * (1.0 - t * t);
                let slope = -t - b;
                second + (dim as f64 - 1.0) * slope / r
            }
        }
    }
}

/// A radial profile that can be averaged over balls.
pub trait RadialProfile {
    /// Value at distance `r >= 0` from the origin (may be `+inf` at 0).
    fn radial_value(&self, r: f64) -> f64;
}

impl RadialProfile for RadialKernel {
    fn radial_value(&self, r: f64) -> f64 {
        self.value(r)
    }
}

/// The attractive core `h_alpha(x) = -|x|^alpha / alpha` (`-log |x|` when
/// `alpha = 0`), with `h_alpha(0) = 0` for `alpha > 0` and `+inf` otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttractiveCore {
    pub alpha: f64,
}

impl AttractiveCore {
    /// Closed form of `-Delta^eps h_alpha(0)` in `R^N` (`+inf` for
    /// `alpha <= 0`).
    pub fn neg_approx_laplacian_at_origin(&self, ambient_dim: usize, eps: f64) -> f64 {
        let n = ambient_dim as f64;
        if self.alpha <= 0.0 {
            return f64::INFINITY;
        }
        2.0 * (n + 2.0) * n / (n + self.alpha) * eps.powf(self.alpha - 2.0) / self.alpha
    }
}

impl RadialProfile for AttractiveCore {
    fn radial_value(&self, r: f64) -> f64 {
        if r == 0.0 {
            if self.alpha > 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else if self.alpha == 0.0 {
            -r.ln()
        } else {
            -r.powf(self.alpha) / self.alpha
        }
    }
}

/// A constant potential, mostly useful as a sanity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantProfile(pub f64);

impl RadialProfile for ConstantProfile {
    fn radial_value(&self, _r: f64) -> f64 {
        self.0
    }
}

/// Default number of radial nodes for the ball-average rule.
pub fn default_quad_order(ambient_dim: usize) -> usize {
    if ambient_dim == 3 {
        16
    } else {
        32
    }
}

/// Approximate Laplacian
/// `Delta^eps W(x) = 2(N+2)/eps^2 * (avg_{B(0,eps)} W(x+y) dy - W(x))`.
///
/// Returns `-inf` when `W(x) = +inf`.
pub fn approx_laplacian_at<P: RadialProfile>(
    profile: &P,
    x: &Point,
    ambient_dim: usize,
    eps: f64,
    quad_order: usize,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if !(1..=3).contains(&ambient_dim) {
        return Err(Error::Domain(format!("unsupported dimension {ambient_dim}")));
    }
    let center = profile.radial_value(norm(x));
    if center == f64::INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let rule = BallRule::new(ambient_dim, quad_order);
    let excess = rule.average(x, eps, |y| profile.radial_value(norm(y)) - center);
    let n = ambient_dim as f64;
    Ok(2.0 * (n + 2.0) / (eps * eps) * excess)
}

/// Origin behavior class of a potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepulsionKind {
    StronglyRepulsive,
    MildlyRepulsive,
    Borderline,
    Invalid,
}

impl fmt::Display for RepulsionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepulsionKind::StronglyRepulsive => "strongly repulsive",
            RepulsionKind::MildlyRepulsive => "mildly repulsive",
            RepulsionKind::Borderline => "borderline",
            RepulsionKind::Invalid => "invalid",
        })
    }
}

/// Repulsivity of a potential and the dimension bound it implies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepulsionClass {
    pub kind: RepulsionKind,
    /// `beta = 2 - alpha`, set only for strongly repulsive potentials.
    pub beta: Option<f64>,
    /// Lower bound on the dimension of the support of local minimizers,
    /// clipped to `[0, N]`.
    pub predicted_dim_lower_bound: f64,
    pub note: String,
}

/// Classifies the origin behavior of `spec` in `R^N`.
pub fn classify_repulsion(spec: &PotentialSpec, ambient_dim: usize) -> Result<RepulsionClass> {
    let violations = spec.validate(ambient_dim);
    if !violations.is_empty() {
        return Err(Error::InvalidPotential(violations));
    }
    Ok(classify_exponent(spec.origin_exponent(), ambient_dim))
}

/// Classification as a function of the origin exponent `alpha` and `N`.
pub fn classify_exponent(alpha: f64, ambient_dim: usize) -> RepulsionClass {
    let n = ambient_dim as f64;
    let beta = 2.0 - alpha;
    if alpha <= -n || alpha <= 2.0 - n {
        RepulsionClass {
            kind: RepulsionKind::Invalid,
            beta: None,
            predicted_dim_lower_bound: beta.clamp(0.0, n),
            note: format!(
                "alpha = {alpha} <= 2 - N: beta = {beta} >= N is outside the dimension bound's range"
            ),
        }
    } else if alpha < 2.0 {
        RepulsionClass {
            kind: RepulsionKind::StronglyRepulsive,
            beta: Some(beta),
            predicted_dim_lower_bound: beta.clamp(0.0, n),
            note: format!("strongly repulsive, beta = {beta}: support dimension >= {beta}"),
        }
    } else if alpha == 2.0 {
        RepulsionClass {
            kind: RepulsionKind::Borderline,
            beta: None,
            predicted_dim_lower_bound: 0.0,
            note: "borderline (alpha = 2): Laplacian bounded at the origin".into(),
        }
    } else {
        RepulsionClass {
            kind: RepulsionKind::MildlyRepulsive,
            beta: None,
            predicted_dim_lower_bound: 0.0,
            note: "mildly repulsive, predicted dim 0".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn w_values() {
        let p = PotentialSpec::power_law(2.0, 4.0);
        assert_eq!(p.eval_w(1.0).unwrap(), -0.25);
        assert_eq!(PotentialSpec::power_law(2.5, 15.0).eval_w(0.0).unwrap(), 0.0);
        assert_eq!(
            PotentialSpec::power_law(-0.5, 5.0).eval_w(0.0).unwrap(),
            f64::INFINITY
        );
        assert_eq!(PotentialSpec::power_law(0.0, 2.0).eval_w(0.0).unwrap(), f64::INFINITY);
        assert!(p.eval_w(-1.0).is_err());
    }

    #[test]
    fn log_convention_at_zero_exponent() {
        let p = PotentialSpec::power_law(0.0, 2.0);
        let r: f64 = 1.7;
        assert!(close(p.eval_w(r).unwrap(), -r.ln() + r * r / 2.0, 1e-15));
        assert!(close(p.eval_w_prime(r).unwrap(), -1.0 / r + r, 1e-15));
    }

    #[test]
    fn w_prime_values() {
        assert_eq!(PotentialSpec::power_law(1.5, 7.0).eval_w_prime(1.0).unwrap(), 0.0);
        assert_eq!(PotentialSpec::tanh_well(5.0, 0.5).eval_w_prime(1.0).unwrap(), -0.5);
        assert_eq!(PotentialSpec::power_law(2.0, 4.0).eval_w_prime(2.0).unwrap(), 6.0);
        assert!(PotentialSpec::power_law(2.0, 4.0).eval_w_prime(0.0).is_err());
    }

    #[test]
    fn gradient_values() {
        let p = PotentialSpec::power_law(2.0, 4.0);
        assert_eq!(p.eval_gradient(&[1.0, 0.0, 0.0]).unwrap(), [0.0, 0.0, 0.0]);
        assert_eq!(p.eval_gradient(&[2.0, 0.0, 0.0]).unwrap(), [6.0, 0.0, 0.0]);
        assert!(p.eval_gradient(&[0.0; 3]).is_err());
    }

    #[test]
    fn laplacian_values() {
        let p = PotentialSpec::power_law(1.5, 2.0);
        assert!(close(p.eval_laplacian(&[1.0, 0.0, 0.0], 2).unwrap(), 0.5, 1e-15));
        let q = PotentialSpec::power_law(0.5, 5.0);
        let r = 1e-6;
        let lap = q.eval_laplacian(&[r, 0.0, 0.0], 2).unwrap();
        assert!(close(lap, -0.5 / r.powf(1.5), 1e-6));
    }

    #[test]
    fn tanh_well_antiderivative() {
        let spec = PotentialSpec::tanh_well(5.0, 0.5);
        assert_eq!(spec.eval_w(0.0).unwrap(), 0.0);
        // Composite Simpson of w' against the closed form.
        let r_end = 1.8;
        let m = 2000;
        let h = r_end / m as f64;
        let wp = |r: f64| -(5.0 * (1.0 - r)).tanh() - 0.5;
        let mut s = wp(0.0) + wp(r_end);
        for k in 1..m {
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * wp(k as f64 * h);
        }
        let integral = s * h / 3.0;
        assert!(close(spec.eval_w(r_end).unwrap(), integral, 1e-12));
    }

    #[test]
    fn cosine_perturbation_amplitude() {
        let spec = PotentialSpec::cosine_perturbed(1.5, 2.0, 3.0);
        let r: f64 = 0.8;
        let expected = -r.powf(1.5) / 1.5 + r * r / 2.0 + 0.5 * (3.0 * r).cos();
        assert!(close(spec.eval_w(r).unwrap(), expected, 1e-15));
        assert!(close(spec.eval_w(0.0).unwrap(), 0.5, 1e-15));
    }

    #[test]
    fn fast_powers_agree_with_powf() {
        for e in [-0.5, 0.25, 0.5, 0.75, 1.25, 1.5, 2.5, 7.0, 15.0, 23.0, -1.75, 1.4, 0.01] {
            for r in [1e-3, 0.3, 1.0, 2.7] {
                let a = Power::new(e).eval(r);
                let b = f64::powf(r, e);
                assert!(close(a, b, 1e-14), "e={e} r={r}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn validation() {
        assert!(PotentialSpec::power_law(1.5, 7.0).validate(2).is_empty());
        let v = PotentialSpec::power_law(5.0, 2.0).validate(2);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("alpha < gamma"));
        let v = PotentialSpec::power_law(-2.5, 5.0).validate(2);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("local integrability"));
        assert!(!PotentialSpec::tanh_well(-1.0, 0.5).validate(3).is_empty());
        assert!(PotentialSpec::power_law(5.0, 2.0).eval_w(1.0).is_err());
    }

    #[test]
    fn repulsion_classes() {
        let c = classify_repulsion(&PotentialSpec::power_law(0.5, 5.0), 2).unwrap();
        assert_eq!(c.kind, RepulsionKind::StronglyRepulsive);
        assert_eq!(c.beta, Some(1.5));
        let c = classify_repulsion(&PotentialSpec::power_law(2.5, 15.0), 2).unwrap();
        assert_eq!(c.kind, RepulsionKind::MildlyRepulsive);
        assert_eq!(c.predicted_dim_lower_bound, 0.0);
        let c = classify_repulsion(&PotentialSpec::power_law(-0.5, 5.0), 3).unwrap();
        assert_eq!(c.kind, RepulsionKind::StronglyRepulsive);
        assert_eq!(c.beta, Some(2.5));
        let c = classify_repulsion(&PotentialSpec::power_law(2.0, 5.0), 2).unwrap();
        assert_eq!(c.kind, RepulsionKind::Borderline);
        let c = classify_repulsion(&PotentialSpec::power_law(-0.5, 5.0), 2).unwrap();
        assert_eq!(c.kind, RepulsionKind::Invalid);
        let c = classify_repulsion(&PotentialSpec::cosine_perturbed(1.5, 2.0, 3.0), 2).unwrap();
        assert_eq!(c.beta, Some(0.5));
    }

    #[test]
    fn approx_laplacian_of_quadratic_core() {
        // h_2 = -|x|^2 / 2 has Delta = -N exactly, for every eps.
        for eps in [0.01, 0.5, 3.0] {
            let v = approx_laplacian_at(&AttractiveCore { alpha: 2.0 }, &[0.0; 3], 2, eps, 32)
                .unwrap();
            assert!(close(v, -2.0, 1e-12), "{v}");
        }
    }

    #[test]
    fn approx_laplacian_of_constant_is_zero() {
        let v = approx_laplacian_at(&ConstantProfile(3.5), &[0.2, 0.1, 0.0], 3, 0.1, 16).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn approx_laplacian_singular_center() {
        let k = PotentialSpec::power_law(-0.5, 5.0).kernel(3).unwrap();
        let v = approx_laplacian_at(&k, &[0.0; 3], 3, 0.1, 16).unwrap();
        assert_eq!(v, f64::NEG_INFINITY);
    }

    #[test]
    fn approx_laplacian_converges_to_laplacian_away_from_origin() {
        let spec = PotentialSpec::power_law(1.5, 7.0);
        let k = spec.kernel(2).unwrap();
        let x = [0.9, 0.4, 0.0];
        let exact = spec.eval_laplacian(&x, 2).unwrap();
        let approx = approx_laplacian_at(&k, &x, 2, 1e-2, 32).unwrap();
        assert!((approx - exact).abs() < 1e-3 * exact.abs(), "{approx} vs {exact}");
    }
}
