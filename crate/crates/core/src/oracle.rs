//! Direct principal-value quadrature of the Cauchy operator.
//!
//! For a function `T` supported in the unit ball and a point `x` inside it,
//!
//! ```text
//! (-Delta)^{1/2} T(x) = (1/pi^2) PV int_D (T(x) - T(y)) / |x - y|^4 dy
//!                     + T(x) * (1/pi^2) int_{|y|>1} |x - y|^{-4} dy.
//! ```
//!
//! The exterior term has a closed form. The interior term is integrated in
//! spherical coordinates centred at `x`, pairing each direction with its
//! antipode so the odd `1/s` part of the integrand cancels exactly. A
//! symmetric window of radius `eps` is cut out around `x` and the result is
//! extrapolated to `eps -> 0`.
//!
//! Everything here is independent of the generating-matrix formulas in
//! [`crate::basis`], which it exists to validate.

use crate::basis::generating_matrix;
use crate::error::{Error, Result};
use crate::par;
use crate::quadrature::GaussRule;
use serde::Serialize;
use std::f64::consts::PI;

/// Axis-aligned trial function `S_l(u) |u|^{2j} sqrt(1 - |u|^2)` on the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialFunction {
    pub orbital: usize,
    pub power: usize,
}

impl TrialFunction {
    pub fn new(orbital: usize, power: usize) -> Self {
        Self { orbital, power }
    }

    pub fn eval(&self, u: [f64; 3]) -> f64 {
        let u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        if u2 >= 1.0 {
            return 0.0;
        }
        zonal_solid_harmonic(self.orbital, u[2], u2) * u2.powi(self.power as i32) * (1.0 - u2).sqrt()
    }
}

/// `S_l(u) = |u|^l P_l(u_3 / |u|)` via
/// `(l+1) S_{l+1} = (2l+1) u_3 S_l - l |u|^2 S_{l-1}`.
pub fn zonal_solid_harmonic(l: usize, u3: f64, u2: f64) -> f64 {
    let mut prev = 1.0;
    if l == 0 {
        return prev;
    }
    let mut curr = u3;
    for k in 1..l {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * u3 * curr - kf * u2 * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Discretization of the principal-value integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes in `cos(gamma)` over the upper hemisphere; each is
    /// paired with its antipode.
    pub polar_nodes: usize,
    /// Equally spaced azimuths per polar node. The default suits points on
    /// the polar axis, where the integrand does not depend on azimuth;
    /// off-axis points need many more.
    pub azimuthal_nodes: usize,
    /// Panels per radial segment.
    pub radial_panels: usize,
    /// Gauss-Legendre order inside each radial panel.
    pub panel_order: usize,
    /// Exclusion radii, strictly decreasing.
    pub exclusion_radii: Vec<f64>,
    /// Largest accepted change between the last two extrapolation levels.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            polar_nodes: 32,
            azimuthal_nodes: 4,
            radial_panels: 8,
            panel_order: 16,
            exclusion_radii: vec![1e-2, 5e-3, 2.5e-3],
            tolerance: 1e-4,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.polar_nodes >= 2
            && self.azimuthal_nodes >= 1
            && self.radial_panels >= 1
            && self.panel_order >= 2
            && self.exclusion_radii.len() >= 2
            && self.exclusion_radii.iter().all(|&e| e > 0.0 && e < 0.05)
            && self.exclusion_radii.windows(2).all(|w| w[1] < w[0])
            && self.tolerance > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid quadrature spec {self:?}")))
        }
    }

    /// Number of distinct directions (twice the number of antipodal pairs).
    pub fn direction_count(&self) -> usize {
        2 * self.polar_nodes * self.azimuthal_nodes
    }
}

/// `(1/pi^2) int_{|y|>1} |x - y|^{-4} dy` for `|x| = p`.
pub fn exterior_kernel_integral(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfDomain {
            value: p,
            domain: "(0, 1)",
        });
    }
    Ok((2.0 / (1.0 - p * p) + ((1.0 + p) / (1.0 - p)).ln() / p) / PI)
}

/// Nodes on `[a, b]` for an integrand with a square-root zero at `b`:
/// `s = b - (b - a) v^2`, `v` in `[0, 1]`.
fn sqrt_end_rule(unit: &GaussRule, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let len = b - a;
    unit.nodes
        .iter()
        .zip(&unit.weights)
        .map(move |(&v, &w)| (b - len * v * v, 2.0 * len * v * w))
}

/// Distance from `x` along unit `dir` to the unit sphere.
fn exit_distance(x: [f64; 3], dir: [f64; 3]) -> f64 {
    let b = x[0] * dir[0] + x[1] * dir[1] + x[2] * dir[2];
    let c = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - 1.0;
    -b + (b * b - c).sqrt()
}

fn along(x: [f64; 3], dir: [f64; 3], s: f64) -> [f64; 3] {
    [x[0] + s * dir[0], x[1] + s * dir[1], x[2] + s * dir[2]]
}

/// Paired radial integral for one antipodal pair of directions with the
/// window `s < eps` removed.
fn paired_ray<F: Fn([f64; 3]) -> f64>(
    f: &F,
    x: [f64; 3],
    fx: f64,
    dir: [f64; 3],
    eps: f64,
    unit: &GaussRule,
) -> f64 {
    let anti = [-dir[0], -dir[1], -dir[2]];
    let forward = exit_distance(x, dir);
    let backward = exit_distance(x, anti);
    let (short, long, long_dir) = if forward <= backward {
        (forward, backward, anti)
    } else {
        (backward, forward, dir)
    };

    let mut total = 0.0;
    if short > eps {
        total += sqrt_end_rule(unit, eps, short)
            .map(|(s, w)| w * (2.0 * fx - f(along(x, dir, s)) - f(along(x, anti, s))) / (s * s))
            .sum::<f64>();
    }
    let start = short.max(eps);
    if long > start {
        total += sqrt_end_rule(unit, start, long)
            .map(|(s, w)| w * (fx - f(along(x, long_dir, s))) / (s * s))
            .sum::<f64>();
    }
    total
}

/// Polynomial extrapolation to zero of `values` sampled at `abscissae`
/// (Neville's scheme). Returns the estimate from all levels and the one
/// obtained without the last level.
fn extrapolate_to_zero(abscissae: &[f64], values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mut table = values.to_vec();
    let mut diagonal = vec![values[0]];
    for level in 1..n {
        for i in (level..n).rev() {
            let (xa, xb) = (abscissae[i - level], abscissae[i]);
            table[i] = (xa * table[i] - xb * table[i - 1]) / (xa - xb);
        }
        // extrapolant through levels 0..=level
        diagonal.push(table[level]);
    }
    (diagonal[n - 1], diagonal[n - 2])
}

/// Result of one principal-value evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PvEstimate {
    pub value: f64,
    /// Interior integral at each exclusion radius, before extrapolation.
    pub levels: Vec<f64>,
    /// Change between the last two extrapolation levels.
    pub spread: f64,
}

/// Principal value of the Cauchy operator applied to an arbitrary function
/// supported in the unit ball, at the interior point `x`.
pub fn pv_apply_fn<F>(f: F, x: [f64; 3], spec: &QuadratureSpec) -> Result<PvEstimate>
where
    F: Fn([f64; 3]) -> f64 + Sync + Send,
{
    spec.validate()?;
    let p = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let exterior = exterior_kernel_integral(p)?;
    let fx = f(x);

    let polar = GaussRule::new(2 * spec.polar_nodes, -1.0, 1.0);
    let upper: Vec<(f64, f64)> = polar
        .nodes
        .iter()
        .zip(&polar.weights)
        .filter(|(&mu, _)| mu > 0.0)
        .map(|(&mu, &w)| (mu, w))
        .collect();
    let unit = GaussRule::composite(spec.panel_order, spec.radial_panels, 0.0, 1.0);
    let dphi = 2.0 * PI / spec.azimuthal_nodes as f64;

    let pairs = upper.len() * spec.azimuthal_nodes;
    let levels: Vec<f64> = spec
        .exclusion_radii
        .iter()
        .map(|&eps| {
            par::sum_indexed(pairs, |idx| {
                let (mu, w_mu) = upper[idx / spec.azimuthal_nodes];
                let phi = dphi * (idx % spec.azimuthal_nodes) as f64;
                let st = (1.0 - mu * mu).sqrt();
                let dir = [st * phi.cos(), st * phi.sin(), mu];
                w_mu * dphi * paired_ray(&f, x, fx, dir, eps, &unit)
            }) / (PI * PI)
        })
        .collect();

    let (best, previous) = extrapolate_to_zero(&spec.exclusion_radii, &levels);
    let spread = (best - previous).abs();
    if !best.is_finite() || spread > spec.tolerance {
        return Err(Error::QuadratureNotConverged {
            spread,
            tolerance: spec.tolerance,
        });
    }
    Ok(PvEstimate {
        value: best + fx * exterior,
        levels,
        spread,
    })
}

/// Cauchy operator applied to a trial function at `(0, 0, p)`.
pub fn pv_apply(trial: &TrialFunction, p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(p > 0.0 && p <= 0.9) {
        return Err(Error::OutOfDomain {
            value: p,
            domain: "(0, 0.9]",
        });
    }
    let t = *trial;
    Ok(pv_apply_fn(move |u| t.eval(u), [0.0, 0.0, p], spec)?.value)
}

/// `(-Delta)^{1/2}` of a trial function at `(0, 0, p)` from the generating
/// matrix: `p^l sum_k a[l][k, j] p^{2(j-k)}`.
pub fn closed_form_action(trial: &TrialFunction, p: f64) -> f64 {
    let (l, j) = (trial.orbital, trial.power);
    let g = generating_matrix(l, j);
    let poly: f64 = (0..=j).map(|k| g.entry(k, j) * p.powi(2 * (j - k) as i32)).sum();
    p.powi(l as i32) * poly
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActionSample {
    pub orbital: usize,
    pub power: usize,
    pub p: f64,
    pub quadrature: f64,
    pub closed_form: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActionReport {
    pub samples: Vec<ActionSample>,
    pub max_abs_error: f64,
}

/// Compares quadrature against the generating-matrix action for every
/// `j <= j_max` and every point.
pub fn verify_action_formula(
    l: usize,
    j_max: usize,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<ActionReport> {
    let mut samples = Vec::new();
    for j in 0..=j_max {
        let trial = TrialFunction::new(l, j);
        for &p in points {
            let quadrature = pv_apply(&trial, p, spec)?;
            let closed_form = closed_form_action(&trial, p);
            samples.push(ActionSample {
                orbital: l,
                power: j,
                p,
                quadrature,
                closed_form,
                abs_error: (quadrature - closed_form).abs(),
            });
        }
    }
    let max_abs_error = samples.iter().map(|s| s.abs_error).fold(0.0, f64::max);
    Ok(ActionReport {
        samples,
        max_abs_error,
    })
}

/// One-dimensional Cauchy operator
/// `(1/pi) PV int (g(z) - g(t)) / (t - z)^2 dt` for `g` supported in `(-1, 1)`.
///
/// Uses the same split: `g(z) * 2 / (pi (1 - z^2))` from the exterior plus a
/// symmetric-pair interior integral.
pub fn pv_apply_1d<G>(g: G, z: f64, spec: &QuadratureSpec) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(z.abs() < 1.0) {
        return Err(Error::OutOfDomain {
            value: z,
            domain: "(-1, 1)",
        });
    }
    let gz = g(z);
    let exterior = 2.0 / (PI * (1.0 - z * z));
    let unit = GaussRule::composite(spec.panel_order, spec.radial_panels, 0.0, 1.0);
    let (short, long, sign) = if 1.0 - z <= 1.0 + z {
        (1.0 - z, 1.0 + z, -1.0)
    } else {
        (1.0 + z, 1.0 - z, 1.0)
    };
    let levels: Vec<f64> = spec
        .exclusion_radii
        .iter()
        .map(|&eps| {
            let mut total = 0.0;
            if short > eps {
                total += sqrt_end_rule(&unit, eps, short)
                    .map(|(s, w)| w * (2.0 * gz - g(z + s) - g(z - s)) / (s * s))
                    .sum::<f64>();
            }
            let start = short.max(eps);
            if long > start {
                total += sqrt_end_rule(&unit, start, long)
                    .map(|(s, w)| w * (gz - g(z + sign * s)) / (s * s))
                    .sum::<f64>();
            }
            total / PI
        })
        .collect();
    let (best, previous) = extrapolate_to_zero(&spec.exclusion_radii, &levels);
    let spread = (best - previous).abs();
    if !best.is_finite() || spread > spec.tolerance {
        return Err(Error::QuadratureNotConverged {
            spread,
            tolerance: spec.tolerance,
        });
    }
    Ok(best + gz * exterior)
}
