//! Normalized eigenfunctions `psi(r, theta, phi) = C r^l Y_l^m(theta, phi) f(r)`
//! with `f(r) = sqrt(1 - r^2) sum_j delta[j] r^{2j}` inside the unit ball.
//!
//! For `l = 0` the wavefunction carries no spherical-harmonic factor and `C`
//! absorbs the full solid angle, `C = [4 pi int_0^1 r^2 f^2 dr]^{-1/2}`. For
//! `l >= 1` the harmonics are orthonormal and `C = [int_0^1 r^{2l+2} f^2 dr]^{-1/2}`.

use crate::error::{Error, Result};
use crate::par;
use crate::quadrature::GaussRule;
use crate::solver::{Eigenpair, SpectralSeries};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// Highest orbital label supported by [`spherical_harmonic`].
pub const MAX_ORBITAL: usize = 16;
/// Gauss-Legendre nodes for the radial normalization integral.
pub const NORMALIZATION_NODES: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProfile {
    orbital: usize,
    coefficients: Vec<f64>,
    normalization: f64,
}

impl RadialProfile {
    /// Builds a profile and computes its normalization constant.
    pub fn new(orbital: usize, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient vector".into()));
        }
        let normalization = normalize(orbital, &coefficients)?;
        Ok(Self {
            orbital,
            coefficients,
            normalization,
        })
    }

    pub fn from_eigenpair(orbital: usize, pair: &Eigenpair) -> Result<Self> {
        Self::new(orbital, pair.coefficients.clone())
    }

    /// Profile of the `k`-th (1-based) member of a solved series.
    pub fn from_series(series: &SpectralSeries, k: usize) -> Result<Self> {
        let pair = series.get(k).ok_or(Error::TruncationTooSmall {
            requested: k,
            available: series.entries.len(),
        })?;
        Self::from_eigenpair(series.orbital, pair)
    }

    pub fn orbital(&self) -> usize {
        self.orbital
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// The even polynomial `w(r) = sum_j delta[j] r^{2j}`.
    pub fn polynomial(&self, r: f64) -> f64 {
        even_horner(&self.coefficients, r)
    }

    /// `f(r)`, unnormalized.
    pub fn radial(&self, r: f64) -> f64 {
        evaluate_radial(self, r)
    }

    /// `C r^l f(r)`: the wavefunction along the polar axis up to the angular factor.
    pub fn radial_part(&self, r: f64) -> f64 {
        self.normalization * r.powi(self.orbital as i32) * self.radial(r)
    }
}

/// `sum_j coeffs[j] r^{2j}` by Horner's rule in `r^2`.
pub fn even_horner(coeffs: &[f64], r: f64) -> f64 {
    let r2 = r * r;
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * r2 + c)
}

/// `f(r) = sqrt(1 - r^2) w(r)` for `r < 1`, zero otherwise.
pub fn evaluate_radial(profile: &RadialProfile, r: f64) -> f64 {
    if !(r < 1.0) {
        return 0.0;
    }
    (1.0 - r * r).sqrt() * profile.polynomial(r)
}

fn normalization_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::new(NORMALIZATION_NODES, 0.0, FRAC_PI_2))
}

/// Normalization constant for coefficients `delta` in the `l`-th series.
///
/// The radial integral is taken over `t` with `r = sin t`, which turns the
/// `(1 - r^2)` endpoint behavior into a smooth integrand.
pub fn normalize(l: usize, coefficients: &[f64]) -> Result<f64> {
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(Error::NormalizationImpossible);
    }
    let power = 2 * l as i32 + 2;
    let integral = normalization_rule().integrate(|t| {
        let (s, c) = t.sin_cos();
        let w = even_horner(coefficients, s);
        s.powi(power) * c * c * w * w * c
    });
    let integral = if l == 0 { 4.0 * PI * integral } else { integral };
    if !(integral > f64::MIN_POSITIVE) || !integral.is_finite() {
        return Err(Error::NormalizationImpossible);
    }
    Ok(integral.sqrt().recip())
}

/// Orthonormal `Y_l^m` with the Condon-Shortley phase.
pub fn spherical_harmonic(l: usize, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    let am = m.unsigned_abs() as usize;
    if am > l || l > MAX_ORBITAL {
        return Err(Error::InvalidLabel { l, m });
    }
    let p = normalized_legendre(l, am, theta.cos(), theta.sin());
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        Ok(y)
    } else if am.is_multiple_of(2) {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}

/// `sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(x)` including the `(-1)^m` phase,
/// by upward recurrence in `l` from the sectoral term.
fn normalized_legendre(l: usize, m: usize, x: f64, s: f64) -> f64 {
    // P_m^m
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for i in 1..=m {
        let i = i as f64;
        pmm *= -((2.0 * i + 1.0) / (2.0 * i)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut curr = x * (2.0 * m as f64 + 3.0).sqrt() * pmm;
    let mf = m as f64;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
        let next = a * (x * curr - b * prev);
        prev = curr;
        curr = next;
    }
    curr
}

/// Quantum numbers `(k, l, m)` of one member of a degenerate multiplet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WaveFunctionLabel {
    pub k: usize,
    pub l: usize,
    pub m: i64,
}

impl WaveFunctionLabel {
    pub fn new(k: usize, l: usize, m: i64) -> Result<Self> {
        if k == 0 || m.unsigned_abs() as usize > l {
            return Err(Error::InvalidLabel { l, m });
        }
        Ok(Self { k, l, m })
    }
}

fn check_label(label: &WaveFunctionLabel, profile: &RadialProfile) -> Result<()> {
    if label.m.unsigned_abs() as usize > label.l || label.l != profile.orbital {
        return Err(Error::InvalidLabel {
            l: label.l,
            m: label.m,
        });
    }
    Ok(())
}

pub fn wavefunction(
    label: &WaveFunctionLabel,
    profile: &RadialProfile,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    check_label(label, profile)?;
    if !(r < 1.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let radial = profile.radial_part(r);
    if label.l == 0 {
        return Ok(Complex64::new(radial, 0.0));
    }
    Ok(spherical_harmonic(label.l, label.m, theta, phi)? * radial)
}

pub fn density(
    label: &WaveFunctionLabel,
    profile: &RadialProfile,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    Ok(wavefunction(label, profile, r, theta, phi)?.norm_sqr())
}

/// Probability density on a uniform `(r, theta)` grid at `phi = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityGrid {
    pub label: WaveFunctionLabel,
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    /// Row-major over radius, angle fastest.
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn value(&self, ir: usize, itheta: usize) -> f64 {
        self.values[ir * self.angles.len() + itheta]
    }

    /// `(r, theta, density)` rows in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.radii.iter().enumerate().flat_map(move |(i, &r)| {
            self.angles
                .iter()
                .enumerate()
                .map(move |(j, &t)| (r, t, self.value(i, j)))
        })
    }
}

pub fn density_grid(
    label: &WaveFunctionLabel,
    profile: &RadialProfile,
    n_r: usize,
    n_theta: usize,
) -> Result<DensityGrid> {
    check_label(label, profile)?;
    if n_r < 2 || n_theta < 2 {
        return Err(Error::InvalidArgument(format!(
            "density grid needs at least 2 x 2 points, got {n_r} x {n_theta}"
        )));
    }
    let radii: Vec<f64> = (0..n_r).map(|i| i as f64 / (n_r - 1) as f64).collect();
    let angles: Vec<f64> = (0..n_theta)
        .map(|j| PI * j as f64 / (n_theta - 1) as f64)
        .collect();
    let rows = par::map_indexed(n_r, |i| {
        angles
            .iter()
            .map(|&t| density(label, profile, radii[i], t, 0.0))
            .collect::<Result<Vec<f64>>>()
    });
    let mut values = Vec::with_capacity(n_r * n_theta);
    for row in rows {
        values.extend(row?);
    }
    Ok(DensityGrid {
        label: *label,
        radii,
        angles,
        values,
    })
}

/// Closed-form approximant of the ground state,
/// `C sin(beta r) sqrt((1 - r^2) cos(beta r)) / r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticApproximant {
    pub beta: f64,
    pub normalization: f64,
}

impl Default for AnalyticApproximant {
    fn default() -> Self {
        Self {
            beta: 1760.0 * PI / 4096.0,
            normalization: 0.796658,
        }
    }
}

impl AnalyticApproximant {
    pub fn eval(&self, r: f64) -> f64 {
        if !(r < 1.0) {
            return 0.0;
        }
        let br = self.beta * r;
        let envelope = ((1.0 - r * r) * br.cos()).sqrt();
        let sinc = if r.abs() < 1e-8 {
            self.beta * (1.0 - br * br / 6.0)
        } else {
            br.sin() / r
        };
        self.normalization * sinc * envelope
    }
}

pub fn analytic_ground_state(r: f64) -> f64 {
    AnalyticApproximant::default().eval(r)
}
