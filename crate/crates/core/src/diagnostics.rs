//! Consistency checks on solved states: the exact operator image of a
//! truncated eigenfunction, its pointwise detuning from `E psi`, the
//! one-dimensional correspondence of the radial series and its asymptotic law.

use crate::basis::generating_matrix;
use crate::eigenfunctions::{even_horner, RadialProfile};
use crate::error::{Error, Result};
use crate::oracle::{pv_apply_1d, QuadratureSpec};
use crate::par;
use crate::reference::{D1_PRIMARY, D1_SECONDARY};
use crate::solver::SpectralSeries;
use serde::Serialize;
use std::f64::consts::PI;

/// Default number of detuning samples.
pub const DETUNING_SAMPLES: usize = 10_000;
/// Upper end of the detuning grid; the image is sampled on `[0, 1 - 1e-9]`.
pub const DETUNING_EDGE: f64 = 1.0 - 1e-9;

/// Even polynomial `q` with `(-Delta)^{1/2}[S_l f] = S_l q` for
/// `f = sqrt(1 - r^2) sum_k delta[k] r^{2k}`:
/// `q[i] = sum_{k >= i} delta[k] a[l][k - i, k]`.
pub fn operator_polynomial(l: usize, coefficients: &[f64]) -> Vec<f64> {
    let n = coefficients.len() - 1;
    let g = generating_matrix(l, n);
    (0..=n)
        .map(|i| {
            (i..=n)
                .map(|k| coefficients[k] * g.entry(k - i, k))
                .sum()
        })
        .collect()
}

pub fn apply_operator_polynomial(profile: &RadialProfile, l: usize) -> Result<Vec<f64>> {
    if profile.orbital() != l {
        return Err(Error::InvalidArgument(format!(
            "profile belongs to l = {}, requested l = {l}",
            profile.orbital()
        )));
    }
    Ok(operator_polynomial(l, profile.coefficients()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetuningSample {
    pub r: f64,
    pub detuning: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetuningCurve {
    pub degree: usize,
    pub energy: f64,
    pub samples: Vec<DetuningSample>,
    pub max: f64,
    pub argmax: f64,
}

impl DetuningCurve {
    /// Largest detuning over samples with `r < bound`.
    pub fn max_below(&self, bound: f64) -> f64 {
        self.samples
            .iter()
            .filter(|s| s.r < bound)
            .map(|s| s.detuning)
            .fold(0.0, f64::max)
    }
}

/// `|C r^l (q(r) - E f(r))|` on a uniform grid: the radial part of
/// `(-Delta)^{1/2} psi - E psi` along the polar axis.
pub fn detuning(profile: &RadialProfile, energy: f64, n_samples: usize) -> Result<DetuningCurve> {
    if n_samples < 100 {
        return Err(Error::InvalidArgument(format!(
            "detuning needs at least 100 samples, got {n_samples}"
        )));
    }
    let l = profile.orbital();
    let q = operator_polynomial(l, profile.coefficients());
    let c = profile.normalization();
    let samples = par::map_indexed(n_samples, |i| {
        let r = DETUNING_EDGE * i as f64 / (n_samples - 1) as f64;
        let image = even_horner(&q, r);
        let value = c * r.powi(l as i32) * (image - energy * profile.radial(r));
        DetuningSample {
            r,
            detuning: value.abs(),
        }
    });
    let (max, argmax) = samples
        .iter()
        .fold((0.0, 0.0), |(m, at), s| if s.detuning > m { (s.detuning, s.r) } else { (m, at) });
    Ok(DetuningCurve {
        degree: 2 * (profile.coefficients().len() - 1),
        energy,
        samples,
        max,
        argmax,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct D1Row {
    pub k: usize,
    pub energy: f64,
    pub primary: f64,
    pub secondary: Option<f64>,
    pub diff_primary: f64,
    pub diff_secondary: Option<f64>,
}

fn require_radial(series: &SpectralSeries) -> Result<()> {
    if series.orbital != 0 {
        return Err(Error::InvalidArgument(format!(
            "radial (l = 0) series required, got l = {}",
            series.orbital
        )));
    }
    Ok(())
}

/// Compares `E_(k,0)` with the stored even-labelled one-dimensional levels.
pub fn d1_comparison(series: &SpectralSeries) -> Result<Vec<D1Row>> {
    require_radial(series)?;
    if series.entries.len() > D1_PRIMARY.len() {
        return Err(Error::InvalidArgument(format!(
            "at most {} levels have reference values",
            D1_PRIMARY.len()
        )));
    }
    Ok(series
        .entries
        .iter()
        .map(|e| {
            let primary = D1_PRIMARY[e.k - 1];
            let secondary = D1_SECONDARY[e.k - 1];
            D1Row {
                k: e.k,
                energy: e.energy,
                primary,
                secondary,
                diff_primary: (e.energy - primary).abs(),
                diff_secondary: secondary.map(|s| (e.energy - s).abs()),
            }
        })
        .collect())
}

/// `k pi - pi / 8`.
pub fn asymptotic_level(k: usize) -> f64 {
    k as f64 * PI - PI / 8.0
}

/// `(k, |E_(k,0) - (k pi - pi/8)|)` for each entry.
pub fn asymptotic_gap(series: &SpectralSeries) -> Result<Vec<(usize, f64)>> {
    require_radial(series)?;
    Ok(series
        .entries
        .iter()
        .map(|e| (e.k, (e.energy - asymptotic_level(e.k)).abs()))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrespondenceSample {
    pub r: f64,
    /// `r q(r)` from the generating matrix.
    pub closed_form: f64,
    /// One-dimensional operator applied to `z f(z)`, by quadrature.
    pub quadrature: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub samples: Vec<CorrespondenceSample>,
    pub max_abs_error: f64,
}

/// Checks that `r q(r)` equals the one-dimensional Cauchy operator applied to
/// the odd function `z f(z)`, which is what makes the radial system coincide
/// with the odd sector of the one-dimensional well.
pub fn coefficient_correspondence(
    profile: &RadialProfile,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<CorrespondenceReport> {
    if profile.orbital() != 0 {
        return Err(Error::InvalidArgument("radial (l = 0) profile required".into()));
    }
    let q = operator_polynomial(0, profile.coefficients());
    let odd = |z: f64| z * profile.radial(z.abs());
    let samples = points
        .iter()
        .map(|&r| {
            let closed_form = r * even_horner(&q, r);
            let quadrature = pv_apply_1d(odd, r, spec)?;
            Ok(CorrespondenceSample {
                r,
                closed_form,
                quadrature,
                abs_error: (closed_form - quadrature).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_abs_error = samples.iter().map(|s| s.abs_error).fold(0.0, f64::max);
    Ok(CorrespondenceReport {
        samples,
        max_abs_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn operator_polynomial_examples() {
        assert_eq!(operator_polynomial(0, &[1.0]), vec![2.0]);
        assert_eq!(operator_polynomial(0, &[0.0, 1.0]), vec![-1.0, 4.0]);
        let q = operator_polynomial(1, &[1.0]);
        assert_abs_diff_eq!(q[0], 8.0 / 3.0, epsilon = 1e-15);
        // r^4 sqrt(1-r^2) -> -1/4 - 2 r^2 + 6 r^4
        let q = operator_polynomial(0, &[0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(q[0], -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(q[1], -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q[2], 6.0, epsilon = 1e-15);
    }

    #[test]
    fn mismatched_orbital() {
        let p = RadialProfile::new(1, vec![1.0]).unwrap();
        assert!(apply_operator_polynomial(&p, 0).is_err());
        assert!(apply_operator_polynomial(&p, 1).is_ok());
    }

    #[test]
    fn asymptotic_examples() {
        assert_abs_diff_eq!(2.754769 - asymptotic_level(1), 5.9e-3, epsilon = 1e-4);
        assert_abs_diff_eq!(18.457716 - asymptotic_level(6), 8.6e-4, epsilon = 1e-4);
    }

    #[test]
    fn too_few_detuning_samples() {
        let p = RadialProfile::new(0, vec![1.0, -2.0 / 3.0]).unwrap();
        assert!(detuning(&p, 8.0 / 3.0, 99).is_err());
    }

    #[test]
    fn non_radial_series_rejected() {
        let s = crate::solver::solve_series(1, 3, 1).unwrap();
        assert!(asymptotic_gap(&s).is_err());
        assert!(d1_comparison(&s).is_err());
    }
}
