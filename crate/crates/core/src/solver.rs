//! Truncated spectral system for a fixed orbital label.
//!
//! For truncation order `n` (polynomial degree `2n`) the unknowns are the
//! energy `E` and the coefficients `delta[0..=n]` with `delta[0] = 1`. The
//! system has `n` eigen-rows
//!
//! ```text
//! sum_{k>=i} a[l][k-i, k] delta[k] = E sum_{k<=i} c[2(i-k)] delta[k],   i = 0..n-1
//! ```
//!
//! and one boundary row `sum_m delta[m] sum_{k<=m} a[l][k, m] = 0` forcing the
//! operator image to vanish at r = 1. The mass rows never touch column `n`, so
//! the boundary row can be used to eliminate `delta[n]`, leaving an `n x n`
//! pencil whose mass matrix is unit lower triangular.

use crate::basis::{generating_matrix, taylor_coefficients, GeneratingMatrix};
use crate::error::{Error, Result};
use crate::par;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// Real-part relative bound on the imaginary part of an accepted eigenvalue.
pub const REALITY_TOLERANCE: f64 = 1e-8;
/// Relative separation below which two eigenvalues are treated as one.
pub const DUPLICATE_TOLERANCE: f64 = 1e-9;
/// Relative threshold on `|r[n]|` below which elimination is refused.
pub const BOUNDARY_PIVOT_TOLERANCE: f64 = 1e-300;
/// `|delta[0]|` relative to `max |delta|` below which normalization fails.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 0; // 0: nalgebra default (unbounded)
const INVERSE_ITERATIONS: usize = 3;
const NEWTON_ITERATIONS: usize = 4;

#[derive(Debug, Clone)]
pub struct TruncatedPencil {
    orbital: usize,
    order: usize,
    generating: GeneratingMatrix,
    /// `n x (n+1)`, upper triangular: `A[i][k] = a[l][k-i, k]` for `k >= i`.
    eigen_rows: DMatrix<f64>,
    /// `n x (n+1)`, lower triangular with unit diagonal and zero last column.
    mass_rows: DMatrix<f64>,
    /// `r[m] = sum_{k<=m} a[l][k, m]`.
    boundary_row: DVector<f64>,
}

impl TruncatedPencil {
    pub fn orbital(&self) -> usize {
        self.orbital
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        2 * self.order
    }

    pub fn generating(&self) -> &GeneratingMatrix {
        &self.generating
    }

    pub fn eigen_rows(&self) -> &DMatrix<f64> {
        &self.eigen_rows
    }

    pub fn mass_rows(&self) -> &DMatrix<f64> {
        &self.mass_rows
    }

    pub fn boundary_row(&self) -> &DVector<f64> {
        &self.boundary_row
    }

    /// Eliminates `delta[n]` with the boundary row and returns the square
    /// pencil `(A~, B~)` acting on `delta[0..n]`.
    pub fn reduced(&self) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
        let n = self.order;
        let pivot = self.boundary_row[n];
        let scale = self.boundary_row.amax();
        if !pivot.is_finite() || pivot.abs() <= BOUNDARY_PIVOT_TOLERANCE * scale.max(1.0) {
            return Err(Error::DegenerateBoundaryRow { value: pivot });
        }
        let last = self.eigen_rows.column(n);
        let mut a = self.eigen_rows.columns(0, n).into_owned();
        for k in 0..n {
            let factor = self.boundary_row[k] / pivot;
            for i in 0..n {
                a[(i, k)] -= last[i] * factor;
            }
        }
        let b = self.mass_rows.columns(0, n).into_owned();
        Ok((a, b))
    }

    /// `delta[n]` implied by the boundary row for given `delta[0..n]`.
    pub fn complete(&self, head: &[f64]) -> Vec<f64> {
        let n = self.order;
        let tail = -head
            .iter()
            .zip(self.boundary_row.iter())
            .map(|(d, r)| d * r)
            .sum::<f64>()
            / self.boundary_row[n];
        let mut out = head.to_vec();
        out.push(tail);
        out
    }

    /// `max_i |sum_k A[i][k] delta[k] - E sum_k B[i][k] delta[k]|`.
    pub fn row_residual(&self, energy: f64, coefficients: &[f64]) -> f64 {
        let delta = DVector::from_column_slice(coefficients);
        let lhs = &self.eigen_rows * &delta;
        let rhs = &self.mass_rows * &delta;
        (lhs - rhs * energy).amax()
    }

    /// Largest magnitude among the individual boundary-row terms.
    pub fn boundary_scale(&self, coefficients: &[f64]) -> f64 {
        coefficients
            .iter()
            .zip(self.boundary_row.iter())
            .map(|(d, r)| (d * r).abs())
            .fold(0.0, f64::max)
    }
}

pub fn assemble_pencil(l: usize, n: usize) -> Result<TruncatedPencil> {
    if n == 0 {
        return Err(Error::TruncationTooSmall {
            requested: 1,
            available: 0,
        });
    }
    let generating = generating_matrix(l, n);
    let c = taylor_coefficients(n);
    let eigen_rows = DMatrix::from_fn(n, n + 1, |i, k| {
        if k >= i {
            generating.entry(k - i, k)
        } else {
            0.0
        }
    });
    let mass_rows = DMatrix::from_fn(n, n + 1, |i, k| if k <= i { c.get(i - k) } else { 0.0 });
    let boundary_row = DVector::from_fn(n + 1, |m, _| generating.column_sum(m));
    Ok(TruncatedPencil {
        orbital: l,
        order: n,
        generating,
        eigen_rows,
        mass_rows,
        boundary_row,
    })
}

/// `|sum_m delta[m] r[m]|`.
pub fn boundary_residual(pencil: &TruncatedPencil, coefficients: &[f64]) -> f64 {
    assert_eq!(
        coefficients.len(),
        pencil.order + 1,
        "coefficient vector must have length n + 1"
    );
    coefficients
        .iter()
        .zip(pencil.boundary_row.iter())
        .map(|(d, r)| d * r)
        .sum::<f64>()
        .abs()
}

/// One member of an orbital series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenpair {
    /// 1-based rank in the ascending sieve.
    pub k: usize,
    /// Energy in units of hbar c / R with R = 1.
    pub energy: f64,
    /// `delta[0..=n]`, `delta[0] = 1`.
    pub coefficients: Vec<f64>,
    pub boundary_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSeries {
    pub orbital: usize,
    pub degree: usize,
    pub entries: Vec<Eigenpair>,
}

impl SpectralSeries {
    pub fn order(&self) -> usize {
        self.degree / 2
    }

    pub fn energies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.energy).collect()
    }

    /// Entry with 1-based rank `k`.
    pub fn get(&self, k: usize) -> Option<&Eigenpair> {
        k.checked_sub(1).and_then(|i| self.entries.get(i))
    }
}

/// Real, strictly positive eigenvalues of the reduced pencil, ascending and
/// with near-coincident values merged.
pub fn admissible_energies(pencil: &TruncatedPencil) -> Result<Vec<f64>> {
    let (a, b) = pencil.reduced()?;
    let m = b
        .solve_lower_triangular(&a)
        .ok_or(Error::DegenerateBoundaryRow { value: 0.0 })?;
    let schur = m
        .try_schur(SCHUR_EPS, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::InvalidArgument("Schur iteration did not converge".into()))?;
    let mut energies: Vec<f64> = schur
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= REALITY_TOLERANCE * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .filter(|&e| e > 0.0)
        .collect();
    energies.sort_by(f64::total_cmp);

    let mut merged: Vec<f64> = Vec::with_capacity(energies.len());
    for e in energies {
        match merged.last() {
            Some(&prev) if (e - prev).abs() < DUPLICATE_TOLERANCE * (1.0 + e.abs()) => {
                log::warn!(
                    "l = {}, 2n = {}: eigenvalues {prev} and {e} coincide; keeping one",
                    pencil.orbital,
                    pencil.degree()
                );
            }
            _ => merged.push(e),
        }
    }
    Ok(merged)
}

/// Inverse iteration on `B~^{-1} A~` shifted just off `energy`.
fn eigenvector(m: &DMatrix<f64>, energy: f64) -> Result<Vec<f64>> {
    let n = m.nrows();
    let shift = energy + 1e-10 * (1.0 + energy.abs());
    let shifted = m - DMatrix::identity(n, n) * shift;
    let lu = shifted.lu();
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.1 * ((i as f64) * 0.7).sin());
    for _ in 0..INVERSE_ITERATIONS {
        let next = lu
            .solve(&v)
            .ok_or_else(|| Error::InvalidArgument("singular shifted matrix".into()))?;
        let norm = next.amax();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NormalizationImpossible);
        }
        v = next / norm;
    }
    Ok(v.iter().copied().collect())
}

fn reduced_residual(a: &DMatrix<f64>, b: &DMatrix<f64>, energy: f64, v: &DVector<f64>) -> DVector<f64> {
    a * v - (b * v) * energy
}

/// Newton iteration on `(A~ - E B~) v = 0` with `v[0] = 1` fixed, unknowns
/// `v[1..n]` and `E`. Keeps the iterate with the smallest residual.
fn refine(a: &DMatrix<f64>, b: &DMatrix<f64>, energy: f64, head: &[f64]) -> (f64, Vec<f64>) {
    let n = a.nrows();
    let mut v = DVector::from_column_slice(head);
    let mut e = energy;
    let mut res = reduced_residual(a, b, e, &v);
    let mut best = (res.amax(), e, v.clone());
    for _ in 0..NEWTON_ITERATIONS {
        let bv = b * &v;
        let mut jac = a - b * e;
        for i in 0..n {
            jac[(i, 0)] = -bv[i];
        }
        let Some(step) = jac.lu().solve(&(-&res)) else {
            break;
        };
        e += step[0];
        for j in 1..n {
            v[j] += step[j];
        }
        res = reduced_residual(a, b, e, &v);
        let norm = res.amax();
        if !norm.is_finite() {
            break;
        }
        if norm < best.0 {
            best = (norm, e, v.clone());
        }
    }
    (best.1, best.2.iter().copied().collect())
}

fn solve_entries(pencil: &TruncatedPencil, count: Option<usize>) -> Result<SpectralSeries> {
    let energies = admissible_energies(pencil)?;
    let count = count.unwrap_or(energies.len());
    if count > energies.len() {
        return Err(Error::TruncationTooSmall {
            requested: count,
            available: energies.len(),
        });
    }
    let (a, b) = pencil.reduced()?;
    let m = b
        .solve_lower_triangular(&a)
        .ok_or(Error::DegenerateBoundaryRow { value: 0.0 })?;

    let results = par::map_indexed(count, |idx| -> Result<Eigenpair> {
        let energy = energies[idx];
        let head = eigenvector(&m, energy)?;
        let lead = head[0];
        let scale = head.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        if lead.abs() <= NORMALIZATION_TOLERANCE * scale {
            return Err(Error::NormalizationImpossible);
        }
        let head: Vec<f64> = head.iter().map(|x| x / lead).collect();
        let (energy, head) = refine(&a, &b, energy, &head);
        let coefficients = pencil.complete(&head);
        let residual = boundary_residual(pencil, &coefficients);
        Ok(Eigenpair {
            k: idx + 1,
            energy,
            coefficients,
            boundary_residual: residual,
        })
    });
    let entries = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SpectralSeries {
        orbital: pencil.orbital,
        degree: pencil.degree(),
        entries,
    })
}

/// The `count` lowest admissible eigenpairs of the `(l, n)` system.
pub fn solve_series(l: usize, n: usize, count: usize) -> Result<SpectralSeries> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if count > n {
        return Err(Error::TruncationTooSmall {
            requested: count,
            available: n,
        });
    }
    let pencil = assemble_pencil(l, n)?;
    solve_entries(&pencil, Some(count))
}

/// Independent solves for several orbital labels at a common order, run in
/// parallel and returned in the order of `orbitals`.
pub fn solve_orbitals(orbitals: &[usize], n: usize, count: usize) -> Result<Vec<SpectralSeries>> {
    par::map_indexed(orbitals.len(), |i| solve_series(orbitals[i], n, count))
        .into_iter()
        .collect()
}

/// Every admissible energy of the `(l, n)` system, without eigenvectors.
///
/// High members of the sieve have coefficient vectors too large to recover
/// reliably, so only the energies are returned here.
pub fn spectrum(l: usize, n: usize) -> Result<Vec<f64>> {
    admissible_energies(&assemble_pencil(l, n)?)
}

/// Largest order accepted by [`det_scan`].
pub const DET_SCAN_MAX_ORDER: usize = 12;

/// Real roots of `det(A~ - E B~)` in `[lo, hi]`, located by a uniform sign
/// scan and refined by bisection.
pub fn det_scan(l: usize, n: usize, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if n > DET_SCAN_MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "det_scan supports n <= {DET_SCAN_MAX_ORDER}, got {n}"
        )));
    }
    if !(lo < hi) || steps == 0 {
        return Err(Error::InvalidArgument(format!(
            "empty scan interval [{lo}, {hi}] with {steps} steps"
        )));
    }
    let pencil = assemble_pencil(l, n)?;
    let (a, b) = pencil.reduced()?;
    let det = |e: f64| (&a - &b * e).lu().determinant();

    let grid: Vec<f64> = (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect();
    let values = par::map_indexed(grid.len(), |i| det(grid[i]));

    let mut roots = Vec::new();
    for i in 0..steps {
        let (mut x0, mut x1) = (grid[i], grid[i + 1]);
        let (mut f0, f1) = (values[i], values[i + 1]);
        if f0 == 0.0 {
            roots.push(x0);
            continue;
        }
        if f0.signum() == f1.signum() || f1 == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (x0 + x1);
            if mid <= x0 || mid >= x1 {
                break;
            }
            let fm = det(mid);
            if fm == 0.0 {
                x0 = mid;
                x1 = mid;
                break;
            }
            if fm.signum() == f0.signum() {
                x0 = mid;
                f0 = fm;
            } else {
                x1 = mid;
            }
        }
        roots.push(0.5 * (x0 + x1));
    }
    if values[steps] == 0.0 {
        roots.push(hi);
    }
    if roots.is_empty() {
        return Err(Error::NoRootsFound { lo, hi });
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn minimal_pencil_l0() {
        let p = assemble_pencil(0, 1).unwrap();
        assert_eq!(p.eigen_rows().as_slice(), &[2.0, -1.0]);
        assert_eq!(p.mass_rows().as_slice(), &[1.0, 0.0]);
        assert_eq!(p.boundary_row().as_slice(), &[2.0, 3.0]);
    }

    #[test]
    fn minimal_pencil_l1() {
        let p = assemble_pencil(1, 1).unwrap();
        assert_abs_diff_eq!(p.eigen_rows()[(0, 0)], 8.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.eigen_rows()[(0, 1)], -4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.boundary_row()[0], 8.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.boundary_row()[1], 52.0 / 15.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(matches!(
            assemble_pencil(0, 0),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn count_above_order_rejected() {
        assert!(matches!(
            solve_series(0, 2, 3),
            Err(Error::TruncationTooSmall { .. })
        ));
        assert!(solve_series(0, 2, 0).is_err());
    }

    #[test]
    fn boundary_residual_examples() {
        let p = assemble_pencil(0, 1).unwrap();
        assert_abs_diff_eq!(boundary_residual(&p, &[1.0, -2.0 / 3.0]), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(boundary_residual(&p, &[1.0, 0.0]), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn two_by_two_systems() {
        let s = solve_series(0, 1, 1).unwrap();
        assert_abs_diff_eq!(s.entries[0].energy, 8.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.entries[0].coefficients[1], -2.0 / 3.0, epsilon = 1e-12);

        let s = solve_series(1, 1, 1).unwrap();
        assert_abs_diff_eq!(s.entries[0].energy, 48.0 / 13.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.entries[0].coefficients[1], -10.0 / 13.0, epsilon = 1e-12);
    }

    #[test]
    fn det_scan_small() {
        let roots = det_scan(0, 1, 0.0, 5.0, 1000).unwrap();
        assert_eq!(roots.len(), 1);
        assert_abs_diff_eq!(roots[0], 8.0 / 3.0, epsilon = 1e-12);

        let roots = det_scan(1, 1, 0.0, 5.0, 1000).unwrap();
        assert_abs_diff_eq!(roots[0], 48.0 / 13.0, epsilon = 1e-12);
    }

    #[test]
    fn det_scan_errors() {
        assert!(matches!(
            det_scan(0, 1, 3.0, 3.5, 10),
            Err(Error::NoRootsFound { .. })
        ));
        assert!(det_scan(0, 13, 0.0, 1.0, 10).is_err());
        assert!(det_scan(0, 2, 1.0, 1.0, 10).is_err());
    }
}
