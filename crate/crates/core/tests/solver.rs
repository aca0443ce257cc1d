use approx::assert_abs_diff_eq;
use cauchy_well::reference::ORBITAL_SERIES_500;
use cauchy_well::solver::*;
use cauchy_well::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn row(m: &nalgebra::DMatrix<f64>, i: usize) -> Vec<f64> {
    m.row(i).iter().copied().collect()
}

#[test]
fn minimal_pencils() {
    let p = assemble_pencil(0, 1).unwrap();
    assert_eq!(row(p.eigen_rows(), 0), vec![2.0, -1.0]);
    assert_eq!(row(p.mass_rows(), 0), vec![1.0, 0.0]);
    assert_eq!(p.boundary_row().as_slice(), &[2.0, 3.0]);

    let p = assemble_pencil(1, 1).unwrap();
    let a = row(p.eigen_rows(), 0);
    assert_abs_diff_eq!(a[0], 8.0 / 3.0, epsilon = 1e-15);
    assert_abs_diff_eq!(a[1], -4.0 / 3.0, epsilon = 1e-15);
    assert_abs_diff_eq!(p.boundary_row()[0], 8.0 / 3.0, epsilon = 1e-15);
    assert_abs_diff_eq!(p.boundary_row()[1], 52.0 / 15.0, epsilon = 1e-15);
}

#[test]
fn zero_order_rejected() {
    assert!(matches!(assemble_pencil(0, 0), Err(Error::TruncationTooSmall { .. })));
}

#[test]
fn pencil_shape() {
    for l in 0..4 {
        let p = assemble_pencil(l, 9).unwrap();
        let (a, b) = (p.eigen_rows(), p.mass_rows());
        assert_eq!(a.shape(), (9, 10));
        for i in 0..9 {
            assert_eq!(b[(i, i)], 1.0);
            assert_eq!(b[(i, 9)], 0.0);
            for k in 0..10 {
                if k < i {
                    assert_eq!(a[(i, k)], 0.0);
                }
                if k > i {
                    assert_eq!(b[(i, k)], 0.0);
                }
            }
        }
        assert!(p.boundary_row().iter().all(|r| r.is_finite()));
        assert!(p.boundary_row()[9] != 0.0);
    }
}

#[test]
fn two_by_two_solutions() {
    let s = solve_series(0, 1, 1).unwrap();
    assert_eq!(s.degree, 2);
    assert_abs_diff_eq!(s.entries[0].energy, 8.0 / 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(s.entries[0].coefficients[1], -2.0 / 3.0, epsilon = 1e-12);

    let s = solve_series(1, 1, 1).unwrap();
    assert_abs_diff_eq!(s.entries[0].energy, 48.0 / 13.0, epsilon = 1e-12);
    assert_abs_diff_eq!(s.entries[0].coefficients[1], -10.0 / 13.0, epsilon = 1e-12);
}

#[test]
fn boundary_residual_values() {
    let p = assemble_pencil(0, 1).unwrap();
    assert_abs_diff_eq!(boundary_residual(&p, &[1.0, -2.0 / 3.0]), 0.0, epsilon = 1e-15);
    assert_eq!(boundary_residual(&p, &[1.0, 0.0]), 2.0);
}

#[test]
fn count_validation() {
    assert!(matches!(solve_series(0, 4, 0), Err(Error::InvalidArgument(_))));
    assert!(matches!(solve_series(0, 4, 5), Err(Error::TruncationTooSmall { .. })));
    // only complex pairs survive at this order
    assert!(matches!(solve_series(1, 2, 1), Err(Error::TruncationTooSmall { .. })));
}

#[test]
fn det_scan_examples() {
    let roots = det_scan(0, 1, 0.0, 5.0, 1000).unwrap();
    assert_eq!(roots.len(), 1);
    assert_abs_diff_eq!(roots[0], 8.0 / 3.0, epsilon = 1e-12);

    let roots = det_scan(1, 1, 0.0, 5.0, 1000).unwrap();
    assert_eq!(roots.len(), 1);
    assert_abs_diff_eq!(roots[0], 48.0 / 13.0, epsilon = 1e-12);

    let roots = det_scan(0, 4, 0.0, 4.0, 1000).unwrap();
    assert_eq!(roots.len(), 1);
    let lowest = solve_series(0, 4, 1).unwrap().entries[0].energy;
    assert_abs_diff_eq!(roots[0], lowest, epsilon = 1e-10);
}

#[test]
fn det_scan_rejections() {
    assert!(matches!(det_scan(0, 1, 0.0, 1.0, 100), Err(Error::NoRootsFound { .. })));
    assert!(det_scan(0, DET_SCAN_MAX_ORDER + 1, 0.0, 5.0, 100).is_err());
    assert!(det_scan(0, 2, 5.0, 0.0, 100).is_err());
}

#[test]
fn det_scan_equivalence() {
    for l in 0..=3 {
        for n in 1..=10 {
            let solved = spectrum(l, n).unwrap();
            let hi = solved.last().copied().unwrap_or(0.0) * 1.5 + 5.0;
            let scanned = det_scan(l, n, 0.0, hi, 20_000).unwrap_or_default();
            assert_eq!(solved.len(), scanned.len(), "l={l} n={n}");
            for (a, b) in solved.iter().zip(&scanned) {
                assert!((a - b).abs() < 1e-9, "l={l} n={n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn lowest_level_non_increasing_in_order() {
    for l in 0..=3 {
        let mut prev = f64::INFINITY;
        for n in (2..=64).step_by(2) {
            // low orders may have no real root for l >= 1
            let Ok(s) = solve_series(l, n, 1) else {
                assert!(l > 0 && n <= 4, "l={l} n={n}");
                continue;
            };
            let e = s.entries[0].energy;
            assert!(e <= prev + 1e-12, "l={l} n={n}: {e} > {prev}");
            prev = e;
        }
    }
}

#[test]
fn row_residuals_small() {
    for l in 0..=3 {
        for n in [5, 40, 250] {
            let pencil = assemble_pencil(l, n).unwrap();
            let count = spectrum(l, n).unwrap().len().min(6);
            if count == 0 {
                continue;
            }
            let series = solve_series(l, n, count).unwrap();
            for e in &series.entries {
                let res = pencil.row_residual(e.energy, &e.coefficients);
                assert!(res <= 1e-8 * (1.0 + e.energy), "l={l} n={n} k={}: {res:e}", e.k);
            }
        }
    }
}

#[test]
fn orbital_ordering_and_reference_values() {
    let mut prev = 0.0;
    for (l, row) in ORBITAL_SERIES_500.iter().enumerate() {
        let s = solve_series(l, 250, 6).unwrap();
        for (e, reference) in s.energies().iter().zip(row) {
            assert!((e - reference).abs() < 1e-4, "l={l}: {e} vs {reference}");
        }
        assert!(s.entries[0].energy > prev);
        prev = s.entries[0].energy;
    }
}

#[test]
fn radial_levels_approach_asymptotic_law() {
    let gaps = |n| -> Vec<f64> {
        solve_series(0, n, 6)
            .unwrap()
            .entries
            .iter()
            .map(|e| (e.energy - (e.k as f64 * PI - PI / 8.0)).abs())
            .collect()
    };
    let at_500 = gaps(250);
    assert!(at_500[1..].iter().all(|&g| g < 0.01));
    // at degree 500 truncation error still dominates the gap for k >= 5
    assert!(at_500[4] > at_500[3]);
    let at_1000 = gaps(500);
    assert!(at_1000[1..].iter().all(|&g| g < 0.01));
    for k in 2..6 {
        assert!(at_1000[k] < at_1000[k - 1], "{at_1000:?}");
    }
}

#[test]
fn repeated_solves_identical() {
    let a = solve_series(2, 120, 6).unwrap();
    let b = solve_series(2, 120, 6).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectra_are_admissible(l in 0usize..6, n in 3usize..80) {
        let energies = spectrum(l, n).unwrap();
        prop_assert!(energies.iter().all(|e| e.is_finite() && *e > 0.0));
        prop_assert!(energies.windows(2).all(|w| w[0] < w[1]));
        let count = energies.len().min(6);
        prop_assume!(count > 0);
        let series = solve_series(l, n, count).unwrap();
        let pencil = assemble_pencil(l, n).unwrap();
        for (idx, e) in series.entries.iter().enumerate() {
            prop_assert_eq!(e.k, idx + 1);
            prop_assert_eq!(e.coefficients.len(), n + 1);
            prop_assert_eq!(e.coefficients[0], 1.0);
            prop_assert!(e.boundary_residual <= 1e-9 * pencil.boundary_scale(&e.coefficients));
        }
    }

    #[test]
    fn prefix_of_larger_solve(l in 0usize..4, n in 5usize..60) {
        let available = spectrum(l, n).unwrap().len().min(6);
        prop_assume!(available >= 2);
        let all = solve_series(l, n, available).unwrap();
        let some = solve_series(l, n, available - 1).unwrap();
        for (a, b) in some.entries.iter().zip(&all.entries) {
            prop_assert_eq!(a, b);
        }
    }
}
