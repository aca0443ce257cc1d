use cauchy_well::basis::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(2j)! / ((1 - 2j) (j!)^2 4^j)`.
fn closed_form_coefficient(j: u64) -> BigRational {
    let num = factorial(2 * j);
    let den = BigInt::from(1 - 2 * j as i64) * factorial(j).pow(2) * BigInt::from(4).pow(j as u32);
    BigRational::new(num, den)
}

fn relative_error(approx: f64, exact: &BigRational) -> f64 {
    let approx = BigRational::from_float(approx).unwrap();
    ((approx - exact) / exact).abs().to_f64().unwrap()
}

// Specializations written out for l = 0, 1, 2.
fn direct_entry(l: usize, k: usize, m: usize) -> BigRational {
    let c = closed_form_coefficient(k as u64);
    let d = (m - k) as i64;
    match l {
        0 => int(2 * (d + 1)) * c,
        1 => int(4 * (d + 1) * (d + 2)) / int(2 * d + 3) * c,
        2 => int(8 * (d + 1) * (d + 2) * (d + 3)) / (int(2 * d + 3) * int(2 * d + 5)) * c,
        _ => unreachable!(),
    }
}

#[test]
fn exact_matrix_matches_specializations() {
    for l in 0..=2 {
        let exact = generating_matrix_exact(l, 12).unwrap();
        for m in 0..=12 {
            for k in 0..=m {
                assert_eq!(exact[k][m], direct_entry(l, k, m), "l={l} k={k} m={m}");
            }
        }
    }
}

#[test]
fn float_matrix_matches_exact() {
    for l in 0..=5 {
        let exact = generating_matrix_exact(l, EXACT_ORDER_LIMIT).unwrap();
        let float = generating_matrix(l, EXACT_ORDER_LIMIT);
        for m in 0..=EXACT_ORDER_LIMIT {
            for k in 0..=m {
                let err = relative_error(float.entry(k, m), &exact[k][m]);
                assert!(err < 1e-14, "l={l} k={k} m={m} err={err:e}");
            }
        }
    }
}

#[test]
fn exact_limit_enforced() {
    assert!(generating_matrix_exact(0, EXACT_ORDER_LIMIT + 1).is_err());
}

#[test]
fn leading_entries() {
    let expected = [(0, int(2)), (1, int(8) / int(3)), (2, int(16) / int(5)), (3, int(128) / int(35))];
    for (l, value) in expected {
        assert_eq!(generating_matrix_exact(l, 0).unwrap()[0][0], value);
        assert!((generating_matrix(l, 0).entry(0, 0) - value.to_f64().unwrap()).abs() < 1e-15);
    }
}

#[test]
fn recurrence_matches_closed_form() {
    let c = taylor_coefficients(300);
    let mut worst: f64 = 0.0;
    for j in 0..=300u64 {
        worst = worst.max(relative_error(c.get(j as usize), &closed_form_coefficient(j)));
    }
    assert!(worst <= 1e-15, "worst relative error {worst:e}");
}

#[test]
fn exact_coefficients_match_closed_form() {
    let exact = taylor_coefficients_exact(40);
    for (j, c) in exact.iter().enumerate() {
        assert_eq!(*c, closed_form_coefficient(j as u64));
    }
}

#[test]
fn small_coefficients() {
    let c = taylor_coefficients(3);
    assert_eq!(c.order(), 3);
    assert_eq!(c.values(), &[1.0, -0.5, -0.125, -0.0625]);
    assert_eq!(taylor_coefficients(0).values(), &[1.0]);
}

#[test]
fn partial_sums_decrease_to_zero() {
    let c = taylor_coefficients(2000);
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for &v in c.values() {
        sum += v;
        assert!(sum > 0.0 && sum < prev);
        prev = sum;
    }
    assert!(sum < 0.02);
}

proptest! {
    #[test]
    fn sign_pattern(l in 0usize..10, m in 0usize..80) {
        let g = generating_matrix(l, m);
        for k in 0..=m {
            let a = g.entry(k, m);
            prop_assert_eq!(a > 0.0, k == 0);
            prop_assert!(a != 0.0);
        }
    }

    #[test]
    fn entries_share_sign_with_coefficients(l in 0usize..6, n in 0usize..20) {
        let exact = generating_matrix_exact(l, n).unwrap();
        let c = taylor_coefficients_exact(n);
        for m in 0..=n {
            for k in 0..=m {
                let ratio = &exact[k][m] / &c[k];
                prop_assert!(ratio.is_positive());
            }
            for k in m + 1..=n {
                prop_assert!(exact[k][m].is_zero());
            }
        }
    }

    #[test]
    fn ratio_recurrence_holds(n in 1usize..400) {
        let c = taylor_coefficients(n);
        for j in 0..n {
            let expected = c.get(j) * (2.0 * j as f64 - 1.0) / (2.0 * j as f64 + 2.0);
            prop_assert!((c.get(j + 1) - expected).abs() <= 4.0 * f64::EPSILON * expected.abs());
        }
    }

    #[test]
    fn column_sum_is_sum_of_entries(l in 0usize..6, n in 0usize..40) {
        let g = generating_matrix(l, n);
        let m = n;
        let sum: f64 = (0..=m).map(|k| g.entry(k, m)).sum();
        prop_assert_eq!(g.column_sum(m), sum);
        prop_assert_eq!(g.get(m + 1, m), None);
    }
}
