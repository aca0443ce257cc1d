//! Taylor coefficients of `sqrt(1 - r^2)` and the orbital generating matrices.
//!
//! The Cauchy operator maps `S_l(u) |u|^{2m} sqrt(1 - |u|^2)` (with `S_l` the
//! zonal solid harmonic of degree `l`) onto `S_l(u)` times an even polynomial
//! of degree `2m`. The coefficient of `|u|^{2(m-k)}` in that polynomial is the
//! generating-matrix entry
//!
//! ```text
//! a[l][k, m] = 2^{l+1} * prod_{s=1..=l+1} (m + s - k)
//!                      / prod_{s=1..=l}   (2m + 2s + 1 - 2k)  * c[2k],   m >= k
//! ```
//!
//! where `c[2k]` is the k-th Taylor coefficient of `sqrt(1 - r^2)`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Largest order for which exact rational entries are provided.
pub const EXACT_ORDER_LIMIT: usize = 32;

/// Taylor coefficients `c[2j]`, `j = 0..=n`, of `sqrt(1 - r^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients {
    values: Vec<f64>,
}

impl TaylorCoefficients {
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `c[2j]`.
    pub fn get(&self, j: usize) -> f64 {
        self.values[j]
    }
}

/// Error-free product of two doubles.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Computes `c[2j]` with the ratio recurrence `c[2j+2] = c[2j] (2j-1)/(2j+2)`.
///
/// The running product is carried in double-double precision and rounded once
/// per coefficient, so every value is within one ulp of the exact rational.
pub fn taylor_coefficients(n: usize) -> TaylorCoefficients {
    let mut values = Vec::with_capacity(n + 1);
    let (mut hi, mut lo) = (1.0_f64, 0.0_f64);
    values.push(hi);
    for j in 0..n {
        let num = (2 * j) as f64 - 1.0;
        let den = (2 * j + 2) as f64;

        let (p, e) = two_prod(hi, num);
        let (h, l) = quick_two_sum(p, e + lo * num);

        let q1 = h / den;
        let (p, e) = two_prod(q1, den);
        let q2 = ((h - p) - e + l) / den;
        (hi, lo) = quick_two_sum(q1, q2);

        values.push(hi);
    }
    TaylorCoefficients { values }
}

/// Exact rational `c[2j]`, `j = 0..=n`.
pub fn taylor_coefficients_exact(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for j in 0..n {
        let ratio = BigRational::new(
            BigInt::from(2 * j as i64 - 1),
            BigInt::from(2 * j as i64 + 2),
        );
        c *= ratio;
        out.push(c.clone());
    }
    out
}

/// Rational prefactor of `a[l][k, m]` without the `c[2k]` factor, evaluated
/// as an explicit floating-point loop product.
pub fn generating_prefactor(l: usize, k: usize, m: usize) -> f64 {
    debug_assert!(m >= k);
    let d = (m - k) as f64;
    let mut value = 2f64.powi(l as i32 + 1);
    for s in 1..=l + 1 {
        value *= d + s as f64;
    }
    for s in 1..=l {
        value /= 2.0 * d + 2.0 * s as f64 + 1.0;
    }
    value
}

fn generating_prefactor_exact(l: usize, k: usize, m: usize) -> BigRational {
    let d = BigInt::from(m - k);
    let mut num = BigInt::from(2u32).pow(l as u32 + 1);
    for s in 1..=l + 1 {
        num *= &d + BigInt::from(s);
    }
    let mut den = BigInt::one();
    for s in 1..=l {
        den *= BigInt::from(2u32) * &d + BigInt::from(2 * s + 1);
    }
    BigRational::new(num, den)
}

/// Upper-triangular array of generating-matrix entries `a[l][k, m]`,
/// `0 <= k <= m <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingMatrix {
    orbital: usize,
    order: usize,
    // row-major (k, m), zero below the diagonal
    entries: Vec<f64>,
}

impl GeneratingMatrix {
    pub fn orbital(&self) -> usize {
        self.orbital
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a[l][k, m]`; `None` when `k > m` or an index exceeds the order.
    pub fn get(&self, k: usize, m: usize) -> Option<f64> {
        if k > m || m > self.order {
            None
        } else {
            Some(self.entries[k * (self.order + 1) + m])
        }
    }

    /// `a[l][k, m]`, panicking outside the defined triangle.
    pub fn entry(&self, k: usize, m: usize) -> f64 {
        self.get(k, m)
            .unwrap_or_else(|| panic!("a[{k}, {m}] is not defined for order {}", self.order))
    }

    /// `sum_{k <= m} a[l][k, m]`: the operator image of the m-th basis function at r = 1.
    pub fn column_sum(&self, m: usize) -> f64 {
        (0..=m).map(|k| self.entry(k, m)).sum()
    }
}

pub fn generating_matrix(l: usize, n: usize) -> GeneratingMatrix {
    let c = taylor_coefficients(n);
    let width = n + 1;
    let mut entries = vec![0.0; width * width];
    for k in 0..=n {
        for m in k..=n {
            entries[k * width + m] = generating_prefactor(l, k, m) * c.get(k);
        }
    }
    GeneratingMatrix {
        orbital: l,
        order: n,
        entries,
    }
}

/// Exact rational entries, indexed `[k][m]` and zero below the diagonal.
pub fn generating_matrix_exact(l: usize, n: usize) -> Result<Vec<Vec<BigRational>>> {
    if n > EXACT_ORDER_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "exact generating matrix limited to order {EXACT_ORDER_LIMIT}, got {n}"
        )));
    }
    let c = taylor_coefficients_exact(n);
    Ok((0..=n)
        .map(|k| {
            (0..=n)
                .map(|m| {
                    if m < k {
                        BigRational::from_integer(BigInt::from(0))
                    } else {
                        generating_prefactor_exact(l, k, m) * &c[k]
                    }
                })
                .collect()
        })
        .collect())
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
