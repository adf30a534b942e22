//! Two-variable Hermite polynomials `H_{m,n}(x, y)`, defined by
//! `exp(-s t + s x + t y) = Σ s^m t^n / (m! n!) H_{m,n}(x, y)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `m + n` accepted by [`hermite_mn_series`]; beyond this the factorial
/// ratios leave the comfortable range of `f64`.
pub const SERIES_MAX_ORDER: usize = 60;

/// All `H_{m,n}(x, y)` with `m <= max_m`, `n <= max_n` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable {
    max_m: usize,
    max_n: usize,
    x: Complex64,
    y: Complex64,
    values: Vec<Complex64>,
}

impl HermiteTable {
    /// Fills the table with `H_{0,n} = y^n` and `H_{m+1,n} = x H_{m,n} - n H_{m,n-1}`.
    pub fn new(max_m: usize, max_n: usize, x: Complex64, y: Complex64) -> Self {
        let width = max_n + 1;
        let mut values = vec![Complex64::new(0.0, 0.0); (max_m + 1) * width];
        values[0] = Complex64::new(1.0, 0.0);
        for n in 1..=max_n {
            values[n] = y * values[n - 1];
        }
        for m in 0..max_m {
            let (cur, next) = values.split_at_mut((m + 1) * width);
            let row = &cur[m * width..];
            next[0] = x * row[0];
            for n in 1..=max_n {
                next[n] = x * row[n] - n as f64 * row[n - 1];
            }
        }
        Self {
            max_m,
            max_n,
            x,
            y,
            values,
        }
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn point(&self) -> (Complex64, Complex64) {
        (self.x, self.y)
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        assert!(m <= self.max_m && n <= self.max_n, "H_({m},{n}) not stored");
        self.values[m * (self.max_n + 1) + n]
    }
}

pub fn hermite_mn(m: usize, n: usize, x: Complex64, y: Complex64) -> Complex64 {
    HermiteTable::new(m, n, x, y).get(m, n)
}

/// Explicit expansion `Σ_j (-1)^j m! n! / (j! (m-j)! (n-j)!) x^(m-j) y^(n-j)`.
///
/// Kept independent of the recurrence so it can serve as its oracle.
pub fn hermite_mn_series(m: usize, n: usize, x: Complex64, y: Complex64) -> Result<Complex64> {
    if m + n > SERIES_MAX_ORDER {
        return Err(Error::OutOfRange(format!(
            "series H_({m},{n}) needs m + n <= {SERIES_MAX_ORDER}"
        )));
    }
    let factorial = |k: usize| (1..=k).fold(1.0f64, |acc, i| acc * i as f64);
    let prefactor = factorial(m) * factorial(n);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=m.min(n) {
        let coeff = prefactor / (factorial(j) * factorial(m - j) * factorial(n - j));
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * coeff * x.powu((m - j) as u32) * y.powu((n - j) as u32);
    }
    Ok(sum)
}
