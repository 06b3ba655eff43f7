//! Polynomial upper bounds for tabulated functions.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyFit {
    pub degree: u32,
    /// Least C with t(k) ≤ C·k^degree on every k ≥ 1 of the table.
    pub coefficient: BigRational,
    /// Least-squares slope of log t against log k over the upper envelope.
    pub slope: f64,
    /// max |log t(k) − log(C·k^d)| over nonzero entries.
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("table has {0} nonzero entries; at least 4 are needed")]
    TooFewPoints(usize),
}

/// `values[i]` is t(i). Degree is the rounded log-log slope through the
/// corners of the upper envelope (the points where the running maximum
/// strictly increases); an all-zero table fits degree 0 with C = 0.
pub fn poly_bound_fit(values: &[u64]) -> Result<PolyFit, FitError> {
    let nonzero: Vec<(u64, u64)> =
        values.iter().enumerate().filter(|&(k, &v)| k > 0 && v > 0).map(|(k, &v)| (k as u64, v)).collect();
    if nonzero.is_empty() {
        return Ok(PolyFit { degree: 0, coefficient: BigRational::zero(), slope: 0.0, max_residual: 0.0 });
    }
    if nonzero.len() < 4 {
        return Err(FitError::TooFewPoints(nonzero.len()));
    }
    let mut corners = Vec::new();
    let mut running = 0;
    for &(k, v) in &nonzero {
        if v > running {
            corners.push((libm::log(k as f64), libm::log(v as f64)));
            running = v;
        }
    }
    let slope = if corners.len() >= 2 {
        let m = corners.len() as f64;
        let (sx, sy) = corners.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let (num, den) = corners.iter().fold((0.0, 0.0), |(n, d), &(x, y)| (n + (x - mx) * (y - my), d + (x - mx) * (x - mx)));
        if den > 0.0 { num / den } else { 0.0 }
    } else {
        0.0
    };
    let degree = libm::round(slope).max(0.0) as u32;
    let mut coefficient = BigRational::zero();
    for &(k, v) in &nonzero {
        let r = BigRational::new(BigInt::from(v), Pow::pow(BigInt::from(k), degree));
        if r > coefficient {
            coefficient = r;
        }
    }
    let c = ratio_f64(&coefficient);
    let max_residual = nonzero
        .iter()
        .map(|&(k, v)| libm::fabs(libm::log(v as f64) - libm::log(c) - degree as f64 * libm::log(k as f64)))
        .fold(0.0, f64::max);
    Ok(PolyFit { degree, coefficient, slope, max_residual })
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap_or(f64::MAX) / r.denom().to_f64().unwrap_or(1.0)
}
