use std::f64::consts::PI;

use crate::error::{domain, finite, Result};

/// Power series below, Hankel asymptotic expansion above.
const SERIES_LIMIT: f64 = 15.0;

/// Modified Bessel function of the first kind, order one.
pub fn bessel_i1(x: f64) -> Result<f64> {
    let x = finite("x", x)?;
    if x < 0.0 {
        return Err(domain(format!("bessel_i1 requires x >= 0, got {x}")));
    }
    Ok(if x <= SERIES_LIMIT {
        i1_series(x)
    } else {
        x.exp() * i1e_asymptotic(x)
    })
}

/// `e^{-x} I₁(x)` for `x ≥ 0`; finite for every finite `x`.
pub(crate) fn i1e(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        (-x).exp() * i1_series(x)
    } else {
        i1e_asymptotic(x)
    }
}

fn i1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    let mut k = 0.0;
    while term > 1e-17 * sum {
        k += 1.0;
        term *= q / (k * (k + 1.0));
        sum += term;
    }
    sum
}

fn i1e_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (odd * odd - 4.0) / (8.0 * kf * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}
