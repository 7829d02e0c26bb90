//! Univariate normal density, distribution function and the call-payoff
//! function `C(x) = φ(x) + xΦ(x)`.
//!
//! The crate-internal variants (`pdf`, `cdf`, ...) skip input validation and
//! are used on hot paths; the public functions reject non-finite input.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{finite, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this point the lower tail is evaluated through the Mills ratio.
const MILLS_SWITCH: f64 = 5.0;

/// Standard normal density.
pub fn norm_pdf(x: f64) -> Result<f64> {
    Ok(pdf(finite("x", x)?))
}

/// Standard normal distribution function.
pub fn norm_cdf(x: f64) -> Result<f64> {
    Ok(cdf(finite("x", x)?))
}

/// `C(x) = φ(x) + xΦ(x)`, the expected positive part of `x + Z` for standard
/// normal `Z`. Positive everywhere, with `C(x) - max(x, 0) → 0` in both tails.
pub fn script_c(x: f64) -> Result<f64> {
    Ok(call(finite("x", x)?))
}

#[inline]
pub(crate) fn pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

#[inline]
pub(crate) fn cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

pub(crate) fn call(x: f64) -> f64 {
    if x < -MILLS_SWITCH {
        // φ(z)(1 - zR(z)) with z = -x; the bracket equals q·R where
        // R = 1/(z + q), so no cancellation occurs.
        let z = -x;
        let q = mills_tail(z);
        pdf(z) * q / (z + q)
    } else {
        pdf(x) + x * cdf(x)
    }
}

/// `ln Φ(x)`, accurate deep into the lower tail.
pub(crate) fn ln_cdf(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if x < -MILLS_SWITCH {
        let z = -x;
        -0.5 * z * z - LN_SQRT_2PI - (z + mills_tail(z)).ln()
    } else if x > 0.0 {
        (-cdf(-x)).ln_1p()
    } else {
        cdf(x).ln()
    }
}

/// `e^a Φ(x)` evaluated in the log domain, so that a large `a` paired with a
/// deep lower-tail `x` gives the finite product instead of `inf * 0`.
pub(crate) fn exp_times_cdf(a: f64, x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    (a + ln_cdf(x)).exp()
}

/// Continued-fraction tail `q(z) = 1/(z + 2/(z + 3/(z + ...)))`, so that the
/// Mills ratio is `Φ(-z)/φ(z) = 1/(z + q(z))`. Intended for `z ≥ 5`.
fn mills_tail(z: f64) -> f64 {
    let mut t = 0.0;
    for k in (1..=80).rev() {
        t = k as f64 / (z + t);
    }
    t
}
