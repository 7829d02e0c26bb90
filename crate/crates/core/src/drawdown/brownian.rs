//! Arithmetic Brownian motion `X_t = μt + σB_t`: drawdown-time density and
//! distribution function, and the laws of the running maximum `M_t`.

use std::f64::consts::PI;

use super::{check_closed, check_horizon, check_open};
use crate::error::{domain, finite, Result};
use crate::models::BrownianParams;
use crate::specfun::{bvn, call, cdf, exp_times_cdf, pdf};

/// `f(t) = 2/√(t(T-t)) · C(μ√(T-t)/σ) · C(-μ√t/σ)` on `0 < t < T`.
pub fn brownian_density(params: &BrownianParams, horizon: f64, t: f64) -> Result<f64> {
    params.validate()?;
    check_open(horizon, t)?;
    Ok(scaled(params, horizon, t) / (t * (horizon - t)).sqrt())
}

/// The density as the product `E[max(X_{T-t}, 0)]/(T-t) · E[max(-X_t, 0)]/t · 2/σ²`.
pub fn brownian_density_factored(params: &BrownianParams, horizon: f64, t: f64) -> Result<f64> {
    params.validate()?;
    check_open(horizon, t)?;
    let u = horizon - t;
    let sigma = params.sigma;
    let up = sigma * u.sqrt() * call(params.mu * u.sqrt() / sigma);
    let down = sigma * t.sqrt() * call(-params.mu * t.sqrt() / sigma);
    Ok(up / u * (down / t) * 2.0 / (sigma * sigma))
}

/// `f(t)·√(t(T-t))`, finite on the closed interval.
pub(crate) fn scaled(p: &BrownianParams, horizon: f64, t: f64) -> f64 {
    let u = (horizon - t).max(0.0);
    2.0 * call(p.mu * u.sqrt() / p.sigma) * call(-p.mu * t.sqrt() / p.sigma)
}

/// `P(τ ≤ t)` in closed form. With `a = μ√T/σ`, `p = μ√(T-t)/σ`, `q = μ√t/σ`:
///
/// `Φ(a) - aφ(a) + 2(1+p²)Φ₂(p, -a; -√((T-t)/T)) - 2(1+q²)Φ₂(-q, a; -√(t/T))`
/// `+ 2pφ(p)Φ(-q) + 2qφ(q)Φ(p)`.
pub fn brownian_cdf(params: &BrownianParams, horizon: f64, t: f64) -> Result<f64> {
    params.validate()?;
    check_closed(horizon, t)?;
    Ok(cdf_unchecked(params, horizon, t))
}

pub(crate) fn cdf_unchecked(params: &BrownianParams, horizon: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= horizon {
        return 1.0;
    }
    let s = params.mu / params.sigma;
    let u = horizon - t;
    let a = s * horizon.sqrt();
    let p = s * u.sqrt();
    let q = s * t.sqrt();
    let r1 = -(u / horizon).sqrt();
    let r2 = -(t / horizon).sqrt();
    let value = cdf(a) - a * pdf(a) + 2.0 * (1.0 + p * p) * bvn(p, -a, r1)
        - 2.0 * (1.0 + q * q) * bvn(-q, a, r2)
        + 2.0 * p * pdf(p) * cdf(-q)
        + 2.0 * q * pdf(q) * cdf(p);
    value.clamp(0.0, 1.0)
}

/// `P(M_t > y) = Φ((μt-y)/σ√t) + e^{2μy/σ²} Φ((-μt-y)/σ√t)`.
pub fn brownian_max_cdf(params: &BrownianParams, t: f64, y: f64) -> Result<f64> {
    params.validate()?;
    positive_time(t)?;
    finite("y", y)?;
    if y < 0.0 {
        return Err(domain(format!("the running maximum is nonnegative; got y = {y}")));
    }
    let (mu, sigma) = (params.mu, params.sigma);
    let sd = sigma * t.sqrt();
    let v = cdf((mu * t - y) / sd) + exp_times_cdf(2.0 * mu * y / (sigma * sigma), (-mu * t - y) / sd);
    Ok(v.clamp(0.0, 1.0))
}

/// Density of `M_t` on `y > 0`:
/// `2φ((y-μt)/σ√t)/(σ√t) - (2μ/σ²) e^{2μy/σ²} Φ((-y-μt)/σ√t)`.
pub fn brownian_max_density(params: &BrownianParams, t: f64, y: f64) -> Result<f64> {
    params.validate()?;
    positive_time(t)?;
    finite("y", y)?;
    if !(y > 0.0) {
        return Err(domain(format!("max density requires y > 0, got {y}")));
    }
    let (mu, sigma) = (params.mu, params.sigma);
    let sd = sigma * t.sqrt();
    let k = 2.0 * mu / (sigma * sigma);
    Ok(2.0 * pdf((y - mu * t) / sd) / sd - k * exp_times_cdf(k * y, (-y - mu * t) / sd))
}

/// Joint density of `(X_t, M_t)` at `(x, y)`; zero unless `x < y` and `y > 0`.
pub fn brownian_joint_density(params: &BrownianParams, t: f64, x: f64, y: f64) -> Result<f64> {
    params.validate()?;
    positive_time(t)?;
    finite("x", x)?;
    finite("y", y)?;
    if !(y > 0.0 && x < y) {
        return Ok(0.0);
    }
    let (mu, sigma) = (params.mu, params.sigma);
    let s2t = sigma * sigma * t;
    let r = 2.0 * y - x;
    let expo = -r * r / (2.0 * s2t) + mu * x / (sigma * sigma) - mu * mu * t / (2.0 * sigma * sigma);
    Ok(2.0 * r / (sigma * s2t * (2.0 * PI * t).sqrt()) * expo.exp())
}

fn positive_time(t: f64) -> Result<()> {
    check_horizon(t).map_err(|_| domain(format!("t must be positive, got {t}")))
}
