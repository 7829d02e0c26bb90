//! Drift `μ` minus an Inverse Gaussian subordinator.
//!
//! * first factor: `(μ+αβ) e^{2αu} Φ(-(αβ+μ)√(u/βμ)) + (μ-αβ) Φ((μ-αβ)√(u/βμ))`
//! * second factor: `δ(t)/μ + (2α√(βμ/t)/μ²) C((αβ-μ)√(t/βμ))`

use super::{check_horizon, DrawdownDistribution, Shape};
use crate::error::{domain, finite, Result};
use crate::models::IGParams;
use crate::specfun::{call, cdf, exp_times_cdf};

/// Past this exponent `e^{2αu}` overflows and the product is formed in logs.
const DIRECT_EXP_LIMIT: f64 = 700.0;

pub fn ig_factor1(params: &IGParams, u: f64) -> Result<f64> {
    params.validate()?;
    finite("u", u)?;
    if u < 0.0 {
        return Err(domain(format!("u must be nonnegative, got {u}")));
    }
    Ok(factor1(params, u))
}

pub fn ig_factor2_cont(params: &IGParams, t: f64) -> Result<f64> {
    params.validate()?;
    finite("t", t)?;
    if !(t > 0.0) {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    Ok(factor2_scaled(params, t) / t.sqrt())
}

pub fn ig_atom0(params: &IGParams, horizon: f64) -> Result<f64> {
    params.validate()?;
    check_horizon(horizon)?;
    Ok(factor1(params, horizon) / params.mu)
}

pub fn ig_distribution(params: &IGParams, horizon: f64) -> Result<DrawdownDistribution> {
    params.validate()?;
    check_horizon(horizon)?;
    let atom0 = factor1(params, horizon) / params.mu;
    Ok(DrawdownDistribution::new(horizon, atom0, 0.0, Shape::Ig(*params)))
}

pub(crate) fn factor1(p: &IGParams, u: f64) -> f64 {
    let ab = p.alpha * p.beta;
    let r = (u / (p.beta * p.mu)).sqrt();
    let expo = 2.0 * p.alpha * u;
    let x = -(ab + p.mu) * r;
    let first = if expo < DIRECT_EXP_LIMIT {
        expo.exp() * cdf(x)
    } else {
        exp_times_cdf(expo, x)
    };
    (p.mu + ab) * first + (p.mu - ab) * cdf((p.mu - ab) * r)
}

/// `√t` times the continuous second factor; finite at `t = 0`.
pub(crate) fn factor2_scaled(p: &IGParams, t: f64) -> f64 {
    let bm = p.beta * p.mu;
    2.0 * p.alpha * bm.sqrt() / (p.mu * p.mu) * call((p.alpha * p.beta - p.mu) * (t / bm).sqrt())
}
