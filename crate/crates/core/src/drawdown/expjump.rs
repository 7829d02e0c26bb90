//! Drift `μ` minus compound Poisson exponential jumps.
//!
//! With `a, b = (√μ ∓ √(λξ))²/ξ` the two factors of the density are
//!
//! * first: `μ - λξ + λξW(a, b; u)` if `μ ≥ λξ`, else `μW(a, b; u)`
//! * second: `δ(t)/μ` plus `(λ/μ)W(a, b; t)` if `μ ≥ λξ`, else
//!   `λ/μ - 1/ξ + W(a, b; t)/ξ`
//!
//! so `P(τ = 0) = max(1 - λξ/μ, 0) + min(1, λξ/μ) W(a, b; T)`.

use super::{check_horizon, DrawdownDistribution, Shape};
use crate::error::{domain, finite, Result};
use crate::models::{expjump_ab, ExpJumpParams};
use crate::specfun::w_unchecked;

fn require_positive_drift(p: &ExpJumpParams) -> Result<()> {
    p.validate()?;
    if !(p.mu > 0.0) {
        return Err(domain(format!(
            "the factorization requires mu > 0, got {} (use expjump_distribution)",
            p.mu
        )));
    }
    Ok(())
}

pub fn expjump_factor1(params: &ExpJumpParams, u: f64) -> Result<f64> {
    require_positive_drift(params)?;
    finite("u", u)?;
    if u < 0.0 {
        return Err(domain(format!("u must be nonnegative, got {u}")));
    }
    Ok(factor1(params, u))
}

pub fn expjump_factor2_cont(params: &ExpJumpParams, t: f64) -> Result<f64> {
    require_positive_drift(params)?;
    finite("t", t)?;
    if !(t > 0.0) {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    Ok(factor2(params, t))
}

pub fn expjump_atom0(params: &ExpJumpParams, horizon: f64) -> Result<f64> {
    require_positive_drift(params)?;
    check_horizon(horizon)?;
    Ok(factor1(params, horizon) / params.mu)
}

/// `1 - (λξ/μ)(1 - e^{-μT/ξ})`, the large-drift behaviour of the atom.
pub fn expjump_atom0_asymptotic(params: &ExpJumpParams, horizon: f64) -> Result<f64> {
    require_positive_drift(params)?;
    check_horizon(horizon)?;
    let p = params;
    Ok(1.0 + p.jump_rate() / p.mu * (-p.mu * horizon / p.xi).exp_m1())
}

/// For `μ ≤ 0` the path never rises, so the maximum is the starting point and
/// `τ = T` almost surely.
pub fn expjump_distribution(params: &ExpJumpParams, horizon: f64) -> Result<DrawdownDistribution> {
    params.validate()?;
    check_horizon(horizon)?;
    if params.mu <= 0.0 {
        return Ok(DrawdownDistribution::new(horizon, 0.0, 1.0, Shape::Degenerate));
    }
    let atom0 = factor1(params, horizon) / params.mu;
    Ok(DrawdownDistribution::new(horizon, atom0, 0.0, Shape::ExpJump(*params)))
}

pub(crate) fn factor1(p: &ExpJumpParams, u: f64) -> f64 {
    let (a, b) = expjump_ab(p);
    let w = w_unchecked(a, b, u);
    if p.mu >= p.jump_rate() {
        p.mu - p.jump_rate() + p.jump_rate() * w
    } else {
        p.mu * w
    }
}

/// Continuous part of the second factor; `t = 0` gives the limit `λ/μ`.
pub(crate) fn factor2(p: &ExpJumpParams, t: f64) -> f64 {
    let (a, b) = expjump_ab(p);
    let w = w_unchecked(a, b, t);
    if p.mu >= p.jump_rate() {
        p.lambda / p.mu * w
    } else {
        (p.lambda / p.mu - 1.0 / p.xi + w / p.xi).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ej(mu: f64) -> ExpJumpParams {
        ExpJumpParams::new(mu, 4.0, 0.125).unwrap()
    }

    #[test]
    fn reference_atoms() {
        assert_abs_diff_eq!(expjump_atom0(&ej(0.6), 5.0).unwrap(), 0.213, epsilon = 1e-3);
        assert_abs_diff_eq!(expjump_atom0(&ej(0.3), 5.0).unwrap(), 0.0159, epsilon = 5e-4);
    }

    #[test]
    fn small_drift_limit() {
        let v = expjump_atom0(&ej(1e-6), 5.0).unwrap();
        assert!((v / (-20f64).exp() - 1.0).abs() < 1e-3, "{v}");
    }

    #[test]
    fn factor_limits() {
        for &mu in &[0.2, 0.4, 0.6, 2.0] {
            let p = ej(mu);
            assert_abs_diff_eq!(expjump_factor1(&p, 0.0).unwrap(), mu, epsilon = 1e-12);
            assert_abs_diff_eq!(expjump_factor2_cont(&p, 1e-12).unwrap(), 4.0 / mu, epsilon = 1e-8);
            // W decays like e^{-at}, so go well past 1/a.
            let (a, _) = expjump_ab(&p);
            let far = 60.0 / a;
            assert_abs_diff_eq!(
                expjump_factor1(&p, far).unwrap(),
                (mu - p.jump_rate()).max(0.0),
                epsilon = 1e-8
            );
            assert_abs_diff_eq!(
                expjump_factor2_cont(&p, far).unwrap(),
                (4.0 / mu - 8.0f64).max(0.0),
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn branches_agree_at_equality() {
        let p = ej(0.5);
        let below = ej(0.5 * (1.0 - 1e-9));
        let above = ej(0.5 * (1.0 + 1e-9));
        for k in 0..50 {
            let t = 0.1 * k as f64 + 0.01;
            assert_abs_diff_eq!(factor1(&below, t), factor1(&above, t), epsilon = 1e-6);
            assert_abs_diff_eq!(factor2(&below, t), factor2(&above, t), epsilon = 1e-6);
            assert_abs_diff_eq!(factor1(&p, t), factor1(&above, t), epsilon = 1e-6);
        }
    }

    #[test]
    fn atom_increases_with_drift() {
        let mut prev = 0.0;
        for k in 1..200 {
            let v = expjump_atom0(&ej(0.02 * k as f64), 5.0).unwrap();
            assert!(v > prev && v < 1.0);
            prev = v;
        }
    }

    #[test]
    fn asymptotic_form() {
        let p = ej(50.0);
        let exact = expjump_atom0(&p, 5.0).unwrap();
        let approx = expjump_atom0_asymptotic(&p, 5.0).unwrap();
        assert!((exact - approx).abs() < 1e-3);
        assert_abs_diff_eq!(approx, 1.0 - 0.5 / 50.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_and_errors() {
        let d = expjump_distribution(&ej(-0.1), 5.0).unwrap();
        assert_eq!((d.atom0(), d.atom_t()), (0.0, 1.0));
        let d = expjump_distribution(&ej(0.0), 5.0).unwrap();
        assert_eq!(d.atom_t(), 1.0);
        assert_eq!(expjump_distribution(&ej(1e-6), 5.0).unwrap().atom_t(), 0.0);
        assert_eq!(expjump_distribution(&ej(-1e-6), 5.0).unwrap().atom_t(), 1.0);
        assert!(expjump_factor1(&ej(-0.1), 1.0).is_err());
        assert!(expjump_factor2_cont(&ej(0.6), 0.0).is_err());
        assert!(expjump_atom0(&ej(0.6), 0.0).is_err());
        assert!(expjump_distribution(&ej(0.6), f64::NAN).is_err());
    }
}
