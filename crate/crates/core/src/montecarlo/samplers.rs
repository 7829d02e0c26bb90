use rand::Rng;
use rand_distr::{Distribution, Exp, Poisson, StandardNormal};

use super::{run_paths, EmpiricalDrawdown, SimConfig};
use crate::error::{domain, Result};
use crate::models::{BrownianParams, ExpJumpParams, IGParams, LevyModel};

/// Exact sampler. Between jumps the path rises at rate `μ`, so the maximum
/// sits either at `T` or just before some jump; no time grid is involved.
pub fn simulate_expjump(params: &ExpJumpParams, config: &SimConfig) -> Result<EmpiricalDrawdown> {
    params.validate()?;
    config.validate()?;
    let ExpJumpParams { mu, lambda, xi } = *params;
    let horizon = config.horizon;
    let count = Poisson::new(lambda * horizon).map_err(|e| domain(format!("Poisson rate: {e}")))?;
    let size = Exp::new(1.0 / xi).map_err(|e| domain(format!("jump size: {e}")))?;
    run_paths(config, true, |rng| {
        let n = count.sample(rng) as usize;
        let mut times: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * horizon).collect();
        times.sort_by(f64::total_cmp);
        let mut lost = 0.0;
        let (mut best, mut best_time) = (0.0, 0.0);
        for &t in &times {
            let peak = mu * t - lost;
            if peak > best {
                best = peak;
                best_time = t;
            }
            lost += size.sample(rng);
        }
        let terminal = mu * horizon - lost;
        if terminal > best {
            best_time = horizon;
        }
        let tau = if mu <= 0.0 { horizon } else { horizon - best_time };
        (tau, terminal)
    })
}

/// Gaussian increments on the grid; the maximum is taken over grid nodes.
pub fn simulate_brownian(params: &BrownianParams, config: &SimConfig) -> Result<EmpiricalDrawdown> {
    params.validate()?;
    let n = config.n_steps()?;
    let dt = config.horizon / n as f64;
    let (drift, vol) = (params.mu * dt, params.sigma * dt.sqrt());
    run_paths(config, false, |rng| {
        grid_path(n, config.horizon, |r: &mut _| {
            let z: f64 = StandardNormal.sample(r);
            drift + vol * z
        }, rng)
    })
}

/// `X` on the grid as drift minus exact Inverse Gaussian increments.
pub fn simulate_ig(params: &IGParams, config: &SimConfig) -> Result<EmpiricalDrawdown> {
    params.validate()?;
    let n = config.n_steps()?;
    let dt = config.horizon / n as f64;
    let (mean, shape) = ig_increment(params, dt);
    let drift = params.mu * dt;
    run_paths(config, false, |rng| {
        grid_path(n, config.horizon, |r: &mut _| drift - sample_ig(mean, shape, r), rng)
    })
}

pub fn simulate(model: &LevyModel, config: &SimConfig) -> Result<EmpiricalDrawdown> {
    match model {
        LevyModel::Brownian(p) => simulate_brownian(p, config),
        LevyModel::ExpJump(p) => simulate_expjump(p, config),
        LevyModel::Ig(p) => simulate_ig(p, config),
    }
}

/// `(mean, shape)` of the subordinator increment over `dt`. Its Laplace
/// exponent `(shape/mean)(√(1 + 2q·mean²/shape) - 1)` equals
/// `dt·α(√(1 + 2βq) - 1)`, which gives mean `αβ·dt` and shape `α²β·dt²`.
pub fn ig_increment(params: &IGParams, dt: f64) -> (f64, f64) {
    (params.alpha * params.beta * dt, params.alpha * params.alpha * params.beta * dt * dt)
}

/// Transformation method with root selection. The smaller root
/// `m(1 + w/2 - √(w² + 4w)/2)`, `w = m·v²/shape`, is evaluated as
/// `2m/(2 + w + √(w² + 4w))` to avoid cancellation when `w` is large.
fn sample_ig<R: Rng + ?Sized>(mean: f64, shape: f64, rng: &mut R) -> f64 {
    let v: f64 = StandardNormal.sample(rng);
    let w = mean * v * v / shape;
    let x = 2.0 * mean / (2.0 + w + (w * w + 4.0 * w).sqrt());
    let u: f64 = rng.random();
    if u * (mean + x) <= mean {
        x
    } else {
        mean * mean / x
    }
}

/// Runs `n` increments and returns `(τ, X_T)`, with `τ = (n - k*)·dt` for the
/// first index `k*` of the maximum over nodes `0..=n`.
fn grid_path<R: Rng, F: FnMut(&mut R) -> f64>(n: usize, horizon: f64, mut step: F, rng: &mut R) -> (f64, f64) {
    let (mut x, mut best, mut best_k) = (0.0, 0.0, 0usize);
    for k in 1..=n {
        x += step(rng);
        if x > best {
            best = x;
            best_k = k;
        }
    }
    let tau = match best_k {
        0 => horizon,
        k if k == n => 0.0,
        k => horizon * (n - k) as f64 / n as f64,
    };
    (tau, x)
}
