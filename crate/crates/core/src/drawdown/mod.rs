//! Drawdown-time laws `τ = T - argmax_{[0,T]} X`.
//!
//! For a process without up-jumps the density of `τ` on `(0, T)` factors as
//! `g(T - t) h(t)`, where `g(u) = E[max(X_u, 0)]/u`-type terms come from the
//! first Wiener–Hopf factor and `h` from the second. A `δ(t)` component of `h`
//! gives the atom `P(τ = 0) = g(T) × coefficient`.
//!
//! Integrals over `(0, T)` are done in the variable `θ` with
//! `t = T(1 - cos θ)/2`, so that `dt = √(t(T-t)) dθ` absorbs the inverse
//! square-root end points of the Brownian and IG densities.

mod brownian;
mod expjump;
mod ig;

use std::f64::consts::PI;

use serde::Serialize;

pub use brownian::{
    brownian_cdf, brownian_density, brownian_density_factored, brownian_joint_density,
    brownian_max_cdf, brownian_max_density,
};
pub use expjump::{
    expjump_atom0, expjump_atom0_asymptotic, expjump_distribution, expjump_factor1,
    expjump_factor2_cont,
};
pub use ig::{ig_atom0, ig_distribution, ig_factor1, ig_factor2_cont};

use crate::error::{domain, finite, Error, Result};
use crate::models::{BrownianParams, ExpJumpParams, IGParams, LevyModel};
use crate::specfun::{call, legendre_24};

pub(crate) fn check_horizon(horizon: f64) -> Result<()> {
    finite("T", horizon)?;
    if !(horizon > 0.0) {
        return Err(domain(format!("horizon T must be positive, got {horizon}")));
    }
    Ok(())
}

pub(crate) fn check_open(horizon: f64, t: f64) -> Result<()> {
    check_horizon(horizon)?;
    finite("t", t)?;
    if !(t > 0.0 && t < horizon) {
        return Err(domain(format!("t must lie in (0, {horizon}), got {t}")));
    }
    Ok(())
}

pub(crate) fn check_closed(horizon: f64, t: f64) -> Result<()> {
    check_horizon(horizon)?;
    finite("t", t)?;
    if !(0.0..=horizon).contains(&t) {
        return Err(domain(format!("t must lie in [0, {horizon}], got {t}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub(crate) enum Shape {
    Brownian(BrownianParams),
    ExpJump(ExpJumpParams),
    Ig(IGParams),
    /// All mass at `τ = T`.
    Degenerate,
}

/// Law of `τ` on `[0, T]`: atoms at both ends plus a density on `(0, T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrawdownDistribution {
    horizon: f64,
    atom0: f64,
    atom_t: f64,
    shape: Shape,
}

impl DrawdownDistribution {
    pub(crate) fn new(horizon: f64, atom0: f64, atom_t: f64, shape: Shape) -> Self {
        Self { horizon, atom0: atom0.clamp(0.0, 1.0), atom_t, shape }
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `P(τ = 0)`, the probability that the path ends at its maximum.
    pub fn atom0(&self) -> f64 {
        self.atom0
    }

    /// `P(τ = T)`.
    pub fn atom_t(&self) -> f64 {
        self.atom_t
    }

    /// Density of the continuous part. The end points return the one-sided
    /// limit, which is `+∞` where the density has an inverse square-root
    /// singularity.
    pub fn density_at(&self, t: f64) -> Result<f64> {
        check_closed(self.horizon, t)?;
        let w = (t * (self.horizon - t)).sqrt();
        Ok(match self.shape {
            Shape::Degenerate => 0.0,
            Shape::ExpJump(p) => expjump::factor1(&p, self.horizon - t) * expjump::factor2(&p, t),
            _ if w > 0.0 => self.scaled_unchecked(t) / w,
            _ => {
                let s = self.scaled_unchecked(t);
                if s > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        })
    }

    /// `f(t)·√(t(T-t))`, bounded on `[0, T]`; this is `dF/dθ`.
    pub fn scaled_density(&self, t: f64) -> Result<f64> {
        check_closed(self.horizon, t)?;
        Ok(self.scaled_unchecked(t))
    }

    fn scaled_unchecked(&self, t: f64) -> f64 {
        let horizon = self.horizon;
        let u = (horizon - t).max(0.0);
        match self.shape {
            Shape::Brownian(p) => brownian::scaled(&p, horizon, t),
            Shape::ExpJump(p) => {
                (t * u).sqrt() * expjump::factor1(&p, u) * expjump::factor2(&p, t)
            }
            Shape::Ig(p) => ig::factor1(&p, u) * ig::factor2_scaled(&p, t) * u.sqrt(),
            Shape::Degenerate => 0.0,
        }
    }

    /// `∫₀ᵀ f(t) dt`, the mass of the continuous part.
    pub fn continuous_mass(&self) -> f64 {
        self.theta_integral(PI)
    }

    /// Total mass; equal to one up to quadrature error.
    pub fn mass(&self) -> f64 {
        self.atom0 + self.atom_t + self.continuous_mass()
    }

    /// `P(τ ≤ t)`. Brownian motion uses its closed form; the other models
    /// integrate the density.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        check_closed(self.horizon, t)?;
        if t == self.horizon {
            return Ok(1.0);
        }
        Ok(match self.shape {
            Shape::Brownian(p) => brownian::cdf_unchecked(&p, self.horizon, t),
            Shape::Degenerate => 0.0,
            _ => (self.atom0 + self.theta_integral(theta_of(t, self.horizon))).min(1.0),
        })
    }

    /// Distribution function on an increasing grid, accumulated interval by
    /// interval.
    pub fn cdf_on_grid(&self, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
        let mut out = Vec::with_capacity(grid.len());
        let mut prev: Option<(f64, f64)> = None;
        for &t in grid {
            check_closed(self.horizon, t)?;
            if let Some((tp, _)) = prev {
                if !(t > tp) {
                    return Err(Error::Grid("grid must be strictly increasing".into()));
                }
            }
            let value = match (self.shape, prev) {
                (Shape::Brownian(p), _) => brownian::cdf_unchecked(&p, self.horizon, t),
                (_, _) if t == self.horizon => 1.0,
                (Shape::Degenerate, _) => 0.0,
                (_, None) => self.atom0 + self.theta_integral(theta_of(t, self.horizon)),
                (_, Some((tp, fp))) => {
                    fp + self.theta_between(theta_of(tp, self.horizon), theta_of(t, self.horizon))
                }
            };
            let value = value.min(1.0);
            out.push((t, value));
            prev = Some((t, value));
        }
        Ok(out)
    }

    fn theta_integral(&self, hi: f64) -> f64 {
        self.theta_between(0.0, hi)
    }

    /// `∫ dF` for `θ` in `[lo, hi]`, on panels that are uniform in the bulk
    /// and geometrically refined towards both end points.
    fn theta_between(&self, lo: f64, hi: f64) -> f64 {
        if matches!(self.shape, Shape::Degenerate) || !(hi > lo) {
            return 0.0;
        }
        let rule = legendre_24();
        let f = |theta: f64| self.scaled_unchecked(t_of(theta, self.horizon));
        theta_breaks()
            .windows(2)
            .filter_map(|w| {
                let (a, b) = (w[0].max(lo), w[1].min(hi));
                (b > a).then(|| rule.integrate(a, b, f))
            })
            .sum()
    }
}

const BULK_PANELS: usize = 64;
const GRADED_LEVELS: i32 = 14;

fn theta_breaks() -> &'static [f64] {
    static BREAKS: std::sync::OnceLock<Vec<f64>> = std::sync::OnceLock::new();
    BREAKS.get_or_init(|| {
        let h = PI / BULK_PANELS as f64;
        let mut v = vec![0.0];
        for k in (1..=GRADED_LEVELS).rev() {
            v.push(h * 0.5f64.powi(k));
        }
        for k in 1..BULK_PANELS {
            v.push(h * k as f64);
        }
        for k in 1..=GRADED_LEVELS {
            v.push(PI - h * 0.5f64.powi(k));
        }
        v.push(PI);
        v
    })
}

pub(crate) fn theta_of(t: f64, horizon: f64) -> f64 {
    // θ = 2 asin √(t/T) is accurate at both ends, unlike acos(1 - 2t/T).
    2.0 * (t / horizon).sqrt().min(1.0).asin()
}

pub(crate) fn t_of(theta: f64, horizon: f64) -> f64 {
    let s = (0.5 * theta).sin();
    horizon * s * s
}

/// Drawdown law of any supported model over `[0, horizon]`.
pub fn drawdown_distribution(model: &LevyModel, horizon: f64) -> Result<DrawdownDistribution> {
    check_horizon(horizon)?;
    match model {
        LevyModel::Brownian(p) => {
            p.validate()?;
            Ok(DrawdownDistribution::new(horizon, 0.0, 0.0, Shape::Brownian(*p)))
        }
        LevyModel::ExpJump(p) => expjump_distribution(p, horizon),
        LevyModel::Ig(p) => ig_distribution(p, horizon),
    }
}

/// The two factors of the drawdown density of a model without up-jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorPair {
    model: LevyModel,
}

impl FactorPair {
    /// ExpJump requires `μ > 0`; for `μ ≤ 0` the law is degenerate.
    pub fn new(model: &LevyModel) -> Result<Self> {
        model.validate()?;
        if let LevyModel::ExpJump(p) = model {
            if !(p.mu > 0.0) {
                return Err(domain(format!("no factorization for mu = {} <= 0", p.mu)));
            }
        }
        Ok(Self { model: *model })
    }

    /// `g(u)`, evaluated at `u = T - t`.
    pub fn first_factor(&self, u: f64) -> Result<f64> {
        finite("u", u)?;
        if u < 0.0 {
            return Err(domain(format!("u must be nonnegative, got {u}")));
        }
        Ok(match &self.model {
            LevyModel::Brownian(p) => {
                if u == 0.0 {
                    return Ok(f64::INFINITY);
                }
                p.sigma * call(p.mu * u.sqrt() / p.sigma) / u.sqrt()
            }
            LevyModel::ExpJump(p) => expjump::factor1(p, u),
            LevyModel::Ig(p) => ig::factor1(p, u),
        })
    }

    /// Continuous part of `h(t)`.
    pub fn second_factor_cont(&self, t: f64) -> Result<f64> {
        finite("t", t)?;
        if !(t > 0.0) {
            return Err(domain(format!("t must be positive, got {t}")));
        }
        Ok(match &self.model {
            LevyModel::Brownian(p) => 2.0 * call(-p.mu * t.sqrt() / p.sigma) / (p.sigma * t.sqrt()),
            LevyModel::ExpJump(p) => expjump::factor2(p, t),
            LevyModel::Ig(p) => ig::factor2_scaled(p, t) / t.sqrt(),
        })
    }

    /// Coefficient of `δ(t)` in `h`.
    pub fn second_factor_atom_coeff(&self) -> f64 {
        match &self.model {
            LevyModel::Brownian(_) => 0.0,
            LevyModel::ExpJump(p) => 1.0 / p.mu,
            LevyModel::Ig(p) => 1.0 / p.mu,
        }
    }
}

/// Tabulated distribution function for fast repeated lookup: cubic Hermite
/// interpolation in `θ` with the exact derivative `dF/dθ` at the nodes.
#[derive(Debug, Clone)]
pub struct CdfTable {
    horizon: f64,
    atom_t: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl CdfTable {
    pub fn new(dist: &DrawdownDistribution, intervals: usize) -> Result<Self> {
        if intervals < 2 {
            return Err(domain("a CDF table needs at least two intervals"));
        }
        let step = PI / intervals as f64;
        let horizon = dist.horizon;
        let slopes: Vec<f64> =
            (0..=intervals).map(|k| dist.scaled_unchecked(t_of(k as f64 * step, horizon))).collect();
        let mut values = Vec::with_capacity(intervals + 1);
        let mut acc = dist.atom0;
        values.push(acc);
        for k in 0..intervals {
            acc += dist.theta_between(k as f64 * step, (k + 1) as f64 * step);
            values.push(acc.min(1.0 - dist.atom_t).max(0.0));
        }
        if let Shape::Brownian(p) = dist.shape {
            for (k, v) in values.iter_mut().enumerate() {
                *v = brownian::cdf_unchecked(&p, horizon, t_of(k as f64 * step, horizon));
            }
            values[intervals] = 1.0;
        }
        Ok(Self { horizon, atom_t: dist.atom_t, step, values, slopes })
    }

    /// `P(τ ≤ t)` for `t` in `[0, T]`; includes the atom at `T` only at `t = T`.
    pub fn cdf(&self, t: f64) -> f64 {
        if t >= self.horizon {
            return 1.0;
        }
        if t <= 0.0 {
            return self.values[0];
        }
        let theta = theta_of(t, self.horizon);
        let n = self.values.len() - 1;
        let k = ((theta / self.step) as usize).min(n - 1);
        let s = theta / self.step - k as f64;
        let h = self.step;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (d0, d1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let v = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * d0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * d1;
        v.clamp(0.0, 1.0 - self.atom_t)
    }

    /// Left limit `P(τ < t)`.
    pub fn cdf_left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= self.horizon {
            return 1.0 - self.atom_t;
        }
        self.cdf(t)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }
}
