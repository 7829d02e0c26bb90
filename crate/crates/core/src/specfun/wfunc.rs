//! The branch-cut integral
//!
//! `W(a, b; t) = 2/(π(√b - √a)²) ∫_a^b √((b-z)(z-a)) e^{-zt} / z dz`,
//!
//! normalized so that `W(a, b; 0) = 1`, and its time derivative, which has
//! the closed form `-((√b+√a)/(√b-√a)) e^{-(a+b)t/2} I₁((b-a)t/2) / t`.
//!
//! With `c = b - a`, `ε = a/c`, `m = ct` and `z = a + c v²` the integral is
//!
//! `W = 2(√b+√a)²/(πc) · e^{-at} · 2∫₀¹ v²√(1-v²) e^{-mv²}/(v²+ε) dv`.
//!
//! The `v`-integrand has a square-root end point at `v = 1` (handled by a
//! Gauss–Jacobi panel) and, when `ε` is small, a Lorentzian front of width
//! `√ε` near the origin together with a Gaussian of width `1/√m` (handled by
//! geometrically graded Gauss–Legendre panels). When both the spread `m` and
//! the pole offset `at` are large the Gauss–Laguerre form in `w = m u` is
//! used instead.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::bessel::i1e;
use super::quadrature::{legendre_24, QuadratureRule};
use crate::error::{domain, finite, Result};

const LAGUERRE_MIN_SPREAD: f64 = 200.0;
const LAGUERRE_MIN_OFFSET: f64 = 5.0;
/// `e^{-60}` is far below double precision relative to the retained mass.
const GAUSSIAN_CUT: f64 = 60.0;

fn jacobi_top() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| QuadratureRule::jacobi(40, 0.5, 0.0).expect("valid exponents"))
}

fn laguerre_half() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| QuadratureRule::laguerre(64, -0.5).expect("valid exponent"))
}

fn check(a: f64, b: f64, t: f64) -> Result<()> {
    finite("a", a)?;
    finite("b", b)?;
    finite("t", t)?;
    if a < 0.0 {
        return Err(domain(format!("W requires a >= 0, got {a}")));
    }
    if !(b > a) {
        return Err(domain(format!("W requires b > a, got a = {a}, b = {b}")));
    }
    Ok(())
}

/// `W(a, b; t)` for `0 ≤ a < b`, `t ≥ 0`.
pub fn w_function(a: f64, b: f64, t: f64) -> Result<f64> {
    check(a, b, t)?;
    if t < 0.0 {
        return Err(domain(format!("W requires t >= 0, got {t}")));
    }
    Ok(w_unchecked(a, b, t))
}

/// `dW/dt` from the Bessel identity, for `t > 0`.
pub fn w_function_dt(a: f64, b: f64, t: f64) -> Result<f64> {
    check(a, b, t)?;
    if !(t > 0.0) {
        return Err(domain(format!("dW/dt requires t > 0, got {t}")));
    }
    Ok(w_dt_unchecked(a, b, t))
}

pub(crate) fn w_dt_unchecked(a: f64, b: f64, t: f64) -> f64 {
    let c = b - a;
    let (sa, sb) = (a.sqrt(), b.sqrt());
    // (√b+√a)/(√b-√a) = (√b+√a)²/c without the cancelling difference.
    let ratio = (sb + sa) * (sb + sa) / c;
    let x = 0.5 * c * t;
    // e^{-(a+b)t/2} I₁(x) = e^{-at} e^{-x} I₁(x)
    -ratio * (-a * t).exp() * i1e(x) / t
}

pub(crate) fn w_unchecked(a: f64, b: f64, t: f64) -> f64 {
    let decay = (-a * t).exp();
    if decay == 0.0 {
        return 0.0;
    }
    decay * w_scaled_unchecked(a, b, t)
}

/// `e^{at} W(a, b; t)`, which stays representable when `W` underflows.
pub fn w_function_scaled(a: f64, b: f64, t: f64) -> Result<f64> {
    check(a, b, t)?;
    if t < 0.0 {
        return Err(domain(format!("W requires t >= 0, got {t}")));
    }
    Ok(w_scaled_unchecked(a, b, t))
}

fn w_scaled_unchecked(a: f64, b: f64, t: f64) -> f64 {
    let c = b - a;
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let at = a * t;
    let m = c * t;
    if m >= LAGUERRE_MIN_SPREAD && at >= LAGUERRE_MIN_OFFSET {
        let sum = laguerre_half().apply(|w| {
            if w < m {
                w * (m - w).sqrt() / (w + at)
            } else {
                0.0
            }
        });
        // 2 / (π (√b-√a)² t) with (√b-√a)² = c²/(√b+√a)²
        return 2.0 * (sb + sa) * (sb + sa) * sum / (PI * c * c * t);
    }
    let j = graded_integral(a / c, m);
    2.0 * (sb + sa) * (sb + sa) / (PI * c) * j
}

/// `2∫₀¹ v²√(1-v²) e^{-mv²}/(v²+ε) dv`.
fn graded_integral(eps: f64, m: f64) -> f64 {
    let ratio = |v: f64| {
        let v2 = v * v;
        if eps == 0.0 {
            1.0
        } else {
            v2 / (v2 + eps)
        }
    };

    let mut total = 0.0;
    let split = 0.5;
    if m * split * split < GAUSSIAN_CUT {
        // ∫_{1/2}^1 √(1-v) h(v) dv against the (1-x)^{1/2} Jacobi weight.
        let lo = split;
        let scale = ((1.0 - lo) * 0.5).powf(1.5);
        total += scale
            * jacobi_top().apply(|x| {
                let v = lo + (1.0 - lo) * 0.5 * (x + 1.0);
                2.0 * ratio(v) * (1.0 + v).sqrt() * (-m * v * v).exp()
            });
    }

    let top = if m > 0.0 {
        split.min((GAUSSIAN_CUT / m).sqrt())
    } else {
        split
    };
    let mut scale = 1.0f64;
    if eps > 0.0 {
        scale = scale.min(eps.sqrt());
    }
    if m > 0.0 {
        scale = scale.min(1.0 / m.sqrt());
    }
    let floor = 0.25 * scale.min(top);

    let integrand = |v: f64| 2.0 * ratio(v) * (1.0 - v * v).sqrt() * (-m * v * v).exp();
    let rule = legendre_24();
    let mut hi = top;
    let mut panels = 0;
    while hi > floor && panels < 200 {
        let lo = 0.5 * hi;
        let pieces = ((m * (hi * hi - lo * lo)) / 8.0).ceil().clamp(1.0, 64.0) as usize;
        let h = (hi - lo) / pieces as f64;
        for k in 0..pieces {
            let a = lo + k as f64 * h;
            total += rule.integrate(a, a + h, integrand);
        }
        hi = lo;
        panels += 1;
    }
    total + rule.integrate(0.0, hi, integrand)
}
