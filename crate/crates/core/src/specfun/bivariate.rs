//! Bivariate normal distribution function and the normal product integrals.
//!
//! `Φ₂(x, y; ρ)` is evaluated from the conditioning integral
//! `∫_{-∞}^{x} Φ((y - ρξ)/√(1-ρ²)) φ(ξ) dξ` by Gauss–Legendre. For
//! `|ρ| > 1/√2` the integrand develops a sharp front, so the call is first
//! rewritten by conditioning on the orthogonal component instead:
//!
//! `Φ₂(x, y; ρ) = Φ(x) Φ(z₀) + Φ₂(-z₀, y; -ρ*)`, `z₀ = (y - ρx)/ρ*`,
//! `ρ* = √(1-ρ²)`,
//!
//! which swaps `ρ` for its complement `ρ* < 1/√2`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::normal::{cdf, pdf};
use super::quadrature::legendre_64;
use crate::error::{domain, Error, Result};

/// Arguments of `Φ₂(x, y; ρ)`. `x` and `y` may be `±∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BivariateArgs {
    pub x: f64,
    pub y: f64,
    pub rho: f64,
}

impl BivariateArgs {
    pub fn new(x: f64, y: f64, rho: f64) -> Self {
        Self { x, y, rho }
    }
}

/// `P(X < x, Y < y)` for a unit bivariate normal pair with correlation `rho`.
pub fn binorm_cdf(args: BivariateArgs) -> Result<f64> {
    let BivariateArgs { x, y, rho } = args;
    if x.is_nan() || y.is_nan() {
        return Err(Error::NonFinite {
            name: if x.is_nan() { "x" } else { "y" },
            value: f64::NAN,
        });
    }
    if !(rho.abs() <= 1.0) {
        return Err(domain(format!("correlation must lie in [-1, 1], got {rho}")));
    }
    Ok(bvn(x, y, rho))
}

/// `Φ₂` without argument validation.
pub(crate) fn bvn(x: f64, y: f64, rho: f64) -> f64 {
    if x == f64::NEG_INFINITY || y == f64::NEG_INFINITY {
        return 0.0;
    }
    if x == f64::INFINITY {
        return cdf(y);
    }
    if y == f64::INFINITY {
        return cdf(x);
    }
    if rho >= 1.0 {
        return cdf(x.min(y));
    }
    if rho <= -1.0 {
        return (cdf(x) - cdf(-y)).max(0.0);
    }
    if rho > FRAC_1_SQRT_2 {
        let rs = ((1.0 - rho) * (1.0 + rho)).sqrt();
        let z0 = (y - rho * x) / rs;
        return (cdf(x) * cdf(z0) + bvn(-z0, y, -rs)).clamp(0.0, 1.0);
    }
    if rho < -FRAC_1_SQRT_2 {
        return (cdf(x) - bvn(x, -y, -rho)).clamp(0.0, 1.0);
    }
    conditioning_integral(x, y, rho).clamp(0.0, 1.0)
}

/// Upper bound on a Gauss–Legendre panel length for the conditioning integral.
const PANEL: f64 = 5.0;
/// `Φ(-9.5) ≈ 1e-21`: mass beyond this point is dropped.
const CUTOFF: f64 = 9.5;

fn conditioning_integral(x: f64, y: f64, rho: f64) -> f64 {
    if rho == 0.0 {
        return cdf(x) * cdf(y);
    }
    // Symmetric in (x, y); integrate up to the smaller limit.
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let rs = ((1.0 - rho) * (1.0 + rho)).sqrt();
    let upper = x.min(CUTOFF);
    let lower = (-CUTOFF).min(upper - 40.0 / upper.abs().max(1.0));
    let n_panels = ((upper - lower) / PANEL).ceil().max(1.0) as usize;
    let h = (upper - lower) / n_panels as f64;
    let rule = legendre_64();
    (0..n_panels)
        .map(|k| {
            let a = lower + k as f64 * h;
            rule.integrate(a, a + h, |xi| pdf(xi) * cdf((y - rho * xi) / rs))
        })
        .sum()
}

/// The two reciprocity sums
///
/// `(Φ₂(-x, ρx; -ρ) + Φ₂(x, -ρ*x; -ρ*), Φ₂(-x, -ρx; ρ) + Φ₂(x, ρ*x; ρ*))`
///
/// with `ρ* = √(1-ρ²)`. They equal `Φ(ρx)Φ(-ρ*x)` and `1 - Φ(ρx)Φ(-ρ*x)`.
pub fn reciprocity_pair(x: f64, rho: f64) -> Result<(f64, f64)> {
    crate::error::finite("x", x)?;
    if !(0.0..=1.0).contains(&rho) {
        return Err(domain(format!("reciprocity requires rho in [0, 1], got {rho}")));
    }
    let rs = ((1.0 - rho) * (1.0 + rho)).sqrt();
    let first = bvn(-x, rho * x, -rho) + bvn(x, -rs * x, -rs);
    let second = bvn(-x, -rho * x, rho) + bvn(x, rs * x, rs);
    Ok((first, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    /// `∫₀^∞ φ(a₁ - b₁x) φ(a₂ - b₂x) dx`
    PdfPdf,
    /// `∫₀^∞ φ(a₁ - b₁x) Φ(a₂ - b₂x) dx`
    PdfCdfMinus,
    /// `∫₀^∞ φ(a₁ + b₁x) Φ(a₂ - b₂x) dx`
    PdfCdfPlus,
}

/// Closed forms for half-line integrals of products of normal functions.
/// With `b* = √(b₁² + b₂²)` and `a* = (a₁b₁ + a₂b₂)/b*`:
///
/// * `PdfPdf`: `φ((a₁b₂ - a₂b₁)/b*) Φ(a*) / b*`
/// * `PdfCdfMinus`: `Φ₂(a₁, (a₂b₁ - a₁b₂)/b*; -b₂/b*) / b₁`
/// * `PdfCdfPlus`: `Φ₂(-a₁, (a₂b₁ + a₁b₂)/b*; -b₂/b*) / b₁`
pub fn product_integral(kind: ProductKind, a1: f64, b1: f64, a2: f64, b2: f64) -> Result<f64> {
    for (name, v) in [("a1", a1), ("b1", b1), ("b2", b2)] {
        crate::error::finite(name, v)?;
    }
    if a2.is_nan() {
        return Err(Error::NonFinite { name: "a2", value: a2 });
    }
    if !(b1 > 0.0) {
        return Err(domain(format!("b1 must be positive, got {b1}")));
    }
    let bstar = b1.hypot(b2);
    match kind {
        ProductKind::PdfPdf => {
            if !(b2 > 0.0) {
                return Err(domain(format!("b2 must be positive, got {b2}")));
            }
            crate::error::finite("a2", a2)?;
            let astar = (a1 * b1 + a2 * b2) / bstar;
            Ok(pdf((a1 * b2 - a2 * b1) / bstar) * cdf(astar) / bstar)
        }
        ProductKind::PdfCdfMinus => {
            if a2.is_infinite() {
                return Ok(if a2 > 0.0 { cdf(a1) / b1 } else { 0.0 });
            }
            Ok(bvn(a1, (a2 * b1 - a1 * b2) / bstar, -b2 / bstar) / b1)
        }
        ProductKind::PdfCdfPlus => {
            if a2.is_infinite() {
                return Ok(if a2 > 0.0 { cdf(-a1) / b1 } else { 0.0 });
            }
            Ok(bvn(-a1, (a2 * b1 + a1 * b2) / bstar, -b2 / bstar) / b1)
        }
    }
}
