//! Gauss quadrature rules (Legendre, Jacobi, generalized Laguerre) and a
//! composite Gauss–Legendre integrator.
//!
//! Legendre nodes come from Newton iteration on the three-term recurrence.
//! Jacobi and Laguerre nodes are seeded by the Golub–Welsch eigenvalue
//! problem, polished by Newton on the monic recurrence, and weighted with the
//! Christoffel function `w_i = 1 / Σ_k p̃_k(x_i)²` over orthonormal `p̃_k`.

use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureKind {
    /// Weight 1 on `[-1, 1]`.
    Legendre,
    /// Weight `(1 - x)^alpha (1 + x)^beta` on `[-1, 1]`.
    Jacobi { alpha: f64, beta: f64 },
    /// Weight `x^alpha e^{-x}` on `[0, ∞)`.
    Laguerre { alpha: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(domain("quadrature order must be positive"));
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_eval(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_eval(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self {
            kind: QuadratureKind::Legendre,
            nodes,
            weights,
        })
    }

    pub fn jacobi(order: usize, alpha: f64, beta: f64) -> Result<Self> {
        if order == 0 {
            return Err(domain("quadrature order must be positive"));
        }
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(domain(format!(
                "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
            )));
        }
        let ab = alpha + beta;
        let a = |k: usize| {
            let k = k as f64;
            if k == 0.0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
            }
        };
        let b = |k: usize| {
            let k = k as f64;
            let s = 2.0 * k + ab;
            if k == 1.0 && (ab + 1.0).abs() < 1e-14 {
                // 0/0 in the general formula when alpha + beta = -1.
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        };
        let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + libm::lgamma(alpha + 1.0)
            + libm::lgamma(beta + 1.0)
            - libm::lgamma(ab + 2.0))
        .exp();
        let (nodes, weights) = golub_welsch(order, a, b, mu0);
        Ok(Self {
            kind: QuadratureKind::Jacobi { alpha, beta },
            nodes,
            weights,
        })
    }

    pub fn laguerre(order: usize, alpha: f64) -> Result<Self> {
        if order == 0 {
            return Err(domain("quadrature order must be positive"));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(domain(format!("Laguerre exponent must exceed -1, got {alpha}")));
        }
        let a = |k: usize| 2.0 * k as f64 + alpha + 1.0;
        let b = |k: usize| k as f64 * (k as f64 + alpha);
        let mu0 = libm::tgamma(alpha + 1.0);
        let (nodes, weights) = golub_welsch(order, a, b, mu0);
        Ok(Self {
            kind: QuadratureKind::Laguerre { alpha },
            nodes,
            weights,
        })
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(x_i)` on the rule's reference domain.
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integral of `weight(x) f(x)` over `[lo, hi]` for the finite-interval
    /// rules, with the weight transplanted affinely from `[-1, 1]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let scale = match self.kind {
            QuadratureKind::Legendre => half,
            QuadratureKind::Jacobi { alpha, beta } => half.powf(1.0 + alpha + beta),
            QuadratureKind::Laguerre { .. } => {
                panic!("Laguerre rules integrate over [0, ∞); use `apply`")
            }
        };
        scale * self.apply(|x| f(mid + half * x))
    }
}

/// `(P_n(x), P_n'(x))` via the Bonnet recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn golub_welsch(
    n: usize,
    a: impl Fn(usize) -> f64,
    b: impl Fn(usize) -> f64,
    mu0: f64,
) -> (Vec<f64>, Vec<f64>) {
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = a(k);
        if k + 1 < n {
            let off = b(k + 1).sqrt();
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|x, y| x.total_cmp(y));

    let monic = |x: f64| {
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        for k in 0..n {
            let bk = if k == 0 { 0.0 } else { b(k) };
            let p2 = (x - a(k)) * p1 - bk * p0;
            let d2 = p1 + (x - a(k)) * d1 - bk * d0;
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        (p1, d1)
    };
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d) = monic(*x);
            if d == 0.0 || !d.is_finite() {
                break;
            }
            let step = p / d;
            if !step.is_finite() {
                break;
            }
            *x -= step;
        }
    }

    let weights = nodes
        .iter()
        .map(|&x| {
            let mut prev = 0.0;
            let mut cur = 1.0 / mu0.sqrt();
            let mut sum = cur * cur;
            for k in 0..n - 1 {
                let bk = if k == 0 { 0.0 } else { b(k).sqrt() };
                let next = ((x - a(k)) * cur - bk * prev) / b(k + 1).sqrt();
                prev = cur;
                cur = next;
                sum += cur * cur;
            }
            1.0 / sum
        })
        .collect();
    (nodes, weights)
}

macro_rules! cached_rule {
    ($name:ident, $ctor:expr) => {
        pub(crate) fn $name() -> &'static QuadratureRule {
            static RULE: OnceLock<QuadratureRule> = OnceLock::new();
            RULE.get_or_init(|| $ctor.expect("static quadrature parameters are valid"))
        }
    };
}

cached_rule!(legendre_64, QuadratureRule::legendre(64));
cached_rule!(legendre_24, QuadratureRule::legendre(24));

/// Composite Gauss–Legendre over `n_panels` equal panels.
pub fn integrate_composite<F: FnMut(f64) -> f64>(lo: f64, hi: f64, n_panels: usize, mut f: F) -> f64 {
    let rule = legendre_24();
    let n_panels = n_panels.max(1);
    let h = (hi - lo) / n_panels as f64;
    (0..n_panels)
        .map(|k| {
            let a = lo + k as f64 * h;
            let b = if k + 1 == n_panels { hi } else { a + h };
            rule.integrate(a, b, &mut f)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn check_invariants(rule: &QuadratureRule) {
        assert_eq!(rule.nodes().len(), rule.order());
        assert_eq!(rule.weights().len(), rule.order());
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(rule.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn legendre_weights_sum_to_two() {
        for n in [1, 2, 5, 16, 24, 64, 101] {
            let rule = QuadratureRule::legendre(n).unwrap();
            check_invariants(&rule);
            assert_abs_diff_eq!(rule.weights().iter().sum::<f64>(), 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = QuadratureRule::legendre(10).unwrap();
        // ∫ x^18 over [-1, 1] = 2/19.
        assert_abs_diff_eq!(rule.apply(|x| x.powi(18)), 2.0 / 19.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rule.integrate(0.0, 2.0, |x| x.exp()), 2f64.exp() - 1.0, epsilon = 1e-13);
    }

    #[test]
    fn jacobi_moments() {
        // ∫ (1-x)^{1/2} dx over [-1,1] = (2/3) 2^{3/2}.
        let rule = QuadratureRule::jacobi(20, 0.5, 0.0).unwrap();
        check_invariants(&rule);
        assert_abs_diff_eq!(rule.apply(|_| 1.0), 2.0 / 3.0 * 2f64.powf(1.5), epsilon = 1e-13);
        // Chebyshev second kind: ∫ √(1-x²) x² dx = π/8.
        let rule = QuadratureRule::jacobi(12, 0.5, 0.5).unwrap();
        check_invariants(&rule);
        assert_abs_diff_eq!(rule.apply(|x| x * x), std::f64::consts::PI / 8.0, epsilon = 1e-14);
        // alpha + beta = -1 exercises the special-cased first coefficient.
        let rule = QuadratureRule::jacobi(12, -0.5, -0.5).unwrap();
        check_invariants(&rule);
        assert_abs_diff_eq!(rule.apply(|x| x * x), std::f64::consts::PI / 2.0, epsilon = 1e-13);
    }

    #[test]
    fn laguerre_moments() {
        // ∫ x^{-1/2} e^{-x} x^k dx = Γ(k + 1/2).
        let rule = QuadratureRule::laguerre(64, -0.5).unwrap();
        check_invariants(&rule);
        for k in 0..6 {
            let exact = libm::tgamma(k as f64 + 0.5);
            assert!((rule.apply(|x| x.powi(k)) / exact - 1.0).abs() < 1e-12, "k = {k}");
        }
        let rule = QuadratureRule::laguerre(30, 0.0).unwrap();
        assert_abs_diff_eq!(rule.apply(|x| (-x).exp()), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn invalid_rules_rejected() {
        assert!(QuadratureRule::legendre(0).is_err());
        assert!(QuadratureRule::jacobi(8, -1.0, 0.0).is_err());
        assert!(QuadratureRule::laguerre(8, f64::NAN).is_err());
    }

    #[test]
    fn composite_matches_closed_form() {
        let v = integrate_composite(0.0, 10.0, 8, |x| (-x).exp() * x.sin());
        let exact = 0.5 * (1.0 - (-10f64).exp() * (10f64.sin() + 10f64.cos()));
        assert_abs_diff_eq!(v, exact, epsilon = 1e-14);
    }
}
