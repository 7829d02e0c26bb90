//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GAUSS7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS7_WEIGHTS[3] * fc;
    for i in 0..7 {
        let x = h * KRONROD_NODES[i];
        let pair = f(c - x) + f(c + x);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS7_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 || (b - a) <= 1e-14 * a.abs().max(b.abs()) {
        return v;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod 7/15 after an initial split into `panels` pieces.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == panels { b } else { lo + h };
            adapt(&f, lo, hi, tol / panels as f64, 40)
        })
        .sum()
}

/// `W(a, b; t)` from its defining integral over `[a, b]`, with
/// `z = a + (b-a)(1 - cos φ)/2` removing the square-root end points.
pub fn w_reference(a: f64, b: f64, t: f64) -> f64 {
    let half = 0.5 * (b - a);
    let integrand = |phi: f64| {
        let s = (0.5 * phi).sin();
        let z = a + (b - a) * s * s;
        let sin = phi.sin();
        if z == 0.0 {
            // a = 0, φ = 0: sin²φ / z → 4/b
            return half * half * 4.0 / (b - a);
        }
        half * half * sin * sin / z * (-z * t).exp()
    };
    // the integral equals 1/norm at t = 0 and only decreases
    let norm = 2.0 / (PI * (b.sqrt() - a.sqrt()).powi(2));
    norm * integrate(integrand, 0.0, PI, 32, 1e-14 / norm)
}

/// Fixed Talbot contour inversion of `transform` at `t > 0`.
pub fn talbot<F: Fn(Complex64) -> Complex64>(transform: F, t: f64, m: usize) -> f64 {
    let r = 2.0 * m as f64 / (5.0 * t);
    let mut acc = 0.5 * (transform(Complex64::new(r, 0.0)) * (r * t).exp()).re;
    for k in 1..m {
        let theta = k as f64 * PI / m as f64;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        acc += ((s * t).exp() * transform(s) * Complex64::new(1.0, sigma)).re;
    }
    acc * r / m as f64
}

/// Root `y(s) > 0` of `μy + α(1 - √(1 + 2βy)) = s`, the exponent of the
/// drift minus Inverse Gaussian model evaluated at `u = -iy`.
pub fn ig_root(mu: f64, alpha: f64, beta: f64, s: Complex64) -> Complex64 {
    let ab = alpha * beta;
    let disc = (Complex64::from((ab - mu) * (ab - mu)) + 2.0 * beta * mu * s).sqrt();
    let r = (disc + ab) / mu;
    (r * r - 1.0) / (2.0 * beta)
}

/// First factor of the drawdown density, from the transform `1/y(s)`.
pub fn ig_factor1_reference(mu: f64, alpha: f64, beta: f64, u: f64) -> f64 {
    talbot(|s| ig_root(mu, alpha, beta, s).inv(), u, 32)
}

/// Continuous second factor. The two factors convolve to one, so its
/// transform is `y(s)/s` less the atom `1/μ`.
pub fn ig_factor2_reference(mu: f64, alpha: f64, beta: f64, t: f64) -> f64 {
    talbot(|s| ig_root(mu, alpha, beta, s) / s - 1.0 / mu, t, 32)
}

pub fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Normal distribution function from `erfc`, independent of the library.
pub fn big_phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}
