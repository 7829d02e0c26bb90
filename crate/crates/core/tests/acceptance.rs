//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Wall-clock limits are part of each criterion.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use levy_drawdown::drawdown::{
    brownian_cdf, brownian_density, drawdown_distribution, expjump_atom0,
    expjump_atom0_asymptotic, ig_distribution, ig_factor1, ig_factor2_cont,
};
use levy_drawdown::models::{
    model_from_cumulants, BrownianParams, Cumulants, ExpJumpParams, Family, IGParams, LevyModel,
};
use levy_drawdown::montecarlo::{
    histogram_compare, ks_critical_99, ks_distance, simulate_expjump, simulate_ig, SimConfig,
    GRID_BIAS_ALLOWANCE,
};
use levy_drawdown::specfun::{
    binorm_cdf, product_integral, reciprocity_pair, script_c, trapezium_cdf, w_function,
    w_function_dt, w_function_scaled, BivariateArgs, ProductKind,
};

use common::{big_phi, linspace, logspace};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Check = fn() -> Outcome;

fn expjump(mu: f64) -> ExpJumpParams {
    ExpJumpParams::new(mu, 4.0, 0.125).unwrap()
}

fn criterion_1() -> Outcome {
    let hi = expjump_atom0(&expjump(0.6), 5.0).unwrap();
    let lo = expjump_atom0(&expjump(0.3), 5.0).unwrap();
    let pass = (hi - 0.213).abs() <= 1e-3 && (lo - 0.0159).abs() <= 5e-4;
    outcome(pass, format!("atom0 = {hi:.6} (0.213 ± 0.001), {lo:.6} (0.0159 ± 0.0005)"))
}

fn criterion_2() -> Outcome {
    let n = 1_000_000;
    let mut pass = true;
    let mut parts = Vec::new();
    for (mu, seed) in [(0.6, 20_240_601), (0.3, 20_240_602)] {
        let p = expjump(mu);
        let config = SimConfig::new(n, seed, 5.0).with_bin_width(0.1);
        let emp = simulate_expjump(&p, &config).unwrap();
        let dist = drawdown_distribution(&p.into(), 5.0).unwrap();
        let hist = histogram_compare(&emp, &dist).unwrap();
        let atom = dist.atom0();
        let band = 3.0 * (atom * (1.0 - atom) / n as f64).sqrt();
        let freq = emp.atom0_frequency();
        let ok = hist.pass && (freq - atom).abs() <= band;
        pass &= ok;
        parts.push(format!(
            "mu={mu}: {}/{} bins |z|<3 (max {:.2}), atom {freq:.5} vs {atom:.5} ± {band:.5}",
            hist.within_3, hist.tested, hist.max_abs_z
        ));
    }
    outcome(pass, parts.join("; "))
}

/// Trapezium rule in `θ`, `t = T sin²(θ/2)`, where the density times
/// `dt/dθ = √(t(T-t))` is bounded; eight θ-steps per grid interval.
fn criterion_3() -> Outcome {
    let horizon = 5.0;
    let grid = linspace(0.0, horizon, 2001);
    let theta = |t: f64| 2.0 * (t / horizon).sqrt().min(1.0).asin();
    let mut worst: f64 = 0.0;
    for mu in [-0.5, 0.0, 0.5] {
        let p = BrownianParams::new(mu, 1.0).unwrap();
        let scaled = |th: f64| {
            let s = (0.5 * th).sin();
            let t = horizon * s * s;
            if th == 0.0 || th == PI {
                let (u, t) = if th == 0.0 { (horizon, 0.0) } else { (0.0, horizon) };
                2.0 * script_c(mu * u.sqrt()).unwrap() * script_c(-mu * t.sqrt()).unwrap()
            } else {
                brownian_density(&p, horizon, t).unwrap() * (t * (horizon - t)).sqrt()
            }
        };
        let sub = 8;
        let mut samples = vec![(0.0, scaled(0.0))];
        for w in grid.windows(2) {
            let (a, b) = (theta(w[0]), theta(w[1]));
            for k in 1..=sub {
                let th = if k == sub { b } else { a + (b - a) * k as f64 / sub as f64 };
                samples.push((th, scaled(th)));
            }
        }
        let cdf = trapezium_cdf(&samples, 0.0).unwrap();
        for (k, &t) in grid.iter().enumerate() {
            let closed = brownian_cdf(&p, horizon, t).unwrap();
            worst = worst.max((cdf[k * sub].1 - closed).abs());
        }
    }
    outcome(worst < 1e-6, format!("max |closed form - trapezium| = {worst:.2e} (< 1e-6)"))
}

fn criterion_4() -> Outcome {
    let p = BrownianParams::new(0.0, 1.0).unwrap();
    let worst = (1..=9)
        .map(|k| {
            let t = 0.1 * k as f64;
            (brownian_cdf(&p, 1.0, t).unwrap() - 2.0 / PI * t.sqrt().asin()).abs()
        })
        .fold(0.0, f64::max);
    outcome(worst < 1e-9, format!("max deviation from (2/π)asin√t = {worst:.2e} (< 1e-9)"))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut degenerate = 0;
    let mut cells = 0;
    for mu_hat in [-0.5, 0.0, 0.5] {
        let brownian: LevyModel = BrownianParams::new(mu_hat, 1.0).unwrap().into();
        let mut models = vec![brownian];
        for kappa in [-4.0, -1.0, -0.25] {
            let c = Cumulants::new(mu_hat, 1.0, kappa).unwrap();
            models.push(model_from_cumulants(c, Family::ExpJump).unwrap());
            models.push(model_from_cumulants(c, Family::Ig).unwrap());
        }
        for m in models {
            let d = drawdown_distribution(&m, 5.0).unwrap();
            if let LevyModel::ExpJump(p) = m {
                if p.mu <= 0.0 {
                    degenerate += 1;
                    if d.atom_t() != 1.0 || d.atom0() != 0.0 {
                        return outcome(false, format!("degenerate cell {m}: atomT = {}", d.atom_t()));
                    }
                }
            }
            worst = worst.max((d.mass() - 1.0).abs());
            cells += 1;
        }
    }
    outcome(
        worst < 1e-4 && degenerate > 0,
        format!("{cells} cells, {degenerate} degenerate, max |mass - 1| = {worst:.2e} (< 1e-4)"),
    )
}

fn criterion_6() -> Outcome {
    let phi2 = |x: f64, y: f64, rho: f64| binorm_cdf(BivariateArgs::new(x, y, rho)).unwrap();
    let mut recip: f64 = 0.0;
    let mut rhos: Vec<f64> = (0..20).map(|k| 0.05 * k as f64).collect();
    rhos.extend([0.99, 0.999]);
    for &x in &linspace(-4.0, 4.0, 33) {
        for &rho in &rhos {
            let rs = (1.0 - rho * rho).sqrt();
            let (first, second) = reciprocity_pair(x, rho).unwrap();
            let prod = big_phi(rho * x) * big_phi(-rs * x);
            recip = recip.max((first - prod).abs()).max((second - 1.0 + prod).abs());
        }
    }
    let mut recip2: f64 = 0.0;
    for &x in &linspace(-4.0, 4.0, 81) {
        let lhs = phi2(x, x * FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let rhs = 0.5 * (big_phi(x * FRAC_1_SQRT_2).powi(2) + big_phi(x));
        recip2 = recip2.max((lhs - rhs).abs());
    }
    let mut orthant: f64 = 0.0;
    for k in -99..=99 {
        let rho = 0.01 * k as f64;
        orthant = orthant.max((phi2(0.0, 0.0, rho) - 0.25 - rho.asin() / (2.0 * PI)).abs());
    }
    let mut quadrant: f64 = 0.0;
    for &x in &linspace(-3.0, 3.0, 13) {
        for &y in &linspace(-3.0, 3.0, 13) {
            for &rho in &linspace(-0.95, 0.95, 39) {
                let r = phi2(-x, -y, rho) - phi2(x, y, rho) + big_phi(x) + big_phi(y) - 1.0;
                quadrant = quadrant.max(r.abs());
            }
        }
    }
    let mut product: f64 = 0.0;
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut uniform = move |lo: f64, hi: f64| {
        // splitmix64
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        lo + (hi - lo) * (z >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..100 {
        let (a1, b1, a2) = (uniform(-3.0, 3.0), uniform(0.2, 3.0), uniform(-3.0, 3.0));
        let b2p = uniform(0.2, 3.0);
        let b2 = uniform(-3.0, 3.0);
        let cases = [
            (ProductKind::PdfPdf, b2p, (a1.abs() + a2.abs() + 12.0) / b1.min(b2p)),
            (ProductKind::PdfCdfMinus, b2, (a1.abs() + 12.0) / b1),
            (ProductKind::PdfCdfPlus, b2, (a1.abs() + 12.0) / b1),
        ];
        for (kind, b2, upper) in cases {
            let f = |x: f64| match kind {
                ProductKind::PdfPdf => common::phi(a1 - b1 * x) * common::phi(a2 - b2 * x),
                ProductKind::PdfCdfMinus => common::phi(a1 - b1 * x) * big_phi(a2 - b2 * x),
                ProductKind::PdfCdfPlus => common::phi(a1 + b1 * x) * big_phi(a2 - b2 * x),
            };
            let reference = common::integrate(f, 0.0, upper, 64, 1e-14);
            let v = product_integral(kind, a1, b1, a2, b2).unwrap();
            product = product.max((v - reference).abs());
        }
    }
    let pass = recip < 1e-9 && recip2 < 1e-9 && orthant < 1e-10 && quadrant < 1e-10 && product < 1e-9;
    outcome(
        pass,
        format!(
            "reciprocity {recip:.1e}, identity {recip2:.1e}, orthant {orthant:.1e}, \
             quadrant {quadrant:.1e}, product integrals {product:.1e}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut a_values = vec![0.0];
    a_values.extend(logspace(1e-3, 10.0, 9));
    let widths = logspace(0.1, 100.0, 7);
    let times = logspace(1e-3, 50.0, 9);
    let mut origin: f64 = 0.0;
    let mut deriv: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    for &a in &a_values {
        for &c in &widths {
            let b = a + c;
            origin = origin.max((w_function(a, b, 0.0).unwrap() - 1.0).abs());
            for &t in &times {
                let w = |t: f64| w_function(a, b, t).unwrap();
                let h = 0.01 / (a + 1.0 / t);
                let fd = (-w(t + 2.0 * h) + 8.0 * w(t + h) - 8.0 * w(t - h) + w(t - 2.0 * h))
                    / (12.0 * h);
                let exact = w_function_dt(a, b, t).unwrap();
                deriv = deriv.max(((fd - exact) / exact).abs());
                oracle = oracle.max((w(t) - common::w_reference(a, b, t)).abs());
            }
        }
    }
    outcome(
        origin < 1e-12 && deriv < 1e-6 && oracle < 1e-8,
        format!("|W(0) - 1| {origin:.1e}, dW/dt rel {deriv:.1e}, vs quadrature {oracle:.1e}"),
    )
}

fn criterion_8() -> Outcome {
    let c = Cumulants::new(0.0, 1.0, -0.05).unwrap();
    let jumps = drawdown_distribution(&model_from_cumulants(c, Family::ExpJump).unwrap(), 5.0).unwrap();
    let brownian = drawdown_distribution(&BrownianParams::new(0.0, 1.0).unwrap().into(), 5.0).unwrap();
    let grid = linspace(0.0, 5.0, 2001);
    let (fa, fb) = (jumps.cdf_on_grid(&grid).unwrap(), brownian.cdf_on_grid(&grid).unwrap());
    let mut sup = jumps.atom0();
    for (x, y) in fa.iter().zip(&fb) {
        sup = sup.max((x.1 - y.1).abs());
    }
    outcome(sup < 0.02, format!("sup |F_jump - F_brownian| = {sup:.4} (< 0.02)"))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (mu, alpha, beta) in [(1.0, 9.0, 1.0 / 3.0), (3.0, 9.0, 1.0 / 3.0)] {
        let p = IGParams::new(mu, alpha, beta).unwrap();
        for u in [0.25, 1.0, 4.0] {
            let r = common::ig_factor1_reference(mu, alpha, beta, u);
            worst = worst.max((ig_factor1(&p, u).unwrap() - r).abs());
            count += 1;
        }
        for t in [0.5, 2.0] {
            let r = common::ig_factor2_reference(mu, alpha, beta, t);
            worst = worst.max((ig_factor2_cont(&p, t).unwrap() - r).abs());
            count += 1;
        }
    }
    outcome(worst < 1e-6, format!("{count} spot values, max |closed form - inversion| = {worst:.1e}"))
}

/// The target is the cumulant point (0, 1, -1), which inverts to
/// (mu=3, alpha=9, beta=1/3). The native set (mu=1, alpha=9, beta=1/3), whose
/// mean rate is -2, is also simulated and reported; its law puts density
/// about 36 on the last grid cell before T, more than any grid-valued τ can
/// follow within the KS limit, so it is diagnostic only.
fn criterion_10() -> Outcome {
    let n = 100_000;
    let c = Cumulants::new(0.0, 1.0, -1.0).unwrap();
    let LevyModel::Ig(target) = model_from_cumulants(c, Family::Ig).unwrap() else {
        unreachable!()
    };
    let limit = ks_critical_99(n) + GRID_BIAS_ALLOWANCE;
    let ks = |p: &IGParams, seed: u64| {
        let config = SimConfig::new(n, seed, 5.0).with_grid_step(1e-3);
        let emp = simulate_ig(p, &config).unwrap();
        let dist = ig_distribution(p, 5.0).unwrap();
        (ks_distance(&emp, &dist).unwrap(), dist)
    };
    let (d, _) = ks(&target, 4_002);
    let native = IGParams::new(1.0, 9.0, 1.0 / 3.0).unwrap();
    let (d_native, dist) = ks(&native, 4_001);
    let edge = dist.cdf_on_grid(&[5.0 - 1e-3]).unwrap()[0].1;
    let floor = 0.5 * (1.0 - dist.atom_t() - edge);
    outcome(
        d <= limit,
        format!(
            "mu={} (cumulants 0, 1, -1): KS {d:.4} vs {limit:.4}; \
             [diagnostic] native mu=1 (mean rate -2): KS {d_native:.4}, grid-lattice floor {floor:.4}",
            target.mu
        ),
    )
}

/// The two atoms differ by `(λξ/μ)(W(a, b; T) - e^{-μT/ξ})`, far below double
/// resolution at these drifts, so the relative error is formed in logs from
/// the scaled `W`.
fn criterion_11() -> Outcome {
    let horizon = 5.0;
    let log_rel = |mu: f64| {
        let p = expjump(mu);
        let rate = p.jump_rate();
        let (sa, sr) = (mu.sqrt(), rate.sqrt());
        let a = (mu - rate).powi(2) / ((sa + sr).powi(2) * p.xi);
        let b = (sa + sr).powi(2) / p.xi;
        let ln_w = -a * horizon + w_function_scaled(a, b, horizon).unwrap().ln();
        let ln_e = -mu * horizon / p.xi;
        let ln_gap = ln_w + (-(ln_e - ln_w).exp()).ln_1p();
        (rate / mu).ln() + ln_gap - expjump_atom0(&p, horizon).unwrap().ln()
    };
    let drifts = [5.0, 10.0, 20.0, 50.0];
    let logs: Vec<f64> = drifts.iter().map(|&mu| log_rel(mu)).collect();
    let decreasing = logs.windows(2).all(|w| w[1] < w[0]);
    let exact = expjump_atom0(&expjump(50.0), horizon).unwrap();
    let approx = expjump_atom0_asymptotic(&expjump(50.0), horizon).unwrap();
    let diff = (approx - exact).abs();
    let shown: Vec<String> = logs.iter().map(|l| format!("1e{:.0}", l / std::f64::consts::LN_10)).collect();
    outcome(
        diff < 1e-3 && decreasing,
        format!("|approx - exact| at mu=50: {diff:.1e}; relative errors {}", shown.join(", ")),
    )
}

fn criterion_12() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_levy-drawdown"))
            .args(["validate", "--model", "expjump", "--mu", "0.6", "--lambda", "4", "--xi", "0.125"])
            .args(["-T", "5", "--paths", "20000", "--seed", "99", "--chunk-size", "3000", "-o"])
            .arg(&path)
            .status()
            .unwrap();
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (code_a, a) = run("a.json");
    let (code_b, b) = run("b.json");
    outcome(
        !a.is_empty() && a == b && code_a == Some(0) && code_b == Some(0),
        format!("{} bytes, identical: {}, exit codes {code_a:?} {code_b:?}", a.len(), a == b),
    )
}

fn main() {
    let checks: [(u32, &str, Check, Duration); 12] = [
        (1, "expjump atom values", criterion_1, Duration::from_secs(1)),
        (2, "expjump histogram vs exact simulation", criterion_2, Duration::from_secs(60)),
        (3, "brownian closed-form cdf vs trapezium", criterion_3, Duration::from_secs(5)),
        (4, "arcsine law", criterion_4, Duration::from_secs(1)),
        (5, "normalization over the cumulant grid", criterion_5, Duration::from_secs(30)),
        (6, "bivariate normal laws and product integrals", criterion_6, Duration::from_secs(10)),
        (7, "W function consistency", criterion_7, Duration::from_secs(10)),
        (8, "brownian limit of small jumps", criterion_8, Duration::from_secs(10)),
        (9, "IG factors vs contour inversion", criterion_9, Duration::from_secs(30)),
        (10, "IG grid simulation vs analytic law", criterion_10, Duration::from_secs(120)),
        (11, "large-drift atom approximation", criterion_11, Duration::from_secs(1)),
        (12, "validation report determinism", criterion_12, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (id, name, check, limit) in checks {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed < limit;
        if !pass {
            failures += 1;
        }
        println!(
            "{} {id:>2} {name}: {} [{:.2} s, limit {} s]",
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
