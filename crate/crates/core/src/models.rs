//! Parameter sets for the three spectrally negative models, their Lévy
//! generators `L(u)` (with `E[e^{iuX_t}] = e^{tL(u)}`), normalized cumulants
//! and the lower-half-plane root `u⁺_s` of `L(u) = s`.
//!
//! * Brownian: `L(u) = iμu - σ²u²/2`
//! * ExpJump: `L(u) = iμu - iλξu/(1 + iξu)`, drift `μ` minus a compound
//!   Poisson process of rate `λ` with exponential jumps of mean `ξ`
//! * IG: `L(u) = iμu + α(1 - √(1 + 2βiu))`, drift minus an Inverse Gaussian
//!   subordinator

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrownianParams {
    pub mu: f64,
    pub sigma: f64,
}

impl BrownianParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        let p = Self { mu, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        finite("mu", self.mu)?;
        finite("sigma", self.sigma)?;
        if !(self.sigma > 0.0) {
            return Err(domain(format!("sigma must be positive, got {}", self.sigma)));
        }
        Ok(())
    }
}

/// `mu` may have either sign; `mu <= 0` gives nonincreasing paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpJumpParams {
    pub mu: f64,
    pub lambda: f64,
    pub xi: f64,
}

impl ExpJumpParams {
    pub fn new(mu: f64, lambda: f64, xi: f64) -> Result<Self> {
        let p = Self { mu, lambda, xi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        finite("mu", self.mu)?;
        finite("lambda", self.lambda)?;
        finite("xi", self.xi)?;
        if !(self.lambda > 0.0) {
            return Err(domain(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !(self.xi > 0.0) {
            return Err(domain(format!("xi must be positive, got {}", self.xi)));
        }
        Ok(())
    }

    /// `λξ`, the mean jump loss per unit time.
    pub fn jump_rate(&self) -> f64 {
        self.lambda * self.xi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IGParams {
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl IGParams {
    pub fn new(mu: f64, alpha: f64, beta: f64) -> Result<Self> {
        let p = Self { mu, alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mu", self.mu), ("alpha", self.alpha), ("beta", self.beta)] {
            finite(name, v)?;
            if !(v > 0.0) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum LevyModel {
    Brownian(BrownianParams),
    ExpJump(ExpJumpParams),
    Ig(IGParams),
}

impl LevyModel {
    pub fn family(&self) -> Family {
        match self {
            LevyModel::Brownian(_) => Family::Brownian,
            LevyModel::ExpJump(_) => Family::ExpJump,
            LevyModel::Ig(_) => Family::Ig,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LevyModel::Brownian(p) => p.validate(),
            LevyModel::ExpJump(p) => p.validate(),
            LevyModel::Ig(p) => p.validate(),
        }
    }
}

impl From<BrownianParams> for LevyModel {
    fn from(p: BrownianParams) -> Self {
        LevyModel::Brownian(p)
    }
}

impl From<ExpJumpParams> for LevyModel {
    fn from(p: ExpJumpParams) -> Self {
        LevyModel::ExpJump(p)
    }
}

impl From<IGParams> for LevyModel {
    fn from(p: IGParams) -> Self {
        LevyModel::Ig(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Brownian,
    ExpJump,
    Ig,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Brownian => "brownian",
            Family::ExpJump => "expjump",
            Family::Ig => "ig",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brownian" => Ok(Family::Brownian),
            "expjump" => Ok(Family::ExpJump),
            "ig" => Ok(Family::Ig),
            other => Err(Error::Parse(format!("unknown model family '{other}'"))),
        }
    }
}

/// Mean rate, standard deviation per unit time and normalized skewness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cumulants {
    pub mu_hat: f64,
    pub sigma_hat: f64,
    pub kappa_hat: f64,
}

impl Cumulants {
    pub fn new(mu_hat: f64, sigma_hat: f64, kappa_hat: f64) -> Result<Self> {
        finite("mu_hat", mu_hat)?;
        finite("sigma_hat", sigma_hat)?;
        finite("kappa_hat", kappa_hat)?;
        if !(sigma_hat > 0.0) {
            return Err(domain(format!("sigma_hat must be positive, got {sigma_hat}")));
        }
        Ok(Self { mu_hat, sigma_hat, kappa_hat })
    }
}

/// Roots of `L(u) = s`. `u_plus` lies in the lower half-plane for `Re s > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WienerHopfPole {
    pub s: Complex64,
    pub u_plus: Complex64,
    /// The upper-half-plane root, where one exists on the principal sheet.
    pub u_minus: Option<Complex64>,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn generator_eval(model: &LevyModel, u: Complex64) -> Result<Complex64> {
    if !(u.re.is_finite() && u.im.is_finite()) {
        return Err(Error::NonFinite { name: "u", value: if u.re.is_finite() { u.im } else { u.re } });
    }
    model.validate()?;
    match *model {
        LevyModel::Brownian(BrownianParams { mu, sigma }) => {
            Ok(I * mu * u - 0.5 * sigma * sigma * u * u)
        }
        LevyModel::ExpJump(ExpJumpParams { mu, lambda, xi }) => {
            let denom = Complex64::new(1.0, 0.0) + I * xi * u;
            if denom.norm() <= 1e-12 {
                return Err(Error::GeneratorPole(u));
            }
            Ok(I * mu * u - I * lambda * xi * u / denom)
        }
        LevyModel::Ig(IGParams { mu, alpha, beta }) => {
            let w = Complex64::new(1.0, 0.0) + 2.0 * beta * I * u;
            if w.im == 0.0 && w.re <= 0.0 {
                return Err(Error::BranchCut(u));
            }
            // 1 - √w = -(w - 1)/(1 + √w); the denominator has modulus at least 1.
            Ok(I * mu * u - 2.0 * alpha * beta * I * u / (1.0 + positive_sqrt(w)))
        }
    }
}

/// Square root with nonnegative real part.
fn positive_sqrt(w: Complex64) -> Complex64 {
    let r = w.sqrt();
    if r.re < 0.0 {
        -r
    } else {
        r
    }
}

pub fn cumulants_of(model: &LevyModel) -> Cumulants {
    match *model {
        LevyModel::Brownian(p) => Cumulants { mu_hat: p.mu, sigma_hat: p.sigma, kappa_hat: 0.0 },
        LevyModel::ExpJump(p) => Cumulants {
            mu_hat: p.mu - p.lambda * p.xi,
            sigma_hat: (2.0 * p.lambda).sqrt() * p.xi,
            kappa_hat: -3.0 / (2.0 * p.lambda).sqrt(),
        },
        LevyModel::Ig(p) => Cumulants {
            mu_hat: p.mu - p.alpha * p.beta,
            sigma_hat: p.alpha.sqrt() * p.beta,
            kappa_hat: -3.0 / p.alpha.sqrt(),
        },
    }
}

/// Inverts [`cumulants_of`] within a family.
pub fn model_from_cumulants(target: Cumulants, family: Family) -> Result<LevyModel> {
    let Cumulants { mu_hat, sigma_hat, kappa_hat } = Cumulants::new(target.mu_hat, target.sigma_hat, target.kappa_hat)?;
    match family {
        Family::Brownian => {
            if kappa_hat != 0.0 {
                return Err(Error::Infeasible(format!(
                    "Brownian motion has kappa_hat = 0, got {kappa_hat}"
                )));
            }
            Ok(BrownianParams::new(mu_hat, sigma_hat)?.into())
        }
        Family::ExpJump => {
            if !(kappa_hat < 0.0) {
                return Err(Error::Infeasible(format!(
                    "expjump requires kappa_hat < 0, got {kappa_hat}"
                )));
            }
            let lambda = 4.5 / (kappa_hat * kappa_hat);
            let xi = sigma_hat * kappa_hat.abs() / 3.0;
            Ok(ExpJumpParams::new(mu_hat + lambda * xi, lambda, xi)?.into())
        }
        Family::Ig => {
            if !(kappa_hat < 0.0) {
                return Err(Error::Infeasible(format!(
                    "ig requires kappa_hat < 0, got {kappa_hat}"
                )));
            }
            let alpha = 9.0 / (kappa_hat * kappa_hat);
            let beta = sigma_hat * kappa_hat.abs() / 3.0;
            let mu = mu_hat + alpha * beta;
            if !(mu > 0.0) {
                return Err(Error::Infeasible(format!(
                    "ig drift mu = mu_hat + alpha*beta = {mu} must be positive"
                )));
            }
            Ok(IGParams::new(mu, alpha, beta)?.into())
        }
    }
}

/// Endpoints `(-b, -a)` of the cut of `u⁺_s` in the `s`-plane, with
/// `a, b = (√μ ∓ √(λξ))²/ξ`.
pub fn expjump_slit(params: &ExpJumpParams) -> Result<(f64, f64)> {
    params.validate()?;
    if !(params.mu > 0.0) {
        return Err(domain(format!("slit requires mu > 0, got {}", params.mu)));
    }
    let (a, b) = expjump_ab(params);
    Ok((-b, -a))
}

pub(crate) fn expjump_ab(p: &ExpJumpParams) -> (f64, f64) {
    let (sm, sj) = (p.mu.sqrt(), p.jump_rate().sqrt());
    let b = (sm + sj) * (sm + sj) / p.xi;
    // (√μ-√(λξ))² = (μ-λξ)²/(√μ+√(λξ))², free of cancellation
    let d = p.mu - p.jump_rate();
    let a = d * d / ((sm + sj) * (sm + sj)) / p.xi;
    (a, b)
}

pub fn wh_pole(model: &LevyModel, s: Complex64) -> Result<WienerHopfPole> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite { name: "s", value: if s.re.is_finite() { s.im } else { s.re } });
    }
    model.validate()?;
    match *model {
        LevyModel::Brownian(BrownianParams { mu, sigma }) => {
            // L(-iv) = μv + σ²v²/2; v± = (-μ ± √(μ² + 2σ²s))/σ²
            let s2 = sigma * sigma;
            let root = (mu * mu + 2.0 * s2 * s).sqrt();
            let big = Complex64::new(mu, 0.0) + root;
            let v_plus = if big.norm() > 0.0 { 2.0 * s / big } else { root / s2 };
            let v_minus = -(Complex64::new(mu, 0.0) + root) / s2;
            Ok(WienerHopfPole { s, u_plus: -I * v_plus, u_minus: Some(-I * v_minus) })
        }
        LevyModel::ExpJump(p) => {
            let (lo, hi) = expjump_slit(&p)?;
            if s.im == 0.0 && s.re >= lo && s.re <= hi {
                return Err(Error::OnSlit { s, lo, hi });
            }
            let (mu, xi) = (p.mu, p.xi);
            // μξu² - i(μ-λξ-ξs)u + s = 0, roots i(B ∓ R)/(2μξ), product s/(μξ)
            let b = Complex64::new(mu - p.jump_rate(), 0.0) - xi * s;
            let r = xi * (s - lo).sqrt() * (s - hi).sqrt();
            let (u_plus, u_minus) = stable_roots(b, r, 2.0 * mu * xi, s / (mu * xi));
            Ok(WienerHopfPole { s, u_plus, u_minus: Some(u_minus) })
        }
        LevyModel::Ig(IGParams { mu, alpha, beta }) => {
            let b = Complex64::new(mu * alpha - alpha * alpha * beta, 0.0) - mu * s;
            let gap = alpha * beta - mu;
            let r = alpha * (gap * gap + 2.0 * beta * mu * s).sqrt();
            // In u = iy the roots multiply to s(2α - s)/μ².
            let (u_plus, _) = stable_roots(b, r, mu * mu, s * (2.0 * alpha - s) / (mu * mu));
            Ok(WienerHopfPole { s, u_plus, u_minus: None })
        }
    }
}

/// Roots `i(B - R)/den` and `i(B + R)/den` of a quadratic whose root product
/// is `prod`, taking the smaller one from the product to avoid cancellation.
fn stable_roots(b: Complex64, r: Complex64, den: f64, prod: Complex64) -> (Complex64, Complex64) {
    let minus = I * (b - r) / den;
    let plus = I * (b + r) / den;
    if (b * r.conj()).re >= 0.0 {
        let lower = if plus.norm() > 0.0 { prod / plus } else { minus };
        (lower, plus)
    } else {
        let upper = if minus.norm() > 0.0 { prod / minus } else { plus };
        (minus, upper)
    }
}

/// Native or cumulant parameter input, as accepted by the key-value form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelInput {
    Native(LevyModel),
    Cumulant { family: Family, cumulants: Cumulants },
}

impl ModelInput {
    pub fn resolve(self) -> Result<LevyModel> {
        match self {
            ModelInput::Native(m) => {
                m.validate()?;
                Ok(m)
            }
            ModelInput::Cumulant { family, cumulants } => model_from_cumulants(cumulants, family),
        }
    }
}

/// `model=<family>` followed by either the native keys or
/// `mu_hat`/`sigma_hat`/`kappa_hat`, separated by whitespace.
pub fn parse_model_kv(text: &str) -> Result<ModelInput> {
    let mut family = None;
    let mut values: Vec<(&str, f64)> = Vec::new();
    for token in text.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{token}'")))?;
        if key == "model" {
            family = Some(value.parse::<Family>()?);
            continue;
        }
        const KEYS: [&str; 9] =
            ["mu", "sigma", "lambda", "xi", "alpha", "beta", "mu_hat", "sigma_hat", "kappa_hat"];
        if !KEYS.contains(&key) {
            return Err(Error::Parse(format!("unknown key '{key}'")));
        }
        if values.iter().any(|(k, _)| *k == key) {
            return Err(Error::Parse(format!("duplicate key '{key}'")));
        }
        let v: f64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("{key}: cannot parse '{value}' as a number")))?;
        values.push((key, v));
    }
    let family = family.ok_or_else(|| Error::Parse("missing key 'model'".into()))?;
    let get = |k: &str| values.iter().find(|(key, _)| *key == k).map(|&(_, v)| v);
    let cumulant_keys = ["mu_hat", "sigma_hat", "kappa_hat"];
    let native_keys: &[&str] = match family {
        Family::Brownian => &["mu", "sigma"],
        Family::ExpJump => &["mu", "lambda", "xi"],
        Family::Ig => &["mu", "alpha", "beta"],
    };
    let has_cumulant = cumulant_keys.iter().any(|k| get(k).is_some());
    let has_native = values.iter().any(|(k, _)| !cumulant_keys.contains(k));
    if has_cumulant && has_native {
        return Err(Error::Parse("supply either native or cumulant parameters, not both".into()));
    }
    if has_cumulant {
        let need = |k: &str| get(k).ok_or_else(|| Error::Parse(format!("missing key '{k}'")));
        let kappa_hat = match family {
            Family::Brownian => get("kappa_hat").unwrap_or(0.0),
            _ => need("kappa_hat")?,
        };
        let cumulants = Cumulants::new(need("mu_hat")?, need("sigma_hat")?, kappa_hat)?;
        return Ok(ModelInput::Cumulant { family, cumulants });
    }
    for (k, _) in &values {
        if !native_keys.contains(k) {
            return Err(Error::Parse(format!("key '{k}' does not apply to model {family}")));
        }
    }
    let need = |k: &str| get(k).ok_or_else(|| Error::Parse(format!("missing key '{k}'")));
    let model: LevyModel = match family {
        Family::Brownian => BrownianParams::new(need("mu")?, need("sigma")?)?.into(),
        Family::ExpJump => ExpJumpParams::new(need("mu")?, need("lambda")?, need("xi")?)?.into(),
        Family::Ig => IGParams::new(need("mu")?, need("alpha")?, need("beta")?)?.into(),
    };
    Ok(ModelInput::Native(model))
}

impl fmt::Display for LevyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevyModel::Brownian(p) => write!(f, "model=brownian mu={} sigma={}", p.mu, p.sigma),
            LevyModel::ExpJump(p) => {
                write!(f, "model=expjump mu={} lambda={} xi={}", p.mu, p.lambda, p.xi)
            }
            LevyModel::Ig(p) => write!(f, "model=ig mu={} alpha={} beta={}", p.mu, p.alpha, p.beta),
        }
    }
}

impl FromStr for LevyModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_model_kv(s)?.resolve()
    }
}

impl fmt::Display for Cumulants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu_hat={} sigma_hat={} kappa_hat={}",
            self.mu_hat, self.sigma_hat, self.kappa_hat
        )
    }
}
