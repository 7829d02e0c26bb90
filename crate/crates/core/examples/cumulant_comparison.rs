//! The two jump models matched on mean, volatility and skewness, next to the
//! Brownian motion with the same mean and volatility, which has no skew.
use levy_drawdown::drawdown::drawdown_distribution;
use levy_drawdown::models::{cumulants_of, model_from_cumulants, BrownianParams, Cumulants, Family, LevyModel};

fn main() -> levy_drawdown::Result<()> {
    let target = Cumulants::new(0.1, 0.5, -1.0)?;
    let horizon = 5.0;
    let models: [LevyModel; 3] = [
        BrownianParams::new(target.mu_hat, target.sigma_hat)?.into(),
        model_from_cumulants(target, Family::ExpJump)?,
        model_from_cumulants(target, Family::Ig)?,
    ];
    for model in models {
        let dist = drawdown_distribution(&model, horizon)?;
        println!("{model}");
        println!("  back to cumulants: {}", cumulants_of(&model));
        let cdf: Vec<String> = [0.0, 1.0, 2.5, 4.0]
            .iter()
            .map(|&t| dist.cdf(t).map(|v| format!("{v:.4}")))
            .collect::<Result<_, _>>()?;
        println!("  atom0={:.4} F(0,1,2.5,4)=[{}]", dist.atom0(), cdf.join(", "));
    }
    Ok(())
}
