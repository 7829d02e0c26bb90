//! How drift moves the drawdown time of Brownian motion, plus the law of the
//! running maximum.
use levy_drawdown::drawdown::{brownian_cdf, brownian_density, brownian_max_cdf};
use levy_drawdown::models::BrownianParams;

fn main() -> levy_drawdown::Result<()> {
    let horizon = 5.0;
    for mu in [-1.0, 0.0, 0.5, 2.0] {
        let p = BrownianParams::new(mu, 1.0)?;
        let mid = horizon / 2.0;
        println!(
            "mu={mu:>5}: f(T/2)={:.6} F(T/2)={:.6} F(T-)={:.6} P(M_T<=1)={:.6}",
            brownian_density(&p, horizon, mid)?,
            brownian_cdf(&p, horizon, mid)?,
            brownian_cdf(&p, horizon, horizon - 1e-9)?,
            brownian_max_cdf(&p, horizon, 1.0)?
        );
    }
    Ok(())
}
