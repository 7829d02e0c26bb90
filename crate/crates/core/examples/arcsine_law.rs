//! Driftless Brownian drawdown time against the arcsine law 1/(π√(t(1-t))).
use levy_drawdown::drawdown::{brownian_cdf, brownian_density};
use levy_drawdown::models::BrownianParams;
use std::f64::consts::PI;

fn main() -> levy_drawdown::Result<()> {
    let p = BrownianParams::new(0.0, 1.0)?;
    println!("{:>6} {:>14} {:>14} {:>14}", "t", "density", "arcsine", "cdf");
    for k in 1..10 {
        let t = k as f64 / 10.0;
        let arcsine = 1.0 / (PI * (t * (1.0 - t)).sqrt());
        println!(
            "{t:>6.2} {:>14.10} {arcsine:>14.10} {:>14.10}",
            brownian_density(&p, 1.0, t)?,
            brownian_cdf(&p, 1.0, t)?
        );
    }
    Ok(())
}
