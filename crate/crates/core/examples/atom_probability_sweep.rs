//! Probability that the path sits at its running maximum at the horizon,
//! across drift and horizon, for both jump models. With zero drift the
//! maximum stays at the start, so that row is zero.
use levy_drawdown::drawdown::drawdown_distribution;
use levy_drawdown::models::{ExpJumpParams, IGParams, LevyModel};

fn atom_row(model: LevyModel, horizons: &[f64]) -> levy_drawdown::Result<String> {
    let cells: Vec<String> = horizons
        .iter()
        .map(|&h| drawdown_distribution(&model, h).map(|d| format!("{:.5}", d.atom0())))
        .collect::<Result<_, _>>()?;
    Ok(cells.join("  "))
}

fn main() -> levy_drawdown::Result<()> {
    let horizons = [0.1, 1.0, 5.0, 25.0];
    println!("expjump lambda=4 xi=0.125");
    for mu in [0.0, 0.3, 0.6, 1.2] {
        let row = atom_row(ExpJumpParams::new(mu, 4.0, 0.125)?.into(), &horizons)?;
        println!("  mu={mu:<4} {row}");
    }
    println!("ig alpha=9 beta=1/3");
    for mu in [0.5, 1.0, 3.0, 6.0] {
        let row = atom_row(IGParams::new(mu, 9.0, 1.0 / 3.0)?.into(), &horizons)?;
        println!("  mu={mu:<4} {row}");
    }
    Ok(())
}
