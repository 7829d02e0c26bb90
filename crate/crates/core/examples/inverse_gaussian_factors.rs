//! The two factors of the drift minus Inverse Gaussian drawdown density and
//! their product.
use levy_drawdown::drawdown::{ig_distribution, ig_factor1, ig_factor2_cont};
use levy_drawdown::models::IGParams;

fn main() -> levy_drawdown::Result<()> {
    let p = IGParams::new(4.0, 9.0, 1.0 / 3.0)?;
    let horizon = 5.0;
    let dist = ig_distribution(&p, horizon)?;
    println!("atom0 = {:.8}, mass = {:.8}", dist.atom0(), dist.mass());
    for k in 1..10 {
        let t = horizon * k as f64 / 10.0;
        let f1 = ig_factor1(&p, horizon - t)?;
        let f2 = ig_factor2_cont(&p, t)?;
        println!("t={t:>4.1}  first={f1:.6e}  second={f2:.6e}  density={:.6e}", dist.density_at(t)?);
    }
    // the first factor stays finite where e^{2αu} alone would overflow
    println!("first factor at u=100: {:.6e}", ig_factor1(&p, 100.0)?);
    Ok(())
}
