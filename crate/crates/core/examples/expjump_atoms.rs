//! Drift with exponential down jumps: density table, the atom at zero and
//! its large-horizon approximation.
use levy_drawdown::drawdown::{expjump_atom0, expjump_atom0_asymptotic, expjump_distribution};
use levy_drawdown::models::ExpJumpParams;

fn main() -> levy_drawdown::Result<()> {
    let p = ExpJumpParams::new(0.6, 4.0, 0.125)?;
    let dist = expjump_distribution(&p, 5.0)?;
    println!("atom0 = {:.6}  atomT = {:.6}  total mass = {:.8}", dist.atom0(), dist.atom_t(), dist.mass());
    for k in 0..=10 {
        let t = 0.5 * k as f64;
        println!("t={t:>4.1}  f={:.6}  F={:.6}", dist.density_at(t)?, dist.cdf(t)?);
    }
    println!("\nhorizon  exact atom0   approx atom0");
    for horizon in [1.0, 5.0, 20.0, 100.0] {
        println!(
            "{horizon:>7}  {:.10}  {:.10}",
            expjump_atom0(&p, horizon)?,
            expjump_atom0_asymptotic(&p, horizon)?
        );
    }
    Ok(())
}
