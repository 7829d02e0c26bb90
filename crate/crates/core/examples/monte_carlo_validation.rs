//! Simulate paths and compare the empirical drawdown time with the analytic
//! law: atoms, KS distance, histogram and mean rate.
use levy_drawdown::models::{ExpJumpParams, IGParams, LevyModel};
use levy_drawdown::montecarlo::{validate_model, SimConfig};

fn main() -> levy_drawdown::Result<()> {
    let models: [LevyModel; 2] = [
        ExpJumpParams::new(0.6, 4.0, 0.125)?.into(),
        IGParams::new(3.0, 9.0, 1.0 / 3.0)?.into(),
    ];
    for model in &models {
        let config = SimConfig::new(20_000, 7, 5.0).with_grid_step(2e-3);
        let r = validate_model(model, model, &config)?;
        println!("{model}");
        println!("  exact sampler: {}", r.exact_sampler);
        println!("  atom0 {:.4} vs {:.4} (band {:.4})", r.atom0.frequency, r.atom0.analytic, r.atom0.band);
        println!("  KS {:.4} (limit {:.4})", r.ks.distance, r.ks.critical_99 + r.ks.allowance);
        println!("  mean rate {:.4} vs {:.4}", r.mean_rate.empirical, r.mean_rate.analytic);
        println!("  verdict {}", r.verdict);
    }
    Ok(())
}
