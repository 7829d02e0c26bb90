//! Special functions behind the closed forms: the bivariate normal
//! distribution, the W integral and the modified Bessel function.
use levy_drawdown::specfun::{
    bessel_i1, binorm_cdf, norm_cdf, w_function, w_function_scaled, BivariateArgs,
};

fn main() -> levy_drawdown::Result<()> {
    for rho in [-0.9, -0.5, 0.0, 0.5, 0.9] {
        let v = binorm_cdf(BivariateArgs::new(0.0, 0.0, rho))?;
        let exact = 0.25 + rho.asin() / (2.0 * std::f64::consts::PI);
        println!("Phi2(0,0;{rho:>4}) = {v:.15}  orthant = {exact:.15}");
    }
    println!("Phi2(1,2;0) = {:.15}, Phi(1)Phi(2) = {:.15}",
        binorm_cdf(BivariateArgs::new(1.0, 2.0, 0.0))?, norm_cdf(1.0)? * norm_cdf(2.0)?);
    for t in [0.0, 0.1, 1.0, 10.0, 1000.0] {
        println!("W(0.5,4;{t}) = {:.12e}  e^(at)W = {:.12e}", w_function(0.5, 4.0, t)?, w_function_scaled(0.5, 4.0, t)?);
    }
    for x in [0.1, 1.0, 10.0, 50.0] {
        println!("I1({x}) = {:.12e}", bessel_i1(x)?);
    }
    Ok(())
}
