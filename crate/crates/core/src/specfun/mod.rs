//! Special functions and quadrature kernels.

mod bessel;
mod bivariate;
mod normal;
mod quadrature;
mod trapezium;
mod wfunc;

pub use bessel::bessel_i1;
pub use bivariate::{binorm_cdf, product_integral, reciprocity_pair, BivariateArgs, ProductKind};
pub use normal::{norm_cdf, norm_pdf, script_c};
pub use quadrature::{integrate_composite, QuadratureKind, QuadratureRule};
pub use trapezium::trapezium_cdf;
pub use wfunc::{w_function, w_function_dt, w_function_scaled};

pub(crate) use bivariate::bvn;
pub(crate) use normal::{call, cdf, exp_times_cdf, pdf};
pub(crate) use quadrature::legendre_24;
pub(crate) use wfunc::w_unchecked;
