// `!(x > 0.0)` guards are used on purpose: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod drawdown;
pub mod error;
pub mod models;
pub mod montecarlo;
pub mod specfun;

pub use error::{Error, Result};
