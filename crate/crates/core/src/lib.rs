//! Quadratic Hecke L-functions over the Gaussian integers: characters, Gauss
//! sums, L-values, predicted main terms and numerical moment experiments.

// `!(x > 0.0)` guards deliberately reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod characters;
pub mod error;
pub mod gauss_sums;
pub mod harness;
pub mod lfunctions;
pub mod moments;
pub mod zi;

pub use error::{Error, Result};
