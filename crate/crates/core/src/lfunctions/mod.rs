//! Numerical Hecke L-functions over Q(i).

pub mod gamma;
pub mod lvalue;
pub mod poisson;

pub use gamma::{complex_gamma, gamma_upper, ln_gamma, recip_gamma, ChebTable, PhiTable};
pub use lvalue::{
    afe_parts, completed_l, ideals_up_to, imprimitive_factor, l_value, l_value_afe, l_value_direct, l_value_imprimitive,
    l_value_imprimitive_with, root_number, root_number_from_afe, zeta_K, zeta_K_2, zeta_k_eval, AfeOptions, CompletedL,
    LEvaluation, Method,
};
pub use poisson::{verify_poisson, verify_prop24, PoissonCheck, Prop24Check, TwistedGaussTable};
