//! Closed-form main terms: Euler products, Mellin transforms of the test
//! weights, and the predicted first-moment and ratios asymptotics.

pub mod main_terms;
pub mod products;
pub mod quad;
pub mod weights;

pub use main_terms::{
    error_exponent, gamma_factor, main_term_first_moment, main_term_first_moment_with, main_term_ratios, q_extrapolation, q_poly,
    q_poly_coefficients, FirstMomentConstant, MainTermBreakdown, QExtrapolation,
};
pub use products::{euler_ratio_product, euler_ratio_product_with, p_eval_with, ratio_prefactor, EulerProduct, P_eval};
pub use weights::{mellin, mellin_derivative, WeightFunction, WeightKind};
