//! Predicted main terms for the ratios sum and the first moment, and the
//! linear polynomial describing the first moment at the central point.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::products::{euler_ratio_product_with, p_eval_with, ratio_prefactor};
use super::weights::WeightFunction;
use crate::error::{Error, Result};
use crate::lfunctions::{complex_gamma, zeta_K};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MainTermBreakdown {
    pub x: f64,
    pub alpha: Complex64,
    pub beta: Option<Complex64>,
    pub weight: WeightFunction,
    /// The `X ŵ(1)` term.
    pub term1: Complex64,
    /// The `X^{1-α} ŵ(1-α)` term.
    pub term2: Complex64,
    /// Powers of `X` carried by the two terms: `(1, 1 - Re α)`.
    pub exponents: (f64, f64),
    pub error_exponent_bound: f64,
    /// Tail bound of the Euler products involved (relative).
    pub product_tail_bound: f64,
}

impl MainTermBreakdown {
    pub fn total(&self) -> Complex64 {
        self.term1 + self.term2
    }
}

/// Which constant multiplies the second first-moment term.
///
/// `BetaLimit` is `2^{2α-3}/3`, the `β → ∞` limit of the ratios formula; with
/// it the `1/α` poles of the two terms cancel at `α = 0`. `AsPrinted` is
/// `2^{2α-1}/3`, four times larger, under which they do not.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstMomentConstant {
    #[default]
    BetaLimit,
    AsPrinted,
}

impl FirstMomentConstant {
    fn value(self, alpha: Complex64) -> Complex64 {
        let e = match self {
            FirstMomentConstant::BetaLimit => 2.0 * alpha - 3.0,
            FirstMomentConstant::AsPrinted => 2.0 * alpha - 1.0,
        };
        (e * 2f64.ln()).exp() / 3.0
    }
}

impl fmt::Display for FirstMomentConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FirstMomentConstant::BetaLimit => "beta_limit",
            FirstMomentConstant::AsPrinted => "as_printed",
        })
    }
}

impl FromStr for FirstMomentConstant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta_limit" => Ok(FirstMomentConstant::BetaLimit),
            "as_printed" => Ok(FirstMomentConstant::AsPrinted),
            _ => Err(Error::Parse(format!("unknown constant {s:?} (expected beta_limit or as_printed)"))),
        }
    }
}

fn pow_real(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// `π^{2α+1} Γ(1-2α)Γ(α) / (Γ(1-α)Γ(2α))`.
pub fn gamma_factor(alpha: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok(pow_real(PI, 2.0 * alpha + 1.0) * complex_gamma(one - 2.0 * alpha)? * complex_gamma(alpha)?
        / (complex_gamma(one - alpha)? * complex_gamma(2.0 * alpha)?))
}

fn zeta2(s: Complex64) -> Result<Complex64> {
    Ok(zeta_K(s)? * (1.0 - pow_real(2.0, -s)))
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("X must be positive, got {x}")));
    }
    Ok(())
}

/// Main terms of the ratios average
/// `Σ_n L(1/2+α, χ_{(1+i)²n}) / L(1/2+β, χ_{(1+i)²n}) w(N(n)/X)`.
pub fn main_term_ratios(x: f64, alpha: Complex64, beta: Complex64, w: &WeightFunction) -> Result<MainTermBreakdown> {
    check_x(x)?;
    if !(alpha.re > 0.0 && alpha.re < 0.5) || !(beta.re > 0.0) {
        return Err(Error::Domain(format!("need 0 < Re α < 1/2 and Re β > 0, got α = {alpha}, β = {beta}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let euler = euler_ratio_product_with(alpha, beta, None)?;
    let term1 = x * w.mellin(one)? * ratio_prefactor(alpha, beta)? * euler.value;

    let p = p_eval_with(1.5 - alpha + beta, true, None)?;
    let two = pow_real(2.0, alpha + beta - 2.0) / (3.0 * pow_real(2.0, 1.0 - alpha + beta) - 2.0);
    let term2 = pow_real(x, one - alpha) * w.mellin(one - alpha)? * gamma_factor(alpha)? * p.value * zeta_K(one - 2.0 * alpha)?
        / (zeta_K(Complex64::new(2.0, 0.0))? * zeta_K(one - alpha + beta)?)
        * two;
    Ok(MainTermBreakdown {
        x,
        alpha,
        beta: Some(beta),
        weight: *w,
        term1,
        term2,
        exponents: (1.0, 1.0 - alpha.re),
        error_exponent_bound: error_exponent(alpha, beta),
        product_tail_bound: euler.tail_bound.max(p.tail_bound),
    })
}

/// `max{1 - 2Re α, 1 - 2Re β}`.
pub fn error_exponent(alpha: Complex64, beta: Complex64) -> f64 {
    (1.0 - 2.0 * alpha.re).max(1.0 - 2.0 * beta.re)
}

/// Main terms of `Σ_n L(1/2+α, χ_{(1+i)²n}) w(N(n)/X)` with the default constant.
pub fn main_term_first_moment(x: f64, alpha: Complex64, w: &WeightFunction) -> Result<MainTermBreakdown> {
    main_term_first_moment_with(x, alpha, w, FirstMomentConstant::default())
}

pub fn main_term_first_moment_with(
    x: f64,
    alpha: Complex64,
    w: &WeightFunction,
    constant: FirstMomentConstant,
) -> Result<MainTermBreakdown> {
    if !(alpha.re > 0.0 && alpha.re < 0.5) {
        return Err(Error::Domain(format!("need 0 < Re α < 1/2, got α = {alpha}")));
    }
    first_moment_terms(x, alpha, w, constant)
}

/// The same formula without the range check; analytic in `α` near 0 apart
/// from the `1/α` poles of the individual terms.
fn first_moment_terms(x: f64, alpha: Complex64, w: &WeightFunction, constant: FirstMomentConstant) -> Result<MainTermBreakdown> {
    check_x(x)?;
    let one = Complex64::new(1.0, 0.0);
    let term1 = x * w.mellin(one)? * PI * zeta2(one + 2.0 * alpha)? / (8.0 * zeta2(2.0 + 2.0 * alpha)?);
    let term2 = pow_real(x, one - alpha)
        * w.mellin(one - alpha)?
        * constant.value(alpha)
        * gamma_factor(alpha)?
        * zeta_K(one - 2.0 * alpha)?
        / zeta_K(Complex64::new(2.0, 0.0))?;
    Ok(MainTermBreakdown {
        x,
        alpha,
        beta: None,
        weight: *w,
        term1,
        term2,
        exponents: (1.0, 1.0 - alpha.re),
        error_exponent_bound: 0.5,
        product_tail_bound: 0.0,
    })
}

/// Shifts used to extrapolate the first moment to `α = 0`.
pub const Q_SHIFTS: [f64; 2] = [1e-3, 5e-4];
/// Relative agreement required between the two symmetric averages.
pub const Q_STABILITY: f64 = 1e-4;

/// Details of the `α → 0` extrapolation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QExtrapolation {
    pub x: f64,
    /// `(F(α₀) + F(-α₀))/2` for each shift, `F = (term1 + term2)/X`.
    pub symmetric: [f64; 2],
    /// `α₀ (F(α₀) - F(-α₀))/2` for each shift: the leftover `1/α` residue.
    pub residue: [f64; 2],
    /// The residue extrapolated to `α₀ = 0`; zero when the poles cancel.
    pub pole_residue: f64,
    pub value: f64,
}

pub fn q_extrapolation(x: f64, w: &WeightFunction, constant: FirstMomentConstant) -> Result<QExtrapolation> {
    let f = |a: f64| -> Result<Complex64> { Ok(first_moment_terms(x, Complex64::new(a, 0.0), w, constant)?.total() / x) };
    let mut symmetric = [0.0; 2];
    let mut residue = [0.0; 2];
    for (k, &a0) in Q_SHIFTS.iter().enumerate() {
        let (p, m) = (f(a0)?, f(-a0)?);
        symmetric[k] = 0.5 * (p + m).re;
        residue[k] = 0.5 * a0 * (p - m).re;
    }
    let scale = symmetric[1].abs().max(1e-300);
    // the odd part is A/α₀ + C α₀, so α₀·odd = A + C α₀²
    let pole_residue = (4.0 * residue[1] - residue[0]) / 3.0;
    if pole_residue.abs() > Q_STABILITY * scale {
        return Err(Error::Numerical(format!(
            "the 1/α poles do not cancel (leftover residue {pole_residue:.3e} against {:.3e})",
            symmetric[1]
        )));
    }
    if (symmetric[0] - symmetric[1]).abs() > Q_STABILITY * scale {
        return Err(Error::Numerical(format!("extrapolation unstable: {} vs {}", symmetric[0], symmetric[1])));
    }
    // S(α₀) = Q + c α₀² + ...
    let value = (4.0 * symmetric[1] - symmetric[0]) / 3.0;
    Ok(QExtrapolation { x, symmetric, residue, pole_residue, value })
}

/// `Q(log X)`, the central first moment divided by `X`.
pub fn q_poly(x: f64, w: &WeightFunction) -> Result<f64> {
    Ok(q_extrapolation(x, w, FirstMomentConstant::default())?.value)
}

/// `(c1, c0)` with `Q(L) = c1 L + c0`.
pub fn q_poly_coefficients(w: &WeightFunction) -> Result<(f64, f64)> {
    let q0 = q_poly(1.0, w)?;
    let q1 = q_poly(std::f64::consts::E, w)?;
    Ok((q1 - q0, q0))
}
