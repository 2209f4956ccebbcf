//! Euler products appearing in the main terms.
//!
//! Both products converge slowly term by term, so each is written as a ratio
//! of Dedekind zeta values times a remainder product `Π R(ϖ)` with
//! `R(ϖ) - 1 = O(N(ϖ)^{-e})`, `e` comfortably above 1. The remainder is cut
//! at a prime-norm bound `B` and the tail is bounded by
//! `C Σ_{N > B} N^{-e} ≤ C B^{1-e} / ((e-1) log B)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lfunctions::zeta_K;
use crate::zi::enumerate::prime_ideal_norms;

/// Largest prime-norm cutoff used by the adaptive products.
pub const MAX_PRODUCT_CUTOFF: u64 = 1 << 22;
const MIN_PRODUCT_CUTOFF: u64 = 1 << 12;
/// Products stop growing the cutoff once the tail bound drops below this.
pub const PRODUCT_TAIL_TARGET: f64 = 1e-11;
/// Generous constant in front of the leading remainder term.
const TAIL_CONSTANT: f64 = 4.0;
/// Minimum distance of a factor denominator from zero.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EulerProduct {
    pub value: Complex64,
    /// Largest prime norm included explicitly.
    pub cutoff: u64,
    /// Bound on `|log(true) - log(value)|` from the omitted primes.
    pub tail_bound: f64,
}

fn npow(ln_n: f64, w: Complex64) -> Complex64 {
    (-w * ln_n).exp()
}

fn tail_bound(cutoff: u64, e: f64) -> f64 {
    let b = cutoff as f64;
    TAIL_CONSTANT * b.powf(1.0 - e) / ((e - 1.0) * b.ln())
}

/// Smallest power-of-two cutoff (within the limits) meeting the tail target.
fn choose_cutoff(e: f64) -> u64 {
    let mut b = MIN_PRODUCT_CUTOFF;
    while b < MAX_PRODUCT_CUTOFF && tail_bound(b, e) > PRODUCT_TAIL_TARGET {
        b *= 2;
    }
    b
}

/// One factor of `P(z)`: `1 + 1/((N^{z-1/2} - 1)(N + 1))`.
fn p_factor(n: u64, z: Complex64) -> Result<Complex64> {
    let ln = (n as f64).ln();
    let d = (-npow(ln, -(z - 0.5))) + 1.0;
    if d.norm() < POLE_GUARD {
        return Err(Error::Pole(format!("P(z) factor at norm {n} is singular near z = {z}")));
    }
    Ok(1.0 + 1.0 / ((-d) * (n as f64 + 1.0)))
}

/// Remainder exponent for `P(z)`.
fn p_exponent(sigma: f64) -> f64 {
    (3.0 * sigma - 0.5).min(2.0 * sigma + 1.0).min(sigma + 2.5)
}

/// `P(z) = Π_ϖ (1 + 1/((N(ϖ)^{z-1/2} - 1)(N(ϖ) + 1)))` over all prime ideals.
#[allow(non_snake_case)]
pub fn P_eval(z: Complex64) -> Result<Complex64> {
    Ok(p_eval_with(z, true, None)?.value)
}

/// `P(z)` with the factor at `1+i` optionally dropped and an optional fixed
/// cutoff (otherwise chosen from the decay rate).
pub fn p_eval_with(z: Complex64, include_even: bool, cutoff: Option<u64>) -> Result<EulerProduct> {
    if !(z.re > 0.5) {
        return Err(Error::Domain(format!("P(z) requires Re(z) > 1/2, got z = {z}")));
    }
    let e = p_exponent(z.re);
    let cutoff = cutoff.unwrap_or_else(|| choose_cutoff(e)).clamp(16, MAX_PRODUCT_CUTOFF);
    // Π R with R = (1+f)(1 - N^{-(z+1/2)})(1 - N^{-2z}) / (1 - N^{-(z+3/2)})
    let mut log_r = Complex64::new(0.0, 0.0);
    for n in prime_ideal_norms(cutoff) {
        let ln = (n as f64).ln();
        let r = p_factor(n, z)? * (1.0 - npow(ln, z + 0.5)) * (1.0 - npow(ln, 2.0 * z)) / (1.0 - npow(ln, z + 1.5));
        log_r += r.ln();
    }
    let zeta = zeta_K(z + 0.5)? * zeta_K(2.0 * z)? / zeta_K(z + 1.5)?;
    let mut value = zeta * log_r.exp();
    if !include_even {
        value /= p_factor(2, z)?;
    }
    Ok(EulerProduct { value, cutoff, tail_bound: tail_bound(cutoff, e) })
}

/// `πζ_K^{(2)}(1+2α) / (8ζ_K^{(2)}(1+α+β))`.
pub fn ratio_prefactor(alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    let z2 = |s: Complex64| -> Result<Complex64> { Ok(zeta_K(s)? * (1.0 - npow(2f64.ln(), s))) };
    // written so that α = β gives bitwise equal arguments
    Ok(std::f64::consts::PI * z2(1.0 + alpha + alpha)? / (8.0 * z2(1.0 + alpha + beta)?))
}

/// One factor of the odd-prime product: `1 + (N^{α-β} - 1)/(N^{1+α-β}(N^{1+α+β} - 1))`.
fn ratio_factor(n: u64, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    let ln = (n as f64).ln();
    // same value as (N^{α-β} - 1)/(N^{1+α-β}(N^{1+α+β} - 1)), without overflow for large β
    let d = 1.0 - npow(ln, 1.0 + alpha + beta);
    if d.norm() < POLE_GUARD {
        return Err(Error::Pole(format!("Euler factor at norm {n} is singular at α = {alpha}, β = {beta}")));
    }
    Ok(1.0 + (npow(ln, 2.0 + alpha + beta) - npow(ln, 2.0 + 2.0 * alpha)) / d)
}

fn ratio_exponent(a: f64, b: f64) -> f64 {
    (3.0 + 2.0 * a + 2.0 * b).min(3.0 + 3.0 * a + b).min(4.0 + 4.0 * a)
}

/// The product over odd primes in the first main term of the ratios formula.
pub fn euler_ratio_product(alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    Ok(euler_ratio_product_with(alpha, beta, None)?.value)
}

pub fn euler_ratio_product_with(alpha: Complex64, beta: Complex64, cutoff: Option<u64>) -> Result<EulerProduct> {
    let e = ratio_exponent(alpha.re, beta.re);
    if !(e > 1.5) {
        return Err(Error::Domain(format!("Euler product diverges too slowly at α = {alpha}, β = {beta}")));
    }
    let cutoff = cutoff.unwrap_or_else(|| choose_cutoff(e)).clamp(16, MAX_PRODUCT_CUTOFF);
    if alpha == beta {
        return Ok(EulerProduct { value: Complex64::new(1.0, 0.0), cutoff, tail_bound: 0.0 });
    }
    // Π_odd F = ζ_K^{(2)}(2+α+β)/ζ_K^{(2)}(2+2α) · Π_odd R,
    // R = F (1 - N^{-(2+α+β)}) / (1 - N^{-(2+2α)})
    let mut log_r = Complex64::new(0.0, 0.0);
    for n in prime_ideal_norms(cutoff).into_iter().filter(|&n| n != 2) {
        let ln = (n as f64).ln();
        let r = ratio_factor(n, alpha, beta)? * (1.0 - npow(ln, 2.0 + alpha + beta)) / (1.0 - npow(ln, 2.0 + 2.0 * alpha));
        log_r += r.ln();
    }
    let odd = |s: Complex64| -> Result<Complex64> { Ok(zeta_K(s)? * (1.0 - npow(2f64.ln(), s))) };
    let value = odd(2.0 + alpha + beta)? / odd(2.0 + 2.0 * alpha)? * log_r.exp();
    Ok(EulerProduct { value, cutoff, tail_bound: tail_bound(cutoff, e) })
}
