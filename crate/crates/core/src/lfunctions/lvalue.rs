//! `ζ_K`, `L(s, χ)` for primitive and imprimitive quadratic characters, root
//! numbers and the completed L-function.
//!
//! With `Q = √N(q)/π` the completed function is `Λ(s) = Q^s Γ(s) L(s, χ)`, and
//! for every split point `λ > 0`
//!
//! `Λ(s) = Σ_a χ(a) (Q/Na)^s Γ(s, Na·λ/Q) + W Σ_a χ(a) (Q/Na)^{1-s} Γ(1-s, Na/(λQ))`
//!
//! summed over nonzero ideals, plus `(λ^{s-1}/(s-1) - λ^s/s)/4` for `ζ_K`.
//! The value is independent of `λ`, which gives an internal consistency check.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::{complex_gamma, gamma_upper, nonpositive_integer, recip_gamma};
use crate::characters::{character_of_twist, QuadraticCharacter};
use crate::error::{Error, Result};
use crate::gauss_sums::{e_tilde, gauss_sum_fast_cases, residues_small};
use crate::zi::factor::factor_small;
use crate::zi::small::SmallGaussian;
use crate::zi::{primary_up_to, GaussianInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectSeries,
    Afe,
    EulerRemoved,
}

#[derive(Clone, Debug, Serialize)]
pub struct LEvaluation {
    pub s: Complex64,
    pub value: Complex64,
    pub method: Method,
    pub truncation_norm: u64,
    pub est_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletedL {
    pub character: QuadraticCharacter,
    pub s: Complex64,
    pub lambda_value: Complex64,
}

/// Tuning of the approximate functional equation.
#[derive(Clone, Copy, Debug)]
pub struct AfeOptions {
    /// Split point of the Mellin integral.
    pub lambda: f64,
    /// Terms with incomplete-gamma argument beyond this are dropped.
    pub cutoff: f64,
}

impl Default for AfeOptions {
    fn default() -> Self {
        AfeOptions { lambda: 1.0, cutoff: 36.0 }
    }
}

/// Largest ideal norm the generic (non-batched) evaluators will enumerate.
pub const MAX_IDEAL_NORM: u64 = 50_000_000;

/// Nonzero ideals of norm ≤ `bound` as `(generator, norm)`: each is
/// `(1+i)^k a` with `a` primary. Even ideals are skipped when `odd_only`.
pub fn ideals_up_to(bound: u64, odd_only: bool) -> Result<Vec<(SmallGaussian, u64)>> {
    if bound > MAX_IDEAL_NORM {
        return Err(Error::CapExceeded { what: "ideal norm bound", value: bound.to_string(), cap: MAX_IDEAL_NORM.to_string() });
    }
    let mut out = Vec::new();
    let t = SmallGaussian::ONE_PLUS_I;
    for a in primary_up_to(bound) {
        let mut x = a;
        let mut n = a.norm() as u64;
        loop {
            out.push((x, n));
            if odd_only || 2 * n > bound {
                break;
            }
            x = x * t;
            n *= 2;
        }
    }
    out.sort_by_key(|&(x, n)| (n, x.re, x.im));
    Ok(out)
}

/// `√N(q)/π`.
pub fn conductor_scale(ch: &QuadraticCharacter) -> f64 {
    (ch.conductor_norm() as f64).sqrt() / PI
}

/// The two AFE sums: `Λ(s) = A + W·B (+ polar part for ζ_K)`.
#[derive(Clone, Copy, Debug)]
pub struct AfeParts {
    pub a: Complex64,
    pub b: Complex64,
    pub polar: Complex64,
    pub truncation_norm: u64,
    /// Rounding plus a first-omitted-shell estimate (heuristic).
    pub est_error: f64,
}

fn afe_parts_with(
    chi: impl Fn(SmallGaussian) -> i8,
    q_scale: f64,
    trivial: bool,
    s: Complex64,
    opt: AfeOptions,
) -> Result<AfeParts> {
    if !(opt.lambda > 0.0) {
        return Err(Error::Domain("AFE split point must be positive".into()));
    }
    let lam = opt.lambda;
    let x_cut = opt.cutoff + 1.5 * s.norm();
    let bound1 = x_cut * q_scale / lam;
    let bound2 = x_cut * q_scale * lam;
    let bound = bound1.max(bound2).floor() as u64;
    let ideals = ideals_up_to(bound.max(1), false)?;
    let s1 = 1.0 - s;
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let ln_q = q_scale.ln();
    for &(x, n) in &ideals {
        let v = chi(x);
        if v == 0 {
            continue;
        }
        let nf = n as f64;
        let ln_ratio = ln_q - nf.ln();
        if nf <= bound1 {
            let t = (s * ln_ratio).exp() * gamma_upper(s, nf * lam / q_scale)?;
            a += t * v as f64;
            mag += t.norm();
        }
        if nf <= bound2 {
            let t = (s1 * ln_ratio).exp() * gamma_upper(s1, nf / (lam * q_scale))?;
            b += t * v as f64;
            mag += t.norm();
        }
    }
    let polar = if trivial {
        let c1 = (s - 1.0) * lam.ln();
        let c0 = s * lam.ln();
        if s == Complex64::new(1.0, 0.0) || s == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole(format!("completed zeta at {s}")));
        }
        (c1.exp() / (s - 1.0) - c0.exp() / s) * 0.25
    } else {
        Complex64::new(0.0, 0.0)
    };
    // First omitted shell: about (π/4)·bound ideals per unit of argument.
    let tail1 = {
        let x = x_cut;
        (PI / 4.0) * (q_scale / lam) * (s * (lam.ln() - x.ln())).exp().norm() * gamma_upper(s, x)?.norm()
    };
    let tail2 = {
        let x = x_cut;
        (PI / 4.0) * (q_scale * lam) * (s1 * (-(lam.ln()) - x.ln())).exp().norm() * gamma_upper(s1, x)?.norm()
    };
    Ok(AfeParts {
        a,
        b,
        polar,
        truncation_norm: bound,
        est_error: 1e-15 * (mag + polar.norm()) * (ideals.len() as f64).sqrt().max(1.0) + tail1 + tail2,
    })
}

/// AFE sums for a primitive character.
pub fn afe_parts(ch: &QuadraticCharacter, s: Complex64, opt: AfeOptions) -> Result<AfeParts> {
    if !ch.is_primitive {
        return Err(Error::Imprimitive);
    }
    afe_parts_with(|x| ch.eval(x), conductor_scale(ch), ch.is_trivial(), s, opt)
}

/// `W = (A₁ - A₂)/(B₂ - B₁)` from two split points, independent of the
/// closed-form root number.
pub fn root_number_from_afe(ch: &QuadraticCharacter, s: Complex64, lambda1: f64, lambda2: f64) -> Result<Complex64> {
    let p1 = afe_parts(ch, s, AfeOptions { lambda: lambda1, ..Default::default() })?;
    let p2 = afe_parts(ch, s, AfeOptions { lambda: lambda2, ..Default::default() })?;
    let den = p2.b - p1.b;
    if den.norm() < 1e-300 {
        return Err(Error::Numerical("degenerate split points".into()));
    }
    Ok((p1.a - p2.a + p1.polar - p2.polar) / den)
}

fn crt_lift(u: SmallGaussian, d: SmallGaussian, v: SmallGaussian, c: SmallGaussian) -> SmallGaussian {
    residues_small(d).into_iter().map(|t| v + c * t).find(|x| d.divides(*x - u)).expect("coprime moduli")
}

/// `W(χ) = g(1, χ)/√N(q)` via the CRT split `q = d·c` into its 2-part and odd
/// part: `g(1, χ) = χ_d(c) χ_c(d) g(1, χ_d) g(1, c)`.
pub fn root_number(ch: &QuadraticCharacter) -> Result<Complex64> {
    if !ch.is_primitive {
        return Err(Error::Imprimitive);
    }
    if ch.is_trivial() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let c = ch.kernel_small();
    let d = ch.two_part().to_small().expect("small");
    let (gc, _) = gauss_sum_fast_cases(SmallGaussian::ONE, c)?;
    let gc = gc.to_f64();
    let nq = ch.conductor_norm() as f64;
    if d.is_unit() {
        return Ok(Complex64::new(gc / nq.sqrt(), 0.0));
    }
    let one = SmallGaussian::ONE;
    let chi_d_at_c = ch.eval(crt_lift(c, d, one, c)) as f64;
    let chi_c_at_d = ch.eval(crt_lift(one, d, d, c)) as f64;
    let nd = d.norm() as f64;
    let dc = d.conj();
    let mut gd = Complex64::new(0.0, 0.0);
    for y in residues_small(d) {
        let v = ch.eval(crt_lift(y, d, one, c));
        if v != 0 {
            let w = y * dc;
            gd += e_tilde(Complex64::new(w.re as f64 / nd, w.im as f64 / nd)) * v as f64;
        }
    }
    Ok(gd * (chi_d_at_c * chi_c_at_d * gc / nq.sqrt()))
}

/// `L = Λ / (Q^s Γ(s))`.
fn l_from_parts(parts: &AfeParts, w: Complex64, q_scale: f64, s: Complex64) -> Complex64 {
    (parts.a + w * parts.b + parts.polar) * recip_gamma(s) * (-s * q_scale.ln()).exp()
}

/// `L(s, χ)` by the approximate functional equation, with options.
pub fn l_value_afe(ch: &QuadraticCharacter, s: Complex64, opt: AfeOptions) -> Result<LEvaluation> {
    if !ch.is_primitive {
        return Err(Error::Imprimitive);
    }
    if ch.is_trivial() {
        return zeta_k_eval(s, opt);
    }
    if nonpositive_integer(s).is_some() {
        // trivial zeros from the pole of Γ(s)
        return Ok(LEvaluation { s, value: Complex64::new(0.0, 0.0), method: Method::Afe, truncation_norm: 0, est_error: 0.0 });
    }
    let q = conductor_scale(ch);
    let w = root_number(ch)?;
    let parts = afe_parts(ch, s, opt)?;
    let scale = (recip_gamma(s) * (-s * q.ln()).exp()).norm();
    Ok(LEvaluation {
        s,
        value: l_from_parts(&parts, w, q, s),
        method: Method::Afe,
        truncation_norm: parts.truncation_norm,
        est_error: parts.est_error * scale,
    })
}

/// `L(s, χ)` for a primitive character.
pub fn l_value(ch: &QuadraticCharacter, s: Complex64) -> Result<LEvaluation> {
    l_value_afe(ch, s, AfeOptions::default())
}

/// Sharply truncated Dirichlet series for `Re(s) > 1`, with the tail bounded
/// through the Gauss circle estimate `#{Na ≤ x} ≤ π(√x + 1/√2)²/4`.
pub fn l_value_direct(ch: &QuadraticCharacter, s: Complex64, truncation_norm: u64) -> Result<LEvaluation> {
    let sigma = s.re;
    if sigma <= 1.0 {
        return Err(Error::Domain(format!("direct series needs Re(s) > 1, got {s}")));
    }
    let ideals = ideals_up_to(truncation_norm, false)?;
    let mut value = Complex64::new(0.0, 0.0);
    for &(x, n) in &ideals {
        let v = ch.eval(x);
        if v != 0 {
            value += (-s * (n as f64).ln()).exp() * v as f64;
        }
    }
    let t = truncation_norm as f64;
    let tail = PI / 4.0
        * (sigma * t.powf(1.0 - sigma) / (sigma - 1.0)
            + std::f64::consts::SQRT_2 * sigma * t.powf(0.5 - sigma) / (sigma - 0.5)
            + 0.5 * t.powf(-sigma));
    Ok(LEvaluation { s, value, method: Method::DirectSeries, truncation_norm, est_error: tail + 1e-16 * ideals.len() as f64 })
}

/// Above this real part `ζ_K` is a short Euler product.
const ZETA_EULER_FROM: f64 = 12.0;

/// `ζ_K(s)` as an [`LEvaluation`].
pub fn zeta_k_eval(s: Complex64, opt: AfeOptions) -> Result<LEvaluation> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("zeta_K has a simple pole at s = 1".into()));
    }
    let exact =
        |v: f64| LEvaluation { s, value: Complex64::new(v, 0.0), method: Method::Afe, truncation_norm: 0, est_error: 0.0 };
    match nonpositive_integer(s) {
        Some(0) => return Ok(exact(-0.25)),
        Some(_) => return Ok(exact(0.0)),
        None => {}
    }
    if s.re >= ZETA_EULER_FROM {
        // Σ_{N > 2000} 2 N^{-12} < 1e-35
        let value = crate::zi::enumerate::prime_ideal_norms(2000)
            .into_iter()
            .fold(Complex64::new(1.0, 0.0), |acc, n| acc / (1.0 - (-s * (n as f64).ln()).exp()));
        return Ok(LEvaluation {
            s,
            value,
            method: Method::DirectSeries,
            truncation_norm: 2000,
            est_error: 1e-16 * value.norm(),
        });
    }
    let q = 1.0 / PI;
    let parts = afe_parts_with(|_| 1, q, true, s, opt)?;
    let scale = (recip_gamma(s) * (-s * q.ln()).exp()).norm();
    Ok(LEvaluation {
        s,
        value: l_from_parts(&parts, Complex64::new(1.0, 0.0), q, s),
        method: Method::Afe,
        truncation_norm: parts.truncation_norm,
        est_error: parts.est_error * scale,
    })
}

/// Dedekind zeta function of Q(i).
#[allow(non_snake_case)]
pub fn zeta_K(s: Complex64) -> Result<Complex64> {
    Ok(zeta_k_eval(s, AfeOptions::default())?.value)
}

/// `ζ_K^{(2)}(s) = ζ_K(s)(1 - 2^{-s})`, the Euler factor at `1+i` removed.
#[allow(non_snake_case)]
pub fn zeta_K_2(s: Complex64) -> Result<Complex64> {
    Ok(zeta_K(s)? * (1.0 - (-s * 2f64.ln()).exp()))
}

/// `L(s, χ_m)` with `χ_m(a) = (m/a)` summed over primary `a`: the primitive
/// value times the Euler factors at primes dividing `2m` that the primitive
/// character does not already vanish on.
pub fn l_value_imprimitive(m: &GaussianInt, s: Complex64) -> Result<LEvaluation> {
    l_value_imprimitive_with(m, s, AfeOptions::default())
}

pub fn l_value_imprimitive_with(m: &GaussianInt, s: Complex64, opt: AfeOptions) -> Result<LEvaluation> {
    let ch = character_of_twist(m)?;
    let base = l_value_afe(&ch, s, opt)?;
    let factor = imprimitive_factor(&ch, m, s)?;
    Ok(LEvaluation {
        s,
        value: base.value * factor,
        method: Method::EulerRemoved,
        truncation_norm: base.truncation_norm,
        est_error: base.est_error * factor.norm(),
    })
}

/// `Π (1 - χ'(ϖ) N(ϖ)^{-s})` over `ϖ | 2m` with `χ'(ϖ) ≠ 0`.
pub fn imprimitive_factor(ch: &QuadraticCharacter, m: &GaussianInt, s: Complex64) -> Result<Complex64> {
    let ms = m.to_small().ok_or_else(|| Error::Domain("twist too large".into()))?;
    let (_, _, factors) = factor_small(ms)?;
    let mut primes: Vec<SmallGaussian> = factors.into_iter().map(|(p, _)| p).collect();
    primes.push(SmallGaussian::ONE_PLUS_I);
    let mut f = Complex64::new(1.0, 0.0);
    for p in primes {
        let v = ch.eval(p);
        if v != 0 {
            f *= 1.0 - (-s * (p.norm() as f64).ln()).exp() * v as f64;
        }
    }
    Ok(f)
}

/// `Λ(s) = (4N(q))^{s/2} (2π)^{-s} Γ(s) L(s, χ)`.
pub fn completed_l(ch: &QuadraticCharacter, s: Complex64) -> Result<CompletedL> {
    completed_l_with(ch, s, AfeOptions::default())
}

pub fn completed_l_with(ch: &QuadraticCharacter, s: Complex64, opt: AfeOptions) -> Result<CompletedL> {
    if !ch.is_primitive {
        return Err(Error::Imprimitive);
    }
    let parts = afe_parts(ch, s, opt)?;
    let w = root_number(ch)?;
    Ok(CompletedL { character: ch.clone(), s, lambda_value: parts.a + w * parts.b + parts.polar })
}

/// `Λ(s)` from an already computed `L(s)`.
pub fn completion_factor(ch: &QuadraticCharacter, s: Complex64) -> Result<Complex64> {
    Ok((s * conductor_scale(ch).ln()).exp() * complex_gamma(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{primitive_inducing, Psi};
    use crate::gauss_sums::character_sum_direct;
    use crate::zi::is_squarefree;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

    /// Cohen–Rodriguez Villegas–Zagier acceleration of `Σ (-1)^k a_k`.
    fn alternating(a: impl Fn(f64) -> Complex64) -> Complex64 {
        let n = 40;
        let mut d = (3.0 + 8f64.sqrt()).powi(n);
        d = (d + 1.0 / d) / 2.0;
        let mut b = -1.0;
        let mut cc = -d;
        let mut s = c(0.0, 0.0);
        for k in 0..n {
            cc = b - cc;
            s += a(k as f64) * cc;
            let (kf, nf) = (k as f64, n as f64);
            b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
        }
        s / d
    }

    /// `ζ(s) β(s)` through the alternating series for `η` and `β`.
    fn zeta_beta(s: Complex64) -> Complex64 {
        let eta = alternating(|k| (-s * (k + 1.0).ln()).exp());
        let zeta = eta / (1.0 - (s * -(2f64.ln())).exp() * 2.0);
        let beta = alternating(|k| (-s * (2.0 * k + 1.0).ln()).exp());
        zeta * beta
    }

    /// `Σ_{a≥1, b≥0} (a²+b²)^{-2}`, one generator per ideal.
    fn lattice_zeta_k_2() -> f64 {
        let big_a = 4000i64;
        let big_b = 400i64;
        let mut total = 0.0;
        for b in 0..=big_b {
            let bf = b as f64;
            let mut row = 0.0;
            for a in (1..=big_a).rev() {
                let q = (a * a + b * b) as f64;
                row += 1.0 / (q * q);
            }
            // tail Σ_{a > A} by the midpoint integral
            let u = big_a as f64 + 0.5;
            row += if b == 0 {
                1.0 / (3.0 * u * u * u)
            } else {
                (std::f64::consts::FRAC_PI_2 - (u / bf).atan()) / (2.0 * bf.powi(3)) - u / (2.0 * bf * bf * (u * u + bf * bf))
            };
            total += row;
        }
        // rows b > B: π/(4b³) - 1/(2b⁴) up to e^{-2πb}; Euler–Maclaurin for the b-sums
        let tail = |k: i32| {
            let bb = big_b as f64;
            bb.powi(1 - k) / (k as f64 - 1.0) - bb.powi(-k) / 2.0 + k as f64 * bb.powi(-k - 1) / 12.0
        };
        total + PI / 4.0 * tail(3) - 0.5 * tail(4)
    }

    #[test]
    fn zeta_k_at_two() {
        let v = zeta_K(c(2.0, 0.0)).unwrap();
        let exact = PI * PI / 6.0 * CATALAN;
        assert!((v.re - exact).abs() < 1e-12, "{v} {exact}");
        assert!(v.im.abs() < 1e-15);
        assert!((lattice_zeta_k_2() - exact).abs() < 1e-10);
        assert!((v.re - lattice_zeta_k_2()).abs() < 1e-9);
    }

    #[test]
    fn zeta_k_matches_product_oracle() {
        for s in [c(1.5, 0.0), c(3.0, 0.0), c(0.3, 2.0), c(0.7, 0.0), c(0.5, 6.0), c(2.5, -1.0), c(-0.5, 0.0)] {
            let a = zeta_K(s).unwrap();
            let b = if s.re > 0.0 {
                zeta_beta(s)
            } else {
                // reflection through the completed function
                let t = 1.0 - s;
                zeta_beta(t) * (((2.0 * s - 1.0) * PI.ln()).exp() * complex_gamma(t).unwrap() / complex_gamma(s).unwrap())
            };
            assert!((a - b).norm() < 1e-11 * b.norm().max(1.0), "{s}: {a} {b}");
        }
    }

    #[test]
    fn zeta_k_special_points() {
        assert!(zeta_K(c(1.0, 0.0)).is_err());
        assert_eq!(zeta_K(c(0.0, 0.0)).unwrap(), c(-0.25, 0.0));
        assert_eq!(zeta_K(c(-2.0, 0.0)).unwrap(), c(0.0, 0.0));
        let near = zeta_K(c(1e-6, 0.0)).unwrap();
        assert!((near.re + 0.25).abs() < 1e-5);
        // residue π/4 by Richardson on h and 2h
        let h = 1e-4;
        let f = |h: f64| (zeta_K(c(1.0 + h, 0.0)).unwrap() * h).re;
        let extrapolated = 2.0 * f(h) - f(2.0 * h);
        assert!((extrapolated - PI / 4.0).abs() < 1e-6, "{extrapolated}");
        let z2 = zeta_K_2(c(2.0, 0.0)).unwrap();
        assert!((z2 - zeta_K(c(2.0, 0.0)).unwrap() * 0.75).norm() < 1e-15);
    }

    #[test]
    fn zeta_k_reflection_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let alpha = rng.gen_range(0.05..0.45);
            let lhs = zeta_K(c(2.0 * alpha, 0.0)).unwrap();
            let rhs = ((4.0 * alpha - 1.0) * PI.ln()).exp() * complex_gamma(c(1.0 - 2.0 * alpha, 0.0)).unwrap()
                / complex_gamma(c(2.0 * alpha, 0.0)).unwrap()
                * zeta_K(c(1.0 - 2.0 * alpha, 0.0)).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * lhs.norm(), "{alpha}");
        }
    }

    fn squarefree_primaries(max: u64) -> Vec<GaussianInt> {
        primary_up_to(max).into_iter().map(GaussianInt::from).filter(|n| is_squarefree(n).unwrap()).collect()
    }

    #[test]
    fn root_number_matches_direct_gauss_sum() {
        for n in squarefree_primaries(200) {
            for j in Psi::ALL {
                let ch = primitive_inducing(&n, j).unwrap();
                let q = ch.modulus.to_small().unwrap();
                let direct = character_sum_direct(SmallGaussian::ONE, q, |x| ch.eval(x)) / (q.norm() as f64).sqrt();
                let w = root_number(&ch).unwrap();
                assert!((w - direct).norm() < 1e-10, "{n} {j}: {w} vs {direct}");
                assert!((w.norm() - 1.0).abs() < 1e-12);
                assert!(w.im.abs() < 1e-12);
            }
        }
        let triv = primitive_inducing(&GaussianInt::one(), Psi::One).unwrap();
        assert_eq!(root_number(&triv).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn root_number_matches_split_point_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pool = squarefree_primaries(400);
        for _ in 0..12 {
            let n = &pool[rng.gen_range(1..pool.len())];
            let j = Psi::ALL[rng.gen_range(0..4)];
            let ch = primitive_inducing(n, j).unwrap();
            let w = root_number(&ch).unwrap();
            let w2 = root_number_from_afe(&ch, c(0.3, 0.0), 1.0, 1.4).unwrap();
            assert!((w - w2).norm() < 1e-8, "{n} {j}: {w} {w2}");
        }
    }

    #[test]
    fn functional_equation_independent_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let pool = squarefree_primaries(150);
        for _ in 0..20 {
            let n = &pool[rng.gen_range(0..pool.len())];
            let j = Psi::ALL[rng.gen_range(0..4)];
            let ch = primitive_inducing(n, j).unwrap();
            let s = c(rng.gen_range(0.2..0.8), rng.gen_range(-5.0..5.0));
            let l1 = completed_l_with(&ch, s, AfeOptions { lambda: 1.0, ..Default::default() }).unwrap().lambda_value;
            let l2 = completed_l_with(&ch, 1.0 - s, AfeOptions { lambda: 1.25, ..Default::default() }).unwrap().lambda_value;
            let w = root_number(&ch).unwrap();
            assert!((l1 - w * l2).norm() < 1e-9 * l1.norm(), "{n} {j} {s}: {l1} {l2}");
        }
    }

    #[test]
    fn afe_agrees_with_direct_series_at_two() {
        for n in squarefree_primaries(60).into_iter().step_by(2) {
            for j in [Psi::One, Psi::OnePlusI] {
                let ch = primitive_inducing(&n, j).unwrap();
                let a = l_value(&ch, c(2.0, 0.0)).unwrap();
                let d = l_value_direct(&ch, c(2.0, 0.0), 200_000).unwrap();
                assert_eq!(d.method, Method::DirectSeries);
                assert!((a.value - d.value).norm() <= a.est_error + d.est_error, "{n} {j}");
                assert!(a.est_error < 1e-10);
            }
        }
    }

    /// `Σ_{a primary, N(a) ≤ T} (m/a) N(a)^{-s}` with the symbol computed directly.
    fn imprimitive_direct(m: &GaussianInt, s: f64, t: u64) -> f64 {
        let ms = m.to_small().unwrap();
        primary_up_to(t)
            .into_iter()
            .map(|a| crate::characters::symbol_small(ms, a).unwrap() as f64 * (a.norm() as f64).powf(-s))
            .sum()
    }

    #[test]
    fn imprimitive_values() {
        let cases = [
            GaussianInt::new(-1, 2),
            &GaussianInt::new(-1, 2) * &GaussianInt::new(3, 2).pow(2),
            &GaussianInt::new(0, 2) * &GaussianInt::new(-3, 0),
            &GaussianInt::new(0, 2) * &GaussianInt::new(-1, 2).pow(2),
            GaussianInt::new(5, 4) * GaussianInt::new(0, 1),
            GaussianInt::new(1, 1) * GaussianInt::new(-3, 2),
        ];
        for m in &cases {
            let v = l_value_imprimitive(m, c(2.0, 0.0)).unwrap();
            assert_eq!(v.method, Method::EulerRemoved);
            let d = imprimitive_direct(m, 2.0, 400_000);
            assert!((v.value.re - d).abs() < 2e-5, "{m}: {} {d}", v.value);
        }
        // central values of χ_{(1+i)²n} are real
        for n in primary_up_to(300).into_iter().skip(1).step_by(7) {
            let m = &GaussianInt::new(0, 2) * &GaussianInt::from(n);
            let v = l_value_imprimitive(&m, c(0.5, 0.0)).unwrap();
            assert!(v.value.im.abs() < 1e-12, "{n}");
        }
    }

    #[test]
    fn imprimitive_rejected_by_primitive_entry() {
        let mut ch = primitive_inducing(&GaussianInt::new(-1, 2), Psi::One).unwrap();
        ch.is_primitive = false;
        assert_eq!(l_value(&ch, c(0.5, 0.0)).unwrap_err(), Error::Imprimitive);
        assert_eq!(root_number(&ch).unwrap_err(), Error::Imprimitive);
    }

    #[test]
    fn trivial_character_delegates_to_zeta() {
        let ch = primitive_inducing(&GaussianInt::one(), Psi::One).unwrap();
        let a = l_value(&ch, c(0.6, 1.0)).unwrap().value;
        let b = zeta_K(c(0.6, 1.0)).unwrap();
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn stirling_envelope() {
        // |Γ(1-s)/Γ(s)| (1+|s|)^{2σ-1} stays within fixed bounds
        let (mut lo, mut hi) = (f64::MAX, 0.0f64);
        for i in 0..=8 {
            let sigma = 0.1 + 0.1 * i as f64;
            for t in -30..=30 {
                let s = c(sigma, t as f64);
                let r = (complex_gamma(1.0 - s).unwrap() / complex_gamma(s).unwrap()).norm();
                let v = r * (1.0 + s.norm()).powf(2.0 * sigma - 1.0);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        assert!(lo > 0.05 && hi < 20.0, "{lo} {hi}");
    }
}
