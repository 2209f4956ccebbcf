//! Brute-force left-hand sides of the moment and ratios asymptotics, the
//! second moment over squarefree twists and the two expansions of the double
//! Dirichlet series, with residuals against the predicted main terms.
//!
//! Every sum runs over an explicit, ordered list of twists; the per-twist
//! L-values are computed by an ordered parallel map and then added up
//! sequentially with compensation, so results do not depend on the number of
//! worker threads.

pub mod engine;
pub mod exec;

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::asymptotics::{main_term_first_moment, main_term_ratios, MainTermBreakdown, WeightFunction};
use crate::error::{Error, Result};
use crate::gauss_sums::CompensatedSum;
use crate::lfunctions::{zeta_K, AfeOptions};
use crate::zi::factor::factor_small;
use crate::zi::{primary_up_to, SmallGaussian};
pub use engine::{Scratch, TwistEngine};
pub use exec::{ordered_map, with_threads, PARALLEL};

/// Largest `X` accepted without `force`.
pub const DEFAULT_MAX_X: f64 = 1e4;
/// Twists whose weight is below this fraction of the maximum are dropped.
pub const WEIGHT_FLOOR: f64 = 1e-12;
/// Denominators `|L(1/2+β)|` below this are flagged and left out.
pub const NEAR_ZERO: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct MomentOptions {
    pub floor: f64,
    pub max_x: f64,
    pub force: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub afe: AfeOptions,
}

impl Default for MomentOptions {
    fn default() -> Self {
        MomentOptions { floor: WEIGHT_FLOOR, max_x: DEFAULT_MAX_X, force: false, threads: None, afe: AfeOptions::default() }
    }
}

/// A ratios summand whose denominator is too close to zero to be trusted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlaggedTerm {
    pub n: SmallGaussian,
    pub numerator: Complex64,
    pub denominator: Complex64,
}

/// A weighted sum over the family `χ_{(1+i)²n}`, `n` primary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySum {
    pub value: Complex64,
    pub n_count: usize,
    /// Norm range `[lo, hi]` of the twists included.
    pub support: (f64, f64),
    pub flagged: Vec<FlaggedTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    #[serde(rename = "X")]
    pub x: f64,
    pub alpha: Complex64,
    pub beta: Option<Complex64>,
    pub weight: WeightFunction,
    pub lhs: Complex64,
    pub term1: Complex64,
    pub term2: Complex64,
    /// `lhs - term1 - term2`.
    pub residual: Complex64,
    /// Wall-clock time; kept out of serialized rows so reports are reproducible.
    #[serde(skip)]
    pub runtime_s: f64,
    pub n_count: usize,
    pub support: (f64, f64),
    pub flagged: usize,
}

impl MomentReport {
    fn new(sum: FamilySum, main: &MainTermBreakdown, runtime_s: f64) -> Self {
        MomentReport {
            x: main.x,
            alpha: main.alpha,
            beta: main.beta,
            weight: main.weight,
            lhs: sum.value,
            term1: main.term1,
            term2: main.term2,
            residual: sum.value - main.term1 - main.term2,
            runtime_s,
            n_count: sum.n_count,
            support: sum.support,
            flagged: sum.flagged.len(),
        }
    }

    /// `|residual| / |term1|`.
    pub fn relative_residual(&self) -> f64 {
        self.residual.norm() / self.term1.norm()
    }
}

fn check_x(x: f64, opts: &MomentOptions) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("X must be positive, got {x}")));
    }
    if x > opts.max_x && !opts.force {
        return Err(Error::CapExceeded { what: "X", value: x.to_string(), cap: format!("{} (use force)", opts.max_x) });
    }
    Ok(())
}

/// The primary `n` inside the weight's support, with their weights `w(N(n)/X)`.
fn family(x: f64, w: &WeightFunction, opts: &MomentOptions) -> (Vec<SmallGaussian>, Vec<f64>, (f64, f64)) {
    let (t_lo, t_hi) = w.support(opts.floor);
    let (lo, hi) = (t_lo * x, t_hi * x);
    let mut ns = Vec::new();
    let mut ws = Vec::new();
    for n in primary_up_to(hi.floor().max(0.0) as u64) {
        let nn = n.norm() as f64;
        if nn < lo {
            continue;
        }
        let wt = w.eval(nn / x);
        if wt > 0.0 {
            ns.push(n);
            ws.push(wt);
        }
    }
    (ns, ws, (lo, hi))
}

/// `(1+i)² n = 2i n`.
fn family_twist(n: SmallGaussian) -> SmallGaussian {
    SmallGaussian::new(0, 2) * n
}

/// L-values of the family at the given points, in the order of `ns`.
fn family_values(ns: &[SmallGaussian], hi: f64, points: &[Complex64], opts: &MomentOptions) -> Result<Vec<Vec<Complex64>>> {
    // conductor of χ_{(1+i)²n} is c₁ or 2c₁
    let max_cond = (4.0 * hi).ceil().max(4.0) as u64;
    let engine = TwistEngine::new(max_cond, points, opts.afe)?;
    let values =
        with_threads(opts.threads, || ordered_map(ns, Scratch::new, |scratch, &n| engine.eval(family_twist(n), scratch)))?;
    values.into_iter().collect()
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if !(alpha.re >= 0.0 && alpha.re < 0.5) {
        return Err(Error::Domain(format!("need 0 ≤ Re α < 1/2, got α = {alpha}")));
    }
    Ok(())
}

/// `Σ_n L(1/2+α, χ_{(1+i)²n}) w(N(n)/X)` with details.
pub fn first_moment_sum(x: f64, alpha: Complex64, w: &WeightFunction, opts: &MomentOptions) -> Result<FamilySum> {
    check_x(x, opts)?;
    check_alpha(alpha)?;
    let (ns, ws, support) = family(x, w, opts);
    let values = family_values(&ns, support.1, &[0.5 + alpha], opts)?;
    let mut acc = CompensatedSum::new();
    for (v, &wt) in values.iter().zip(&ws) {
        acc.add(v[0] * wt);
    }
    Ok(FamilySum { value: acc.value(), n_count: ns.len(), support, flagged: Vec::new() })
}

/// `Σ_n L(1/2+α, χ_{(1+i)²n}) w(N(n)/X)` over primary `n`.
pub fn first_moment_lhs(x: f64, alpha: Complex64, w: &WeightFunction) -> Result<Complex64> {
    Ok(first_moment_sum(x, alpha, w, &MomentOptions::default())?.value)
}

/// The first moment against its predicted main terms.
pub fn first_moment(x: f64, alpha: Complex64, w: &WeightFunction, opts: &MomentOptions) -> Result<MomentReport> {
    let start = Instant::now();
    let main = main_term_first_moment(x, alpha, w)?;
    let sum = first_moment_sum(x, alpha, w, opts)?;
    Ok(MomentReport::new(sum, &main, start.elapsed().as_secs_f64()))
}

/// `Σ_n L(1/2+α, χ)/L(1/2+β, χ) w(N(n)/X)`, `χ = χ_{(1+i)²n}`, leaving out and
/// listing the terms with `|L(1/2+β, χ)| < 10⁻⁶`.
pub fn ratios_sum(x: f64, alpha: Complex64, beta: Complex64, w: &WeightFunction, opts: &MomentOptions) -> Result<FamilySum> {
    check_x(x, opts)?;
    check_alpha(alpha)?;
    if !(beta.re > 0.0) {
        return Err(Error::Domain(format!("need Re β > 0, got β = {beta}")));
    }
    let (ns, ws, support) = family(x, w, opts);
    let same = alpha == beta;
    let points: Vec<Complex64> = if same { vec![0.5 + alpha] } else { vec![0.5 + alpha, 0.5 + beta] };
    let values = family_values(&ns, support.1, &points, opts)?;
    let mut acc = CompensatedSum::new();
    let mut flagged = Vec::new();
    for ((v, &wt), &n) in values.iter().zip(&ws).zip(&ns) {
        let (num, den) = if same { (v[0], v[0]) } else { (v[0], v[1]) };
        if den.norm() < NEAR_ZERO {
            flagged.push(FlaggedTerm { n, numerator: num, denominator: den });
            continue;
        }
        let ratio = if same { Complex64::new(1.0, 0.0) } else { num / den };
        acc.add(ratio * wt);
    }
    Ok(FamilySum { value: acc.value(), n_count: ns.len(), support, flagged })
}

pub fn ratios_lhs(x: f64, alpha: Complex64, beta: Complex64, w: &WeightFunction) -> Result<Complex64> {
    Ok(ratios_sum(x, alpha, beta, w, &MomentOptions::default())?.value)
}

/// The ratios average against its predicted main terms.
pub fn ratios_moment(
    x: f64,
    alpha: Complex64,
    beta: Complex64,
    w: &WeightFunction,
    opts: &MomentOptions,
) -> Result<MomentReport> {
    let start = Instant::now();
    let main = main_term_ratios(x, alpha, beta, w)?;
    let sum = ratios_sum(x, alpha, beta, w, opts)?;
    Ok(MomentReport::new(sum, &main, start.elapsed().as_secs_f64()))
}

/// `Σ w(N(n)/X)` over the same twists, the value of the ratios sum at `α = β`.
pub fn weight_total(x: f64, w: &WeightFunction, opts: &MomentOptions) -> Result<f64> {
    check_x(x, opts)?;
    let (_, ws, _) = family(x, w, opts);
    let mut acc = CompensatedSum::new();
    for wt in ws {
        acc.add(Complex64::new(wt, 0.0));
    }
    Ok(acc.value().re)
}

/// `Σ |L(s, χ_m)|²` over odd squarefree elements `m` (all four associates of
/// each squarefree odd ideal) with `N(m) ≤ X`.
pub fn second_moment_lhs(x: f64, s: Complex64) -> Result<f64> {
    second_moment_with(x, s, &MomentOptions::default())
}

pub fn second_moment_with(x: f64, s: Complex64, opts: &MomentOptions) -> Result<f64> {
    check_x(x, opts)?;
    if s.re < 0.5 || (s - 1.0).norm() < 1e-6 {
        return Err(Error::Domain(format!("need Re s ≥ 1/2 away from s = 1, got s = {s}")));
    }
    let mut twists = Vec::new();
    for m in primary_up_to(x.floor() as u64) {
        let squarefree = m.is_unit() || factor_small(m)?.2.iter().all(|&(_, e)| e == 1);
        if squarefree {
            twists.extend((0..4).map(|k| SmallGaussian::unit(k) * m));
        }
    }
    // odd twists have conductor dividing (1+i)^5 c₁
    let max_cond = (32.0 * x).ceil() as u64;
    let engine = TwistEngine::new(max_cond, &[s], opts.afe)?;
    let values = with_threads(opts.threads, || ordered_map(&twists, Scratch::new, |scratch, &m| engine.eval(m, scratch)))?;
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(Complex64::new(v?[0].norm_sqr(), 0.0));
    }
    Ok(acc.value().re)
}

/// The two truncated expansions of
/// `A(s, w) = Σ_n L(w, χ_{(1+i)²n}) N(n)^{-s} = Σ_m L(s, χ̃_m) N(m)^{-w}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DoubleDirichlet {
    pub s: Complex64,
    pub w: Complex64,
    pub cutoff: u64,
    pub val_a: Complex64,
    pub val_b: Complex64,
    /// Tail estimates `ζ_K(Re w) (π/8) C^{1-Re s}/(Re s - 1)` and the mirror image.
    pub trunc_a: f64,
    pub trunc_b: f64,
}

impl DoubleDirichlet {
    pub fn difference(&self) -> f64 {
        (self.val_a - self.val_b).norm()
    }

    pub fn truncation_estimate(&self) -> f64 {
        self.trunc_a + self.trunc_b
    }
}

pub fn double_dirichlet(s: Complex64, w: Complex64, cutoff: u64, opts: &MomentOptions) -> Result<DoubleDirichlet> {
    if !(s.re > 1.5 && w.re > 1.5) {
        return Err(Error::Domain(format!("need Re s, Re w > 3/2, got s = {s}, w = {w}")));
    }
    if cutoff < 1 {
        return Err(Error::Domain("cutoff must be positive".into()));
    }
    let ns = primary_up_to(cutoff);
    let points: Vec<Complex64> = if s == w { vec![w] } else { vec![w, s] };
    let values = family_values(&ns, cutoff as f64, &points, opts)?;
    let ib = if s == w { 0 } else { 1 };
    let mut a = CompensatedSum::new();
    let mut b = CompensatedSum::new();
    for (v, n) in values.iter().zip(&ns) {
        let ln = (n.norm() as f64).ln();
        a.add(v[0] * (-s * ln).exp());
        b.add(v[ib] * (-w * ln).exp());
    }
    let tail = |inner: f64, outer: f64| -> Result<f64> {
        Ok(zeta_K(Complex64::new(inner, 0.0))?.re * (PI / 8.0) * (cutoff as f64).powf(1.0 - outer) / (outer - 1.0))
    };
    Ok(DoubleDirichlet {
        s,
        w,
        cutoff,
        val_a: a.value(),
        val_b: b.value(),
        trunc_a: tail(w.re, s.re)?,
        trunc_b: tail(s.re, w.re)?,
    })
}

/// `(valA, valB)` for the two expansions of `A(s, w)` cut at norm `cutoff`.
#[allow(non_snake_case)]
pub fn double_dirichlet_A(s: Complex64, w_param: Complex64, cutoff: u64) -> Result<(Complex64, Complex64)> {
    let d = double_dirichlet(s, w_param, cutoff, &MomentOptions::default())?;
    Ok((d.val_a, d.val_b))
}

/// Least-squares slope of `log |residual|` against `log X`, and its `r²`.
pub fn exponent_fit(reports: &[MomentReport]) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = reports.iter().map(|r| (r.x, r.residual.norm())).collect();
    fit_log_log(&pts)
}

/// The same fit on raw `(X, |residual|)` pairs.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 4 {
        return Err(Error::Domain(format!("need at least 4 points for a fit, got {}", points.len())));
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs[0] <= 0.0 {
        return Err(Error::Domain("X values must be positive".into()));
    }
    let ratio = xs[1] / xs[0];
    if !(ratio > 1.0) || xs.windows(2).any(|p| ((p[1] / p[0]) / ratio - 1.0).abs() > 0.01) {
        return Err(Error::Domain("X values must be geometrically spaced".into()));
    }
    if points.iter().any(|p| !(p.1 > 0.0)) {
        return Err(Error::Domain("residuals must be nonzero".into()));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let ss_res: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    let r2 = if syy <= 1e-300 { 1.0 } else { 1.0 - ss_res / syy };
    Ok((slope, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::l_value_imprimitive_with;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // independent mpmath/scipy evaluation: Euler-criterion symbols, brute-force
    // conductors, root numbers solved from two splits of the functional equation
    const FIRST_X50: f64 = 13.077877616488878;
    const RATIOS_X50: f64 = 18.548315650390035;
    const WEIGHT_TOTAL_X50: f64 = 19.63495408491708;

    #[test]
    fn frozen_family_sums() {
        let w = WeightFunction::exp_decay();
        let f = first_moment_lhs(50.0, c(0.1, 0.0), &w).unwrap();
        assert!((f.re - FIRST_X50).abs() < 1e-10 * FIRST_X50 && f.im.abs() < 1e-12, "{f}");
        let r = ratios_lhs(50.0, c(0.25, 0.0), c(0.3, 0.0), &w).unwrap();
        assert!((r.re - RATIOS_X50).abs() < 1e-10 * RATIOS_X50, "{r}");
        let t = weight_total(50.0, &w, &MomentOptions::default()).unwrap();
        assert!((t - WEIGHT_TOTAL_X50).abs() < 1e-12 * t);
    }

    #[test]
    fn agrees_with_slow_path() {
        let w = WeightFunction::exp_decay();
        let opts = MomentOptions::default();
        let (ns, ws, _) = family(50.0, &w, &opts);
        let slow_opt = AfeOptions { lambda: 1.3, ..Default::default() };
        let mut first = CompensatedSum::new();
        let mut ratios = CompensatedSum::new();
        for (&n, &wt) in ns.iter().zip(&ws) {
            let m = family_twist(n).into();
            let a = l_value_imprimitive_with(&m, c(0.6, 0.0), slow_opt).unwrap().value;
            let num = l_value_imprimitive_with(&m, c(0.75, 0.0), slow_opt).unwrap().value;
            let den = l_value_imprimitive_with(&m, c(0.8, 0.0), slow_opt).unwrap().value;
            first.add(a * wt);
            ratios.add(num / den * wt);
        }
        let fast = first_moment_sum(50.0, c(0.1, 0.0), &w, &opts).unwrap();
        assert!((fast.value - first.value()).norm() < 1e-8 * fast.value.norm());
        let fast = ratios_sum(50.0, c(0.25, 0.0), c(0.3, 0.0), &w, &opts).unwrap();
        assert!((fast.value - ratios.value()).norm() < 1e-8 * fast.value.norm());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn thread_count_does_not_change_bits() {
        let w = WeightFunction::exp_both();
        let run = |threads| {
            let opts = MomentOptions { threads: Some(threads), ..Default::default() };
            first_moment_sum(300.0, c(0.1, 0.05), &w, &opts).unwrap().value
        };
        let one = run(1);
        for k in [2, 3, 8] {
            let v = run(k);
            assert_eq!(one.re.to_bits(), v.re.to_bits());
            assert_eq!(one.im.to_bits(), v.im.to_bits());
        }
        assert!(with_threads(Some(0), || ()).is_err());
    }

    #[test]
    fn ratio_identity_and_large_beta() {
        let opts = MomentOptions::default();
        for w in [WeightFunction::exp_decay(), WeightFunction::exp_both(), WeightFunction::bump()] {
            let total = weight_total(80.0, &w, &opts).unwrap();
            let r = ratios_sum(80.0, c(0.2, 0.0), c(0.2, 0.0), &w, &opts).unwrap();
            assert!((r.value.re - total).abs() < 1e-12 * total && r.value.im == 0.0);
            assert!(r.flagged.is_empty());
        }
        let w = WeightFunction::exp_decay();
        let f = first_moment_lhs(60.0, c(0.1, 0.0), &w).unwrap();
        let r = ratios_lhs(60.0, c(0.1, 0.0), c(20.0, 0.0), &w).unwrap();
        assert!((f - r).norm() < 1e-9 * f.norm(), "{f} {r}");
    }

    #[test]
    fn coverage_and_small_x() {
        let w = WeightFunction::exp_decay();
        let base = first_moment_sum(40.0, c(0.1, 0.0), &w, &MomentOptions::default()).unwrap();
        let wide = first_moment_sum(40.0, c(0.1, 0.0), &w, &MomentOptions { floor: 1e-15, ..Default::default() }).unwrap();
        assert!(wide.n_count > base.n_count);
        assert!((wide.value - base.value).norm() < 1e-12 * wide.n_count as f64);
        // the weight decays before the first norm is reached
        assert_eq!(first_moment_lhs(0.01, c(0.1, 0.0), &w).unwrap(), Complex64::new(0.0, 0.0));
        let tiny = first_moment_lhs(0.05, c(0.1, 0.0), &w).unwrap();
        assert!(tiny.norm() < 1e-8 && tiny.norm() > 0.0);
    }

    #[test]
    fn caps_and_domains() {
        let w = WeightFunction::exp_decay();
        assert!(matches!(first_moment_lhs(2e4, c(0.1, 0.0), &w), Err(Error::CapExceeded { .. })));
        let forced = MomentOptions { force: true, max_x: 10.0, ..Default::default() };
        assert!(first_moment_sum(20.0, c(0.1, 0.0), &w, &forced).is_ok());
        assert!(first_moment_lhs(10.0, c(0.5, 0.0), &w).is_err());
        assert!(ratios_lhs(10.0, c(0.1, 0.0), c(0.0, 1.0), &w).is_err());
        assert!(second_moment_lhs(10.0, c(0.4, 0.0)).is_err());
        assert!(double_dirichlet_A(c(1.5, 0.0), c(2.0, 0.0), 10).is_err());
    }

    #[test]
    fn reports_are_consistent() {
        let w = WeightFunction::exp_both();
        let r = first_moment(200.0, c(0.1, 0.0), &w, &MomentOptions::default()).unwrap();
        assert_eq!(r.residual, r.lhs - r.term1 - r.term2);
        let (lo, hi) = w.support(WEIGHT_FLOOR);
        let count = primary_up_to((hi * 200.0) as u64).iter().filter(|n| n.norm() as f64 >= lo * 200.0).count();
        assert_eq!(r.n_count, count);
        assert!(r.relative_residual() < 1e-2);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("runtime"));
        let q = ratios_moment(200.0, c(0.25, 0.0), c(0.3, 0.0), &w, &MomentOptions::default()).unwrap();
        assert_eq!(q.flagged, 0);
        assert!(q.relative_residual() < 1e-2);
    }

    #[test]
    fn second_moment_grows() {
        let s = c(0.5, 0.0);
        let a = second_moment_lhs(100.0, s).unwrap();
        let b = second_moment_lhs(200.0, s).unwrap();
        assert!(a > 0.0 && b > a);
        let pts: Vec<(f64, f64)> =
            [500.0, 1000.0, 2000.0, 4000.0].iter().map(|&x| (x, second_moment_lhs(x, s).unwrap())).collect();
        let (slope, r2) = fit_log_log(&pts).unwrap();
        // desk-scale growth is X times a power of log X
        assert!((slope - 1.2632526557322157).abs() < 1e-9, "{slope}");
        assert!(r2 > 0.9999);
    }

    #[test]
    fn double_series_expansions() {
        let opts = MomentOptions::default();
        // n = 1: the unit twist, ζ_K with the even factor removed
        let (a, _) = double_dirichlet_A(c(2.0, 0.0), c(2.5, 0.0), 1).unwrap();
        let zk = zeta_K(c(2.5, 0.0)).unwrap() * (1.0 - 2f64.powf(-2.5));
        assert!((a - zk).norm() < 1e-13);
        let sym = double_dirichlet(c(2.0, 0.0), c(2.0, 0.0), 500, &opts).unwrap();
        assert!(sym.difference() < 1e-14);
        let d1 = double_dirichlet(c(2.0, 0.0), c(2.5, 0.0), 1000, &opts).unwrap();
        let d2 = double_dirichlet(c(2.0, 0.0), c(2.5, 0.0), 2000, &opts).unwrap();
        assert!(d1.difference() < d1.truncation_estimate());
        assert!(d2.difference() < d2.truncation_estimate());
        assert!(d2.difference() < 0.6 * d1.difference());
    }

    #[test]
    fn exponent_fits() {
        let xs: [f64; 4] = [1000.0, 2000.0, 4000.0, 8000.0];
        let (slope, r2) = fit_log_log(&xs.map(|x| (x, 0.3 * x.sqrt()))).unwrap();
        assert!((slope - 0.5).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
        let (slope, _) = fit_log_log(&xs.map(|x| (x, 2.0))).unwrap();
        assert!(slope.abs() < 1e-12);
        assert!(fit_log_log(&xs[..3].iter().map(|&x| (x, 1.0)).collect::<Vec<_>>()).is_err());
        assert!(fit_log_log(&[(1.0, 1.0), (2.0, 1.0), (3.0, 1.0), (4.0, 1.0)]).is_err());
        assert!(fit_log_log(&xs.map(|x| (x, 0.0))).is_err());
    }
}
