//! Numerical checks of the Poisson summation identity for `χ̃_n = ψ_j·(·/n)`
//! (`j` the type of `n`) and of the Gauss-sum expansion of `L(s, χ̃_n)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::complex_gamma;
use super::lvalue::l_value_imprimitive;
use crate::characters::symbol_small;
use crate::error::{Error, Result};
use crate::gauss_sums::{gauss_sum_twisted_exact, psi_mod2, CompensatedSum, ResidueIndexer};
use crate::zi::small::SmallGaussian;
use crate::zi::{squarefree_decompose, GaussianInt};

/// Norm cap for the twist in the identity checks.
pub const MAX_CHECK_NORM: u64 = 10_000;

/// `g(k, χ̃_n)` for all `k` modulo `2n`.
#[derive(Clone, Debug)]
pub struct TwistedGaussTable {
    pub n: SmallGaussian,
    pub kind: u8,
    indexer: ResidueIndexer,
    values: Vec<f64>,
}

impl TwistedGaussTable {
    pub fn new(n: SmallGaussian) -> Result<Self> {
        let kind = GaussianInt::from(n).classify_type()?;
        let q = SmallGaussian::new(2, 0) * n;
        let indexer = ResidueIndexer::new(q);
        let mut values = Vec::with_capacity(indexer.size());
        for r in indexer.representatives() {
            values.push(gauss_sum_twisted_exact(r, kind, n)?.to_f64());
        }
        Ok(TwistedGaussTable { n, kind, indexer, values })
    }

    #[inline]
    pub fn get(&self, k: SmallGaussian) -> f64 {
        self.values[self.indexer.index(k)]
    }

    /// `χ̃_n(m)`.
    #[inline]
    pub fn chi(&self, m: SmallGaussian) -> i8 {
        let p = psi_mod2(self.kind, m);
        if p == 0 {
            0
        } else {
            p * symbol_small(m, self.n).expect("odd")
        }
    }
}

fn checked_twist(n: &GaussianInt) -> Result<SmallGaussian> {
    if !n.is_primary() {
        return Err(Error::NotPrimary(n.to_string()));
    }
    let norm = n.norm_u64().unwrap_or(u64::MAX);
    if norm > MAX_CHECK_NORM {
        return Err(Error::CapExceeded { what: "twist norm", value: norm.to_string(), cap: MAX_CHECK_NORM.to_string() });
    }
    let (c1, _) = squarefree_decompose(n)?;
    if c1.is_unit() {
        return Err(Error::SquareArgument(n.to_string()));
    }
    Ok(n.to_small().expect("bounded"))
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Both sides of
/// `Σ_{m≠0} χ̃_n(m) e^{-2πy N(m)} = (2y N(2n))^{-1} Σ_{k≠0} g(k, χ̃_n) e^{-πN(k)/(2y N(2n))}`.
pub fn verify_poisson(n: &GaussianInt, y: f64) -> Result<PoissonCheck> {
    let ns = checked_twist(n)?;
    if !(0.1..=10.0).contains(&y) {
        return Err(Error::Domain(format!("y = {y} outside [0.1, 10]")));
    }
    let table = TwistedGaussTable::new(ns)?;
    poisson_with_table(&table, y)
}

const GAUSS_CUT: f64 = 42.0;

fn separable_weights(c: f64, r: i64) -> Vec<f64> {
    (0..=r).map(|a| (-c * (a * a) as f64).exp()).collect()
}

pub fn poisson_with_table(table: &TwistedGaussTable, y: f64) -> Result<PoissonCheck> {
    let n2 = 4.0 * table.n.norm() as f64;
    // left: weights e^{-2πy(a²+b²)}
    let c = 2.0 * PI * y;
    let r = (GAUSS_CUT / c).sqrt().ceil() as i64;
    let e = separable_weights(c, r);
    let mut lhs = CompensatedSum::new();
    for a in -r..=r {
        for b in -r..=r {
            let v = table.chi(SmallGaussian::new(a, b));
            if v != 0 {
                lhs.add(Complex64::new(v as f64 * e[a.unsigned_abs() as usize] * e[b.unsigned_abs() as usize], 0.0));
            }
        }
    }
    let c = PI / (2.0 * y * n2);
    let r = (GAUSS_CUT / c).sqrt().ceil() as i64;
    let e = separable_weights(c, r);
    let mut rhs = CompensatedSum::new();
    for a in -r..=r {
        let ea = e[a.unsigned_abs() as usize];
        for b in -r..=r {
            if a == 0 && b == 0 {
                continue;
            }
            let w = ea * e[b.unsigned_abs() as usize];
            if w == 0.0 {
                continue;
            }
            rhs.add(Complex64::new(table.get(SmallGaussian::new(a, b)) * w, 0.0));
        }
    }
    let lhs = lhs.value().re;
    let rhs = rhs.value().re / (2.0 * y * n2);
    Ok(PoissonCheck { lhs, rhs, residual: (lhs - rhs).abs() })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop24Check {
    pub lhs: Complex64,
    /// Right side from Riesz means of order 4 at `k_cut` and `k_cut/2`,
    /// combined by one Richardson step.
    pub rhs: Complex64,
    pub residual: f64,
    /// Right side from the sharp cut `N(k) ≤ k_cut`.
    pub rhs_sharp: Complex64,
    pub residual_sharp: f64,
    /// Size of the omitted `N(k) > k_cut` part of the absolute series,
    /// extrapolated geometrically from the last dyadic shell.
    pub tail_estimate: f64,
    pub k_cut: u64,
}

const RIESZ_ORDER: i32 = 4;

/// Compares `L(s, χ̃_n)` with
/// `N(2n)^{-s} π^{2s-1} Γ(1-s)/(4Γ(s)) Σ_{k≠0} g(k, χ̃_n) N(k)^{s-1}`,
/// the `k`-sum running over `N(k) ≤ k_cut`.
///
/// A sharp cut converges erratically because of lattice-point fluctuations in
/// each residue class; the Riesz mean `Σ g(k) N(k)^{s-1} (1 - N(k)/K)^4` has
/// a bias expanding in powers of `1/K`, whose leading term the Richardson
/// combination `2·R(K) - R(K/2)` removes.
pub fn verify_prop24(n: &GaussianInt, s: Complex64, k_cut: u64) -> Result<Prop24Check> {
    let ns = checked_twist(n)?;
    if s.re >= 0.0 {
        return Err(Error::Domain(format!("the k-sum converges absolutely only for Re(s) < 0, got {s}")));
    }
    if !(4..=10_000_000).contains(&k_cut) {
        return Err(Error::Domain(format!("k_cut = {k_cut} out of range")));
    }
    let table = TwistedGaussTable::new(ns)?;
    let lhs = l_value_imprimitive(&(&GaussianInt::new(0, 2) * n), s)?.value;
    let n2 = 4.0 * ns.norm() as f64;
    let pref = (-s * n2.ln()).exp() * ((2.0 * s - 1.0) * PI.ln()).exp() * complex_gamma(1.0 - s)? / (4.0 * complex_gamma(s)?);
    let k_full = k_cut as f64;
    let k_half = k_full / 2.0;
    let r = k_full.sqrt().floor() as i64;
    let mut sharp = CompensatedSum::new();
    let mut riesz_full = CompensatedSum::new();
    let mut riesz_half = CompensatedSum::new();
    let mut shell = 0.0;
    for a in -r..=r {
        for b in -r..=r {
            let nk = (a * a + b * b) as u64;
            if nk == 0 || nk > k_cut {
                continue;
            }
            let g = table.get(SmallGaussian::new(a, b));
            if g == 0.0 {
                continue;
            }
            let nf = nk as f64;
            let term = ((s - 1.0) * nf.ln()).exp() * g;
            sharp.add(term);
            riesz_full.add(term * (1.0 - nf / k_full).powi(RIESZ_ORDER));
            if nf <= k_half {
                riesz_half.add(term * (1.0 - nf / k_half).powi(RIESZ_ORDER));
            } else {
                shell += term.norm();
            }
        }
    }
    let rhs = pref * (riesz_full.value() * 2.0 - riesz_half.value());
    let rhs_sharp = pref * sharp.value();
    let ratio = 2f64.powf(s.re);
    let tail_estimate = pref.norm() * shell * ratio / (1.0 - ratio);
    Ok(Prop24Check {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        rhs_sharp,
        residual_sharp: (lhs - rhs_sharp).norm(),
        tail_estimate,
        k_cut,
    })
}
