//! Batched evaluation of `L(s, χ_m)` over a whole family of twists `m`.
//!
//! Each value is the same approximate functional equation as
//! [`l_value_imprimitive`](crate::lfunctions::l_value_imprimitive) at split
//! point 1, but everything that does not depend on the twist is computed once:
//!
//! - character values at primes come from Legendre tables via reciprocity,
//!   `(ϖ/c₁) = (c₁/ϖ)`, and are extended multiplicatively over the primary
//!   elements;
//! - the character sum is aggregated per ideal norm;
//! - `N^{-s}`, `N^{s-1}` and the incomplete-Γ weights are tabulated.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::characters::{character_of_twist, Psi};
use crate::error::{Error, Result};
use crate::lfunctions::gamma::{nonpositive_integer, phi_series};
use crate::lfunctions::lvalue::MAX_IDEAL_NORM;
use crate::lfunctions::{complex_gamma, gamma_upper, root_number, zeta_K, AfeOptions, ChebTable};
use crate::zi::factor::{factor_small, pow_mod};
use crate::zi::{GaussianInt, PrimaryTable, SmallGaussian};

#[derive(Clone, Copy, Debug)]
enum PrimeKind {
    /// `Z[i]/ϖ ≅ F_p` through `i ↦ t`.
    Split { p: u64, t: u64, offset: usize },
    /// `(x/q) = (N(x)/q)` for a rational prime `q ≡ 3 (mod 4)`.
    Inert { q: u64, offset: usize },
}

/// Weights for one `s`: the first AFE sum uses `N^{-s}Γ(s, N/Q)`, the dual
/// one `N^{s-1}Γ(1-s, N/Q)`.
struct Side {
    z: Complex64,
    gamma: Option<Complex64>,
    /// `N^{-z}` indexed by `N`.
    n_pow: Vec<Complex64>,
    /// `Γ(z, x)` on `[1, x_end]`.
    upper: ChebTable,
    /// `φ_z` on `[0, 1]`, absent when `Γ(z)` has a pole.
    phi: Option<ChebTable>,
}

impl Side {
    fn new(z: Complex64, bound: u64, x_end: f64) -> Result<Self> {
        let gamma = match nonpositive_integer(z) {
            Some(_) => None,
            None => Some(complex_gamma(z)?),
        };
        let n_pow = (0..=bound).map(|n| if n == 0 { Complex64::new(0.0, 0.0) } else { (-z * (n as f64).ln()).exp() }).collect();
        let upper = ChebTable::from_fn(|x| gamma_upper(z, x).expect("x ≥ 1"), 1.0, x_end.max(2.0), 1.0);
        let phi = gamma.map(|_| ChebTable::from_fn(|x| phi_series(z, x), 0.0, 1.0, 1.0));
        Ok(Side { z, gamma, n_pow, upper, phi })
    }

    /// `N^{-z} Γ(z, N/Q)`, with `q_pow = Q^{-z}`.
    #[inline]
    fn term(&self, n: usize, x: f64, q_pow: Complex64) -> Result<Complex64> {
        if x >= 1.0 {
            return Ok(self.n_pow[n] * self.upper.eval(x));
        }
        match (&self.phi, self.gamma) {
            // Γ(z, x) = Γ(z) - x^z φ_z(x)
            (Some(phi), Some(g)) => Ok(g * self.n_pow[n] - q_pow * phi.eval(x)),
            _ => Ok(self.n_pow[n] * gamma_upper(self.z, x)?),
        }
    }
}

struct Point {
    s: Complex64,
    x_cut: f64,
    first: Side,
    dual: Side,
    recip_gamma_s: Complex64,
    zeta: Option<Complex64>,
}

/// Reusable per-worker buffers.
#[derive(Default)]
pub struct Scratch {
    vals: Vec<i8>,
    coef: Vec<i32>,
}

impl Scratch {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Precomputed tables for evaluating `L(s_k, χ_m)` at a fixed list of points
/// for every twist `m` whose primitive conductor has norm at most
/// `max_conductor_norm`.
pub struct TwistEngine {
    table: PrimaryTable,
    kinds: Vec<PrimeKind>,
    /// `ψ_j(ϖ)` for `Psi::ALL[j]`, aligned with `table.primes`.
    psi: [Vec<i8>; 4],
    legendre: Vec<i8>,
    points: Vec<Point>,
    max_conductor_norm: u64,
}

fn legendre_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[(x * x % p) as usize] = 1;
    }
    t
}

impl TwistEngine {
    pub fn new(max_conductor_norm: u64, s_points: &[Complex64], opt: AfeOptions) -> Result<Self> {
        if s_points.is_empty() {
            return Err(Error::Domain("no evaluation points".into()));
        }
        let q_max = (max_conductor_norm.max(1) as f64).sqrt() / PI;
        let x_cuts: Vec<f64> = s_points.iter().map(|s| opt.cutoff + 1.5 * s.norm()).collect();
        let x_end = x_cuts.iter().cloned().fold(0.0, f64::max);
        let bound = (x_end * q_max).floor().max(1.0) as u64;
        if bound > MAX_IDEAL_NORM {
            return Err(Error::CapExceeded {
                what: "ideal norm bound",
                value: bound.to_string(),
                cap: MAX_IDEAL_NORM.to_string(),
            });
        }
        let table = PrimaryTable::new(bound);
        let mut legendre = Vec::new();
        let mut offsets = std::collections::HashMap::new();
        let mut offset_of = |p: u64, legendre: &mut Vec<i8>| -> usize {
            *offsets.entry(p).or_insert_with(|| {
                let o = legendre.len();
                legendre.extend(legendre_table(p));
                o
            })
        };
        let mut kinds = Vec::with_capacity(table.primes.len());
        for &w in &table.primes {
            let n = w.norm() as u64;
            if n % 4 == 1 && w.im != 0 {
                let p = n;
                // a + bi ≡ 0 gives i ≡ -a/b
                let b_inv = pow_mod(w.im.rem_euclid(p as i64) as u64, p - 2, p);
                let t = ((p as i64 - w.re.rem_euclid(p as i64)) as u64 % p) * b_inv % p;
                kinds.push(PrimeKind::Split { p, t, offset: offset_of(p, &mut legendre) });
            } else {
                let q = w.re.unsigned_abs();
                kinds.push(PrimeKind::Inert { q, offset: offset_of(q, &mut legendre) });
            }
        }
        let psi = Psi::ALL.map(|j| table.primes.iter().map(|&w| j.eval_odd(w)).collect::<Vec<i8>>());
        let mut points = Vec::with_capacity(s_points.len());
        for (&s, &x_cut) in s_points.iter().zip(&x_cuts) {
            let one = Complex64::new(1.0, 0.0);
            let recip_gamma_s = match nonpositive_integer(s) {
                Some(_) => return Err(Error::Domain(format!("batched evaluation at a trivial zero s = {s}"))),
                None => 1.0 / complex_gamma(s)?,
            };
            let zeta = if s == one { None } else { Some(zeta_K(s)?) };
            points.push(Point {
                s,
                x_cut,
                first: Side::new(s, bound, x_end)?,
                dual: Side::new(one - s, bound, x_end)?,
                recip_gamma_s,
                zeta,
            });
        }
        Ok(TwistEngine { table, kinds, psi, legendre, points, max_conductor_norm })
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.s).collect()
    }

    /// `(c/ϖ)` for the prime with index `k`.
    #[inline]
    fn prime_symbol(&self, k: usize, c: SmallGaussian) -> i8 {
        match self.kinds[k] {
            PrimeKind::Split { p, t, offset } => {
                let pi = p as i128;
                let idx = (c.re as i128 + c.im as i128 * t as i128).rem_euclid(pi);
                self.legendre[offset + idx as usize]
            }
            PrimeKind::Inert { q, offset } => {
                let qi = q as i128;
                let (a, b) = ((c.re as i128).rem_euclid(qi), (c.im as i128).rem_euclid(qi));
                self.legendre[offset + ((a * a + b * b) % qi) as usize]
            }
        }
    }

    /// `L(s_k, χ_m)` for every point, with `χ_m(a) = (m/a)` on primary `a`.
    pub fn eval(&self, m: SmallGaussian, scratch: &mut Scratch) -> Result<Vec<Complex64>> {
        let mg: GaussianInt = m.into();
        let ch = character_of_twist(&mg)?;
        let nq = ch.conductor_norm();
        if nq > self.max_conductor_norm {
            return Err(Error::CapExceeded {
                what: "conductor norm",
                value: nq.to_string(),
                cap: self.max_conductor_norm.to_string(),
            });
        }
        // Euler factors removed by the primitive character
        let (_, _, factors) = factor_small(m)?;
        let mut removed: Vec<(f64, f64)> = Vec::new();
        for p in factors.into_iter().map(|(p, _)| p).chain(std::iter::once(SmallGaussian::ONE_PLUS_I)) {
            let v = ch.eval(p);
            if v != 0 {
                removed.push(((p.norm() as f64).ln(), v as f64));
            }
        }
        let correction =
            |s: Complex64| removed.iter().fold(Complex64::new(1.0, 0.0), |acc, &(ln, v)| acc * (1.0 - v * (-s * ln).exp()));
        if ch.is_trivial() {
            return self
                .points
                .iter()
                .map(|pt| {
                    pt.zeta.map(|z| z * correction(pt.s)).ok_or_else(|| Error::Pole("zeta_K has a simple pole at s = 1".into()))
                })
                .collect();
        }

        let q = (nq as f64).sqrt() / PI;
        let w = root_number(&ch)?;
        let c1 = ch.kernel_small();
        let psi_row = &self.psi[Psi::ALL.iter().position(|&j| j == ch.psi_component).expect("listed")];
        let chi2 = ch.at_one_plus_i();
        let bound = self.points.iter().map(|pt| (pt.x_cut * q).floor() as u64).max().unwrap_or(1).max(1);
        let count = self.table.count_up_to(bound);
        self.table.multiplicative_fill_indexed(
            count,
            |k| {
                let v = self.prime_symbol(k, c1);
                if v == 0 {
                    0
                } else {
                    v * psi_row[k]
                }
            },
            &mut scratch.vals,
        );
        let coef = &mut scratch.coef;
        coef.clear();
        coef.resize(bound as usize + 1, 0);
        for (k, &v) in scratch.vals.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let mut n = self.table.norms[k];
            coef[n as usize] += v as i32;
            if chi2 != 0 {
                let mut val = v as i32;
                while 2 * n <= bound {
                    n *= 2;
                    val *= chi2 as i32;
                    coef[n as usize] += val;
                }
            }
        }

        let ln_q = q.ln();
        let inv_q = 1.0 / q;
        let mut out = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            let b_k = ((pt.x_cut * q).floor() as usize).min(bound as usize);
            let qa = (-pt.first.z * ln_q).exp();
            let qb = (-pt.dual.z * ln_q).exp();
            let mut a = Complex64::new(0.0, 0.0);
            let mut b = Complex64::new(0.0, 0.0);
            for (n, &c) in coef.iter().enumerate().take(b_k + 1).skip(1) {
                if c == 0 {
                    continue;
                }
                let x = n as f64 * inv_q;
                a += pt.first.term(n, x, qa)? * c as f64;
                b += pt.dual.term(n, x, qb)? * c as f64;
            }
            // Λ = Q^s (A + W Q^{1-2s} B) and L = Λ/(Q^s Γ(s))
            let dual_scale = ((1.0 - 2.0 * pt.s) * ln_q).exp();
            let l = (a + w * dual_scale * b) * pt.recip_gamma_s;
            out.push(l * correction(pt.s));
        }
        Ok(out)
    }
}
