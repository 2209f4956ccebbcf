//! Test weights and their Mellin transforms `ŵ(s) = ∫₀^∞ w(t) t^{s-1} dt`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quad::integrate;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    /// `e^{-t}`
    ExpDecay,
    /// `e^{-t-1/t}`
    ExpBoth,
    /// `exp(1 - 1/(1-u²))`, `u = (t - 5/4)/(3/4)`, supported on `(1/2, 2)`
    Bump,
}

impl WeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::ExpDecay => "exp_decay",
            WeightKind::ExpBoth => "exp_both",
            WeightKind::Bump => "bump",
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp_decay" => Ok(WeightKind::ExpDecay),
            "exp_both" => Ok(WeightKind::ExpBoth),
            "bump" => Ok(WeightKind::Bump),
            _ => Err(Error::Parse(format!("unknown weight {s:?} (expected exp_decay, exp_both or bump)"))),
        }
    }
}

/// `t ↦ k · w_kind(c t)`; `k = c = 1` for the named weights.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightFunction {
    pub kind: WeightKind,
    pub amplitude: f64,
    pub dilation: f64,
}

/// Mellin transforms are computed to this relative accuracy.
pub const MELLIN_TOL: f64 = 1e-12;

impl WeightFunction {
    pub fn new(kind: WeightKind) -> Self {
        WeightFunction { kind, amplitude: 1.0, dilation: 1.0 }
    }

    pub fn exp_decay() -> Self {
        Self::new(WeightKind::ExpDecay)
    }

    pub fn exp_both() -> Self {
        Self::new(WeightKind::ExpBoth)
    }

    pub fn bump() -> Self {
        Self::new(WeightKind::Bump)
    }

    /// `t ↦ amplitude · w(dilation · t)`.
    pub fn scaled(self, amplitude: f64, dilation: f64) -> Self {
        WeightFunction { kind: self.kind, amplitude: self.amplitude * amplitude, dilation: self.dilation * dilation }
    }

    fn base(kind: WeightKind, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match kind {
            WeightKind::ExpDecay => (-t).exp(),
            WeightKind::ExpBoth => (-t - 1.0 / t).exp(),
            WeightKind::Bump => {
                let u = (t - 1.25) / 0.75;
                if u.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - u * u)).exp()
                }
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * Self::base(self.kind, self.dilation * t)
    }

    /// `[t_lo, t_hi]` outside of which `w < floor · max w`.
    pub fn support(&self, floor: f64) -> (f64, f64) {
        let l = -floor.ln();
        let (lo, hi) = match self.kind {
            WeightKind::ExpDecay => (0.0, l),
            WeightKind::ExpBoth => {
                // t + 1/t = 2 + L
                let m = 2.0 + l;
                let d = (m * m - 4.0).sqrt();
                ((m - d) / 2.0, (m + d) / 2.0)
            }
            WeightKind::Bump => {
                // 1/(1-u²) - 1 = L
                let u = (1.0 - 1.0 / (1.0 + l)).sqrt();
                (1.25 - 0.75 * u, 1.25 + 0.75 * u)
            }
        };
        (lo / self.dilation, hi / self.dilation)
    }

    /// Whether `Re(s)` lies in the strip where `ŵ(s)` converges.
    pub fn in_strip(&self, s: Complex64) -> bool {
        match self.kind {
            WeightKind::ExpDecay => s.re > 0.0,
            WeightKind::ExpBoth | WeightKind::Bump => true,
        }
    }

    fn base_log_interval(kind: WeightKind, s: Complex64) -> (f64, f64) {
        let sig = s.re.abs();
        let big = 60.0 + 3.0 * sig;
        match kind {
            WeightKind::ExpDecay => (-45.0 / s.re.max(1e-300), big.ln()),
            WeightKind::ExpBoth => (-big.ln(), big.ln()),
            WeightKind::Bump => (0.5f64.ln(), 2f64.ln()),
        }
    }

    fn base_mellin(kind: WeightKind, s: Complex64, log_power: u32) -> Complex64 {
        let (lo, hi) = Self::base_log_interval(kind, s);
        let integrand = |u: f64| {
            let w = Self::base(kind, u.exp());
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            (s * u).exp() * w * u.powi(log_power as i32)
        };
        // split at t = 1; scale-aware tolerance from a coarse first pass
        let pieces: &[(f64, f64)] = if lo < 0.0 && hi > 0.0 { &[(lo, 0.0), (0.0, hi)] } else { &[(lo, hi)] };
        let rough: f64 = pieces.iter().map(|&(a, b)| integrate(integrand, a, b, 1e-6).0.norm()).sum();
        let tol = MELLIN_TOL * 1e-2 * rough.max(1e-300);
        pieces.iter().map(|&(a, b)| integrate(integrand, a, b, tol / 2.0).0).sum()
    }

    /// `ŵ(s)`.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        if !self.in_strip(s) {
            return Err(Error::Domain(format!("Mellin transform of {} diverges at s = {s}", self.kind)));
        }
        // ∫ k w(ct) t^{s-1} dt = k c^{-s} ŵ(s)
        let scale = self.amplitude * (-s * self.dilation.ln()).exp();
        Ok(scale * Self::base_mellin(self.kind, s, 0))
    }

    /// `ŵ'(s) = ∫ w(t) t^{s-1} log t dt`.
    pub fn mellin_derivative(&self, s: Complex64) -> Result<Complex64> {
        if !self.in_strip(s) {
            return Err(Error::Domain(format!("Mellin transform of {} diverges at s = {s}", self.kind)));
        }
        let scale = self.amplitude * (-s * self.dilation.ln()).exp();
        let base = Self::base_mellin(self.kind, s, 0);
        let base_d = Self::base_mellin(self.kind, s, 1);
        Ok(scale * (base_d - self.dilation.ln() * base))
    }

    /// A dilated, rescaled copy of `other` whose `ŵ(1)` and `ŵ'(1)` agree with
    /// those of `self`.
    pub fn matched_copy(&self, other: WeightFunction) -> Result<WeightFunction> {
        let one = Complex64::new(1.0, 0.0);
        let (a, da) = (self.mellin(one)?.re, self.mellin_derivative(one)?.re);
        let (b, db) = (other.mellin(one)?.re, other.mellin_derivative(one)?.re);
        let ln_c = db / b - da / a;
        let c = ln_c.exp();
        Ok(other.scaled(c * a / b, c))
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amplitude == 1.0 && self.dilation == 1.0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}*{}(t*{})", self.amplitude, self.kind, self.dilation)
        }
    }
}

/// `ŵ(s)` for a weight.
pub fn mellin(w: &WeightFunction, s: Complex64) -> Result<Complex64> {
    w.mellin(s)
}

pub fn mellin_derivative(w: &WeightFunction, s: Complex64) -> Result<Complex64> {
    w.mellin_derivative(s)
}
