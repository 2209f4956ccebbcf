//! Complex Γ, the upper incomplete Γ and a tabulated regular part for the
//! approximate-functional-equation weights.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Nonpositive integer `-m` within rounding of `s`, if any.
pub fn nonpositive_integer(s: Complex64) -> Option<i64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        Some(s.re as i64)
    } else {
        None
    }
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// `log Γ(s)` on some branch (the real part is `log |Γ(s)|`).
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if let Some(m) = nonpositive_integer(s) {
        return Err(Error::Pole(format!("Gamma has a pole at {m}")));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        let sin = (s * PI).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - sin.ln() - ln_gamma_right(1.0 - s))
    }
}

/// `Γ(s)`: Lanczos approximation with reflection for `Re(s) < 1/2`.
pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    if let Some(m) = nonpositive_integer(s) {
        return Err(Error::Pole(format!("Gamma has a pole at {m}")));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s).exp())
    } else {
        Ok(PI / ((s * PI).sin() * ln_gamma_right(1.0 - s).exp()))
    }
}

/// `1/Γ(s)`, entire; zero at the poles of `Γ`.
pub fn recip_gamma(s: Complex64) -> Complex64 {
    match complex_gamma(s) {
        Ok(g) => 1.0 / g,
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `φ_s(x) = x^{-s} γ(s, x) = e^{-x} Σ_k x^k / (s (s+1) ⋯ (s+k))`.
///
/// The series is entire in `x` and has positive terms for real `s > 0`.
pub fn phi_series(s: Complex64, x: f64) -> Complex64 {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= x / (s + k);
        sum += term;
        if k > x && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        if k > 10_000.0 {
            break;
        }
    }
    sum * (-x).exp()
}

/// `E_1(x)` for `x > 0`.
fn exp_integral_e1(x: f64) -> f64 {
    if x < 1.0 {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let mut sum = 0.0;
        let mut term = 1.0;
        let mut k = 1.0;
        loop {
            term *= -x / k;
            let t = term / k;
            sum += t;
            if t.abs() < 1e-18 {
                break;
            }
            k += 1.0;
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        gamma_upper_cf(Complex64::new(0.0, 0.0), x).re
    }
}

/// Modified Lentz evaluation of the continued fraction for `Γ(s, x)`.
fn gamma_upper_cf(s: Complex64, x: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(x + 1.0, 0.0) - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let i = i as f64;
        let an = -i * (Complex64::new(i, 0.0) - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (s * x.ln() - x).exp() * h
}

/// Upper incomplete gamma `Γ(s, x) = ∫_x^∞ t^{s-1} e^{-t} dt` for `x > 0`.
pub fn gamma_upper(s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("incomplete gamma needs x > 0, got {x}")));
    }
    if let Some(m) = nonpositive_integer(s) {
        // Γ(-m, x) by downward recurrence from E_1
        let mut g = Complex64::new(exp_integral_e1(x), 0.0);
        for k in 1..=(-m) {
            let a = -(k as f64);
            // Γ(a, x) = (Γ(a+1, x) - x^a e^{-x}) / a
            g = (g - (a * x.ln() - x).exp()) / a;
        }
        return Ok(g);
    }
    if x < 1.5 || x < s.re + 1.0 {
        let xs = (s * x.ln()).exp();
        Ok(complex_gamma(s)? - xs * phi_series(s, x))
    } else {
        Ok(gamma_upper_cf(s, x))
    }
}

/// Piecewise Chebyshev interpolant (degree 17, unit-width pieces by default)
/// of a smooth complex function on `[a, b]`.
#[derive(Clone, Debug)]
pub struct ChebTable {
    a: f64,
    width: f64,
    coeffs: Vec<[Complex64; CHEB_DEGREE]>,
}

const CHEB_DEGREE: usize = 18;

impl ChebTable {
    pub fn from_fn(f: impl Fn(f64) -> Complex64, a: f64, b: f64, width: f64) -> Self {
        let pieces = ((b - a) / width).ceil().max(1.0) as usize;
        let n = CHEB_DEGREE;
        let nodes: Vec<f64> = (0..n).map(|k| (PI * (k as f64 + 0.5) / n as f64).cos()).collect();
        let mut coeffs = Vec::with_capacity(pieces);
        for p in 0..pieces {
            let lo = a + p as f64 * width;
            let vals: Vec<Complex64> = nodes.iter().map(|&t| f(lo + (t + 1.0) * 0.5 * width)).collect();
            let mut c = [Complex64::new(0.0, 0.0); CHEB_DEGREE];
            for (j, cj) in c.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, v) in vals.iter().enumerate() {
                    acc += v * (PI * j as f64 * (k as f64 + 0.5) / n as f64).cos();
                }
                *cj = acc * (2.0 / n as f64);
            }
            c[0] *= 0.5;
            coeffs.push(c);
        }
        ChebTable { a, width, coeffs }
    }

    /// Right end of the tabulated range.
    pub fn end(&self) -> f64 {
        self.a + self.coeffs.len() as f64 * self.width
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        let u = (x - self.a) / self.width;
        let p = (u.max(0.0) as usize).min(self.coeffs.len() - 1);
        let t = 2.0 * (u - p as f64) - 1.0;
        let c = &self.coeffs[p];
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b2 = Complex64::new(0.0, 0.0);
        for cj in c.iter().skip(1).rev() {
            let b0 = cj + b1 * (2.0 * t) - b2;
            b2 = b1;
            b1 = b0;
        }
        c[0] + b1 * t - b2
    }
}

/// Tabulated `φ_s` on `[0, x_max]`.
#[derive(Clone, Debug)]
pub struct PhiTable {
    pub s: Complex64,
    pub x_max: f64,
    table: ChebTable,
}

impl PhiTable {
    pub fn new(s: Complex64, x_max: f64) -> Result<Self> {
        if nonpositive_integer(s).is_some() {
            return Err(Error::Pole(format!("phi table at {s}")));
        }
        let table = ChebTable::from_fn(|x| phi_series(s, x), 0.0, x_max.max(1.0) + 1.0, 1.0);
        Ok(PhiTable { s, x_max: table.end(), table })
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        self.table.eval(x)
    }
}
