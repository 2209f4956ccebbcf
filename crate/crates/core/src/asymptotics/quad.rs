//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// `∫_a^b f` to an absolute tolerance, bisecting the worst interval first.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, abs_tol: f64) -> (Complex64, f64) {
    let mut pieces = vec![(a, b, gk15(&f, a, b))];
    for _ in 0..2000 {
        let total_err: f64 = pieces.iter().map(|p| p.2 .1).sum();
        if total_err <= abs_tol {
            break;
        }
        let (k, _) = pieces.iter().enumerate().max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1)).expect("nonempty");
        let (lo, hi, _) = pieces.swap_remove(k);
        let mid = 0.5 * (lo + hi);
        pieces.push((lo, mid, gk15(&f, lo, mid)));
        pieces.push((mid, hi, gk15(&f, mid, hi)));
    }
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    let value = pieces.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.2 .0);
    let err = pieces.iter().map(|p| p.2 .1).sum();
    (value, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_oscillatory() {
        let (v, _) = integrate(|x| Complex64::new(x * x * x, 0.0), 0.0, 2.0, 1e-14);
        assert!((v.re - 4.0).abs() < 1e-13);
        let (v, _) = integrate(|x| Complex64::new(0.0, x).exp(), 0.0, 40.0, 1e-13);
        let exact = (Complex64::new(0.0, 40.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((v - exact).norm() < 1e-12);
        let (v, _) = integrate(|x| Complex64::new((-x * x).exp(), 0.0), -12.0, 12.0, 1e-15);
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }
}
