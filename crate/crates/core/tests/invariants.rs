//! Property tests of the public API on random inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use hecke_zi::asymptotics::WeightFunction;
use hecke_zi::characters::{primitive_inducing, quad_symbol, quad_symbol_naive, Psi};
use hecke_zi::gauss_sums::{gauss_sum_direct, gauss_sum_fast};
use hecke_zi::lfunctions::{completed_l, complex_gamma, root_number};
use hecke_zi::zi::{divmod, factor, gcd, normalize_primary, GaussianInt};

fn gi(max: i64) -> impl Strategy<Value = GaussianInt> {
    (-max..=max, -max..=max).prop_map(GaussianInt::from)
}

fn nonzero(max: i64) -> impl Strategy<Value = GaussianInt> {
    gi(max).prop_filter("nonzero", |z| !z.is_zero())
}

fn primary(max: i64) -> impl Strategy<Value = GaussianInt> {
    gi(max).prop_filter_map("odd", |z| if z.is_odd() { Some(normalize_primary(&z).unwrap().1) } else { None })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_with_small_remainder(a in gi(10_000), b in nonzero(300)) {
        let (q, r) = divmod(&a, &b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(&r.norm() * 2 <= b.norm());
    }

    #[test]
    fn gcd_is_greatest(d in nonzero(50), x in gi(50), y in gi(50)) {
        let (a, b) = (&d * &x, &d * &y);
        let g = gcd(&a, &b).unwrap();
        if !g.is_zero() {
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(d.divides(&g));
        }
    }

    #[test]
    fn primary_normal_form(z in nonzero(1000)) {
        prop_assume!(z.is_odd());
        let (u, m) = normalize_primary(&z).unwrap();
        prop_assert!(u.is_unit() && m.is_primary());
        prop_assert_eq!(&u * &m, z);
    }

    #[test]
    fn factorization_reassembles(z in nonzero(2000)) {
        let f = factor(&z).unwrap();
        prop_assert_eq!(f.reassemble(), z);
    }

    #[test]
    fn symbol_reciprocity(m in primary(300), n in primary(300)) {
        prop_assume!(gcd(&m, &n).unwrap().is_unit());
        prop_assert_eq!(quad_symbol(&m, &n).unwrap(), quad_symbol(&n, &m).unwrap());
    }

    #[test]
    fn symbol_multiplicative_and_periodic(a in gi(500), b in gi(500), k in gi(20), n in primary(100)) {
        let ab = quad_symbol(&(&a * &b), &n).unwrap();
        prop_assert_eq!(ab, quad_symbol(&a, &n).unwrap() * quad_symbol(&b, &n).unwrap());
        prop_assert_eq!(quad_symbol(&(&a + &(&k * &n)), &n).unwrap(), quad_symbol(&a, &n).unwrap());
        prop_assert_eq!(quad_symbol(&a, &n).unwrap(), quad_symbol_naive(&a, &n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gauss_closed_form(r in gi(60), n in primary(25)) {
        let fast = gauss_sum_fast(&r, &n).unwrap();
        let direct = gauss_sum_direct(&r, &n).unwrap();
        prop_assert!((fast - direct).norm() <= 1e-9 * direct.norm().max(1.0));
    }

    #[test]
    fn root_number_and_functional_equation(n in primary(40), j in 0usize..4, re in 0.2f64..0.8, im in -5.0f64..5.0) {
        let ch = primitive_inducing(&n, Psi::ALL[j]).unwrap();
        let w = root_number(&ch).unwrap();
        prop_assert!((w.norm() - 1.0).abs() < 1e-10);
        let s = Complex64::new(re, im);
        let a = completed_l(&ch, s).unwrap().lambda_value;
        let b = completed_l(&ch, 1.0 - s).unwrap().lambda_value;
        prop_assert!(close(a, w * b, 1e-8));
    }

    #[test]
    fn exp_decay_mellin_is_gamma(re in 0.3f64..4.0, im in -8.0f64..8.0) {
        let s = Complex64::new(re, im);
        let m = WeightFunction::exp_decay().mellin(s).unwrap();
        prop_assert!(close(m, complex_gamma(s).unwrap(), 1e-10));
    }
}
