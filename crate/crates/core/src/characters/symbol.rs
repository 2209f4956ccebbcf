//! The quadratic residue symbol `(a/n)` for odd `n`.
//!
//! [`quad_symbol`] runs the reciprocity descent: reduce `a` modulo the
//! primary lower argument, peel off units and powers of `1+i` with the
//! supplementary laws, then flip. [`quad_symbol_naive`] is the Euler
//! criterion applied prime by prime and is only used as an oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::zi::factor::factor;
use crate::zi::small::SmallGaussian;
use crate::zi::GaussianInt;

/// `(i/n)` for primary `n = a + bi`: `(-1)^((1-a)/2)`.
#[inline]
pub fn supp_i(n: SmallGaussian) -> i8 {
    if n.re.rem_euclid(4) == 1 {
        1
    } else {
        -1
    }
}

/// `((1+i)/n)` for primary `n = a + bi`: `(-1)^((a-b-1-b²)/4)`.
#[inline]
pub fn supp_one_plus_i(n: SmallGaussian) -> i8 {
    let (a, b) = (n.re as i128, n.im as i128);
    if (a - b - 1 - b * b).rem_euclid(8) == 0 {
        1
    } else {
        -1
    }
}

fn depth_cap(norm: i128) -> usize {
    10 * (128 - norm.max(2).leading_zeros() as usize) + 10
}

/// `(a/n)` on machine words. `n` must be odd.
pub fn symbol_small(a: SmallGaussian, n: SmallGaussian) -> Result<i8> {
    let Some((_, mut n)) = n.normalize_primary() else {
        return Err(Error::EvenArgument(n.to_string()));
    };
    let mut a = a;
    let mut sign = 1i8;
    let cap = depth_cap(n.norm());
    for _ in 0..cap {
        if n.re == 1 && n.im == 0 {
            return Ok(sign);
        }
        let r = a.reduce(n);
        if r.is_zero() {
            return Ok(0);
        }
        let (e, odd) = r.split_two();
        let (k, a1) = odd.normalize_primary().expect("odd");
        if k & 1 == 1 {
            sign *= supp_i(n);
        }
        if e & 1 == 1 {
            sign *= supp_one_plus_i(n);
        }
        a = n;
        n = a1;
    }
    Err(Error::Internal("symbol recursion exceeded its depth cap".into()))
}

fn big_mod(x: &BigInt, m: i64) -> i64 {
    x.mod_floor(&BigInt::from(m)).to_i64().unwrap()
}

fn supp_i_big(n: &GaussianInt) -> i8 {
    if big_mod(&n.re, 4) == 1 {
        1
    } else {
        -1
    }
}

fn supp_one_plus_i_big(n: &GaussianInt) -> i8 {
    let v = &n.re - &n.im - 1 - &n.im * &n.im;
    if big_mod(&v, 8) == 0 {
        1
    } else {
        -1
    }
}

/// `(a/n)` for odd `n`, fast reciprocity-based algorithm.
pub fn quad_symbol(a: &GaussianInt, n: &GaussianInt) -> Result<i8> {
    if n.is_zero() || !n.is_odd() {
        return Err(Error::EvenArgument(n.to_string()));
    }
    if let (Some(a), Some(n)) = (a.to_small(), n.to_small()) {
        return symbol_small(a, n);
    }
    let (_, mut n) = n.normalize_primary()?;
    let mut a = a.clone();
    let mut sign = 1i8;
    let cap = 10 * n.norm().bits() as usize + 10;
    for _ in 0..cap {
        if n.is_unit() {
            return Ok(sign);
        }
        let r = a.rem(&n)?;
        if r.is_zero() {
            return Ok(0);
        }
        let (e, odd) = r.split_two();
        let (k, a1) = odd.normalize_primary()?;
        if k & 1 == 1 {
            sign *= supp_i_big(&n);
        }
        if e & 1 == 1 {
            sign *= supp_one_plus_i_big(&n);
        }
        a = n;
        n = a1;
    }
    Err(Error::Internal("symbol recursion exceeded its depth cap".into()))
}

/// `a^k mod p` in `Z[i]/(p)`.
fn pow_mod(a: &GaussianInt, mut k: BigInt, p: &GaussianInt) -> Result<GaussianInt> {
    let mut base = a.rem(p)?;
    let mut acc = GaussianInt::one().rem(p)?;
    let two = BigInt::from(2);
    while k > BigInt::from(0) {
        if k.is_odd() {
            acc = (&acc * &base).rem(p)?;
        }
        base = (&base * &base).rem(p)?;
        k /= &two;
    }
    Ok(acc)
}

/// `(a/n)` by the Euler criterion `a^((N(ϖ)-1)/2) mod ϖ` on each prime factor.
pub fn quad_symbol_naive(a: &GaussianInt, n: &GaussianInt) -> Result<i8> {
    if n.is_zero() || !n.is_odd() {
        return Err(Error::EvenArgument(n.to_string()));
    }
    let f = factor(n)?;
    let mut result = 1i8;
    for (p, e) in &f.factors {
        let r = pow_mod(a, (p.norm() - 1u32) / 2u32, p)?;
        let v = if r.is_zero() {
            0
        } else if (&r - &GaussianInt::one()).rem(p)?.is_zero() {
            1
        } else if (&r + &GaussianInt::one()).rem(p)?.is_zero() {
            -1
        } else {
            return Err(Error::Internal(format!("Euler criterion gave {r} mod {p}")));
        };
        if e % 2 == 1 {
            result *= v;
        } else if v == 0 {
            result = 0;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zi::primary_up_to;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn examples() {
        assert_eq!(quad_symbol_naive(&g(0, 1), &g(-1, 2)).unwrap(), -1);
        assert_eq!(quad_symbol(&g(0, 1), &g(-1, 2)).unwrap(), -1);
        assert_eq!(quad_symbol(&g(0, 1), &g(3, 2)).unwrap(), -1);
        assert_eq!(quad_symbol(&g(1, 1), &g(3, 2)).unwrap(), -1);
        assert_eq!(quad_symbol(&g(5, 0), &g(-1, 2)).unwrap(), 0);
        assert_eq!(quad_symbol_naive(&g(5, 0), &g(-1, 2)).unwrap(), 0);
        assert!(quad_symbol(&g(1, 0), &g(1, 1)).is_err());
        assert!(quad_symbol_naive(&g(1, 0), &g(2, 0)).is_err());
        // unit lower argument
        assert_eq!(quad_symbol(&g(7, 3), &g(0, 1)).unwrap(), 1);
    }

    #[test]
    fn supplementary_laws_match_euler_criterion() {
        for p in crate::zi::enumerate::primary_primes(3000) {
            let pg: GaussianInt = p.into();
            assert_eq!(supp_i(p), quad_symbol_naive(&g(0, 1), &pg).unwrap());
            assert_eq!(supp_one_plus_i(p), quad_symbol_naive(&g(1, 1), &pg).unwrap());
        }
    }

    #[test]
    fn squares_are_residues() {
        for n in primary_up_to(300).into_iter().skip(1) {
            for x in [g(2, 1), g(3, 0), g(1, 4), g(7, -2)] {
                let ng: GaussianInt = n.into();
                if !x.gcd(&ng).unwrap().is_unit() {
                    continue;
                }
                assert_eq!(quad_symbol(&(&x * &x), &ng).unwrap(), 1);
            }
        }
    }

    #[test]
    fn big_path_agrees_with_small_path() {
        // forces the BigInt branch through a large but harmless upper argument
        let shift = g(1 << 45, 3 << 44);
        for n in primary_up_to(500).into_iter().skip(1).step_by(3) {
            let ng: GaussianInt = n.into();
            let big = &(&shift * &ng) + &g(5, 2);
            assert_eq!(quad_symbol(&big, &ng).unwrap(), quad_symbol(&g(5, 2), &ng).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(3000))]
        #[test]
        fn fast_matches_naive(a in -3000i64..3000, b in -3000i64..3000, c in -300i64..300, d in -300i64..300) {
            let n = g(c, 2 * d + 1 - c.rem_euclid(2));
            let a = g(a, b);
            prop_assert_eq!(quad_symbol(&a, &n).unwrap(), quad_symbol_naive(&a, &n).unwrap());
        }

        #[test]
        fn periodic_in_upper_argument(a in -500i64..500, b in -500i64..500, c in -200i64..200, d in -200i64..200, t1 in -50i64..50, t2 in -50i64..50) {
            let n = g(c, 2 * d + 1 - c.rem_euclid(2));
            let a = g(a, b);
            let shifted = &a + &(&n * &g(t1, t2));
            prop_assert_eq!(quad_symbol(&a, &n).unwrap(), quad_symbol(&shifted, &n).unwrap());
        }
    }
}
