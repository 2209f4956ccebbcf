//! Factorization in Z[i] through the rational factorization of the norm.

use serde::Serialize;

use super::gaussian::GaussianInt;
use super::small::SmallGaussian;
use crate::error::{Error, Result};

/// Largest norm accepted by [`factor`]; trial division up to its square root.
pub const MAX_FACTOR_NORM: u64 = 100_000_000_000_000;

/// `n = i^unit_exp · (1+i)^two_exp · Π ϖ^e` with every `ϖ` a primary prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimaryFactorization {
    pub unit_exp: u8,
    pub two_exp: u32,
    pub factors: Vec<(GaussianInt, u32)>,
}

impl PrimaryFactorization {
    pub fn reassemble(&self) -> GaussianInt {
        let mut acc = &GaussianInt::unit(self.unit_exp as i64) * &GaussianInt::one_plus_i().pow(self.two_exp);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }

    /// The primary part `Π ϖ^e`.
    pub fn odd_part(&self) -> GaussianInt {
        self.factors.iter().fold(GaussianInt::one(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// A square root of -1 modulo a prime `p ≡ 1 (mod 4)`.
pub(crate) fn sqrt_minus_one(p: u64) -> u64 {
    debug_assert_eq!(p % 4, 1);
    (2..p).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1).map(|c| pow_mod(c, (p - 1) / 4, p)).expect("p is prime")
}

/// The two primary primes above a rational prime `p ≡ 1 (mod 4)`, ordered by `re`.
pub(crate) fn split_prime(p: u64) -> (SmallGaussian, SmallGaussian) {
    let t = sqrt_minus_one(p);
    let g = SmallGaussian::new(p as i64, 0).gcd(SmallGaussian::new(t as i64, 1));
    let (_, a) = g.normalize_primary().expect("odd");
    let (_, b) = a.conj().normalize_primary().expect("odd");
    if (a.re, a.im) <= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Primary primes dividing the rational prime `p` (odd).
pub(crate) fn primes_above(p: u64) -> Vec<SmallGaussian> {
    if p % 4 == 3 {
        vec![SmallGaussian::new(-(p as i64), 0)]
    } else {
        let (a, b) = split_prime(p);
        vec![a, b]
    }
}

/// `(unit_exp, two_exp, [(primary prime, exponent)])`.
pub(crate) type SmallFactorization = (u8, u32, Vec<(SmallGaussian, u32)>);

/// Factorization of a nonzero small element.
pub(crate) fn factor_small(n: SmallGaussian) -> Result<SmallFactorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let norm = n.norm();
    if norm > MAX_FACTOR_NORM as i128 {
        return Err(Error::CapExceeded { what: "norm to factor", value: norm.to_string(), cap: MAX_FACTOR_NORM.to_string() });
    }
    let (two_exp, mut rest) = n.split_two();
    let mut m = rest.norm() as u64;
    let mut factors: Vec<(SmallGaussian, u32)> = Vec::new();
    let handle = |p: u64, rest: &mut SmallGaussian, factors: &mut Vec<(SmallGaussian, u32)>| {
        for q in primes_above(p) {
            let mut e = 0;
            while let Some(r) = rest.div_exact(q) {
                *rest = r;
                e += 1;
            }
            if e > 0 {
                factors.push((q, e));
            }
        }
    };
    let mut p = 3u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            handle(p, &mut rest, &mut factors);
        }
        p += 2;
    }
    if m > 1 {
        handle(m, &mut rest, &mut factors);
    }
    let (k, one) = rest.normalize_primary().expect("remaining cofactor is a unit");
    debug_assert_eq!(one, SmallGaussian::new(1, 0));
    factors.sort_by_key(|(q, _)| (q.norm(), q.re, q.im));
    Ok((k, two_exp, factors))
}

/// Exact factorization of a nonzero Gaussian integer.
pub fn factor(n: &GaussianInt) -> Result<PrimaryFactorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let small = n.to_small().ok_or_else(|| Error::CapExceeded {
        what: "norm to factor",
        value: n.norm().to_string(),
        cap: MAX_FACTOR_NORM.to_string(),
    })?;
    let (unit_exp, two_exp, f) = factor_small(small)?;
    Ok(PrimaryFactorization { unit_exp, two_exp, factors: f.into_iter().map(|(p, e)| (p.into(), e)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn factor_two() {
        let f = factor(&g(2, 0)).unwrap();
        assert_eq!(f.two_exp, 2);
        assert!(f.factors.is_empty());
        assert_eq!(f.reassemble(), g(2, 0));
        // 2 = -i (1+i)^2
        assert_eq!(f.unit_exp, 3);
    }

    #[test]
    fn factor_five() {
        let f = factor(&g(5, 0)).unwrap();
        assert_eq!(f.factors, vec![(g(-1, -2), 1), (g(-1, 2), 1)]);
        assert_eq!(f.reassemble(), g(5, 0));
    }

    #[test]
    fn primary_prime_is_itself() {
        for p in [g(-1, 2), g(3, 2), g(-3, 0), g(5, 4)] {
            let f = factor(&p).unwrap();
            assert_eq!(f.factors, vec![(p.clone(), 1)]);
            assert_eq!((f.unit_exp, f.two_exp), (0, 0));
        }
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor(&g(0, 0)), Err(Error::Zero));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn factor_round_trip(a in -7000i64..7000, b in -7000i64..7000) {
            prop_assume!(a != 0 || b != 0);
            let n = g(a, b);
            let f = factor(&n).unwrap();
            prop_assert_eq!(f.reassemble(), n);
            let mut last: Option<(num_bigint::BigInt, num_bigint::BigInt, num_bigint::BigInt)> = None;
            for (p, e) in &f.factors {
                prop_assert!(p.is_primary());
                prop_assert!(*e >= 1);
                let key = (p.norm(), p.re.clone(), p.im.clone());
                if let Some(l) = &last {
                    prop_assert!(*l < key);
                }
                last = Some(key);
            }
        }
    }
}
