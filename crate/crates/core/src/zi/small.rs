//! Machine-word Gaussian integers for the hot loops.
//!
//! Components are `i64`; intermediate products go through `i128`, so any
//! element with components below 2^62 in absolute value is safe to divide.
//! Everything here mirrors [`GaussianInt`](super::GaussianInt) and is
//! cross-checked against it in tests.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallGaussian {
    pub re: i64,
    pub im: i64,
}

pub const ZERO: SmallGaussian = SmallGaussian { re: 0, im: 0 };
pub const ONE: SmallGaussian = SmallGaussian { re: 1, im: 0 };
pub const I: SmallGaussian = SmallGaussian { re: 0, im: 1 };
pub const ONE_PLUS_I: SmallGaussian = SmallGaussian { re: 1, im: 1 };

/// Nearest integer to `num / den` (`den > 0`), ties toward negative infinity.
#[inline]
pub(crate) fn round_half_down(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    // ceil((2 num - den) / (2 den))
    let n = 2 * num - den;
    let d = 2 * den;
    let q = n.div_euclid(d);
    if n.rem_euclid(d) == 0 {
        q
    } else {
        q + 1
    }
}

impl SmallGaussian {
    pub const ZERO: Self = ZERO;
    pub const ONE: Self = ONE;
    pub const I: Self = I;
    pub const ONE_PLUS_I: Self = ONE_PLUS_I;

    #[inline]
    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    #[inline]
    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.im as i128);
        a * a + b * b
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    #[inline]
    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Coprime to `1+i`.
    #[inline]
    pub fn is_odd(self) -> bool {
        (self.re ^ self.im) & 1 == 1
    }

    #[inline]
    pub fn is_primary(self) -> bool {
        let a = self.re.rem_euclid(4);
        let b = self.im.rem_euclid(4);
        (a == 1 && b == 0) || (a == 3 && b == 2)
    }

    /// Multiplication by `i`.
    #[inline]
    pub fn mul_i(self) -> Self {
        Self::new(-self.im, self.re)
    }

    /// `i^k` for any integer `k`.
    pub fn unit(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => ONE,
            1 => I,
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    /// Euclidean division with nearest-integer rounding of both coordinates
    /// (ties toward negative infinity). `N(r) <= N(b)/2`.
    pub fn divmod(self, b: Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (ar, ai) = (self.re as i128, self.im as i128);
        let (br, bi) = (b.re as i128, b.im as i128);
        let d = br * br + bi * bi;
        let pr = ar * br + ai * bi;
        let pi = ai * br - ar * bi;
        let qr = round_half_down(pr, d);
        let qi = round_half_down(pi, d);
        let rr = ar - (qr * br - qi * bi);
        let ri = ai - (qr * bi + qi * br);
        Ok((Self::new(qr as i64, qi as i64), Self::new(rr as i64, ri as i64)))
    }

    #[inline]
    pub fn reduce(self, b: Self) -> Self {
        self.divmod(b).expect("nonzero modulus").1
    }

    /// Exact division; `None` when `b` does not divide `self`.
    pub fn div_exact(self, b: Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let d = b.norm();
        let pr = self.re as i128 * b.re as i128 + self.im as i128 * b.im as i128;
        let pi = self.im as i128 * b.re as i128 - self.re as i128 * b.im as i128;
        if pr % d != 0 || pi % d != 0 {
            return None;
        }
        Some(Self::new((pr / d) as i64, (pi / d) as i64))
    }

    #[inline]
    pub fn divides(self, a: Self) -> bool {
        a.div_exact(self).is_some()
    }

    /// Writes `self = (1+i)^e * rest` with `rest` odd. `self` must be nonzero.
    pub fn split_two(self) -> (u32, Self) {
        debug_assert!(!self.is_zero());
        let mut z = self;
        let mut e = 0;
        while !z.is_odd() {
            // (x + yi)/(1 + i) = ((x + y) + (y - x) i) / 2
            z = Self::new((z.re + z.im) / 2, (z.im - z.re) / 2);
            e += 1;
        }
        (e, z)
    }

    /// For odd `self`, returns `(k, m)` with `self = i^k m` and `m` primary.
    pub fn normalize_primary(self) -> Option<(u8, Self)> {
        if !self.is_odd() {
            return None;
        }
        // multiply by i^{-1} = -i repeatedly
        let mut m = self;
        for k in 0..4u8 {
            if m.is_primary() {
                return Some((k, m));
            }
            m = Self::new(m.im, -m.re);
        }
        unreachable!("one associate of an odd element is primary")
    }

    pub fn gcd(self, other: Self) -> Self {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.reduce(b);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for SmallGaussian {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for SmallGaussian {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for SmallGaussian {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for SmallGaussian {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for SmallGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_ties_go_down() {
        assert_eq!(round_half_down(5, 2), 2);
        assert_eq!(round_half_down(-5, 2), -3);
        assert_eq!(round_half_down(7, 3), 2);
        assert_eq!(round_half_down(8, 3), 3);
        assert_eq!(round_half_down(0, 9), 0);
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = SmallGaussian::new(7, 2).divmod(SmallGaussian::new(3, 0)).unwrap();
        assert_eq!((q, r), (SmallGaussian::new(2, 1), SmallGaussian::new(1, -1)));
        let (q, r) = SmallGaussian::new(5, 0).divmod(ONE_PLUS_I).unwrap();
        assert_eq!(q * ONE_PLUS_I + r, SmallGaussian::new(5, 0));
        assert!(2 * r.norm() <= 2);
        assert_eq!(ZERO.divmod(SmallGaussian::new(3, 2)).unwrap(), (ZERO, ZERO));
        assert!(ONE.divmod(ZERO).is_err());
    }

    #[test]
    fn split_and_normalize() {
        let (e, rest) = SmallGaussian::new(2, 0).split_two();
        assert_eq!(e, 2);
        assert!(rest.is_unit());
        let (k, m) = SmallGaussian::new(3, 0).normalize_primary().unwrap();
        assert_eq!(m, SmallGaussian::new(-3, 0));
        assert_eq!(SmallGaussian::unit(k as i64) * m, SmallGaussian::new(3, 0));
        assert!(ONE_PLUS_I.normalize_primary().is_none());
    }
}
