//! Exact Gaussian integers with arbitrary-precision components.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use super::small::SmallGaussian;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// Nearest integer to `num/den` for `den > 0`, ties toward negative infinity.
fn round_half_down(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let n = &two * num - den;
    let d = &two * den;
    let (q, r) = n.div_mod_floor(&d);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn one_plus_i() -> Self {
        Self::new(1, 1)
    }

    /// `i^k`.
    pub fn unit(k: i64) -> Self {
        SmallGaussian::unit(k).into()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Norm as `u64`, when it fits.
    pub fn norm_u64(&self) -> Option<u64> {
        self.norm().to_u64()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_odd(&self) -> bool {
        (&self.re + &self.im).is_odd()
    }

    fn mod4(x: &BigInt) -> u8 {
        x.mod_floor(&BigInt::from(4)).to_u8().unwrap()
    }

    /// `n ≡ 1 mod (1+i)^3`, via `(re, im) ≡ (1, 0)` or `(3, 2) mod 4`.
    pub fn is_primary(&self) -> bool {
        matches!((Self::mod4(&self.re), Self::mod4(&self.im)), (1, 0) | (3, 2))
    }

    /// Type 1 or 2 of a primary element.
    pub fn classify_type(&self) -> Result<u8> {
        match (Self::mod4(&self.re), Self::mod4(&self.im)) {
            (1, 0) => Ok(1),
            (3, 2) => Ok(2),
            _ => Err(Error::NotPrimary(self.to_string())),
        }
    }

    pub fn mul_i(&self) -> Self {
        Self::new(-&self.im, self.re.clone())
    }

    /// `(q, r)` with `self = q b + r`, coordinates of `self/b` rounded to the
    /// nearest integer with ties toward negative infinity.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = b.norm();
        let pr = &self.re * &b.re + &self.im * &b.im;
        let pi = &self.im * &b.re - &self.re * &b.im;
        let q = Self::new(round_half_down(&pr, &d), round_half_down(&pi, &d));
        let r = self - &(&q * b);
        Ok((q, r))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let d = b.norm();
        let pr = &self.re * &b.re + &self.im * &b.im;
        let pi = &self.im * &b.re - &self.re * &b.im;
        if !(&pr % &d).is_zero() || !(&pi % &d).is_zero() {
            return None;
        }
        Some(Self::new(pr / &d, pi / &d))
    }

    pub fn divides(&self, a: &Self) -> bool {
        a.div_exact(self).is_some()
    }

    /// `self = (1+i)^e * rest`, rest odd. `self` nonzero.
    pub fn split_two(&self) -> (u32, Self) {
        debug_assert!(!self.is_zero());
        let two = BigInt::from(2);
        let mut z = self.clone();
        let mut e = 0;
        while !z.is_odd() {
            z = Self::new((&z.re + &z.im) / &two, (&z.im - &z.re) / &two);
            e += 1;
        }
        (e, z)
    }

    /// For odd nonzero `self`, the unique `(k, m)` with `self = i^k m`, `m` primary.
    pub fn normalize_primary(&self) -> Result<(u8, Self)> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        if !self.is_odd() {
            return Err(Error::EvenArgument(self.to_string()));
        }
        let mut m = self.clone();
        for k in 0..4u8 {
            if m.is_primary() {
                return Ok((k, m));
            }
            m = Self::new(m.im.clone(), -&m.re);
        }
        unreachable!("one associate of an odd element is primary")
    }

    /// Greatest common divisor: `(1+i)^k · m` with `m` primary.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(normalize_associate(&a))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_small(&self) -> Option<SmallGaussian> {
        const LIM: i64 = 1 << 40;
        let re = self.re.to_i64()?;
        let im = self.im.to_i64()?;
        (re.abs() < LIM && im.abs() < LIM).then_some(SmallGaussian::new(re, im))
    }
}

/// Canonical associate of a nonzero element: `(1+i)^k · (primary)`.
pub fn normalize_associate(a: &GaussianInt) -> GaussianInt {
    let (e, odd) = a.split_two();
    let (_, m) = odd.normalize_primary().expect("odd and nonzero");
    &GaussianInt::one_plus_i().pow(e) * &m
}

impl From<SmallGaussian> for GaussianInt {
    fn from(z: SmallGaussian) -> Self {
        Self::new(z.re, z.im)
    }
}

impl From<(i64, i64)> for GaussianInt {
    fn from((a, b): (i64, i64)) -> Self {
        Self::new(a, b)
    }
}

impl From<i64> for GaussianInt {
    fn from(a: i64) -> Self {
        Self::new(a, 0)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a GaussianInt> for &'a GaussianInt {
            type Output = GaussianInt;
            fn $method(self, o: &'a GaussianInt) -> GaussianInt {
                let f: fn(&GaussianInt, &GaussianInt) -> GaussianInt = $body;
                f(self, o)
            }
        }
        impl $trait for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, o: GaussianInt) -> GaussianInt {
                (&self).$method(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| GaussianInt::new(&a.re + &b.re, &a.im + &b.im));
binop!(Sub, sub, |a, b| GaussianInt::new(&a.re - &b.re, &a.im - &b.im));
binop!(Mul, mul, |a, b| GaussianInt::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re));

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Accepts `a+bi`, `a-bi`, a bare integer `a`, or a bare `bi`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a Gaussian integer: {s:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::new(t.parse::<BigInt>().map_err(|_| bad())?, 0));
        };
        // split at the last sign that is not in leading position
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        let parse_im = |x: &str| -> Result<BigInt> {
            match x {
                "" | "+" => Ok(BigInt::one()),
                "-" => Ok(-BigInt::one()),
                _ => x.parse::<BigInt>().map_err(|_| bad()),
            }
        };
        match split {
            Some(k) => {
                let re = body[..k].parse::<BigInt>().map_err(|_| bad())?;
                Ok(Self::new(re, parse_im(&body[k..])?))
            }
            None => Ok(Self::new(0, parse_im(body)?)),
        }
    }
}

impl Serialize for GaussianInt {
    /// A JSON pair `[a, b]`; components beyond `i64` become decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        for c in [&self.re, &self.im] {
            match c.to_i64() {
                Some(v) => t.serialize_element(&v)?,
                None => t.serialize_element(&c.to_string())?,
            }
        }
        t.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Component {
    Int(i64),
    Str(String),
}

impl Component {
    fn into_big<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            Component::Int(v) => Ok(BigInt::from(v)),
            Component::Str(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairVisitor;
        impl<'de> Visitor<'de> for PairVisitor {
            type Value = GaussianInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a pair [re, im] or a string \"a+bi\"")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<GaussianInt, A::Error> {
                let re: Component = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: Component = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                Ok(GaussianInt::new(re.into_big()?, im.into_big()?))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<GaussianInt, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(PairVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn divmod_contract() {
        let (q, r) = g(7, 2).divmod(&g(3, 0)).unwrap();
        assert_eq!(q, g(2, 1));
        assert_eq!(r, g(1, -1));
        let (q, r) = g(5, 0).divmod(&g(1, 1)).unwrap();
        assert_eq!(&(&q * &g(1, 1)) + &r, g(5, 0));
        assert!(BigInt::from(2) * r.norm() <= BigInt::from(2));
        assert_eq!(g(0, 0).divmod(&g(3, 2)).unwrap(), (g(0, 0), g(0, 0)));
        assert_eq!(g(1, 0).divmod(&g(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_matches_exhaustive_box() {
        // a/b = (7+2i)/3: the 3x3 box of candidate quotients around it
        let (a, b) = (g(7, 2), g(3, 0));
        let best = (1..=3).flat_map(|x| (0..=2).map(move |y| g(x, y))).min_by_key(|q| (&a - &(q * &b)).norm()).unwrap();
        assert_eq!(a.divmod(&b).unwrap().0, best);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(g(1, 1).gcd(&g(3, 0)).unwrap(), g(1, 0));
        assert_eq!(g(2, 0).gcd(&g(1, 1)).unwrap(), g(1, 1));
        let m = g(3, 2);
        let d = m.gcd(&m).unwrap();
        assert!(d.is_primary());
        assert!(d.divides(&m) && m.divides(&d));
        assert_eq!(g(0, 0).gcd(&g(0, 0)), Err(Error::GcdOfZeros));
    }

    #[test]
    fn primary_and_type() {
        assert!(g(1, 0).is_primary());
        assert!(g(3, 2).is_primary());
        assert!(!g(1, 1).is_primary());
        assert_eq!(g(1, 0).classify_type(), Ok(1));
        assert_eq!(g(-1, 2).classify_type(), Ok(2));
        assert_eq!(g(5, -4).classify_type(), Ok(1));
        assert!(g(2, 1).classify_type().is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(g(3, 0).normalize_primary().unwrap(), (2, g(-3, 0)));
        assert_eq!(g(1, 0).normalize_primary().unwrap(), (0, g(1, 0)));
        let (k, m) = g(1, 2).normalize_primary().unwrap();
        assert_eq!(&GaussianInt::unit(k as i64) * &m, g(1, 2));
        let primaries = (0..4).map(|k| &GaussianInt::unit(k) * &g(1, 2)).filter(|z| z.is_primary()).count();
        assert_eq!(primaries, 1);
        assert!(g(1, 1).normalize_primary().is_err());
        assert!(g(0, 0).normalize_primary().is_err());
    }

    #[test]
    fn string_forms() {
        for (s, z) in
            [("3+2i", g(3, 2)), ("3-2i", g(3, -2)), ("-1+2i", g(-1, 2)), ("5", g(5, 0)), ("-i", g(0, -1)), ("4i", g(0, 4))]
        {
            assert_eq!(s.parse::<GaussianInt>().unwrap(), z, "{s}");
        }
        assert_eq!(g(3, -2).to_string(), "3-2i");
        assert_eq!(g(-1, 0).to_string(), "-1+0i");
        assert!("x+yi".parse::<GaussianInt>().is_err());
    }

    #[test]
    fn json_pairs() {
        assert_eq!(serde_json::to_string(&g(3, -2)).unwrap(), "[3,-2]");
        let big = GaussianInt::new(BigInt::from(10).pow(30), 1);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "[\"1000000000000000000000000000000\",1]");
        assert_eq!(serde_json::from_str::<GaussianInt>(&s).unwrap(), big);
        assert_eq!(serde_json::from_str::<GaussianInt>("\"1-i\"").unwrap(), g(1, -1));
    }
}
