//! Quadratic Hecke characters of trivial infinite type on Z[i].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::symbol::{quad_symbol, supp_i, supp_one_plus_i, symbol_small};
use crate::error::{Error, Result};
use crate::zi::small::SmallGaussian;
use crate::zi::{squarefree_decompose, GaussianInt};

/// The characters `ψ_1, ψ_i, ψ_{1+i}, ψ_{i(1+i)}` with moduli dividing
/// `(1+i)^5`. The group is `Z/2 × Z/2`, generated by `ψ_i` and `ψ_{1+i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Psi {
    One,
    I,
    OnePlusI,
    IOnePlusI,
}

impl Psi {
    pub const ALL: [Psi; 4] = [Psi::One, Psi::I, Psi::OnePlusI, Psi::IOnePlusI];

    fn bits(self) -> (bool, bool) {
        match self {
            Psi::One => (false, false),
            Psi::I => (true, false),
            Psi::OnePlusI => (false, true),
            Psi::IOnePlusI => (true, true),
        }
    }

    fn from_bits(i: bool, t: bool) -> Self {
        match (i, t) {
            (false, false) => Psi::One,
            (true, false) => Psi::I,
            (false, true) => Psi::OnePlusI,
            (true, true) => Psi::IOnePlusI,
        }
    }

    /// The character `(i^k (1+i)^e / ·)`.
    pub fn from_exponents(k: u32, e: u32) -> Self {
        Self::from_bits(k % 2 == 1, e % 2 == 1)
    }

    /// Value at an odd argument; depends only on the ideal it generates.
    pub fn eval_odd(self, x: SmallGaussian) -> i8 {
        let (_, x0) = x.normalize_primary().expect("odd argument");
        let (i, t) = self.bits();
        let mut v = 1;
        if i {
            v *= supp_i(x0);
        }
        if t {
            v *= supp_one_plus_i(x0);
        }
        v
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Psi::One => "1",
            Psi::I => "i",
            Psi::OnePlusI => "1+i",
            Psi::IOnePlusI => "i(1+i)",
        }
    }
}

impl std::ops::Mul for Psi {
    type Output = Psi;
    fn mul(self, other: Psi) -> Psi {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Psi::from_bits(a ^ c, b ^ d)
    }
}

impl fmt::Display for Psi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Psi {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Psi::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown psi index {s:?}")))
    }
}

/// `ψ_2`, the character modulo 2 with `ψ_2(i) = -1`. Not trivial on units.
pub fn psi2(x: SmallGaussian) -> i8 {
    debug_assert!(x.is_odd());
    if x.re & 1 == 1 {
        1
    } else {
        -1
    }
}

/// A primitive quadratic character `(·/c1) · ψ_j` (times `ψ_2` when `c1` is
/// of type 2), together with the twist it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCharacter {
    pub kernel: GaussianInt,
    pub psi_component: Psi,
    pub modulus: GaussianInt,
    pub is_primitive: bool,
    pub twist_label: GaussianInt,
    kernel_small: SmallGaussian,
    kernel_type: u8,
}

impl Serialize for QuadraticCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            kernel: &'a GaussianInt,
            psi: &'static str,
            modulus: &'a GaussianInt,
            primitive: bool,
        }
        View { kernel: &self.kernel, psi: self.psi_component.as_str(), modulus: &self.modulus, primitive: self.is_primitive }
            .serialize(s)
    }
}

impl QuadraticCharacter {
    pub fn kernel_type(&self) -> u8 {
        self.kernel_type
    }

    pub fn kernel_small(&self) -> SmallGaussian {
        self.kernel_small
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus.is_unit()
    }

    /// `N(q)` of the modulus.
    pub fn conductor_norm(&self) -> u64 {
        self.modulus.norm_u64().expect("desk-scale modulus")
    }

    /// Whether the modulus is odd, i.e. the character is nonzero at `1+i`.
    pub fn odd_modulus(&self) -> bool {
        self.modulus.is_odd()
    }

    /// The 2-part `d` of the modulus `d · c1`.
    pub fn two_part(&self) -> GaussianInt {
        self.modulus.div_exact(&self.kernel).expect("kernel divides modulus")
    }

    /// Value at an arbitrary element.
    pub fn eval(&self, x: SmallGaussian) -> i8 {
        if x.is_zero() {
            return if self.is_trivial() { 1 } else { 0 };
        }
        if !x.is_odd() {
            if !self.odd_modulus() {
                return 0;
            }
            return symbol_small(x, self.kernel_small).expect("odd kernel");
        }
        let mut v = symbol_small(x, self.kernel_small).expect("odd kernel");
        if v == 0 {
            return 0;
        }
        v *= self.psi_component.eval_odd(x);
        if self.kernel_type == 2 {
            v *= psi2(x);
        }
        v
    }

    /// Value at a primary element, where `ψ_2` is 1.
    #[inline]
    pub fn eval_primary(&self, x: SmallGaussian) -> i8 {
        let v = symbol_small(x, self.kernel_small).expect("odd kernel");
        if v == 0 {
            return 0;
        }
        v * self.psi_component.eval_odd(x)
    }

    /// Value at the even prime `1+i` (zero unless the modulus is odd).
    pub fn at_one_plus_i(&self) -> i8 {
        if self.odd_modulus() {
            symbol_small(SmallGaussian::new(1, 1), self.kernel_small).expect("odd kernel")
        } else {
            0
        }
    }
}

/// The primitive character inducing `χ_n · ψ_j` for primary `n`.
pub fn primitive_inducing(n: &GaussianInt, j: Psi) -> Result<QuadraticCharacter> {
    let (c1, _) = squarefree_decompose(n)?;
    let kernel_type = c1.classify_type()?;
    let two_part = match (kernel_type, j) {
        (1, Psi::One) => GaussianInt::one(),
        (2, Psi::One) => GaussianInt::new(2, 0),
        (_, Psi::I) => GaussianInt::new(4, 0),
        _ => GaussianInt::one_plus_i().pow(5),
    };
    Ok(QuadraticCharacter {
        modulus: &two_part * &c1,
        kernel_small: c1.to_small().expect("desk-scale kernel"),
        kernel: c1,
        psi_component: j,
        is_primitive: true,
        twist_label: n.clone(),
        kernel_type,
    })
}

/// The character `a ↦ (m/a)` on primary `a` for a nonzero twist `m`, as its
/// primitive inducing character. The returned character agrees with
/// `(m/·)` at every primary argument coprime to `m`.
pub fn character_of_twist(m: &GaussianInt) -> Result<QuadraticCharacter> {
    if m.is_zero() {
        return Err(Error::Zero);
    }
    let (e, odd) = m.split_two();
    let (k, m0) = odd.normalize_primary()?;
    let mut ch = primitive_inducing(&m0, Psi::from_exponents(k as u32, e))?;
    ch.twist_label = m.clone();
    Ok(ch)
}

/// `χ_m(a) = (m/a)` for odd `a`; evaluating at an even argument is an error.
pub fn chi_m(m: &GaussianInt, a: &GaussianInt) -> Result<i8> {
    quad_symbol(m, a)
}
