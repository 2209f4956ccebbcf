//! Arithmetic of the Gaussian integers Z[i].

pub mod arith;
pub mod enumerate;
pub mod factor;
pub mod gaussian;
pub mod small;

pub use arith::{euler_phi, is_squarefree, mobius, squarefree_decompose};
pub use enumerate::{enumerate_primary, primary_up_to, PrimaryTable};
pub use factor::{factor, PrimaryFactorization};
pub use gaussian::{normalize_associate, GaussianInt};
pub use small::SmallGaussian;

use crate::error::Result;

pub fn divmod(a: &GaussianInt, b: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    a.divmod(b)
}

pub fn gcd(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    a.gcd(b)
}

pub fn is_primary(n: &GaussianInt) -> bool {
    n.is_primary()
}

pub fn classify_type(n: &GaussianInt) -> Result<u8> {
    n.classify_type()
}

/// `n = u · m` with `u` a unit and `m` primary.
pub fn normalize_primary(n: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    let (k, m) = n.normalize_primary()?;
    Ok((GaussianInt::unit(k as i64), m))
}
