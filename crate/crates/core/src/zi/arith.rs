//! Multiplicative functions on primary elements.

use num_bigint::BigInt;
use num_traits::One;

use super::factor::factor;
use super::gaussian::GaussianInt;
use crate::error::{Error, Result};

fn primary_factors(n: &GaussianInt) -> Result<Vec<(GaussianInt, u32)>> {
    if !n.is_primary() {
        return Err(Error::NotPrimary(n.to_string()));
    }
    Ok(factor(n)?.factors)
}

pub fn mobius(n: &GaussianInt) -> Result<i8> {
    let f = primary_factors(n)?;
    if f.iter().any(|(_, e)| *e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

pub fn is_squarefree(n: &GaussianInt) -> Result<bool> {
    Ok(mobius(n)? != 0)
}

/// Size of `(Z[i]/n)^*`.
pub fn euler_phi(n: &GaussianInt) -> Result<BigInt> {
    let f = primary_factors(n)?;
    Ok(f.iter().fold(BigInt::one(), |acc, (p, e)| {
        let q = p.norm();
        acc * q.pow(e - 1) * (q - 1u32)
    }))
}

/// `c = c1 · c2²` with `c1` squarefree, both primary.
pub fn squarefree_decompose(c: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    let f = primary_factors(c)?;
    let mut c1 = GaussianInt::one();
    let mut c2 = GaussianInt::one();
    for (p, e) in &f {
        if e % 2 == 1 {
            c1 = &c1 * p;
        }
        c2 = &c2 * &p.pow(e / 2);
    }
    Ok((c1, c2))
}
