//! Quadratic Gauss sums over Z[i].
//!
//! `g(r, n) = Σ_{x mod n} (x/n) ẽ(rx/n)` with `ẽ(z) = exp(2πi·Im z)`. The
//! direct sums are the oracle; [`gauss_sum_fast`] evaluates the prime-power
//! table exactly and returns `coefficient · √radicand`.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::{psi2, symbol_small};
use crate::error::{Error, Result};
use crate::zi::factor::factor_small;
use crate::zi::small::SmallGaussian;
use crate::zi::GaussianInt;

/// Largest modulus norm for which residue systems are materialized.
pub const MAX_RESIDUE_NORM: u64 = 1_000_000;

/// `ẽ(z) = exp(2πi (z/(2i) - z̄/(2i))) = exp(2πi Im z)`.
pub fn e_tilde(z: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * z.im)
}

/// `ẽ(num / N)` for an integer numerator, reduced exactly before scaling.
#[inline]
fn e_frac(num: i128, den: i128) -> Complex64 {
    let k = num.rem_euclid(den);
    Complex64::from_polar(1.0, TAU * (k as f64) / (den as f64))
}

/// Compensated (Neumaier) complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    fn two_sum(s: f64, x: f64, c: &mut f64) -> f64 {
        let t = s + x;
        if s.abs() >= x.abs() {
            *c += (s - t) + x;
        } else {
            *c += (x - t) + s;
        }
        t
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        self.sum.re = Self::two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = Self::two_sum(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Canonical residues modulo `q`: the remainders of `divmod` by `q`.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueSystem {
    pub modulus: GaussianInt,
    pub representatives: Vec<GaussianInt>,
}

fn small_modulus(q: &GaussianInt) -> Result<SmallGaussian> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let norm = q.norm();
    if norm > BigInt::from(MAX_RESIDUE_NORM) {
        return Err(Error::CapExceeded { what: "modulus norm", value: norm.to_string(), cap: MAX_RESIDUE_NORM.to_string() });
    }
    Ok(q.to_small().expect("bounded norm"))
}

pub(crate) fn residues_small(q: SmallGaussian) -> Vec<SmallGaussian> {
    let r = (q.norm() as f64).sqrt().ceil() as i64;
    let mut set = BTreeSet::new();
    for a in -r..=r {
        for b in -r..=r {
            set.insert(SmallGaussian::new(a, b).reduce(q));
        }
    }
    set.into_iter().collect()
}

pub fn residue_system(q: &GaussianInt) -> Result<ResidueSystem> {
    let qs = small_modulus(q)?;
    let reps = residues_small(qs);
    debug_assert_eq!(reps.len() as i128, qs.norm());
    Ok(ResidueSystem { modulus: q.clone(), representatives: reps.into_iter().map(Into::into).collect() })
}

/// Dense indexing of `Z[i]/(q)` through the Hermite normal form of the
/// lattice `qZ[i]`: residues map bijectively onto `0..N(q)`.
#[derive(Clone, Debug)]
pub struct ResidueIndexer {
    norm: i64,
    /// gcd of the coordinates of q
    g: i64,
    /// re-coordinate of the basis vector with im = g
    e: i64,
    /// N(q) / g: the lattice meets the real axis in (N/g)Z
    row: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl ResidueIndexer {
    pub fn new(q: SmallGaussian) -> Self {
        let (a, b) = (q.re, q.im);
        let norm = q.norm() as i64;
        // u q for u = s + t i has imaginary part s b + t a
        let (g, s, t) = ext_gcd(b, a);
        let g = g.abs().max(1);
        let v = SmallGaussian::new(s, t) * q;
        let (s, t) = if v.im < 0 { (-s, -t) } else { (s, t) };
        let v = SmallGaussian::new(s, t) * q;
        debug_assert_eq!(v.im, g);
        ResidueIndexer { norm, g, e: v.re, row: norm / g }
    }

    pub fn size(&self) -> usize {
        self.norm as usize
    }

    #[inline]
    pub fn index(&self, z: SmallGaussian) -> usize {
        let y = z.im.rem_euclid(self.g);
        let shift = (z.im - y) / self.g;
        let x = (z.re - shift * self.e).rem_euclid(self.row);
        (y * self.row + x) as usize
    }

    /// One representative per index, in index order.
    pub fn representatives(&self) -> Vec<SmallGaussian> {
        let mut out = Vec::with_capacity(self.size());
        for y in 0..self.g {
            for x in 0..self.row {
                out.push(SmallGaussian::new(x, y));
            }
        }
        out
    }
}

/// Direct sum `Σ_{x mod q} f(x) ẽ(rx/q)`.
pub fn character_sum_direct(r: SmallGaussian, q: SmallGaussian, f: impl Fn(SmallGaussian) -> i8) -> Complex64 {
    let norm = q.norm();
    let qc = q.conj();
    let mut acc = CompensatedSum::new();
    for x in ResidueIndexer::new(q).representatives() {
        let v = f(x);
        if v == 0 {
            continue;
        }
        let w = r * x;
        let num = w.im as i128 * qc.re as i128 + w.re as i128 * qc.im as i128;
        acc.add(e_frac(num, norm) * v as f64);
    }
    acc.value()
}

fn odd_primary_small(n: &GaussianInt) -> Result<SmallGaussian> {
    if !n.is_primary() {
        return Err(if n.is_odd() { Error::NotPrimary(n.to_string()) } else { Error::EvenArgument(n.to_string()) });
    }
    small_modulus(n)
}

/// `g(r, n)` by direct summation over [`residue_system`].
pub fn gauss_sum_direct(r: &GaussianInt, n: &GaussianInt) -> Result<Complex64> {
    let ns = odd_primary_small(n)?;
    let rs = r.to_small().ok_or_else(|| Error::Domain("r too large".into()))?;
    let rs = rs.reduce(ns);
    Ok(character_sum_direct(rs, ns, |x| symbol_small(x, ns).expect("odd")))
}

/// The five cases of the prime-power evaluation `g(k, ϖ^l)`, with `ϖ^h || k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PrimePowerCase {
    /// `l ≤ h`, `l` odd: 0
    DividesOdd,
    /// `l ≤ h`, `l` even: `φ(ϖ^l)`
    DividesEven,
    /// `l = h + 1` even: `-N(ϖ)^{l-1}`
    NextEven,
    /// `l = h + 1` odd: `(ikϖ^{-h}/ϖ) N(ϖ)^{l-1/2}`
    NextOdd,
    /// `l ≥ h + 2`: 0
    Vanishing,
}

impl PrimePowerCase {
    pub const ALL: [PrimePowerCase; 5] = [
        PrimePowerCase::DividesOdd,
        PrimePowerCase::DividesEven,
        PrimePowerCase::NextEven,
        PrimePowerCase::NextOdd,
        PrimePowerCase::Vanishing,
    ];
}

/// `coefficient · √radicand`, exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactGaussSum {
    pub coefficient: BigInt,
    pub radicand: BigInt,
}

impl ExactGaussSum {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap() * self.radicand.to_f64().unwrap().sqrt()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// `|g|²` exactly.
    pub fn abs_squared(&self) -> BigInt {
        &self.coefficient * &self.coefficient * &self.radicand
    }
}

/// `g(k, n)` for primary `n` via multiplicativity and the prime-power table,
/// also reporting which case each prime power fell into.
pub fn gauss_sum_fast_cases(k: SmallGaussian, n: SmallGaussian) -> Result<(ExactGaussSum, Vec<PrimePowerCase>)> {
    if !n.is_primary() {
        return Err(if n.is_odd() { Error::NotPrimary(n.to_string()) } else { Error::EvenArgument(n.to_string()) });
    }
    let (_, _, factors) = factor_small(n)?;
    let mut coefficient = BigInt::one();
    let mut radicand = BigInt::one();
    let mut cases = Vec::with_capacity(factors.len());
    for (p, l) in factors {
        let np = BigInt::from(p.norm());
        // h = v_p(k), capped at l (anything ≥ l behaves the same up to parity)
        let mut h = 0u32;
        let mut rest = k;
        let mut infinite = k.is_zero();
        while !infinite && h <= l {
            match rest.div_exact(p) {
                Some(q) => {
                    rest = q;
                    h += 1;
                    if rest.is_zero() {
                        infinite = true;
                    }
                }
                None => break,
            }
        }
        let (case, c, rad) = if infinite || l <= h {
            if l % 2 == 1 {
                (PrimePowerCase::DividesOdd, BigInt::zero(), false)
            } else {
                (PrimePowerCase::DividesEven, np.pow(l - 1) * (&np - 1u32), false)
            }
        } else if l == h + 1 {
            if l % 2 == 0 {
                (PrimePowerCase::NextEven, -np.pow(l - 1), false)
            } else {
                let s = symbol_small(SmallGaussian::new(0, 1) * rest, p)?;
                (PrimePowerCase::NextOdd, BigInt::from(s) * np.pow(l - 1), true)
            }
        } else {
            (PrimePowerCase::Vanishing, BigInt::zero(), false)
        };
        cases.push(case);
        coefficient *= c;
        if rad {
            radicand *= &np;
        }
    }
    if coefficient.is_zero() {
        radicand = BigInt::one();
    }
    Ok((ExactGaussSum { coefficient, radicand }, cases))
}

pub fn gauss_sum_fast_exact(r: &GaussianInt, n: &GaussianInt) -> Result<ExactGaussSum> {
    let ns = odd_primary_small(n)?;
    let rs = reduce(r, ns)?;
    Ok(gauss_sum_fast_cases(rs, ns)?.0)
}

fn reduce(r: &GaussianInt, n: SmallGaussian) -> Result<SmallGaussian> {
    match r.to_small() {
        Some(rs) => Ok(rs.reduce(n)),
        None => r.rem(&n.into())?.to_small().ok_or_else(|| Error::Internal("reduction".into())),
    }
}

/// `g(r, n)` from the closed-form evaluation, as a floating complex number.
pub fn gauss_sum_fast(r: &GaussianInt, n: &GaussianInt) -> Result<Complex64> {
    Ok(gauss_sum_fast_exact(r, n)?.to_complex())
}

/// `(-1)^{Im r} + (-1)^{Re r + j - 1}`, the Gauss sum of `ψ_j` modulo 2.
pub fn mod2_prefactor(r: SmallGaussian, j: u8) -> i64 {
    let s = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    s(r.im) + s(r.re + j as i64 - 1)
}

/// `ψ_j` modulo 2 for `j ∈ {1, 2}`: principal for `j = 1`.
pub fn psi_mod2(j: u8, x: SmallGaussian) -> i8 {
    if !x.is_odd() {
        0
    } else if j == 1 {
        1
    } else {
        psi2(x)
    }
}

/// `g(r, ψ_j · (·/c)) = (i/c)((-1)^{Im r} + (-1)^{Re r + j - 1}) g(r, c)`.
pub fn gauss_sum_twisted_exact(r: SmallGaussian, j: u8, c: SmallGaussian) -> Result<ExactGaussSum> {
    if j != 1 && j != 2 {
        return Err(Error::Domain(format!("j must be 1 or 2, got {j}")));
    }
    let (g, _) = gauss_sum_fast_cases(r.reduce(c), c)?;
    let pref = mod2_prefactor(r, j) * symbol_small(SmallGaussian::new(0, 1), c)? as i64;
    let coefficient = g.coefficient * pref;
    let radicand = if coefficient.is_zero() { BigInt::one() } else { g.radicand };
    Ok(ExactGaussSum { coefficient, radicand })
}

pub fn gauss_sum_twisted(r: &GaussianInt, j: u8, c: &GaussianInt) -> Result<Complex64> {
    let cs = odd_primary_small(c)?;
    let rs = r.to_small().ok_or_else(|| Error::Domain("r too large".into()))?;
    Ok(gauss_sum_twisted_exact(rs, j, cs)?.to_complex())
}

/// Direct summation of `g(r, ψ_j · (·/c))` over residues modulo `2c`.
pub fn gauss_sum_twisted_direct(r: &GaussianInt, j: u8, c: &GaussianInt) -> Result<Complex64> {
    let cs = odd_primary_small(c)?;
    let rs = r.to_small().ok_or_else(|| Error::Domain("r too large".into()))?;
    let q = SmallGaussian::new(2, 0) * cs;
    Ok(character_sum_direct(rs.reduce(q), q, |x| psi_mod2(j, x) * symbol_small(x, cs).expect("odd")))
}

/// Relative distance used by the oracle comparisons; absolute near zero.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Valuation-free sanity accessor for callers that only need `|g|`.
pub fn exact_abs(g: &ExactGaussSum) -> f64 {
    g.coefficient.abs().to_f64().unwrap() * g.radicand.to_f64().unwrap().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_inducing;
    use crate::characters::Psi;
    use crate::zi::primary_up_to;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn e_tilde_values() {
        assert!((e_tilde(Complex64::new(0.0, 1.0)) - 1.0).norm() < 1e-15);
        assert!((e_tilde(Complex64::new(0.5, 0.0)) - 1.0).norm() < 1e-15);
        assert!((e_tilde(Complex64::new(0.0, 0.5)) + 1.0).norm() < 1e-15);
        assert!((e_tilde(Complex64::new(0.3, 0.77)).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residue_systems() {
        let rs = residue_system(&g(1, 1)).unwrap();
        assert_eq!(rs.representatives.len(), 2);
        assert!(rs.representatives.contains(&g(0, 0)));
        assert_eq!(residue_system(&g(3, 0)).unwrap().representatives.len(), 9);
        assert_eq!(residue_system(&g(-1, 2)).unwrap().representatives.len(), 5);
        for q in [g(3, 0), g(4, 2), g(5, 0), g(-7, 10)] {
            let rs = residue_system(&q).unwrap();
            assert_eq!(BigInt::from(rs.representatives.len()), q.norm());
            for x in &rs.representatives {
                assert_eq!(&x.rem(&q).unwrap(), x);
            }
        }
        assert!(residue_system(&g(2000, 0)).is_err());
    }

    #[test]
    fn indexer_is_a_bijection() {
        for q in [
            SmallGaussian::new(3, 0),
            SmallGaussian::new(4, 2),
            SmallGaussian::new(-7, 10),
            SmallGaussian::new(2, 0),
            SmallGaussian::new(1, 1),
            SmallGaussian::new(6, -9),
        ] {
            let ix = ResidueIndexer::new(q);
            let mut seen = vec![false; ix.size()];
            for x in residues_small(q) {
                let k = ix.index(x);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(ix.index(x + q * SmallGaussian::new(3, -5)), k);
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn direct_examples() {
        let v = gauss_sum_direct(&g(1, 0), &g(-1, 2)).unwrap();
        assert!((v - Complex64::new(-(5f64.sqrt()), 0.0)).norm() < 1e-12);
        for n in [g(-1, 2), g(3, 2), g(-3, 0), g(-5, 2)] {
            assert!(gauss_sum_direct(&g(0, 0), &n).unwrap().norm() < 1e-9);
        }
        for p in crate::zi::enumerate::primary_primes(500) {
            let v = gauss_sum_direct(&g(1, 0), &p.into()).unwrap();
            assert!((v.norm() - (p.norm() as f64).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn fast_table_cases() {
        let p = SmallGaussian::new(-1, 2);
        let (v, c) = gauss_sum_fast_cases(p, p * p).unwrap();
        assert_eq!(c, vec![PrimePowerCase::NextEven]);
        assert_eq!(v.coefficient, BigInt::from(-5));
        let (v, c) = gauss_sum_fast_cases(SmallGaussian::new(1, 0), p * p * p).unwrap();
        assert_eq!(c, vec![PrimePowerCase::Vanishing]);
        assert!(v.is_zero());
        assert!(gauss_sum_fast(&g(1, 0), &g(2, 0)).is_err());
        assert!(gauss_sum_fast(&g(1, 0), &g(1, 2)).is_err());
        assert_eq!(gauss_sum_fast(&g(1, 0), &g(1, 0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn fast_matches_direct_small() {
        for n in primary_up_to(400) {
            let ng: GaussianInt = n.into();
            for r in [g(1, 0), g(0, 1), g(1, 1), g(3, -2), g(0, 0), ng.clone()] {
                let a = gauss_sum_fast(&r, &ng).unwrap();
                let b = gauss_sum_direct(&r, &ng).unwrap();
                assert!(rel_err(a, b) < 1e-9, "r={r} n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn multiplicativity_and_twisting() {
        let ps = primary_up_to(150);
        for m in ps.iter().step_by(5) {
            for n in ps.iter().step_by(7) {
                if m.gcd(*n).norm() != 1 {
                    continue;
                }
                let k = SmallGaussian::new(2, 1);
                let lhs = gauss_sum_direct(&k.into(), &(*m * *n).into()).unwrap();
                let rhs = gauss_sum_direct(&k.into(), &(*m).into()).unwrap() * gauss_sum_direct(&k.into(), &(*n).into()).unwrap();
                assert!(rel_err(lhs, rhs) < 1e-8, "{m} {n}");
            }
        }
        for n in ps.iter().skip(1).step_by(3) {
            let s = SmallGaussian::new(1, 2);
            if s.gcd(*n).norm() != 1 {
                continue;
            }
            let r = SmallGaussian::new(3, 1);
            let lhs = gauss_sum_direct(&(r * s).into(), &(*n).into()).unwrap();
            let rhs = gauss_sum_direct(&r.into(), &(*n).into()).unwrap() * symbol_small(s, *n).unwrap() as f64;
            assert!(rel_err(lhs, rhs) < 1e-9);
        }
    }

    #[test]
    fn twisted_identity_small() {
        for c in primary_up_to(120) {
            for j in [1u8, 2] {
                for r in [g(1, 0), g(0, 1), g(1, 1), g(2, 3), g(4, 0)] {
                    let a = gauss_sum_twisted(&r, j, &c.into()).unwrap();
                    let b = gauss_sum_twisted_direct(&r, j, &c.into()).unwrap();
                    assert!(rel_err(a, b) < 1e-9, "r={r} j={j} c={c}: {a} vs {b}");
                    assert!([-2, 0, 2].contains(&mod2_prefactor(r.to_small().unwrap(), j)));
                }
            }
        }
        // Im r odd, Re r + j - 1 even: both sides vanish
        let r = g(1, 1);
        let c = g(3, 2);
        assert_eq!(gauss_sum_twisted(&r, 2, &c).unwrap(), Complex64::new(0.0, 0.0));
        assert!(gauss_sum_twisted_direct(&r, 2, &c).unwrap().norm() < 1e-9);
    }

    #[test]
    fn primitive_characters_have_full_magnitude() {
        for n in primary_up_to(300).into_iter().step_by(3) {
            for j in Psi::ALL {
                let ch = primitive_inducing(&n.into(), j).unwrap();
                let q = ch.modulus.to_small().unwrap();
                let v = character_sum_direct(SmallGaussian::new(1, 0), q, |x| ch.eval(x));
                assert!((v.norm() - (q.norm() as f64).sqrt()).abs() < 1e-8, "{n} {j}");
            }
        }
    }
}
