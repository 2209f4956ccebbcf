//! Primary elements by norm, rational prime sieves and the prime tables used
//! by Euler products and batched character evaluation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::factor::{primes_above, split_prime};
use super::gaussian::GaussianInt;
use super::small::SmallGaussian;

/// Smallest-prime-factor sieve on `0..=bound`.
#[derive(Debug)]
pub struct Sieve {
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(bound: u64) -> Self {
        let n = bound as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf, primes }
    }

    pub fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn smallest_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }
}

/// A shared sieve covering at least `bound`; built once per size class and
/// immutable afterwards.
pub fn shared_sieve(bound: u64) -> Arc<Sieve> {
    static CACHE: OnceLock<Mutex<Option<Arc<Sieve>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut guard = cache.lock().expect("sieve cache poisoned");
    if let Some(s) = guard.as_ref() {
        if s.bound() >= bound {
            return Arc::clone(s);
        }
    }
    let s = Arc::new(Sieve::new(bound.max(1 << 16).next_power_of_two()));
    *guard = Some(Arc::clone(&s));
    s
}

/// Every primary element with norm at most `max_norm`, ordered by
/// `(norm, re, im)`.
pub fn primary_up_to(max_norm: u64) -> Vec<SmallGaussian> {
    let r = (max_norm as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let z = SmallGaussian::new(a, b);
            if z.norm() <= max_norm as i128 && z.is_primary() {
                out.push(z);
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.re, z.im));
    out
}

/// [`primary_up_to`] as exact Gaussian integers.
pub fn enumerate_primary(max_norm: u64) -> Vec<GaussianInt> {
    primary_up_to(max_norm).into_iter().map(Into::into).collect()
}

/// Norms of the prime ideals with norm at most `bound`, ascending, with
/// multiplicity (two ideals above each split prime).
pub fn prime_ideal_norms(bound: u64) -> Vec<u64> {
    let sieve = shared_sieve(bound);
    let mut out = Vec::new();
    for &p in sieve.primes() {
        if p > bound {
            break;
        }
        match p % 4 {
            2 => out.push(2),
            1 => {
                out.push(p);
                out.push(p);
            }
            _ => {
                if p.checked_mul(p).is_some_and(|q| q <= bound) {
                    out.push(p * p);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The primary primes with norm at most `bound`, ordered by `(norm, re, im)`.
pub fn primary_primes(bound: u64) -> Vec<SmallGaussian> {
    let sieve = shared_sieve(bound);
    let mut out = Vec::new();
    for &p in sieve.primes() {
        if p > bound {
            break;
        }
        if p % 4 == 1 {
            let (a, b) = split_prime(p);
            out.push(a);
            out.push(b);
        } else if p % 4 == 3 && p.checked_mul(p).is_some_and(|q| q <= bound) {
            out.push(SmallGaussian::new(-(p as i64), 0));
        }
    }
    out.sort_by_key(|z| (z.norm(), z.re, z.im));
    out
}

/// Primary elements up to a norm bound, each written as `prime · cofactor`
/// with both pieces indexed, so completely multiplicative functions can be
/// filled in from their values on primes in one pass.
#[derive(Debug)]
pub struct PrimaryTable {
    pub elements: Vec<SmallGaussian>,
    pub norms: Vec<u64>,
    pub primes: Vec<SmallGaussian>,
    /// For `elements[k]` with `k > 0`: `(index into primes, index of cofactor)`.
    pub split: Vec<(u32, u32)>,
}

impl PrimaryTable {
    pub fn new(max_norm: u64) -> Self {
        let elements = primary_up_to(max_norm);
        let norms: Vec<u64> = elements.iter().map(|z| z.norm() as u64).collect();
        let index: HashMap<SmallGaussian, u32> = elements.iter().enumerate().map(|(k, z)| (*z, k as u32)).collect();
        let sieve = shared_sieve(max_norm);
        let mut primes: Vec<SmallGaussian> = Vec::new();
        let mut prime_index: HashMap<SmallGaussian, u32> = HashMap::new();
        let mut split = vec![(u32::MAX, u32::MAX); elements.len()];
        for (k, z) in elements.iter().enumerate().skip(1) {
            let p = sieve.smallest_factor(norms[k]);
            let q = primes_above(p).into_iter().find(|q| q.divides(*z)).expect("a prime above p divides z");
            let cof = z.div_exact(q).expect("divisible");
            let ci = index[&cof];
            let pi = *prime_index.entry(q).or_insert_with(|| {
                primes.push(q);
                (primes.len() - 1) as u32
            });
            split[k] = (pi, ci);
        }
        PrimaryTable { elements, norms, primes, split }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of leading elements with norm at most `bound`.
    pub fn count_up_to(&self, bound: u64) -> usize {
        self.norms.partition_point(|&n| n <= bound)
    }

    /// Fills `out[k] = f(elements[k])` for a completely multiplicative `f`
    /// given through its values on the primes, restricted to the first
    /// `count` elements.
    pub fn multiplicative_fill(&self, count: usize, on_prime: impl Fn(SmallGaussian) -> i8, out: &mut Vec<i8>) {
        self.multiplicative_fill_indexed(count, |k| on_prime(self.primes[k]), out)
    }

    /// As [`multiplicative_fill`](Self::multiplicative_fill), with the prime
    /// given by its index into `primes`.
    pub fn multiplicative_fill_indexed(&self, count: usize, on_prime: impl Fn(usize) -> i8, out: &mut Vec<i8>) {
        let mut prime_vals: Vec<i8> = vec![2; self.primes.len()];
        out.clear();
        out.reserve(count);
        for k in 0..count {
            if k == 0 {
                out.push(1);
                continue;
            }
            let (pi, ci) = self.split[k];
            let pv = &mut prime_vals[pi as usize];
            if *pv == 2 {
                *pv = on_prime(pi as usize);
            }
            out.push(*pv * out[ci as usize]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds() {
        assert_eq!(primary_up_to(1), vec![SmallGaussian::new(1, 0)]);
        assert_eq!(primary_up_to(5), vec![SmallGaussian::new(1, 0), SmallGaussian::new(-1, -2), SmallGaussian::new(-1, 2)]);
    }

    /// Odd ideals of norm ≤ M counted through r2(k)/4 = Σ_{d | k} χ_{-4}(d).
    fn odd_ideal_count(m: u64) -> usize {
        let mut total = 0i64;
        for k in (1..=m).step_by(2) {
            let mut s = 0i64;
            let mut d = 1;
            while d * d <= k {
                if k % d == 0 {
                    let chi = |x: u64| if x % 4 == 1 { 1 } else { -1 };
                    s += chi(d);
                    if d * d != k {
                        s += chi(k / d);
                    }
                }
                d += 2;
            }
            total += s;
        }
        total as usize
    }

    #[test]
    fn count_matches_ideal_oracle() {
        assert_eq!(primary_up_to(10_000).len(), odd_ideal_count(10_000));
    }

    #[test]
    fn ordered_and_unique() {
        let v = primary_up_to(5000);
        for w in v.windows(2) {
            assert!((w[0].norm(), w[0].re, w[0].im) < (w[1].norm(), w[1].re, w[1].im));
        }
        assert!(v.contains(&SmallGaussian::new(9, 0)));
        let mut last = 0;
        for m in [10, 100, 1000, 2000] {
            let c = primary_up_to(m).len();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn prime_tables() {
        assert_eq!(prime_ideal_norms(13), vec![2, 5, 5, 9, 13, 13]);
        let ps = primary_primes(50);
        assert!(ps.iter().all(|p| p.is_primary()));
        assert_eq!(ps.len(), prime_ideal_norms(50).len() - 1);
    }

    #[test]
    fn table_split_is_exact() {
        let t = PrimaryTable::new(3000);
        for k in 1..t.len() {
            let (pi, ci) = t.split[k];
            assert_eq!(t.primes[pi as usize] * t.elements[ci as usize], t.elements[k]);
        }
        assert_eq!(t.count_up_to(5), 3);
    }
}
