//! Integer factorization, p-adic valuations and lcm accumulation.
//!
//! Factorization is trial division up to the square root of a configurable
//! cap (default 10^9). A surviving cofactor below the cap is prime by
//! construction; a larger survivor is accepted only when a deterministic
//! Miller-Rabin test certifies it prime, and otherwise reported as an
//! unfactored residue instead of being miscounted.

use crate::error::{Error, Result};
use crate::{int, Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default bound on the composite size a survivor of trial division may have.
pub const DEFAULT_FACTOR_CAP: u64 = 1_000_000_000;

/// An ordered prime factorization `n = prod p_i^{m_i}` with `p_1 < p_2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(Integer, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(Integer, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of prime factors counted with multiplicity (big Omega).
    pub fn omega_count(&self) -> u64 {
        self.factors.iter().map(|(_, m)| *m as u64).sum()
    }

    /// Multiplicity of `p`, zero when `p` does not divide the value.
    pub fn multiplicity(&self, p: &Integer) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Largest multiplicity appearing in the factorization.
    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    /// Reassembles the factored value.
    pub fn product(&self) -> Integer {
        let mut acc = Integer::one();
        for (p, m) in &self.factors {
            acc *= p.pow(*m);
        }
        acc
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<Integer> {
        let mut out = vec![Integer::one()];
        for (p, m) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*m as usize + 1));
            for d in &out {
                let mut v = d.clone();
                next.push(v.clone());
                for _ in 0..*m {
                    v = &v * p;
                    next.push(v.clone());
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Factor a positive integer with the default cap.
pub fn factorize(n: &Integer) -> Result<PrimeFactorization> {
    factorize_with_cap(n, DEFAULT_FACTOR_CAP)
}

/// Factor a positive integer. After all primes up to `sqrt(cap)` are
/// stripped, a survivor `m <= cap` is prime; a survivor above the cap is
/// subjected to a deterministic Miller-Rabin test and rejected as an
/// unfactored residue when composite.
pub fn factorize_with_cap(n: &Integer, cap: u64) -> Result<PrimeFactorization> {
    if n < &Integer::one() {
        return Err(Error::NonPositiveFactorize(n.clone()));
    }
    let mut rest = n.clone();
    let mut factors: Vec<(Integer, u32)> = Vec::new();

    let mut push = |p: Integer, m: u32| {
        if m > 0 {
            factors.push((p, m));
        }
    };

    for small in [2u64, 3, 5] {
        let p = int(small as i64);
        let mut m = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            m += 1;
        }
        push(p, m);
    }

    // 6k +- 1 wheel up to sqrt(cap), never past sqrt(rest).
    let bound = (cap as f64).sqrt() as u64 + 2;
    let mut k: u64 = 7;
    let mut step = 4u64; // alternates 4, 2 to hit 7, 11, 13, 17, ...
    while k <= bound {
        let p = int(k as i64);
        if &p * &p > rest {
            break;
        }
        let mut m = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            m += 1;
        }
        push(p, m);
        k += step;
        step = 6 - step;
    }

    if !rest.is_one() {
        let cap_big = Integer::from(cap);
        let sq = &rest * &rest;
        if rest <= cap_big || sq <= Integer::from(bound) * Integer::from(bound) {
            // no prime factor <= sqrt(rest) remains, so rest is prime
            push(rest, 1);
        } else if miller_rabin_deterministic(&rest) {
            push(rest, 1);
        } else {
            return Err(Error::UnfactoredResidue(rest, cap_big));
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(PrimeFactorization { factors })
}

/// Deterministic Miller-Rabin for odd n; the fixed witness set certifies
/// primality for all n < 3.3 * 10^24, which covers everything this crate
/// should ever see past the trial-division stage.
fn miller_rabin_deterministic(n: &Integer) -> bool {
    if n < &int(2) {
        return false;
    }
    for w in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = int(w);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = Integer::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for w in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = int(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test (trial division for small values, deterministic
/// Miller-Rabin beyond).
pub fn is_prime(n: &Integer) -> bool {
    if n < &int(2) {
        return false;
    }
    if n < &int(1 << 20) {
        let v = n.to_u64().unwrap();
        if v % 2 == 0 {
            return v == 2;
        }
        let mut k = 3u64;
        while k * k <= v {
            if v % k == 0 {
                return false;
            }
            k += 2;
        }
        return true;
    }
    miller_rabin_deterministic(n)
}

/// p-adic valuation value: finite or +infinity (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PadicVal {
    Finite(i64),
    Infinite,
}

impl PadicVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinite => None,
        }
    }
}

fn val_int(n: &Integer, p: &Integer) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut rest = n.abs();
    while (&rest % p).is_zero() {
        rest /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a rational; `Infinite` exactly for zero.
pub fn padic_val(q: &Rational, p: &Integer) -> Result<PadicVal> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if q.is_zero() {
        return Ok(PadicVal::Infinite);
    }
    Ok(PadicVal::Finite(
        val_int(q.numer(), p) - val_int(q.denom(), p),
    ))
}

/// Positive lcm of a nonempty sequence of nonzero integers.
pub fn lcm_accumulate(values: &[Integer]) -> Result<Integer> {
    if values.is_empty() {
        return Err(Error::EmptyLcm);
    }
    let mut acc = Integer::one();
    for v in values {
        if v.is_zero() {
            return Err(Error::ZeroInLcm);
        }
        acc = acc.lcm(v);
    }
    Ok(acc.abs())
}
