//! Prime-count growth profiles s_l and p-adic valuation envelopes of
//! coefficient streams.

use crate::error::Result;
use crate::exactnum::{factorize_with_cap, padic_val, PadicVal, DEFAULT_FACTOR_CAP};
use crate::{Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEntry {
    pub l: usize,
    /// Omega of lcm(b_0..b_l): prime factors with multiplicity.
    pub s: u64,
    /// s_l / (l ln l) for l >= 2, zero below.
    pub ratio: f64,
}

/// Growth of the denominator lcm of a coefficient stream. `fitted_k` is
/// the maximum of `ratio` over l >= 2, the smallest constant K for which
/// s_l <= K l ln l holds on the observed range; the bound's existence is
/// the theorem, the value is reported, not asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub entries: Vec<GrowthEntry>,
    pub fitted_k: f64,
    pub argmax: usize,
    /// Valuation envelope slopes for the smallest primes of the support.
    pub prime_slopes: Vec<(Integer, Rational)>,
}

impl GrowthReport {
    pub fn final_s(&self) -> u64 {
        self.entries.last().map(|e| e.s).unwrap_or(0)
    }
}

/// Exact s_l profile via factorization of the running-lcm increments.
pub fn prime_count_profile(coeffs: &[Rational]) -> Result<GrowthReport> {
    prime_count_profile_with_cap(coeffs, DEFAULT_FACTOR_CAP)
}

pub fn prime_count_profile_with_cap(coeffs: &[Rational], cap: u64) -> Result<GrowthReport> {
    let mut lcm = Integer::one();
    let mut s: u64 = 0;
    let mut primes: Vec<Integer> = Vec::new();
    let mut entries = Vec::with_capacity(coeffs.len());
    let mut fitted_k = 0.0;
    let mut argmax = 0;
    for (l, c) in coeffs.iter().enumerate() {
        let b = c.denom().abs();
        let inc = &b / b.gcd(&lcm);
        if !inc.is_one() {
            let f = factorize_with_cap(&inc, cap)?;
            s += f.omega_count();
            for (p, _) in f.factors() {
                if !primes.contains(p) {
                    primes.push(p.clone());
                }
            }
            lcm *= &inc;
        }
        let ratio = if l >= 2 {
            s as f64 / (l as f64 * (l as f64).ln())
        } else {
            0.0
        };
        if ratio > fitted_k {
            fitted_k = ratio;
            argmax = l;
        }
        entries.push(GrowthEntry { l, s, ratio });
    }
    primes.sort();
    primes.truncate(8);
    let prime_slopes = primes
        .into_iter()
        .map(|p| {
            let prof = padic_profile(coeffs, &p)?;
            Ok((p, prof.slope))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthReport {
        entries,
        fitted_k,
        argmax,
        prime_slopes,
    })
}

/// Per-coefficient p-adic valuations with a linear lower envelope: the
/// largest slope m (clamped at zero) such that v_l >= m (l - l0) + v_{l0}
/// anchored at the first finite valuation.
#[derive(Debug, Clone, PartialEq)]
pub struct PadicProfile {
    pub valuations: Vec<Option<i64>>,
    pub slope: Rational,
}

pub fn padic_profile(coeffs: &[Rational], p: &Integer) -> Result<PadicProfile> {
    let mut valuations = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        valuations.push(match padic_val(c, p)? {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinite => None,
        });
    }
    let anchor = valuations
        .iter()
        .enumerate()
        .find_map(|(i, v)| v.map(|v| (i as i64, v)));
    let mut slope = Rational::zero();
    if let Some((l0, v0)) = anchor {
        for (l, v) in valuations.iter().enumerate() {
            let l = l as i64;
            if l <= l0 {
                continue;
            }
            if let Some(v) = v {
                let m = Rational::new(Integer::from(v - v0), Integer::from(l - l0));
                if m < slope {
                    slope = m;
                }
            }
        }
    }
    Ok(PadicProfile { valuations, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, rat_int};

    fn exp_coeffs(n: usize) -> Vec<Rational> {
        let mut out = vec![rat_int(1)];
        for l in 1..=n {
            let prev = out[l - 1].clone();
            out.push(prev / rat_int(l as i64));
        }
        out
    }

    #[test]
    fn exp_profile_small() {
        let report = prime_count_profile(&exp_coeffs(4)).unwrap();
        // lcm = 24 = 2^3 * 3 so s_4 = 4
        assert_eq!(report.final_s(), 4);
    }

    #[test]
    fn integer_sequence_profile() {
        let coeffs: Vec<Rational> = (0..10).map(|n| rat_int(n * n - 3)).collect();
        let report = prime_count_profile(&coeffs).unwrap();
        assert!(report.entries.iter().all(|e| e.s == 0));
        assert_eq!(report.fitted_k, 0.0);
    }

    #[test]
    fn log_profile() {
        // log(1+x): f_l = (-1)^{l+1}/l, lcm(1..10) = 2520 = 2^3 3^2 5 7
        let coeffs: Vec<Rational> = std::iter::once(rat_int(0))
            .chain((1..=10).map(|l| {
                let sign = if l % 2 == 1 { 1 } else { -1 };
                rat(sign, l)
            }))
            .collect();
        let report = prime_count_profile(&coeffs).unwrap();
        assert_eq!(report.final_s(), 7);
    }

    #[test]
    fn padic_exp_legendre() {
        // v_2(1/l!) = -(l - s_2(l)) by Legendre's formula
        let coeffs = exp_coeffs(16);
        let prof = padic_profile(&coeffs, &int(2)).unwrap();
        for (l, v) in prof.valuations.iter().enumerate() {
            let s2 = (l as u64).count_ones() as i64;
            assert_eq!(*v, Some(-(l as i64 - s2)));
        }
        // envelope slope stays >= -1
        assert!(prof.slope >= rat_int(-1));
        assert!(prof.slope < rat_int(0));
    }

    #[test]
    fn padic_trivial_prime() {
        let coeffs = exp_coeffs(12);
        // 17 divides no denominator up to 12!
        let prof = padic_profile(&coeffs, &int(17)).unwrap();
        assert_eq!(prof.slope, rat_int(0));
        assert!(prof.valuations.iter().all(|v| *v == Some(0)));
    }

    #[test]
    fn padic_zero_coefficients_skipped() {
        let coeffs = vec![rat_int(0), rat_int(1), rat(1, 4)];
        let prof = padic_profile(&coeffs, &int(2)).unwrap();
        assert_eq!(prof.valuations[0], None);
        assert_eq!(prof.slope, rat_int(-2));
    }
}
