//! Sparse multivariate polynomials over Q.
//!
//! Exponent keys always have length `nvars`, no zero coefficients are
//! stored, and `nvars` is kept minimal (no trailing unused variable), so
//! structural equality is mathematical equality under the embeddings
//! Q[x1..xm] into Q[x1..xn]. Binary operations pad the shorter operand.

use crate::{Integer, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Graded lexicographic comparison: total degree first; within a degree a
/// higher exponent on an earlier variable sorts first, so ascending order
/// prints x1^2 + x1*x2 + x2^2. This is the documented term order for all
/// printed and serialized output (and a bona fide monomial order, used by
/// the exact division below).
pub fn grlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        let n = a.len().max(b.len());
        for i in 0..n {
            let (x, y) = (
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            );
            match y.cmp(&x) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    })
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            nvars: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { nvars: 0, terms }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(Integer::from(n)))
    }

    /// The variable x_{i+1} (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0u32; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Rational::one());
        MPoly {
            nvars: i + 1,
            terms,
        }
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        let mut p = MPoly { nvars: 0, terms };
        p.canonicalize();
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in it {
            p.add_term(&e, c);
        }
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let used = self
            .terms
            .keys()
            .map(|e| e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0);
        if used != self.nvars || self.terms.keys().any(|e| e.len() != used) {
            let old = std::mem::take(&mut self.terms);
            for (mut e, c) in old {
                e.resize(used, 0);
                self.terms.insert(e, c);
            }
        }
        self.nvars = used;
    }

    fn add_term(&mut self, e: &[u32], c: Rational) {
        if c.is_zero() {
            return;
        }
        let mut key = e.to_vec();
        if key.len() < self.nvars {
            key.resize(self.nvars, 0);
        } else if key.len() > self.nvars {
            let n = key.len();
            let old = std::mem::take(&mut self.terms);
            for (mut k, v) in old {
                k.resize(n, 0);
                self.terms.insert(k, v);
            }
            self.nvars = n;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.nvars == 0
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0u32; self.nvars][..].to_vec())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        let mut key = e.to_vec();
        let used = key.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        if used > self.nvars {
            return Rational::zero();
        }
        key.resize(self.nvars, 0);
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in graded lexicographic order (the documented output order).
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| grlex(&a.0, &b.0));
        v
    }

    /// Minimal total degree of a nonzero polynomial.
    pub fn ord(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    /// Lowest total-degree homogeneous part.
    pub fn initial_form(&self) -> MPoly {
        match self.ord() {
            None => MPoly::zero(),
            Some(d) => MPoly::from_terms(
                self.terms
                    .iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() == d)
                    .map(|(e, c)| (e.clone(), c.clone())),
            ),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let k = e.get(var).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] = k - 1;
            out.add_term(&e2, c * Rational::from_integer(Integer::from(k)));
        }
        out.canonicalize();
        out
    }

    /// Substitute x_i -> x_i^q for every variable (exponent stretch).
    pub fn stretch_exponents(&self, q: u32) -> MPoly {
        assert!(q >= 1);
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|&x| x * q).collect(), c.clone()))
                .collect(),
        }
    }

    /// Evaluate at the origin in all variables.
    pub fn eval_origin(&self) -> Rational {
        self.constant_term()
    }

    /// lcm of all coefficient denominators.
    pub fn denominator_lcm(&self) -> Integer {
        let mut acc = Integer::one();
        for c in self.terms.values() {
            acc = num_integer::Integer::lcm(&acc, c.denom());
        }
        acc.abs()
    }

    /// Leading term under grlex: (exponent, coefficient).
    fn leading_term(&self) -> Option<(Vec<u32>, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Exact division: `Some(q)` with `self = q * d` when `d` divides
    /// `self` exactly, `None` otherwise. `d` must be nonzero.
    pub fn try_div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lt_e, lt_c) = d.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while !rem.is_zero() {
            let (re, rc) = rem.leading_term().unwrap();
            let mut qe = vec![0u32; re.len().max(lt_e.len())];
            for (i, q) in qe.iter_mut().enumerate() {
                let a = re.get(i).copied().unwrap_or(0);
                let b = lt_e.get(i).copied().unwrap_or(0);
                if a < b {
                    return None;
                }
                *q = a - b;
            }
            let qc = rc / &lt_c;
            let qt = MPoly::monomial(qe, qc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::one()
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out.canonicalize();
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out.canonicalize();
        out
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .into_iter()
                .map(|(e, c)| (e, -c))
                .collect(),
        }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let n = self.nvars.max(rhs.nvars);
        let mut out = MPoly {
            nvars: n,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = vec![0u32; n];
                for (i, x) in e.iter_mut().enumerate() {
                    *x = ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0);
                }
                let entry = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out.canonicalize();
        out
    }
}

pub(crate) fn fmt_coeff(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 1 {
            parts.push(format!("x{}", i + 1));
        } else if k > 1 {
            parts.push(format!("x{}^{}", i + 1, k));
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let mono = fmt_monomial(&e);
            let abs = c.abs();
            let lead = if first {
                if c.is_negative() { "-".to_string() } else { String::new() }
            } else if c.is_negative() {
                " - ".to_string()
            } else {
                " + ".to_string()
            };
            if mono.is_empty() {
                write!(f, "{lead}{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{lead}{mono}")?;
            } else {
                write!(f, "{lead}{}*{mono}", fmt_coeff(&abs))?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn canonical_nvars() {
        let a = &x(0) + &MPoly::from_int(1);
        assert_eq!(a.nvars(), 1);
        let b = &x(1) - &x(1);
        assert!(b.is_zero());
        assert_eq!(b.nvars(), 0);
        // x1 constructed inside a 2-variable expression equals plain x1
        let c = &(&x(0) + &x(1)) - &x(1);
        assert_eq!(c, x(0));
    }

    #[test]
    fn arithmetic_and_pow() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(p, q);
        assert_eq!((&x(0) + &MPoly::from_int(1)).pow(2).coefficient(&[1]), rat_int(2));
    }

    #[test]
    fn initial_form_and_ord() {
        // x1*x2 + x1^3: lowest total degree part is x1*x2
        let p = &(&x(0) * &x(1)) + &x(0).pow(3);
        assert_eq!(p.ord(), Some(2));
        assert_eq!(p.initial_form(), &x(0) * &x(1));
    }

    #[test]
    fn derivative_works() {
        let p = &(&x(0).pow(2) * &x(1)) + &x(0);
        let d = p.derivative(0);
        let expect = &(&x(0) * &x(1)).scalar_mul(&rat_int(2)) + &MPoly::from_int(1);
        assert_eq!(d, expect);
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        let p = &a * &b;
        assert_eq!(p.try_div_exact(&a).unwrap(), b);
        assert_eq!(p.try_div_exact(&(&a + &MPoly::from_int(1))), None);
        let cubed = a.pow(3);
        assert_eq!(cubed.try_div_exact(&a.pow(2)).unwrap(), a);
    }

    #[test]
    fn display_is_grlex() {
        let p = &(&x(1).pow(3) + &(&x(0) * &x(1))) + &MPoly::from_int(2);
        assert_eq!(p.to_string(), "2 + x1*x2 + x2^3");
        let q = MPoly::monomial(vec![1], rat(-1, 2));
        assert_eq!(q.to_string(), "-1/2*x1");
    }
}
