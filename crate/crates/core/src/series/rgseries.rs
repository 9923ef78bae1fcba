//! Univariate series on a rational exponent grid.
//!
//! `RGSeries<C>` is a series in one indeterminate `t` whose exponents live
//! on the grid (1/D)*Z. Supports are finite below any bound by
//! construction. The coefficient ring `C` is generic (rationals for the
//! Eisenstein pipeline, polynomials for the graded machinery); a `cap` of
//! `None` marks an exact element, `Some(k)` means coefficients are only
//! known for grid exponents <= k. Exponents may be negative (Laurent
//! segments show up in intermediate normalizations).

use crate::error::{Error, Result};
use crate::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient-ring bound for grid series: exact ring arithmetic.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

#[derive(Debug, Clone, PartialEq)]
pub struct RGSeries<C> {
    denom: u32,
    cap: Option<i64>,
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> RGSeries<C> {
    pub fn zero(denom: u32) -> Self {
        assert!(denom >= 1);
        RGSeries {
            denom,
            cap: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(denom: u32, k: i64, c: C) -> Self {
        let mut s = Self::zero(denom);
        if !c.is_zero() {
            s.terms.insert(k, c);
        }
        s
    }

    pub fn constant(denom: u32, c: C) -> Self {
        Self::monomial(denom, 0, c)
    }

    pub fn from_terms(denom: u32, it: impl IntoIterator<Item = (i64, C)>, cap: Option<i64>) -> Self {
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (k, c) in it {
            if let Some(cp) = cap {
                if k > cp {
                    continue;
                }
            }
            let entry = terms.entry(k).or_insert_with(C::zero);
            *entry = entry.clone() + c;
        }
        terms.retain(|_, c| !c.is_zero());
        RGSeries { denom, cap, terms }
    }

    /// Grid denominator D: exponents are k/D.
    pub fn grid_denom(&self) -> u32 {
        self.denom
    }

    /// Truncation cap in grid units; `None` for exact elements.
    pub fn cap(&self) -> Option<i64> {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: i64) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn set_coefficient(&mut self, k: i64, c: C) {
        if let Some(cp) = self.cap {
            assert!(k <= cp, "coefficient beyond the cap");
        }
        if c.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
    }

    /// Exponent (in grid units) of the lowest nonzero term.
    pub fn ord_grid(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Order as a rational exponent, with the initial coefficient.
    /// Distinguishes truncated-to-zero from exact zero.
    pub fn ord_in(&self) -> Result<(Rational, i64, C)> {
        match self.terms.iter().next() {
            Some((&k, c)) => Ok((
                Rational::new(k.into(), (self.denom as i64).into()),
                k,
                c.clone(),
            )),
            None => match self.cap {
                Some(cp) => Err(Error::ZeroUpToCap(format!(
                    "grid exponent {cp}/{}",
                    self.denom
                ))),
                None => Err(Error::ZeroInput),
            },
        }
    }

    pub fn truncate(&self, cap: i64) -> Self {
        let new_cap = Some(match self.cap {
            Some(c) => c.min(cap),
            None => cap,
        });
        RGSeries {
            denom: self.denom,
            cap: new_cap,
            terms: self
                .terms
                .iter()
                .filter(|(&k, _)| k <= cap)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Reinterpret on a finer grid: D -> D * m, exponents scaled by m.
    pub fn refine_grid(&self, m: u32) -> Self {
        assert!(m >= 1);
        RGSeries {
            denom: self.denom * m,
            cap: self.cap.map(|c| c * m as i64),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k * m as i64, c.clone()))
                .collect(),
        }
    }

    /// Multiply by t^{k/D}.
    pub fn shift(&self, k: i64) -> Self {
        RGSeries {
            denom: self.denom,
            cap: self.cap.map(|c| c + k),
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RGSeries {
            denom: self.denom,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        if c.is_zero() {
            let mut z = Self::zero(self.denom);
            z.cap = self.cap;
            return z;
        }
        let mut out = RGSeries {
            denom: self.denom,
            cap: self.cap,
            terms: BTreeMap::new(),
        };
        for (&k, v) in &self.terms {
            let w = v.clone() * c.clone();
            if !w.is_zero() {
                out.terms.insert(k, w);
            }
        }
        out
    }

    fn check_grid(&self, other: &Self) {
        assert_eq!(
            self.denom, other.denom,
            "grid denominators must agree; refine first"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_grid(other);
        let cap = match (self.cap, other.cap) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            let entry = terms.entry(k).or_insert_with(C::zero);
            *entry = entry.clone() + c.clone();
        }
        if let Some(cp) = cap {
            terms.retain(|&k, _| k <= cp);
        }
        terms.retain(|_, c| !c.is_zero());
        RGSeries {
            denom: self.denom,
            cap,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product. The output cap is the sound combination
    /// min(cap_f + ord_g, cap_g + ord_f), which reduces to the minimum of
    /// the caps for series of nonnegative order.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_grid(other);
        if self.is_zero() || other.is_zero() {
            // an exact zero operand gives an exact zero; a truncated zero
            // still bounds what is known
            let cap = match (self.is_zero() && self.cap.is_none(),
                             other.is_zero() && other.cap.is_none()) {
                (true, _) | (_, true) => None,
                _ => self.mul_cap(other),
            };
            let mut z = Self::zero(self.denom);
            z.cap = cap;
            return z;
        }
        let cap = self.mul_cap(other);
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                let k = ka + kb;
                if let Some(cp) = cap {
                    if k > cp {
                        continue;
                    }
                }
                let entry = terms.entry(k).or_insert_with(C::zero);
                *entry = entry.clone() + ca.clone() * cb.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        RGSeries {
            denom: self.denom,
            cap,
            terms,
        }
    }

    fn mul_cap(&self, other: &Self) -> Option<i64> {
        let of = self.ord_grid().unwrap_or_else(|| self.cap.map_or(0, |c| c + 1));
        let og = other
            .ord_grid()
            .unwrap_or_else(|| other.cap.map_or(0, |c| c + 1));
        match (self.cap, other.cap) {
            (None, None) => None,
            (Some(cf), None) => Some(cf + og),
            (None, Some(cg)) => Some(cg + of),
            (Some(cf), Some(cg)) => Some((cf + og).min(cg + of)),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RGSeries<D> {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(k, d);
            }
        }
        RGSeries {
            denom: self.denom,
            cap: self.cap,
            terms,
        }
    }

    /// Horner evaluation of a y-polynomial with grid-series coefficients.
    pub fn eval_poly(coeffs: &[RGSeries<C>], point: &RGSeries<C>) -> RGSeries<C> {
        let denom = point.denom;
        let mut acc = RGSeries::zero(denom);
        for c in coeffs.iter().rev() {
            acc = acc.mul(point).add(c);
        }
        acc
    }
}

impl RGSeries<Rational> {
    /// Multiplicative inverse, exact through the derived cap. The initial
    /// term c*t^{k} must exist; the result starts at -k.
    pub fn invert(&self) -> Result<RGSeries<Rational>> {
        let (_, k, c0) = self.ord_in()?;
        // normalized u with u_0 = 1: self = c0 t^k * u
        let u = self.shift(-k).scalar_mul(&(Rational::one() / &c0));
        let target = match u.cap {
            Some(c) => c,
            None => u.terms.keys().last().copied().unwrap_or(0).max(0),
        };
        // recursive inversion: v_0 = 1, v_m = -sum_{j=1..m} u_j v_{m-j}
        let mut v: BTreeMap<i64, Rational> = BTreeMap::new();
        v.insert(0, Rational::one());
        for m in 1..=target {
            let mut acc = Rational::zero();
            for (&j, uj) in u.terms.range(1..=m) {
                if let Some(vm) = v.get(&(m - j)) {
                    acc += uj * vm;
                }
            }
            if !acc.is_zero() {
                v.insert(m, -acc);
            }
        }
        let vser = RGSeries {
            denom: self.denom,
            cap: Some(target),
            terms: v,
        };
        Ok(vser.shift(-k).scalar_mul(&(Rational::one() / &c0)))
    }
}

impl<C: Coeff> fmt::Display for RGSeries<C>
where
    C: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (&k, c) in &self.terms {
                if !first {
                    write!(f, " + ")?;
                }
                if k == 0 {
                    write!(f, "({c})")?;
                } else if self.denom == 1 {
                    write!(f, "({c})*t^{k}")?;
                } else {
                    write!(f, "({c})*t^({k}/{})", self.denom)?;
                }
                first = false;
            }
        }
        if let Some(cp) = self.cap {
            write!(f, " + O(t^({}/{}))", cp + 1, self.denom)?;
        }
        Ok(())
    }
}
