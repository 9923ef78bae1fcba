//! Ramified univariate series: sum of c_l * x^{l/q}.

use super::mpoly::fmt_coeff;
use super::rgseries::RGSeries;
use crate::Rational;
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A truncated Puiseux series with ramification index `ram`: coefficients
/// are exact for all grid exponents l <= cap. The representation is
/// canonical: gcd(ram, all l with nonzero coefficient) = 1, so the
/// ramification index is minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    ram: u32,
    cap: i64,
    coeffs: BTreeMap<i64, Rational>,
}

impl PuiseuxSeries {
    pub fn new(ram: u32, coeffs: impl IntoIterator<Item = (i64, Rational)>, cap: i64) -> Self {
        assert!(ram >= 1);
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (l, c) in coeffs {
            if c.is_zero() || l > cap {
                continue;
            }
            let entry = map.entry(l).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&l);
            }
        }
        let mut s = PuiseuxSeries {
            ram,
            cap,
            coeffs: map,
        };
        s.canonicalize();
        s
    }

    pub fn zero(cap: i64) -> Self {
        PuiseuxSeries {
            ram: 1,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, cap: i64) -> Self {
        Self::new(1, [(0, c)], cap)
    }

    fn canonicalize(&mut self) {
        let mut g = self.ram as i64;
        for (&l, _) in &self.coeffs {
            g = g.gcd(&l);
            if g == 1 {
                break;
            }
        }
        if g > 1 && !self.coeffs.is_empty() {
            self.coeffs = self
                .coeffs
                .iter()
                .map(|(&l, c)| (l / g, c.clone()))
                .collect();
            self.ram = (self.ram as i64 / g) as u32;
            self.cap = self.cap.div_euclid(g);
        } else if self.coeffs.is_empty() && self.ram > 1 {
            self.cap = self.cap.div_euclid(self.ram as i64);
            self.ram = 1;
        }
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    /// Truncation bound in grid units: coefficients with l <= cap are exact.
    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present, in grid units.
    pub fn lo(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Order as a rational exponent.
    pub fn ord(&self) -> Option<Rational> {
        self.lo()
            .map(|l| Rational::new(l.into(), (self.ram as i64).into()))
    }

    pub fn coefficient(&self, l: i64) -> Rational {
        self.coeffs.get(&l).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    /// Coefficients of x^0, x^1, ..., x^n for an unramified series.
    /// Panics when ram > 1.
    pub fn integer_coefficients(&self, n: usize) -> Vec<Rational> {
        assert_eq!(self.ram, 1, "series is ramified");
        (0..=n as i64).map(|l| self.coefficient(l)).collect()
    }

    /// View on the exponent grid (1/ram)Z with the cap carried over.
    pub fn to_grid(&self) -> RGSeries<Rational> {
        RGSeries::from_terms(
            self.ram,
            self.coeffs.iter().map(|(&l, c)| (l, c.clone())),
            Some(self.cap),
        )
    }

    /// Rebuild from a grid series (canonicalizing the ramification).
    pub fn from_grid(s: &RGSeries<Rational>) -> Self {
        let cap = s.cap().unwrap_or_else(|| {
            s.terms().last().map(|(&l, _)| l).unwrap_or(0)
        });
        PuiseuxSeries::new(
            s.grid_denom(),
            s.terms().map(|(&l, c)| (l, c.clone())),
            cap,
        )
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            ram: self.ram,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&l, c)| (l, -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(x^({}/{}))", self.cap + 1, self.ram);
        }
        let mut first = true;
        for (&l, c) in &self.coeffs {
            let abs = c.abs();
            let lead = if first {
                if c.is_negative() { "-".into() } else { String::new() }
            } else if c.is_negative() {
                " - ".to_string()
            } else {
                " + ".to_string()
            };
            let mono = if l == 0 {
                String::new()
            } else if self.ram == 1 {
                if l == 1 {
                    "x".into()
                } else {
                    format!("x^{l}")
                }
            } else {
                format!("x^({l}/{})", self.ram)
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
        write!(f, " + O(x^({}/{}))", self.cap + 1, self.ram)
    }
}
