//! Dense univariate polynomials: Z[t] for recurrence coefficients, Q[x]
//! and its fraction field for the derivative-tower linear algebra.

use crate::{Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial in Z[t], ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().map(Integer::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![Integer::from(c)])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn eval(&self, t: &Integer) -> Integer {
        let mut acc = Integer::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_i64(&self, t: i64) -> Integer {
        self.eval(&Integer::from(t))
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Integer::zero)
                        + other.coeffs.get(i).cloned().unwrap_or_else(Integer::zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Substitute t -> t + s.
    pub fn shift_var(&self, s: i64) -> IntPoly {
        let mut acc = IntPoly::zero();
        let shift = IntPoly::new(vec![Integer::from(s), Integer::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&IntPoly::new(vec![c.clone()]));
        }
        acc
    }

    /// All integer roots (with the zero root when t divides).
    pub fn integer_roots(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut coeffs = self.coeffs.clone();
        let mut k = 0;
        while coeffs.first().map(Integer::is_zero).unwrap_or(false) {
            coeffs.remove(0);
            k += 1;
        }
        if k > 0 {
            out.push(Integer::zero());
        }
        if coeffs.len() <= 1 {
            return out;
        }
        let c0 = coeffs[0].abs();
        if let Ok(f) = crate::exactnum::factorize(&c0) {
            let p = IntPoly::new(coeffs);
            for d in f.divisors() {
                for cand in [d.clone(), -d] {
                    if p.eval(&cand).is_zero() && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl IntPoly {
    /// Render with a named variable ("l" for recurrences, "x" for ODE
    /// coefficients).
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if first {
                if c.is_negative() { "-" } else { "" }.to_string()
            } else if c.is_negative() {
                " - ".into()
            } else {
                " + ".into()
            };
            let a = c.abs();
            match i {
                0 => out.push_str(&format!("{sign}{a}")),
                1 if a.is_one() => out.push_str(&format!("{sign}{var}")),
                1 => out.push_str(&format!("{sign}{a}*{var}")),
                _ if a.is_one() => out.push_str(&format!("{sign}{var}^{i}")),
                _ => out.push_str(&format!("{sign}{a}*{var}^{i}")),
            }
            first = false;
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("l"))
    }
}

/// Polynomial in Q[x], ascending, trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(Rational::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
                        + other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scalar_mul(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(Integer::from(i)))
                .collect(),
        )
    }

    /// Euclidean division.
    pub fn div_rem(&self, other: &QPoly) -> (QPoly, QPoly) {
        assert!(!other.is_zero());
        let mut rem = self.coeffs.clone();
        let d = other.degree();
        let lead = other.leading();
        if rem.len() <= d {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if q.is_zero() {
                continue;
            }
            quot[i - d] = q.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                let idx = i - d + j;
                let delta = &q * b;
                rem[idx] -= delta;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Exact division, panicking on a nonzero remainder (used inside
    /// fraction-free elimination where exactness is guaranteed).
    pub fn div_exact(&self, other: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // monic normal form
        let lead = a.leading();
        a.scalar_mul(&(Rational::one() / lead))
    }

    /// Clear to Z[t] (content-normalized, positive leading coefficient).
    pub fn to_int_poly(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut m = Integer::one();
        for c in &self.coeffs {
            m = m.lcm(c.denom());
        }
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(m.clone())).numer().clone())
            .collect();
        let mut g = Integer::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        IntPoly::new(ints.into_iter().map(|c| c / &g).collect())
    }
}

/// Rational function in x, normalized on construction: gcd divided out,
/// monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct QRat {
    pub num: QPoly,
    pub den: QPoly,
}

impl QRat {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QRat {
                num,
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        let lead = den.leading();
        QRat {
            num: num.scalar_mul(&(Rational::one() / &lead)),
            den: den.scalar_mul(&(Rational::one() / &lead)),
        }
    }

    pub fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &QRat) -> QRat {
        QRat::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &QRat) -> QRat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &QRat) -> QRat {
        QRat::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &QRat) -> QRat {
        assert!(!other.is_zero(), "division by zero rational function");
        QRat::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// d/dx of num/den.
    pub fn derivative(&self) -> QRat {
        let n = self.num.derivative().mul(&self.den);
        let m = self.num.mul(&self.den.derivative());
        QRat::new(n.sub(&m), self.den.mul(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, rat_int};

    #[test]
    fn int_poly_roots() {
        // (t+1)(t-3)t = t^3 - 2t^2 - 3t
        let p = IntPoly::from_i64(&[0, -3, -2, 1]);
        assert_eq!(p.integer_roots(), vec![int(-1), int(0), int(3)]);
        assert_eq!(IntPoly::from_i64(&[2, 1]).integer_roots(), vec![int(-2)]);
        assert!(IntPoly::from_i64(&[1, 0, 1]).integer_roots().is_empty());
    }

    #[test]
    fn int_poly_shift() {
        // p(t) = t^2, p(t - 1) = t^2 - 2t + 1
        let p = IntPoly::from_i64(&[0, 0, 1]);
        assert_eq!(p.shift_var(-1), IntPoly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn qpoly_div_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let a = QPoly::new(vec![rat_int(-1), rat_int(0), rat_int(1)]);
        let b = QPoly::new(vec![rat_int(-1), rat_int(1)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::new(vec![rat_int(1), rat_int(1)]));
        let g = a.gcd(&QPoly::new(vec![rat_int(1), rat_int(1)]));
        assert_eq!(g, QPoly::new(vec![rat_int(1), rat_int(1)]));
    }

    #[test]
    fn qrat_arithmetic() {
        // 1/(x-1) + 1/(x+1) = 2x/(x^2-1)
        let a = QRat::new(QPoly::one(), QPoly::new(vec![rat_int(-1), rat_int(1)]));
        let b = QRat::new(QPoly::one(), QPoly::new(vec![rat_int(1), rat_int(1)]));
        let s = a.add(&b);
        assert_eq!(s.num, QPoly::new(vec![rat_int(0), rat_int(2)]));
        assert_eq!(
            s.den,
            QPoly::new(vec![rat_int(-1), rat_int(0), rat_int(1)])
        );
        // derivative of 1/(x-1) is -1/(x-1)^2
        let d = a.derivative();
        assert_eq!(d.num, QPoly::constant(rat(-1, 1)));
        assert_eq!(
            d.den,
            QPoly::new(vec![rat_int(1), rat_int(-2), rat_int(1)])
        );
    }
}
