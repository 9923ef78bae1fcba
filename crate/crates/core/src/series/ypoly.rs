//! Polynomials in a distinguished variable y with multivariate polynomial
//! coefficients: the defining equations P(x, y).

use super::mpoly::MPoly;
use super::tseries::TSeries;
use crate::error::{Error, Result};
use crate::{Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YPoly {
    coeffs: Vec<MPoly>, // coeffs[j] multiplies y^j; leading entry nonzero
}

impl YPoly {
    pub fn new(mut coeffs: Vec<MPoly>) -> Self {
        while coeffs.last().is_some_and(MPoly::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, j: usize) -> MPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(MPoly::zero)
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> MPoly {
        self.coeffs.last().cloned().unwrap_or_else(MPoly::zero)
    }

    /// Number of x-variables appearing across all coefficients.
    pub fn nvars_x(&self) -> usize {
        self.coeffs.iter().map(MPoly::nvars).max().unwrap_or(0)
    }

    pub fn derivative_y(&self) -> YPoly {
        let d: Vec<MPoly> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scalar_mul(&Rational::from_integer(Integer::from(j))))
            .collect();
        YPoly::new(d)
    }

    pub fn add(&self, other: &YPoly) -> YPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| &self.coeff(j) + &other.coeff(j))
            .collect();
        YPoly::new(coeffs)
    }

    pub fn mul(&self, other: &YPoly) -> YPoly {
        if self.is_zero() || other.is_zero() {
            return YPoly::zero();
        }
        let mut coeffs = vec![MPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        YPoly::new(coeffs)
    }

    pub fn scalar_mul(&self, c: &Rational) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|a| a.scalar_mul(c)).collect())
    }

    /// Recenter: P(x, s + y), expanding by Horner in y.
    pub fn recenter(&self, s: &MPoly) -> YPoly {
        // Horner: P(s + y) = (...((c_d (s+y) + c_{d-1})(s+y) + ...) + c_0
        let shift = YPoly::new(vec![s.clone(), MPoly::one()]);
        let mut acc = YPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&YPoly::new(vec![c.clone()]));
        }
        acc
    }

    /// Substitute y -> c * y.
    pub fn scale_y(&self, c: &Rational) -> YPoly {
        let mut pw = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a.scalar_mul(&pw);
                pw *= c;
                out
            })
            .collect();
        YPoly::new(coeffs)
    }

    /// Substitute x_i -> x_i^q in every coefficient.
    pub fn stretch_x(&self, q: u32) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|c| c.stretch_exponents(q)).collect())
    }

    /// lcm of all coefficient denominators across the x-coefficients.
    pub fn denominator_lcm(&self) -> Integer {
        let mut acc = Integer::one();
        for c in &self.coeffs {
            acc = acc.lcm(&c.denominator_lcm());
        }
        acc
    }

    /// Multiply through so every coefficient is integral; returns the
    /// cleared polynomial together with the multiplier used.
    pub fn clear_denominators(&self) -> (YPoly, Integer) {
        let m = self.denominator_lcm();
        let mr = Rational::from_integer(m.clone());
        (self.scalar_mul(&mr), m)
    }

    /// Evaluate at a truncated multivariate series.
    pub fn eval_tseries(&self, point: &TSeries) -> Result<TSeries> {
        let nvars = point.nvars();
        let cap = point.cap();
        let mut acc = TSeries::zero(nvars, cap);
        for c in self.coeffs.iter().rev() {
            let cs = TSeries::from_mpoly(c, nvars, cap)?;
            acc = acc.mul(point)?.add(&cs)?;
        }
        Ok(acc)
    }

    /// Evaluate the y-polynomial at a constant.
    pub fn eval_constant(&self, c: &Rational) -> MPoly {
        let mut acc = MPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &acc.scalar_mul(c) + a;
        }
        acc
    }

    /// Degree in y of gcd(self, other) over the rational function field of
    /// the x-variables, computed with a pseudo-remainder sequence. A result
    /// of zero means the polynomials are coprime in y.
    pub fn gcd_degree_y(&self, other: &YPoly) -> usize {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_y() == 0 {
                return 0;
            }
            let r = pseudo_rem(&a, &b);
            a = b;
            b = r;
        }
        a.deg_y()
    }

    /// Squarefree in y: coprime with its own y-derivative.
    pub fn is_squarefree_y(&self) -> Result<()> {
        if self.deg_y() == 0 {
            return Err(Error::ConstantInY);
        }
        let d = self.gcd_degree_y(&self.derivative_y());
        if d > 0 {
            return Err(Error::NotSquarefree(d));
        }
        Ok(())
    }
}

/// Pseudo-remainder: lc(b)^{deg a - deg b + 1} * a mod b, content-reduced
/// to keep coefficient growth in check.
fn pseudo_rem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = b.deg_y();
    let lb = b.leading();
    let mut r = a.clone();
    while !r.is_zero() && r.deg_y() >= db {
        let dr = r.deg_y();
        let lr = r.leading();
        // lb * r - lr * y^{dr-db} * b
        let mut shifted = vec![MPoly::zero(); dr - db];
        shifted.extend(b.coeffs().iter().map(|c| c * &lr));
        let scaled = YPoly::new(r.coeffs().iter().map(|c| c * &lb).collect());
        r = scaled.add(&YPoly::new(shifted).scalar_mul(&-Rational::one()));
        if r.deg_y() == dr && !r.is_zero() {
            // cancellation must lower the degree
            debug_assert!(r.coeff(dr).is_zero());
        }
        r = reduce_content(r);
    }
    r
}

fn reduce_content(p: YPoly) -> YPoly {
    // divide out the common rational content to slow coefficient growth
    let mut num_gcd = Integer::zero();
    let mut den_lcm = Integer::one();
    for c in p.coeffs() {
        for (_, v) in c.terms() {
            num_gcd = num_gcd.gcd(v.numer());
            den_lcm = den_lcm.lcm(v.denom());
        }
    }
    if num_gcd.is_zero() || (num_gcd.is_one() && den_lcm.is_one()) {
        return p;
    }
    let scale = Rational::new(den_lcm, num_gcd);
    p.scalar_mul(&scale)
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{j}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn recenter_quadratic() {
        // P = y^2 - (1+x); P(x, 1+y) = y^2 + 2y - x
        let p = YPoly::new(vec![
            &MPoly::from_int(-1) - &x(0),
            MPoly::zero(),
            MPoly::one(),
        ]);
        let q = p.recenter(&MPoly::one());
        assert_eq!(q.coeff(0), -x(0));
        assert_eq!(q.coeff(1), MPoly::from_int(2));
        assert_eq!(q.coeff(2), MPoly::one());
    }

    #[test]
    fn squarefree_detection() {
        // y^2 - x is squarefree; (y - x)^2 is not
        let p = YPoly::new(vec![-x(0), MPoly::zero(), MPoly::one()]);
        assert!(p.is_squarefree_y().is_ok());
        let lin = YPoly::new(vec![-x(0), MPoly::one()]);
        let sq = lin.mul(&lin);
        assert!(matches!(sq.is_squarefree_y(), Err(Error::NotSquarefree(1))));
        // multivariate: (y - x1)(y - x2) squarefree
        let p2 = YPoly::new(vec![-x(0), MPoly::one()]).mul(&YPoly::new(vec![
            -x(1),
            MPoly::one(),
        ]));
        assert!(p2.is_squarefree_y().is_ok());
    }

    #[test]
    fn eval_tseries_root() {
        // P = y^2 + y - x at the Catalan-signed root x - x^2 + 2x^3 - ...
        let p = YPoly::new(vec![-x(0), MPoly::one(), MPoly::one()]);
        let mut root = TSeries::zero(1, 4);
        root.set_coefficient(vec![1], rat_int(1));
        root.set_coefficient(vec![2], rat_int(-1));
        root.set_coefficient(vec![3], rat_int(2));
        root.set_coefficient(vec![4], rat_int(-5));
        let v = p.eval_tseries(&root).unwrap();
        assert!(v.is_zero(), "residual {v}");
    }
}
