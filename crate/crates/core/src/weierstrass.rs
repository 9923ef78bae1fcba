//! Weierstrass preparation and division to a prescribed truncation order.
//!
//! For f regular of order d in the last variable, split f = A + x_n^d B
//! with B a unit and every monomial of A carrying one of the first n-1
//! variables. The quotient is the fixed point of q -> B^{-1} tau(g - A q)
//! (tau = cofactor of x_n^d), which gains one x'-adic order per round.
//! Worked in the quotient ring modulo total degree > cap + d, the fixed
//! point satisfies the exact division identity there because
//! rho(h) + x_n^d tau(h) = h holds with no loss below the working cap;
//! the classical uniqueness argument then pins q through total degree cap
//! and r one order further. That is why inputs must carry cap + d
//! precision, and why the returned pair is fully determined.

use crate::error::{Error, Result};
use crate::series::TSeries;
use crate::Rational;
use num_traits::Zero;

/// x_n^d + a_1(x') x_n^{d-1} + ... + a_d(x'), the a_i vanishing at the
/// origin; `coeffs[i]` is a_{i+1} in the first n-1 variables.
#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishedPolynomial {
    nvars: usize,
    degree: usize,
    coeffs: Vec<TSeries>,
}

impl DistinguishedPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// a_1 .. a_d, series in the first n-1 variables.
    pub fn coeffs(&self) -> &[TSeries] {
        &self.coeffs
    }

    /// Reassemble as an n-variable truncated series.
    pub fn to_series(&self, cap: u32) -> TSeries {
        let n = self.nvars;
        let mut out = TSeries::zero(n, cap);
        let top = vec![0u32; n - 1]
            .into_iter()
            .chain([self.degree as u32])
            .collect::<Vec<_>>();
        if self.degree as u32 <= cap {
            out.set_coefficient(top, Rational::from_integer(1.into()));
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            let xn_pow = (self.degree - 1 - i) as u32;
            for (e, c) in a.terms() {
                let mut key: Vec<u32> = e.clone();
                key.push(xn_pow);
                if key.iter().sum::<u32>() <= cap {
                    out.set_coefficient(key, c.clone());
                }
            }
        }
        out
    }
}

/// Order in x_n of f(0, ..., 0, x_n), or an error when it vanishes
/// through the cap.
fn regular_order(f: &TSeries) -> Result<usize> {
    let n = f.nvars();
    f.terms()
        .filter(|(e, _)| e[..n - 1].iter().all(|&k| k == 0))
        .map(|(e, _)| e[n - 1] as usize)
        .min()
        .ok_or(Error::NotRegular)
}

/// Keep the part of x_n-degree < d.
fn rho(h: &TSeries, d: usize) -> TSeries {
    let n = h.nvars();
    let mut out = TSeries::zero(n, h.cap());
    for (e, c) in h.terms() {
        if (e[n - 1] as usize) < d {
            out.set_coefficient(e.clone(), c.clone());
        }
    }
    out
}

/// The cofactor of x_n^d: terms of x_n-degree >= d, shifted down.
fn tau(h: &TSeries, d: usize) -> TSeries {
    let n = h.nvars();
    let mut out = TSeries::zero(n, h.cap());
    for (e, c) in h.terms() {
        if e[n - 1] as usize >= d {
            let mut key = e.clone();
            key[n - 1] -= d as u32;
            out.set_coefficient(key, c.clone());
        }
    }
    out
}

/// Weierstrass division g = f q + r with deg_{x_n} r < d, exact modulo
/// total degree > cap. Inputs must carry cap + d precision because the
/// quotient's top window is read off d orders deeper.
pub fn divide(g: &TSeries, f: &TSeries, cap: u32) -> Result<(TSeries, TSeries)> {
    if f.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch(f.nvars(), g.nvars()));
    }
    if f.nvars() == 0 {
        return Err(Error::InvalidArgument(
            "division needs at least one variable".into(),
        ));
    }
    let d = regular_order(f)?;
    let wcap = cap + d as u32;
    if f.cap() < wcap || g.cap() < wcap {
        return Err(Error::InvalidArgument(format!(
            "inputs must carry cap + d = {wcap} precision (got {} and {})",
            f.cap(),
            g.cap()
        )));
    }
    let f = f.truncate(wcap);
    let g = g.truncate(wcap);
    let a = rho(&f, d);
    let b = tau(&f, d);
    let b_inv = b.invert_unit()?;

    // fixed point: each round fixes one more x'-adic order
    let mut q = TSeries::zero(f.nvars(), wcap);
    for _ in 0..=wcap + 1 {
        let next = b_inv.mul(&tau(&g.sub(&a.mul(&q)?)?, d))?;
        if next == q {
            break;
        }
        q = next;
    }
    let r = rho(&g.sub(&f.mul(&q)?)?, d);
    debug_assert!(g.sub(&f.mul(&q)?.add(&r)?)?.truncate(cap).is_zero());
    Ok((q.truncate(cap), r.truncate(cap)))
}

/// Weierstrass preparation f = W * u with W distinguished of degree d and
/// u a unit, exact modulo total degree > cap.
pub fn prepare(f: &TSeries, cap: u32) -> Result<(DistinguishedPolynomial, TSeries)> {
    let n = f.nvars();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "preparation needs at least one variable".into(),
        ));
    }
    let d = regular_order(f)?;
    let wcap = cap + d as u32;
    if f.cap() < wcap {
        return Err(Error::InvalidArgument(format!(
            "input must carry cap + d = {wcap} precision (got {})",
            f.cap()
        )));
    }
    // divide x_n^d by f: x_n^d = f q + r, so f q = x_n^d - r =: W
    let xnd = {
        let mut s = TSeries::zero(n, wcap);
        let mut e = vec![0u32; n];
        e[n - 1] = d as u32;
        s.set_coefficient(e, Rational::from_integer(1.into()));
        s
    };
    let (q, r) = divide(&xnd, f, cap)?;
    let unit = q.invert_unit()?;

    // W = x_n^d - r: coefficients a_i = -(coefficient of x_n^{d-i} in r)
    let mut coeffs = Vec::with_capacity(d);
    for i in 1..=d {
        let xn_pow = (d - i) as u32;
        let mut a = TSeries::zero(n - 1, cap);
        for (e, c) in r.terms() {
            if e[n - 1] == xn_pow {
                a.set_coefficient(e[..n - 1].to_vec(), -c.clone());
            }
        }
        debug_assert!(
            a.coefficient(&vec![0; n - 1]).is_zero(),
            "distinguished coefficients vanish at the origin"
        );
        coeffs.push(a);
    }
    Ok((
        DistinguishedPolynomial {
            nvars: n,
            degree: d,
            coeffs,
        },
        unit,
    ))
}

/// The remainder as coefficients of x_n^0 .. x_n^{d-1}, series in the
/// first n-1 variables.
pub fn xn_coefficients(r: &TSeries, d: usize) -> Vec<TSeries> {
    let n = r.nvars();
    let mut out = vec![TSeries::zero(n - 1, r.cap()); d];
    for (e, c) in r.terms() {
        let k = e[n - 1] as usize;
        if k < d {
            out[k].set_coefficient(e[..n - 1].to_vec(), c.clone());
        }
    }
    out
}
