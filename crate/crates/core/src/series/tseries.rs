//! Total-degree-truncated multivariate power series.
//!
//! A `TSeries` stores terms of total degree at most `cap` and never
//! fabricates terms beyond it: the cap of any binary operation is the
//! minimum of the operand caps.

use super::mpoly::{fmt_coeff, grlex, MPoly};
use crate::error::{Error, Result};
use crate::{Integer, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSeries {
    nvars: usize,
    cap: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TSeries {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        TSeries {
            nvars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, cap: u32, c: Rational) -> Self {
        let mut s = Self::zero(nvars, cap);
        s.set_coefficient(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        Self::constant(nvars, cap, Rational::one())
    }

    pub fn from_mpoly(p: &MPoly, nvars: usize, cap: u32) -> Result<Self> {
        if p.nvars() > nvars {
            return Err(Error::NvarsMismatch(p.nvars(), nvars));
        }
        let mut s = Self::zero(nvars, cap);
        for (e, c) in p.terms() {
            if e.iter().sum::<u32>() <= cap {
                let mut key = e.clone();
                key.resize(nvars, 0);
                s.terms.insert(key, c.clone());
            }
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_coefficient(&mut self, e: Vec<u32>, c: Rational) {
        assert_eq!(e.len(), self.nvars);
        assert!(e.iter().sum::<u32>() <= self.cap);
        if c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| grlex(&a.0, &b.0));
        v
    }

    pub fn truncate(&self, cap: u32) -> TSeries {
        TSeries {
            nvars: self.nvars,
            cap: cap.min(self.cap),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &TSeries) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = TSeries::zero(self.nvars, cap);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if e.iter().sum::<u32>() > cap {
                continue;
            }
            let entry = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &TSeries) -> Result<TSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            nvars: self.nvars,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> TSeries {
        if c.is_zero() {
            return TSeries::zero(self.nvars, self.cap);
        }
        TSeries {
            nvars: self.nvars,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TSeries) -> Result<TSeries> {
        self.check(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = TSeries::zero(self.nvars, cap);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            if da > cap {
                continue;
            }
            for (eb, cb) in &other.terms {
                let db: u32 = eb.iter().sum();
                if da + db > cap {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<TSeries> {
        let mut acc = TSeries::one(self.nvars, self.cap);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a unit series, exact through the cap.
    pub fn invert_unit(&self) -> Result<TSeries> {
        let c0 = self.coefficient(&vec![0; self.nvars]);
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        // f = c0 (1 - u) with ord(u) >= 1; 1/f = (1 + u + u^2 + ...) / c0
        let inv_c0 = Rational::one() / &c0;
        let mut u = self.scalar_mul(&-&inv_c0);
        let key = vec![0; self.nvars];
        let entry = u.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += Rational::one();
        if entry.is_zero() {
            u.terms.remove(&key);
        }
        let mut acc = TSeries::one(self.nvars, self.cap);
        let mut upow = TSeries::one(self.nvars, self.cap);
        for _ in 0..self.cap {
            upow = upow.mul(&u)?;
            if upow.is_zero() {
                break;
            }
            acc = acc.add(&upow)?;
        }
        Ok(acc.scalar_mul(&inv_c0))
    }

    /// Per-variable scalar rescale x_i -> c_i * x_i.
    pub fn rescale(&self, scales: &[Rational]) -> Result<TSeries> {
        if scales.len() != self.nvars {
            return Err(Error::WeightLength(self.nvars, scales.len()));
        }
        let mut out = TSeries::zero(self.nvars, self.cap);
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v *= &scales[i];
                }
            }
            out.terms.insert(e.clone(), v);
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// The Eisenstein rescale a * f(a*x1, ..., a*xn): the coefficient of
    /// x^alpha becomes a^{|alpha|+1} * f_alpha.
    pub fn rescale_eisenstein(&self, a: &Integer) -> TSeries {
        let ar = Rational::from_integer(a.clone());
        let scales = vec![ar.clone(); self.nvars];
        self.rescale(&scales)
            .expect("scales built to match nvars")
            .scalar_mul(&ar)
    }

    /// Order and initial form: the least total degree with a nonzero term
    /// and the homogeneous part of that degree. A series that vanishes up
    /// to its cap is reported distinctly from an exact zero.
    pub fn ord_in(&self) -> Result<(u32, MPoly)> {
        match self.terms.keys().map(|e| e.iter().sum::<u32>()).min() {
            None => Err(Error::ZeroUpToCap(format!("total degree {}", self.cap))),
            Some(d) => {
                let init = MPoly::from_terms(
                    self.terms
                        .iter()
                        .filter(|(e, _)| e.iter().sum::<u32>() == d)
                        .map(|(e, c)| (e.clone(), c.clone())),
                );
                Ok((d, init))
            }
        }
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O({})", self.cap + 1);
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let abs = c.abs();
            let lead = if first {
                if c.is_negative() { "-".into() } else { String::new() }
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
        write!(f, " + O({})", self.cap + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, rat_int};
    use proptest::prelude::*;

    fn ts(p: &MPoly, nvars: usize, cap: u32) -> TSeries {
        TSeries::from_mpoly(p, nvars, cap).unwrap()
    }

    #[test]
    fn mul_respects_cap() {
        // (1+x)(1-x) at cap 1 keeps only 1 (the x^2 term is suppressed)
        let one_plus = ts(&(&MPoly::var(0) + &MPoly::from_int(1)), 1, 1);
        let one_minus = ts(&(&MPoly::from_int(1) - &MPoly::var(0)), 1, 1);
        let p = one_plus.mul(&one_minus).unwrap();
        assert_eq!(p, TSeries::one(1, 1));
    }

    #[test]
    fn nvars_mismatch_rejected() {
        let a = TSeries::one(1, 3);
        let b = TSeries::one(2, 3);
        assert!(matches!(a.add(&b), Err(Error::NvarsMismatch(1, 2))));
    }

    #[test]
    fn ord_in_examples() {
        // x^2 + x^3
        let p = &MPoly::var(0).pow(2) + &MPoly::var(0).pow(3);
        let (d, init) = ts(&p, 1, 5).ord_in().unwrap();
        assert_eq!(d, 2);
        assert_eq!(init, MPoly::var(0).pow(2));
        // x1*x2 + x1^3
        let q = &(&MPoly::var(0) * &MPoly::var(1)) + &MPoly::var(0).pow(3);
        let (d, init) = ts(&q, 2, 5).ord_in().unwrap();
        assert_eq!(d, 2);
        assert_eq!(init, &MPoly::var(0) * &MPoly::var(1));
        // zero up to cap is distinct from exact zero
        assert!(matches!(
            TSeries::zero(2, 4).ord_in(),
            Err(Error::ZeroUpToCap(_))
        ));
    }

    #[test]
    fn rescale_eisenstein_examples() {
        // a f(a x): 1 + x/2 with a = 2 gives 2 + 2x
        let f = {
            let mut s = TSeries::zero(1, 4);
            s.set_coefficient(vec![0], rat_int(1));
            s.set_coefficient(vec![1], rat(1, 2));
            s
        };
        let g = f.rescale_eisenstein(&int(2));
        assert_eq!(g.coefficient(&[0]), rat_int(2));
        assert_eq!(g.coefficient(&[1]), rat_int(2));
        assert!(g.is_integral());

        // -5 x^4 / 128 with a = 4 gives -40 x^4
        let mut h = TSeries::zero(1, 4);
        h.set_coefficient(vec![4], rat(-5, 128));
        let g = h.rescale_eisenstein(&int(4));
        assert_eq!(g.coefficient(&[4]), rat_int(-40));
    }

    #[test]
    fn invert_unit_round_trips() {
        let f = {
            let p = &(&MPoly::from_int(1) + &MPoly::var(0)) + &(&MPoly::var(1) * &MPoly::var(1));
            ts(&p, 2, 6)
        };
        let inv = f.invert_unit().unwrap();
        let prod = f.mul(&inv).unwrap();
        assert_eq!(prod, TSeries::one(2, 6));
        assert!(matches!(
            TSeries::zero(1, 3).invert_unit(),
            Err(Error::NotAUnit)
        ));
    }

    fn arb_tseries(nvars: usize, cap: u32) -> impl Strategy<Value = TSeries> {
        let term = (
            proptest::collection::vec(0u32..=cap, nvars),
            -6i64..=6,
            1i64..=4,
        );
        proptest::collection::vec(term, 0..8).prop_map(move |terms| {
            let mut s = TSeries::zero(nvars, cap);
            for (e, n, d) in terms {
                if e.iter().sum::<u32>() <= cap {
                    let c = s.coefficient(&e) + rat(n, d);
                    s.set_coefficient(e, c);
                }
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms((f, g, h) in (arb_tseries(2, 6), arb_tseries(2, 6), arb_tseries(2, 6))) {
            let assoc_l = f.add(&g).unwrap().add(&h).unwrap();
            let assoc_r = f.add(&g.add(&h).unwrap()).unwrap();
            prop_assert_eq!(assoc_l, assoc_r);
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            let dist_l = f.mul(&g.add(&h).unwrap()).unwrap();
            let dist_r = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(dist_l, dist_r);
        }

        #[test]
        fn rescale_integrality_is_definitional(f in arb_tseries(2, 5), a in 1i64..6) {
            // a^{|alpha|+1} f_alpha integral for all alpha iff the rescale is integral
            let ai = int(a);
            let g = f.rescale_eisenstein(&ai);
            let direct = f.terms().all(|(e, c)| {
                let k = e.iter().sum::<u32>() + 1;
                (c * Rational::from_integer(ai.pow(k))).denom().is_one()
            });
            prop_assert_eq!(g.is_integral(), direct);
        }
    }
}
