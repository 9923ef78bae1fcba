//! Polynomial-coefficient recurrences and the ODE-to-recurrence
//! coefficient extraction.

use super::ode::LinearODE;
use super::poly1::IntPoly;
use crate::error::{Error, Result};
use crate::{Integer, Rational};
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// p_0(l) f_l + p_1(l) f_{l+1} + ... + p_e(l) f_{l+e} = 0 for all
/// l >= offset, together with the initial values f_0 .. f_{offset+e-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct PRecurrence {
    coeffs: Vec<IntPoly>,
    offset: i64,
    initial: Vec<Rational>,
}

impl PRecurrence {
    pub fn new(coeffs: Vec<IntPoly>, offset: i64, initial: Vec<Rational>) -> Result<Self> {
        let coeffs = {
            let mut c = coeffs;
            while c.last().map(IntPoly::is_zero).unwrap_or(false) {
                c.pop();
            }
            c
        };
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "recurrence needs a nonzero trailing coefficient".into(),
            ));
        }
        let e = coeffs.len() - 1;
        let offset = offset.max(0);
        let need = offset as usize + e;
        if initial.len() < need {
            return Err(Error::NotEnoughInitialValues(need, initial.len()));
        }
        let rec = PRecurrence {
            coeffs,
            offset,
            initial,
        };
        // the trailing coefficient may not vanish anywhere in the claimed
        // validity range
        let pe = rec.coeffs.last().unwrap();
        for root in pe.integer_roots() {
            if let Some(r) = root.to_i64() {
                if r >= offset {
                    return Err(Error::TrailingCoeffVanishes(r));
                }
            }
        }
        // the stored initial values must satisfy the recurrence wherever it
        // already applies
        for l in rec.offset..(rec.initial.len() as i64 - e as i64) {
            if !rec.apply_at(l, &rec.initial).is_zero() {
                return Err(Error::InitialValuesInconsistent(l));
            }
        }
        Ok(rec)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    fn apply_at(&self, l: i64, table: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, p) in self.coeffs.iter().enumerate() {
            let idx = l as usize + m;
            acc += Rational::from_integer(p.eval_i64(l)) * &table[idx];
        }
        acc
    }

    /// First `count` coefficients, exact.
    pub fn expand(&self, count: usize) -> Result<Vec<Rational>> {
        let e = self.order();
        let mut out: Vec<Rational> = self.initial.iter().take(count).cloned().collect();
        let pe = self.coeffs.last().unwrap();
        while out.len() < count {
            let next = out.len() as i64;
            let l = next - e as i64;
            debug_assert!(l >= self.offset);
            let den = pe.eval_i64(l);
            if den.is_zero() {
                return Err(Error::TrailingCoeffVanishes(l));
            }
            let mut acc = Rational::zero();
            for (m, p) in self.coeffs.iter().enumerate().take(e) {
                acc += Rational::from_integer(p.eval_i64(l)) * &out[(l + m as i64) as usize];
            }
            out.push(-acc / Rational::from_integer(den));
        }
        Ok(out)
    }
}

impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({p})*f[l+{m}]")?;
            first = false;
        }
        write!(f, " = 0  for l >= {}", self.offset)
    }
}

/// Coefficient extraction: a_d(x) f^(d) + ... + a_0(x) f = 0 becomes a
/// recurrence on the Taylor coefficients. The term a_{i,j} x^j f^(i)
/// contributes a_{i,j} (l+i-j)(l+i-j-1)...(l-j+1) f_{l+i-j} to the
/// coefficient of x^l, so offsets k = i - j range over a finite window
/// and each recurrence coefficient is a falling-factorial sum.
pub fn ode_to_recurrence(ode: &LinearODE, initial: &[Rational]) -> Result<PRecurrence> {
    let mut kmin = i64::MAX;
    let mut kmax = i64::MIN;
    for (i, a) in ode.coeffs().iter().enumerate() {
        for (j, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let k = i as i64 - j as i64;
                kmin = kmin.min(k);
                kmax = kmax.max(k);
            }
        }
    }
    assert!(kmin <= kmax, "ODE has a nonzero coefficient");
    let e = (kmax - kmin) as usize;
    let mut ps: Vec<IntPoly> = vec![IntPoly::zero(); e + 1];
    for (i, a) in ode.coeffs().iter().enumerate() {
        for (j, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = i as i64 - j as i64;
            // falling factorial (t + k)(t + k - 1)...(t + k - i + 1),
            // then shift t -> l - kmin
            let mut ff = IntPoly::constant(1);
            for m in 0..i as i64 {
                ff = ff.mul(&IntPoly::new(vec![Integer::from(k - m), Integer::from(1)]));
            }
            let term = ff
                .shift_var(-kmin)
                .mul(&IntPoly::new(vec![c.clone()]));
            let slot = (k - kmin) as usize;
            ps[slot] = ps[slot].add(&term);
        }
    }
    let pe = ps.last().cloned().unwrap_or_else(IntPoly::zero);
    let mut offset = kmin.max(0);
    for root in pe.integer_roots() {
        if let Some(r) = root.to_i64() {
            offset = offset.max(r + 1);
        }
    }
    PRecurrence::new(ps, offset, initial.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn exp_rec() -> PRecurrence {
        // (l+1) f_{l+1} - f_l = 0, f_0 = 1
        PRecurrence::new(
            vec![IntPoly::constant(-1), IntPoly::from_i64(&[1, 1])],
            0,
            vec![rat_int(1)],
        )
        .unwrap()
    }

    #[test]
    fn expand_exp() {
        let f = exp_rec().expand(5).unwrap();
        assert_eq!(f, vec![rat_int(1), rat_int(1), rat(1, 2), rat(1, 6), rat(1, 24)]);
    }

    #[test]
    fn expand_log() {
        // l^2 f_l + l(l+1) f_{l+1} = 0 valid from l >= 1, f = log(1+x)
        let rec = PRecurrence::new(
            vec![IntPoly::from_i64(&[0, 0, 1]), IntPoly::from_i64(&[0, 1, 1])],
            1,
            vec![rat_int(0), rat_int(1)],
        )
        .unwrap();
        let f = rec.expand(5).unwrap();
        assert_eq!(
            f,
            vec![rat_int(0), rat_int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]
        );
    }

    #[test]
    fn expand_constant() {
        let rec = PRecurrence::new(
            vec![IntPoly::constant(-1), IntPoly::constant(1)],
            0,
            vec![rat_int(1)],
        )
        .unwrap();
        assert!(rec.expand(6).unwrap().iter().all(|c| *c == rat_int(1)));
    }

    #[test]
    fn validation_catches_bad_recurrences() {
        // p_e = l - 3 vanishes at l = 3 >= offset
        assert!(matches!(
            PRecurrence::new(
                vec![IntPoly::constant(1), IntPoly::from_i64(&[-3, 1])],
                0,
                vec![rat_int(1)],
            ),
            Err(Error::TrailingCoeffVanishes(3))
        ));
        // too few initial values for offset 1, order 1
        assert!(matches!(
            PRecurrence::new(
                vec![IntPoly::constant(1), IntPoly::from_i64(&[1, 1])],
                1,
                vec![rat_int(1)],
            ),
            Err(Error::NotEnoughInitialValues(2, 1))
        ));
        // inconsistent initial values: f_{l+1} = f_l but 1, 2 stored
        assert!(matches!(
            PRecurrence::new(
                vec![IntPoly::constant(-1), IntPoly::constant(1)],
                0,
                vec![rat_int(1), rat_int(2)],
            ),
            Err(Error::InitialValuesInconsistent(0))
        ));
    }

    #[test]
    fn ode_to_recurrence_exp() {
        // f' - f = 0 -> (l+1) f_{l+1} - f_l = 0
        let ode = LinearODE::new(vec![IntPoly::constant(-1), IntPoly::constant(1)]).unwrap();
        let rec = ode_to_recurrence(&ode, &[rat_int(1)]).unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.coeffs()[0], IntPoly::constant(-1));
        assert_eq!(rec.coeffs()[1], IntPoly::from_i64(&[1, 1]));
        assert_eq!(rec.expand(4).unwrap()[3], rat(1, 6));
    }

    #[test]
    fn ode_to_recurrence_binomial() {
        // 2(1+x) f' - f = 0 -> 2(l+1) f_{l+1} + (2l - 1) f_l = 0
        let ode = LinearODE::new(vec![IntPoly::constant(-1), IntPoly::from_i64(&[2, 2])]).unwrap();
        let rec = ode_to_recurrence(&ode, &[rat_int(1)]).unwrap();
        assert_eq!(rec.coeffs()[0], IntPoly::from_i64(&[-1, 2]));
        assert_eq!(rec.coeffs()[1], IntPoly::from_i64(&[2, 2]));
        let f = rec.expand(5).unwrap();
        // sqrt(1+x): 1, 1/2, -1/8, 1/16, -5/128
        assert_eq!(f[2], rat(-1, 8));
        assert_eq!(f[4], rat(-5, 128));
    }

    #[test]
    fn ode_to_recurrence_derivative_zero() {
        // f' = 0: l f_l = 0 for l >= 1, constants only
        let ode = LinearODE::new(vec![IntPoly::zero(), IntPoly::constant(1)]).unwrap();
        let rec = ode_to_recurrence(&ode, &[rat(7, 2)]).unwrap();
        assert_eq!(rec.order(), 0);
        let f = rec.expand(4).unwrap();
        assert_eq!(f, vec![rat(7, 2), rat_int(0), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn ode_to_recurrence_log() {
        // (1+x) f'' + f' = 0 with f = log(1+x)
        let ode = LinearODE::new(vec![
            IntPoly::zero(),
            IntPoly::constant(1),
            IntPoly::from_i64(&[1, 1]),
        ])
        .unwrap();
        let rec = ode_to_recurrence(&ode, &[rat_int(0), rat_int(1)]).unwrap();
        assert_eq!(rec.offset(), 1);
        let f = rec.expand(6).unwrap();
        assert_eq!(f[5], rat(1, 5));
        assert_eq!(f[4], rat(-1, 4));
    }
}
