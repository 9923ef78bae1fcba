//! Linear ODEs with polynomial coefficients and the extraction of one from
//! an algebraic equation.

use super::poly1::{IntPoly, QPoly, QRat};
use crate::error::{Error, Result};
use crate::series::{PuiseuxSeries, YPoly};
use crate::{Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// a_d(x) f^(d) + ... + a_1(x) f' + a_0(x) f = 0 with a_i in Z[x] and
/// a_d nonzero, content-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearODE {
    coeffs: Vec<IntPoly>,
}

impl LinearODE {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Result<Self> {
        while coeffs.last().map(IntPoly::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroLeadingOde);
        }
        // normalize: divide by the gcd of all integer coefficients, make
        // the leading polynomial's leading coefficient positive
        let mut g = Integer::zero();
        for p in &coeffs {
            for c in p.coeffs() {
                g = g.gcd(c);
            }
        }
        if coeffs
            .last()
            .and_then(|p| p.coeffs().last())
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            g = -g;
        }
        if !g.is_one() {
            coeffs = coeffs
                .into_iter()
                .map(|p| IntPoly::new(p.coeffs().iter().map(|c| c / &g).collect()))
                .collect();
        }
        Ok(LinearODE { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            let primes = "'".repeat(i);
            write!(f, "({})*f{primes}", p.display_with("x"))?;
            first = false;
        }
        write!(f, " = 0")
    }
}

/// Arithmetic in Q(x)[y]/(P): elements are vectors on the basis
/// 1, y, ..., y^{d-1} with rational-function entries.
struct ModP {
    pc: Vec<QRat>,
    d: usize,
}

type Elem = Vec<QRat>;

impl ModP {
    fn new(p: &YPoly) -> Self {
        let pc: Vec<QRat> = p
            .coeffs()
            .iter()
            .map(|c| QRat::from_poly(mpoly_to_qpoly(c)))
            .collect();
        let d = pc.len() - 1;
        ModP { pc, d }
    }

    fn zero_elem(&self) -> Elem {
        vec![QRat::zero(); self.d]
    }

    /// The class of y itself; for d = 1 this is already the constant root
    /// -c_0 / c_1.
    fn y_elem(&self) -> Elem {
        if self.d == 1 {
            vec![self.pc[0].neg().div(&self.pc[1])]
        } else {
            let mut v = self.zero_elem();
            v[1] = QRat::from_poly(QPoly::one());
            v
        }
    }

    /// Reduce a y-polynomial of any degree to the basis.
    fn reduce(&self, mut poly: Vec<QRat>) -> Elem {
        while poly.len() > self.d {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = poly.len() - self.d; // y^{d+k} reduces against P * y^k
            let factor = top.div(&self.pc[self.d]);
            for i in 0..self.d {
                poly[k + i] = poly[k + i].sub(&factor.mul(&self.pc[i]));
            }
        }
        poly.resize(self.d, QRat::zero());
        poly
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut prod = vec![QRat::zero(); 2 * self.d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
        self.reduce(prod)
    }

    /// Inverse modulo P by the extended Euclidean algorithm in Q(x)[y].
    fn invert(&self, a: &Elem) -> Result<Elem> {
        let mut r0: Vec<QRat> = self.pc.clone();
        let mut r1: Vec<QRat> = a.clone();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0 = vec![QRat::zero()];
        let mut s1 = vec![QRat::from_poly(QPoly::one())];
        while !r1.is_empty() {
            let (q, r) = yq_divrem(&r0, &r1);
            let s = yq_sub(&s0, &yq_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            // nontrivial gcd with P: not invertible
            return Err(Error::NotSquarefree(r0.len() - 1));
        }
        let g = r0[0].clone();
        let mut inv = s0;
        for c in inv.iter_mut() {
            *c = c.div(&g);
        }
        inv.resize(self.d, QRat::zero());
        Ok(inv)
    }

    /// d/dx of an element representing g(x, f(x)): the partial in x plus
    /// the y-partial times f'.
    fn derivative(&self, g: &Elem, yprime: &Elem) -> Elem {
        let mut part_x: Elem = g.iter().map(QRat::derivative).collect();
        let mut part_y = self.zero_elem();
        for (i, c) in g.iter().enumerate().skip(1) {
            part_y[i - 1] = part_y[i - 1].add(
                &c.mul(&QRat::from_poly(QPoly::constant(Rational::from_integer(
                    Integer::from(i),
                )))),
            );
        }
        let chain = self.mul(&part_y, yprime);
        for i in 0..self.d {
            part_x[i] = part_x[i].add(&chain[i]);
        }
        part_x
    }
}

fn trim(v: &mut Vec<QRat>) {
    while v.last().map(QRat::is_zero).unwrap_or(false) {
        v.pop();
    }
}

fn yq_divrem(a: &[QRat], b: &[QRat]) -> (Vec<QRat>, Vec<QRat>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![QRat::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let q = rem[i].div(lead);
        if q.is_zero() {
            continue;
        }
        quot[i - db] = q.clone();
        for (j, c) in b.iter().enumerate() {
            rem[i - db + j] = rem[i - db + j].sub(&q.mul(c));
        }
    }
    trim(&mut rem);
    (quot, rem)
}

fn yq_mul(a: &[QRat], b: &[QRat]) -> Vec<QRat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

fn yq_sub(a: &[QRat], b: &[QRat]) -> Vec<QRat> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(QRat::zero);
        let y = b.get(i).cloned().unwrap_or_else(QRat::zero);
        out.push(x.sub(&y));
    }
    trim(&mut out);
    out
}

fn mpoly_to_qpoly(p: &crate::series::MPoly) -> QPoly {
    let deg = p
        .terms()
        .map(|(e, _)| e.first().copied().unwrap_or(0))
        .max()
        .unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        coeffs[e.first().copied().unwrap_or(0) as usize] = c.clone();
    }
    QPoly::new(coeffs)
}

/// The minimal-order linear ODE with Z[x] coefficients annihilating the
/// branch pinned by `seed`: derivatives of the root span a space of
/// dimension at most deg_y P over Q(x), and the first linear dependence
/// in the derivative tower is the operator. The kernel vector is taken
/// fraction-free as signed maximal minors of the cleared tower matrix.
pub fn algebraic_to_ode(p: &YPoly, seed: &PuiseuxSeries) -> Result<LinearODE> {
    if p.nvars_x() > 1 {
        return Err(Error::NotUnivariate);
    }
    p.is_squarefree_y()?;
    // the seed must actually pin a simple root
    crate::puiseux::hensel_lift(p, seed, seed.cap().max(seed.lo().unwrap_or(0)))?;

    let ctx = ModP::new(p);
    let f = ctx.y_elem();
    if f.iter().all(QRat::is_zero) {
        // the zero branch satisfies f = 0
        return LinearODE::new(vec![IntPoly::constant(1)]);
    }
    // f' = -P_x / P_y as an element
    let px: Vec<QRat> = p
        .coeffs()
        .iter()
        .map(|c| QRat::from_poly(mpoly_to_qpoly(c).derivative()))
        .collect();
    let py: Vec<QRat> = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| {
            QRat::from_poly(
                mpoly_to_qpoly(c).scalar_mul(&Rational::from_integer(Integer::from(i))),
            )
        })
        .collect();
    let py_inv = ctx.invert(&ctx.reduce(py))?;
    let yprime = ctx
        .mul(&ctx.reduce(px), &py_inv)
        .iter()
        .map(QRat::neg)
        .collect::<Vec<_>>();

    // derivative tower, cleared row-wise to Q[x]
    let mut elems: Vec<Elem> = vec![f];
    let (r0, m0) = clear_row(&elems[0]);
    let mut rows: Vec<Vec<QPoly>> = vec![r0];
    let mut mults: Vec<QPoly> = vec![m0];
    for _ in 0..ctx.d {
        let next = ctx.derivative(elems.last().unwrap(), &yprime);
        elems.push(next);
        let (r, m) = clear_row(elems.last().unwrap());
        rows.push(r);
        mults.push(m);
        if let Some(kernel) = left_kernel(&rows) {
            // the kernel annihilates the cleared rows m_i v_i, so the ODE
            // coefficient of f^(i) is kernel_i * m_i, with the common
            // polynomial content divided out
            let mut coeffs: Vec<QPoly> = kernel
                .iter()
                .zip(&mults)
                .map(|(c, m)| c.mul(m))
                .collect();
            let mut g = QPoly::zero();
            for c in &coeffs {
                if !c.is_zero() {
                    g = if g.is_zero() { c.clone() } else { g.gcd(c) };
                }
            }
            if g.degree() > 0 {
                coeffs = coeffs.iter().map(|c| c.div_exact(&g)).collect();
            }
            // joint denominator clearing preserves the relative scales
            let mut m = Integer::one();
            for c in &coeffs {
                for v in c.coeffs() {
                    m = m.lcm(v.denom());
                }
            }
            let mr = Rational::from_integer(m);
            let ints: Vec<IntPoly> = coeffs
                .iter()
                .map(|c| {
                    IntPoly::new(
                        c.scalar_mul(&mr)
                            .coeffs()
                            .iter()
                            .map(|v| v.numer().clone())
                            .collect(),
                    )
                })
                .collect();
            return LinearODE::new(ints);
        }
    }
    unreachable!("the derivative tower must become dependent by order deg_y P");
}

/// Multiply a rational-function row through by the lcm of its
/// denominators. Row scaling by a polynomial does not change whether a
/// left kernel exists, and keeps the kernel coefficients polynomial; the
/// multiplier is returned so the kernel can be pulled back.
fn clear_row(e: &Elem) -> (Vec<QPoly>, QPoly) {
    let mut den = QPoly::one();
    for c in e {
        let g = den.gcd(&c.den);
        den = den.mul(&c.den.div_exact(&g));
    }
    let cleared = e
        .iter()
        .map(|c| c.num.mul(&den.div_exact(&c.den)))
        .collect();
    (cleared, den)
}

/// Left kernel of a (k+1) x d matrix whose first k rows are independent:
/// the vector of signed maximal minors c_i = (-1)^i det(rows != i at the
/// pivot columns) satisfies sum c_i row_i = 0 exactly when the rows are
/// dependent. Determinants are computed fraction-free (Bareiss).
fn left_kernel(rows: &[Vec<QPoly>]) -> Option<Vec<QPoly>> {
    let k = rows.len() - 1;
    let d = rows[0].len();
    if k == 0 {
        return if rows[0].iter().all(QPoly::is_zero) {
            Some(vec![QPoly::one()])
        } else {
            None
        };
    }
    if k > d {
        // more rows than columns are always dependent, but the caller
        // stops at the first dependence so this cannot be reached
        unreachable!();
    }
    let pivots = pivot_columns(&rows[..k], d)?;
    let mut kernel = Vec::with_capacity(k + 1);
    for skip in 0..=k {
        let sub: Vec<Vec<QPoly>> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, r)| pivots.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let mut m = det_bareiss(sub);
        if skip % 2 == 1 {
            m = m.neg();
        }
        kernel.push(m);
    }
    // dependence check: the candidate must annihilate every column
    for j in 0..d {
        let mut acc = QPoly::zero();
        for (i, row) in rows.iter().enumerate() {
            acc = acc.add(&kernel[i].mul(&row[j]));
        }
        if !acc.is_zero() {
            return None;
        }
    }
    // orient: make the leading (highest-derivative) coefficient the last
    Some(kernel)
}

/// Columns on which the given independent rows have full rank, found by
/// plain elimination over Q(x).
fn pivot_columns(rows: &[Vec<QPoly>], d: usize) -> Option<Vec<usize>> {
    let k = rows.len();
    let mut m: Vec<Vec<QRat>> = rows
        .iter()
        .map(|r| r.iter().map(|p| QRat::from_poly(p.clone())).collect())
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..d {
        if row == k {
            break;
        }
        let Some(pr) = (row..k).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].clone();
        for r in 0..k {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].div(&inv);
                for c in col..d {
                    let delta = factor.mul(&m[row][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (row == k).then_some(pivots)
}

fn det_bareiss(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    if n == 0 {
        return QPoly::one();
    }
    let mut sign = false;
    let mut prev = QPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return QPoly::zero();
            };
            m.swap(k, sw);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = QPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MPoly;
    use crate::{rat, rat_int};

    fn x() -> MPoly {
        MPoly::var(0)
    }

    #[test]
    fn sqrt_ode() {
        // y^2 - (1+x), seed 1 -> 2(1+x) f' - f = 0
        let p = YPoly::new(vec![
            &MPoly::from_int(-1) - &x(),
            MPoly::zero(),
            MPoly::one(),
        ]);
        let seed = PuiseuxSeries::constant(rat_int(1), 0);
        let ode = algebraic_to_ode(&p, &seed).unwrap();
        assert_eq!(ode.order(), 1);
        assert_eq!(ode.coeffs()[0], IntPoly::constant(-1));
        assert_eq!(ode.coeffs()[1], IntPoly::from_i64(&[2, 2]));
    }

    #[test]
    fn polynomial_root_ode() {
        // y - x^2 -> x f' - 2 f = 0
        let p = YPoly::new(vec![-x().pow(2), MPoly::one()]);
        let seed = PuiseuxSeries::new(1, [(2, rat_int(1))], 2);
        let ode = algebraic_to_ode(&p, &seed).unwrap();
        assert_eq!(ode.order(), 1);
        assert_eq!(ode.coeffs()[0], IntPoly::constant(-2));
        assert_eq!(ode.coeffs()[1], IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn constant_root_ode() {
        // y - c -> f' = 0
        let p = YPoly::new(vec![MPoly::constant(rat(5, 3)).scalar_mul(&rat_int(-1)), MPoly::one()]);
        let seed = PuiseuxSeries::constant(rat(5, 3), 0);
        let ode = algebraic_to_ode(&p, &seed).unwrap();
        assert_eq!(ode.order(), 1);
        assert_eq!(ode.coeffs()[0], IntPoly::zero());
        assert_eq!(ode.coeffs()[1], IntPoly::constant(1));
    }

    #[test]
    fn catalan_ode_annihilates_expansion() {
        // y^2 + y - x: check the ODE against the series numerically
        let p = YPoly::new(vec![-x(), MPoly::one(), MPoly::one()]);
        let seed = PuiseuxSeries::zero(0);
        let ode = algebraic_to_ode(&p, &seed).unwrap();
        let rec = super::super::recurrence::ode_to_recurrence(
            &ode,
            &crate::puiseux::hensel_lift(&p, &seed, ode.order() as i64 + 2)
                .unwrap()
                .integer_coefficients(ode.order() + 1),
        )
        .unwrap();
        let via_rec = rec.expand(30).unwrap();
        let via_lift = crate::puiseux::hensel_lift(&p, &seed, 29)
            .unwrap()
            .integer_coefficients(29);
        assert_eq!(via_rec, via_lift);
    }
}
