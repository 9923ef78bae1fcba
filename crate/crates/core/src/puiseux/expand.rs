//! Recursive Newton-polygon expansion of all Puiseux roots.
//!
//! The walk follows polygon segments in increasing slope. Each segment
//! contributes a characteristic equation; every rational root of it spawns
//! a sub-branch via the substitution x -> x^v, y -> x^u (c + y'), and the
//! rational-root-free cofactor is reported as a required field extension
//! instead of being expanded. Once a branch is separated (segment of
//! lattice length one), each further step appends exactly one term, and
//! expansion stops as soon as the next exponent would exceed the requested
//! order.

use super::polygon::{polygon_of, PolygonSegment};
use super::{LSeries, LYPoly};
use crate::error::{Error, Result};
use crate::exactnum::factorize;
use crate::series::{PuiseuxSeries, YPoly};
use crate::{rat_int, Integer, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The rational branches of a defining polynomial together with reports
/// for the branches whose initial coefficients leave Q.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub branches: Vec<PuiseuxSeries>,
    pub extensions: Vec<ExtensionReport>,
}

/// A branch obstruction: the expansion reached a characteristic equation
/// with no rational root. `min_poly` annihilates the missing constant
/// (dense, ascending, integer-cleared); for degree at most three the
/// absence of rational roots certifies irreducibility, so the polynomial
/// is minimal.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionReport {
    pub prefix: PuiseuxSeries,
    pub degree: usize,
    pub min_poly: Vec<Rational>,
    pub is_minimal: bool,
}

/// Expand all Puiseux roots of a squarefree polynomial. Every returned
/// branch xi satisfies ord_x P(x, xi) > order / ram(xi); coefficients are
/// exact for grid exponents <= order.
pub fn puiseux_expand(p: &YPoly, order: i64) -> Result<Expansion> {
    p.is_squarefree_y()?;
    let lp = LYPoly::from_ypoly(p)?;
    let mut walker = Walker {
        order,
        branches: Vec::new(),
        extensions: Vec::new(),
        singular_budget: 64 + 16 * (lp.deg_y() as u32 + 1),
    };
    walker.explore(lp, 1, Rational::zero(), Vec::new(), false)?;
    walker
        .branches
        .sort_by(|a, b| a.ord().cmp(&b.ord()).then_with(|| format!("{a}").cmp(&format!("{b}"))));
    Ok(Expansion {
        branches: walker.branches,
        extensions: walker.extensions,
    })
}

struct Walker {
    order: i64,
    branches: Vec<PuiseuxSeries>,
    extensions: Vec<ExtensionReport>,
    singular_budget: u32,
}

impl Walker {
    fn explore(
        &mut self,
        mut poly: LYPoly,
        ram: u32,
        offset: Rational,
        terms: Vec<(Rational, Rational)>,
        continuation: bool,
    ) -> Result<()> {
        if poly.coeffs[0].is_zero() {
            // y divides: the branch terminates exactly here
            self.emit(&terms, ram);
            poly = poly.strip_y();
            if poly.deg_y() == 0 {
                return Ok(());
            }
        }
        let np = polygon_of(&poly);
        for seg in np.segments() {
            if continuation && !seg.slope.is_positive() {
                // only roots of strictly increasing exponent continue a branch
                continue;
            }
            let v = seg
                .slope
                .denom()
                .to_u32()
                .expect("ramification fits in u32");
            let u = seg.slope.numer().to_i64().expect("slope fits in i64");
            // a slope-1-lattice edge of integral slope appends exactly one
            // deterministic term; everything else is a (finite) singular step
            let deterministic = v == 1 && seg.to.0 - seg.from.0 == 1;
            let exp = &offset + &seg.slope / Rational::from_integer(Integer::from(ram as i64));
            if continuation
                && deterministic
                && &exp * Rational::from_integer(Integer::from(ram as i64))
                    > rat_int(self.order)
            {
                // next term lies beyond the requested order
                self.emit(&terms, ram);
                continue;
            }
            let chi = characteristic(&poly, seg, v);
            let (roots, cofactor) = rational_roots(&chi)?;
            for (c, mult) in &roots {
                if *mult > 1 || v > 1 {
                    if self.singular_budget == 0 {
                        return Err(Error::NotSeparable);
                    }
                    self.singular_budget -= 1;
                }
                let next = step(&poly, u, v, c);
                let mut terms2 = terms.clone();
                terms2.push((exp.clone(), c.clone()));
                self.explore(next, ram * v, exp.clone(), terms2, true)?;
            }
            if cofactor.len() > 1 {
                let degree = cofactor.len() - 1;
                self.extensions.push(ExtensionReport {
                    prefix: self.make_series(&terms, ram),
                    degree,
                    min_poly: integer_clear(&cofactor),
                    is_minimal: degree <= 3,
                });
            }
        }
        Ok(())
    }

    fn emit(&mut self, terms: &[(Rational, Rational)], ram: u32) {
        let s = self.make_series(terms, ram);
        if !self.branches.contains(&s) {
            self.branches.push(s);
        }
    }

    fn make_series(&self, terms: &[(Rational, Rational)], ram: u32) -> PuiseuxSeries {
        let r = Rational::from_integer(Integer::from(ram as i64));
        PuiseuxSeries::new(
            ram,
            terms.iter().map(|(e, c)| {
                let k = e * &r;
                debug_assert!(k.denom().is_one());
                (k.numer().to_i64().expect("exponent fits in i64"), c.clone())
            }),
            self.order,
        )
    }
}

/// P(x^v, x^u (c + y)) / x^w with w the minimal resulting order. After
/// stretching, the slope numerator u is exactly the twist in new-grid
/// units.
fn step(poly: &LYPoly, u: i64, v: u32, c: &Rational) -> LYPoly {
    let p2 = poly.stretch_x(v).twist(u).recenter_const(c);
    let w = p2.min_ord().expect("transformed polynomial is nonzero");
    p2.shift_all(w)
}

/// Characteristic polynomial of a segment in the branch constant c: the
/// initial coefficients along the segment line at powers c^{i - i0}. Only
/// indices i = i0 + k*v can carry a point of the line, so the polynomial
/// is supported on multiples of v.
fn characteristic(poly: &LYPoly, seg: &PolygonSegment, v: u32) -> Vec<Rational> {
    let (i0, v0) = seg.from;
    let (i1, _) = seg.to;
    let u = seg.slope.numer().to_i64().unwrap();
    let mut chi = vec![Rational::zero(); i1 - i0 + 1];
    let steps = (i1 - i0) / v as usize;
    for k in 0..=steps {
        let i = i0 + k * v as usize;
        if i >= poly.coeffs.len() {
            break;
        }
        let val = v0 - u * k as i64;
        chi[k * v as usize] = poly.coeffs[i].coefficient(val);
    }
    chi
}

fn integer_clear(p: &[Rational]) -> Vec<Rational> {
    let mut m = Integer::one();
    for c in p {
        m = num_integer::Integer::lcm(&m, c.denom());
    }
    let mut g = Integer::zero();
    let cleared: Vec<Integer> = p
        .iter()
        .map(|c| c * Rational::from_integer(m.clone()))
        .map(|c| c.numer().clone())
        .collect();
    for c in &cleared {
        g = num_integer::Integer::gcd(&g, c);
    }
    if g.is_zero() {
        g = Integer::one();
    }
    if cleared.last().map(|c| c.is_negative()).unwrap_or(false) {
        g = -g;
    }
    cleared
        .into_iter()
        .map(|c| Rational::from_integer(c / &g))
        .collect()
}

/// All rational roots with multiplicities, plus the root-free cofactor.
fn rational_roots(chi: &[Rational]) -> Result<(Vec<(Rational, usize)>, Vec<Rational>)> {
    let mut poly: Vec<Rational> = chi.to_vec();
    while poly.last().map(Rational::is_zero).unwrap_or(false) {
        poly.pop();
    }
    assert!(
        !poly.is_empty() && !poly[0].is_zero(),
        "characteristic polynomial has nonzero ends by construction"
    );
    if poly.len() == 1 {
        return Ok((Vec::new(), poly));
    }
    let cleared = integer_clear(&poly);
    let a0 = cleared[0].numer().abs();
    let ad = cleared.last().unwrap().numer().abs();
    let nums = factorize(&a0)?.divisors();
    let dens = factorize(&ad)?.divisors();
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &nums {
        for q in &dens {
            let c = Rational::new(p.clone(), q.clone());
            if !candidates.contains(&c) {
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
    }
    let mut roots = Vec::new();
    for c in candidates {
        let mut mult = 0usize;
        while poly.len() > 1 {
            match synthetic_div(&poly, &c) {
                Some(q) => {
                    mult += 1;
                    poly = q;
                }
                None => break,
            }
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, poly))
}

/// Divide by (T - c); `Some(quotient)` exactly when c is a root.
fn synthetic_div(p: &[Rational], c: &Rational) -> Option<Vec<Rational>> {
    let mut q = vec![Rational::zero(); p.len() - 1];
    let mut acc = Rational::zero();
    for i in (0..p.len()).rev() {
        acc = &p[i] + &(acc * c);
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    if acc.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// Back-substitution residual of a branch: the exact series P(x, xi),
/// whose order witnesses ord P(x, xi) > order / ram.
pub fn residual(p: &YPoly, xi: &PuiseuxSeries) -> Result<LSeries> {
    let lp = LYPoly::from_ypoly(p)?.stretch_x(xi.ram());
    Ok(lp.eval(&xi.to_grid()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MPoly;
    use crate::rat;

    fn x() -> MPoly {
        MPoly::var(0)
    }

    /// Generalized binomial coefficient C(1/2, l).
    fn binom_half(l: usize) -> Rational {
        let mut acc = Rational::one();
        let half = rat(1, 2);
        for k in 0..l {
            acc *= &half - rat_int(k as i64);
            acc /= rat_int(k as i64 + 1);
        }
        acc
    }

    #[test]
    fn linear_root() {
        // y - x -> [x]
        let p = YPoly::new(vec![-x(), MPoly::one()]);
        let e = puiseux_expand(&p, 10).unwrap();
        assert!(e.extensions.is_empty());
        assert_eq!(e.branches.len(), 1);
        let b = &e.branches[0];
        assert_eq!(b.ram(), 1);
        assert_eq!(b.coefficient(1), rat_int(1));
        assert_eq!(b.coeffs().count(), 1);
    }

    #[test]
    fn cusp_pair() {
        // y^2 - x^3 -> +- x^{3/2}
        let p = YPoly::new(vec![-x().pow(3), MPoly::zero(), MPoly::one()]);
        let e = puiseux_expand(&p, 10).unwrap();
        assert!(e.extensions.is_empty());
        assert_eq!(e.branches.len(), 2);
        for b in &e.branches {
            assert_eq!(b.ram(), 2);
            assert_eq!(b.ord(), Some(rat(3, 2)));
            assert!(b.coefficient(3) == rat_int(1) || b.coefficient(3) == rat_int(-1));
            let r = residual(&p, b).unwrap();
            assert!(r.is_zero(), "residual {r}");
        }
    }

    #[test]
    fn ramified_binomial_branches() {
        // y^2 - x^2 (1+x) -> +- x sqrt(1+x)
        let c0 = &(-x().pow(2)) - &x().pow(3);
        let p = YPoly::new(vec![c0, MPoly::zero(), MPoly::one()]);
        let e = puiseux_expand(&p, 8).unwrap();
        assert!(e.extensions.is_empty());
        assert_eq!(e.branches.len(), 2);
        let plus = e
            .branches
            .iter()
            .find(|b| b.coefficient(1) == rat_int(1))
            .expect("positive branch");
        assert_eq!(plus.ram(), 1);
        // coefficient of x^{k+1} is C(1/2, k)
        for k in 0..=7usize {
            assert_eq!(plus.coefficient(k as i64 + 1), binom_half(k), "term {k}");
        }
        // residual order must exceed the requested order
        let r = residual(&p, plus).unwrap();
        assert!(r.ord_grid().map(|o| o > 8).unwrap_or(true), "residual {r}");
    }

    #[test]
    fn zero_root_is_emitted() {
        // y (y - x) = y^2 - x y
        let p = YPoly::new(vec![MPoly::zero(), -x(), MPoly::one()]);
        let e = puiseux_expand(&p, 6).unwrap();
        assert_eq!(e.branches.len(), 2);
        assert!(e.branches.iter().any(|b| b.is_zero()));
        assert!(e
            .branches
            .iter()
            .any(|b| b.coefficient(1) == rat_int(1) && b.coeffs().count() == 1));
    }

    #[test]
    fn laurent_branch() {
        // x y - 1 -> 1/x
        let p = YPoly::new(vec![MPoly::from_int(-1), x()]);
        let e = puiseux_expand(&p, 6).unwrap();
        assert_eq!(e.branches.len(), 1);
        assert_eq!(e.branches[0].ord(), Some(rat_int(-1)));
        assert_eq!(e.branches[0].coefficient(-1), rat_int(1));
    }

    #[test]
    fn extension_reported_not_fabricated() {
        // y^2 - 2: no rational branch, minimal polynomial T^2 - 2
        let p = YPoly::new(vec![MPoly::from_int(-2), MPoly::zero(), MPoly::one()]);
        let e = puiseux_expand(&p, 4).unwrap();
        assert!(e.branches.is_empty());
        assert_eq!(e.extensions.len(), 1);
        let ext = &e.extensions[0];
        assert_eq!(ext.degree, 2);
        assert!(ext.is_minimal);
        assert_eq!(ext.min_poly, vec![rat_int(-2), rat_int(0), rat_int(1)]);
        // mixed case: (y^2 - 2)(y - x) keeps the rational branch
        let q = YPoly::new(vec![MPoly::from_int(-2), MPoly::zero(), MPoly::one()])
            .mul(&YPoly::new(vec![-x(), MPoly::one()]));
        let e = puiseux_expand(&q, 4).unwrap();
        assert_eq!(e.branches.len(), 1);
        assert_eq!(e.extensions.len(), 1);
    }

    #[test]
    fn product_reconstruction() {
        // when all roots are rational branches, prod (y - xi) = P / lc
        let c0 = &(-x().pow(2)) - &x().pow(3);
        let p = YPoly::new(vec![c0, MPoly::zero(), MPoly::one()]);
        let order = 8;
        let e = puiseux_expand(&p, order).unwrap();
        assert_eq!(e.branches.len(), 2);
        // multiply (y - xi1)(y - xi2) as Laurent-coefficient polynomials
        let xi1 = e.branches[0].to_grid();
        let xi2 = e.branches[1].to_grid();
        let prod0 = xi1.mul(&xi2);
        let prod1 = xi1.add(&xi2).neg();
        let lp = LYPoly::from_ypoly(&p).unwrap();
        // compare coefficient-wise through the truncation
        let cap = order;
        for (mine, theirs) in [(prod0, lp.coeffs[0].clone()), (prod1, lp.coeffs[1].clone())] {
            for k in 0..=cap {
                assert_eq!(mine.coefficient(k), theirs.coefficient(k), "x^{k}");
            }
        }
    }

    #[test]
    fn nonsquarefree_rejected() {
        let lin = YPoly::new(vec![-x(), MPoly::one()]);
        let sq = lin.mul(&lin);
        assert!(matches!(
            puiseux_expand(&sq, 4),
            Err(Error::NotSquarefree(_))
        ));
    }
}
