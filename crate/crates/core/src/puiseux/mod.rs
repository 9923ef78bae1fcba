//! Newton-Puiseux expansion and Hensel lifting for univariate defining
//! equations P(x, y) over Q[x].
//!
//! `newton_polygon` exposes the lower hull of the coefficient valuations;
//! `puiseux_expand` walks the polygon recursively and returns every branch
//! whose coefficients stay rational, reporting a structured extension
//! requirement for the others; `hensel_lift` refines a seed pinning a
//! simple root with quadratically doubling accuracy.

mod expand;
mod hensel;
mod polygon;

pub use expand::{puiseux_expand, residual, Expansion, ExtensionReport};
pub use hensel::{hensel_lift, lift_with_trace};
pub use polygon::{newton_polygon, NewtonPolygon, PolygonSegment};

pub(crate) use hensel::lift_grid;

use crate::error::{Error, Result};
use crate::series::{PuiseuxSeries, RGSeries, YPoly};
use crate::Rational;
use std::sync::RwLock;

/// Laurent polynomial / series in one variable: grid series with D = 1.
pub(crate) type LSeries = RGSeries<Rational>;

/// Polynomial in y with univariate Laurent-polynomial coefficients, the
/// internal working form for all expansion code.
#[derive(Debug, Clone)]
pub(crate) struct LYPoly {
    pub coeffs: Vec<LSeries>,
}

impl LYPoly {
    pub fn from_ypoly(p: &YPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = Vec::with_capacity(p.deg_y() + 1);
        for c in p.coeffs() {
            if c.nvars() > 1 {
                return Err(Error::NotUnivariate);
            }
            coeffs.push(RGSeries::from_terms(
                1,
                c.terms()
                    .map(|(e, v)| (e.first().copied().unwrap_or(0) as i64, v.clone())),
                None,
            ));
        }
        Ok(LYPoly { coeffs })
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative_y(&self) -> LYPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scalar_mul(&crate::rat_int(j as i64)))
            .collect();
        LYPoly { coeffs }
    }

    pub fn eval(&self, point: &LSeries) -> LSeries {
        RGSeries::eval_poly(&self.coeffs, point)
    }

    /// Substitute x -> x^v in every coefficient.
    pub fn stretch_x(&self, v: u32) -> LYPoly {
        LYPoly {
            coeffs: self.coeffs.iter().map(|c| c.refine_grid(v)).collect(),
        }
    }

    /// Multiply the coefficient of y^i by x^{u*i} (the substitution
    /// y -> x^u * y).
    pub fn twist(&self, u: i64) -> LYPoly {
        LYPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.shift(u * i as i64))
                .collect(),
        }
    }

    /// Recenter y -> c + y for a rational constant.
    pub fn recenter_const(&self, c: &Rational) -> LYPoly {
        let d = self.deg_y();
        let denom = self.coeffs[0].grid_denom();
        let mut out = vec![RGSeries::zero(denom); d + 1];
        // binomial expansion: new_j = sum_{i>=j} C(i,j) c^{i-j} old_i
        for (i, old) in self.coeffs.iter().enumerate() {
            let mut pw = Rational::from_integer(1.into());
            let mut binom = crate::Integer::from(1);
            // walk j = i, i-1, ..., 0 accumulating c powers and C(i, j)
            for down in 0..=i {
                let j = i - down;
                if down > 0 {
                    pw *= c;
                    binom = binom * crate::Integer::from((j + 1) as i64)
                        / crate::Integer::from(down as i64);
                }
                let coef = Rational::from_integer(binom.clone()) * &pw;
                out[j] = out[j].add(&old.scalar_mul(&coef));
            }
        }
        LYPoly { coeffs: out }
    }

    /// Minimal x-order over all coefficients.
    pub fn min_ord(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.ord_grid()).min()
    }

    /// Divide the whole polynomial by x^w.
    pub fn shift_all(&self, w: i64) -> LYPoly {
        LYPoly {
            coeffs: self.coeffs.iter().map(|c| c.shift(-w)).collect(),
        }
    }

    /// Exact division by y (requires a vanishing constant coefficient).
    pub fn strip_y(&self) -> LYPoly {
        assert!(self.coeffs[0].is_zero());
        LYPoly {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }
}

/// An algebraic series: a defining polynomial plus a seed pinning one
/// branch, with a memoized coefficient table that only ever grows.
/// Concurrent reads are safe after any completed extension; extensions
/// themselves serialize on an internal lock.
#[derive(Debug)]
pub struct AlgebraicSeries {
    poly: YPoly,
    seed: PuiseuxSeries,
    memo: RwLock<PuiseuxSeries>,
}

impl AlgebraicSeries {
    /// Validate squarefreeness and that the seed pins a simple root, then
    /// set up the table.
    pub fn new(poly: YPoly, seed: PuiseuxSeries) -> Result<Self> {
        poly.is_squarefree_y()?;
        // hensel_lift re-checks the seed; lifting to the seed's own cap is
        // the cheapest way to validate it.
        let start = hensel_lift(&poly, &seed, seed.cap().max(seed.lo().unwrap_or(0)))?;
        Ok(AlgebraicSeries {
            poly,
            seed,
            memo: RwLock::new(start),
        })
    }

    pub fn poly(&self) -> &YPoly {
        &self.poly
    }

    pub fn seed(&self) -> &PuiseuxSeries {
        &self.seed
    }

    /// Cap (in grid units of the current ramification) reached so far.
    pub fn cap_reached(&self) -> i64 {
        self.memo.read().unwrap().cap()
    }

    /// Extend the memo so coefficients through grid exponent `cap` are
    /// available. Growth is geometric so repeated small requests stay
    /// cheap.
    pub fn ensure(&self, cap: i64) -> Result<()> {
        {
            let memo = self.memo.read().unwrap();
            if memo.cap() >= cap {
                return Ok(());
            }
        }
        let mut memo = self.memo.write().unwrap();
        if memo.cap() >= cap {
            return Ok(());
        }
        let target = cap.max(memo.cap().saturating_mul(2)).max(8);
        let lifted = hensel_lift(&self.poly, &memo, target)?;
        *memo = lifted;
        Ok(())
    }

    /// Snapshot of the expansion through grid exponent `cap`.
    pub fn expansion(&self, cap: i64) -> Result<PuiseuxSeries> {
        self.ensure(cap)?;
        let memo = self.memo.read().unwrap();
        Ok(PuiseuxSeries::new(
            memo.ram(),
            memo.coeffs().map(|(&l, c)| (l, c.clone())),
            cap,
        ))
    }

    /// Coefficients of x^0..x^n for an unramified branch.
    pub fn integer_coefficients(&self, n: usize) -> Result<Vec<Rational>> {
        self.ensure(n as i64)?;
        let memo = self.memo.read().unwrap();
        if memo.ram() != 1 {
            return Err(Error::InvalidArgument(
                "branch is ramified; integer coefficients undefined".into(),
            ));
        }
        Ok(memo.integer_coefficients(n))
    }
}
