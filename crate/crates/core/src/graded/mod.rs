//! Weighted graded root lifting and the support-cone machinery.
//!
//! A `GradedSeries` is the weighted analogue of a Puiseux expansion: a sum
//! of omega-homogeneous fractions a_l(x) / a(x)^{m(l)} with one fixed
//! omega-homogeneous denominator base a, produced by running the
//! Eisenstein recursion over the ground ring Q[x] localized at a. The
//! denominator exponents obey m(l) <= ceil(l - l0) + 1 and every piece
//! has weighted valuation exactly l.

mod cone;
mod psi;

pub use cone::{normalizing_lambda, support_cone, support_cone_report, Cone, SupportConeReport};
pub use psi::{psi_lambda, MonomialMap};

use crate::error::{Error, Result};
use crate::series::{
    graded_decompose, initial_form_omega, nu_omega, omega_homogeneous_weight, MPoly, WeightVector,
    YPoly,
};
use crate::{rat_int, Integer, Rational};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// One piece a_l(x) / base^{den_pow}, reduced (the numerator is not
/// divisible by the base when den_pow > 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub num: MPoly,
    pub den_pow: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedSeries {
    omega: WeightVector,
    /// Exponent grid of the underlying variables: entries are polynomials
    /// in x_i^{1/ram}.
    ram: u32,
    base: MPoly,
    /// Pieces keyed by weight on the grid (1/D) with D the weight
    /// vector's common denominator.
    pieces: BTreeMap<i64, Piece>,
    cap_grid: i64,
}

impl GradedSeries {
    pub fn omega(&self) -> &WeightVector {
        &self.omega
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    /// The omega-homogeneous denominator base a(x).
    pub fn base(&self) -> &MPoly {
        &self.base
    }

    /// Weight of the first nonzero piece.
    pub fn lo(&self) -> Option<Rational> {
        self.pieces
            .keys()
            .next()
            .map(|&k| rat_int(k) / rat_int(self.grid_denom() as i64))
    }

    pub fn grid_denom(&self) -> u32 {
        self.omega.grid_denom()
    }

    /// Pieces with their weights, ascending.
    pub fn pieces(&self) -> impl Iterator<Item = (Rational, &Piece)> {
        let d = self.grid_denom() as i64;
        self.pieces.iter().map(move |(&k, p)| (rat_int(k) / rat_int(d), p))
    }

    pub fn piece_at(&self, weight: &Rational) -> Option<&Piece> {
        let k = (weight * rat_int(self.grid_denom() as i64))
            .to_integer()
            .to_i64()?;
        self.pieces.get(&k)
    }

    /// Cap in weight units: pieces of weight <= cap are complete.
    pub fn cap(&self) -> Rational {
        rat_int(self.cap_grid) / rat_int(self.grid_denom() as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Rebuild from serialized parts, re-validating the graded laws.
    pub fn from_parts(
        omega: WeightVector,
        ram: u32,
        base: MPoly,
        pieces: Vec<(Rational, MPoly, u32)>,
        cap: &Rational,
    ) -> Result<Self> {
        let d = omega.grid_denom() as i64;
        let cap_grid = (cap * rat_int(d))
            .floor()
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument("cap too large".into()))?;
        let mut map = BTreeMap::new();
        for (weight, num, den_pow) in pieces {
            let key = (&weight * rat_int(d)).to_integer().to_i64().ok_or_else(|| {
                Error::InvalidArgument(format!("weight {weight} not on the grid 1/{d}"))
            })?;
            map.insert(key, Piece { num, den_pow });
        }
        let out = GradedSeries {
            omega,
            ram,
            base,
            pieces: map,
            cap_grid,
        };
        validate_laws(&out)?;
        Ok(out)
    }

    /// Substitute the partial sum into a y-polynomial and return the
    /// minimal weight of the residual, `None` when it vanishes in the
    /// working window (the residual-law check).
    pub fn residual_weight(&self, p: &YPoly) -> Result<Option<Rational>> {
        let d = self.grid_denom() as i64;
        let stretched = if self.ram > 1 {
            p.stretch_x(self.ram)
        } else {
            p.clone()
        };
        let keep = self.cap_grid + 4 * d;
        let g: WSeries = self
            .pieces
            .iter()
            .map(|(&k, piece)| {
                (
                    k,
                    Frac {
                        num: piece.num.clone(),
                        apow: piece.den_pow,
                    },
                )
            })
            .collect();
        // Horner over the weight-graded localized ring
        let mut acc: WSeries = WSeries::new();
        for c in stretched.coeffs().iter().rev() {
            let mut next = wmul(&acc, &g, &self.base, keep);
            if !c.is_zero() {
                for (weight, part) in graded_decompose(c, &self.omega)? {
                    let k = (weight * rat_int(d)).to_integer().to_i64().expect("grid weight");
                    let entry = next.entry(k).or_insert_with(Frac::zero);
                    *entry = entry.add(
                        &Frac {
                            num: part,
                            apow: 0,
                        },
                        &self.base,
                    );
                }
            }
            next.retain(|_, f| !f.is_zero());
            acc = next;
        }
        Ok(acc
            .iter()
            .next()
            .map(|(&k, _)| rat_int(k) / rat_int(d)))
    }
}

/// Numerator over base^apow.
#[derive(Debug, Clone, PartialEq)]
struct Frac {
    num: MPoly,
    apow: u32,
}

impl Frac {
    fn zero() -> Self {
        Frac {
            num: MPoly::zero(),
            apow: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(mut self, base: &MPoly) -> Self {
        if self.num.is_zero() {
            self.apow = 0;
            return self;
        }
        while self.apow > 0 {
            match self.num.try_div_exact(base) {
                Some(q) => {
                    self.num = q;
                    self.apow -= 1;
                }
                None => break,
            }
        }
        self
    }

    fn add(&self, other: &Frac, base: &MPoly) -> Frac {
        let apow = self.apow.max(other.apow);
        let lift = |f: &Frac| {
            if f.apow == apow {
                f.num.clone()
            } else {
                &f.num * &base.pow(apow - f.apow)
            }
        };
        Frac {
            num: &lift(self) + &lift(other),
            apow,
        }
        .reduce(base)
    }

    fn mul(&self, other: &Frac, base: &MPoly) -> Frac {
        Frac {
            num: &self.num * &other.num,
            apow: self.apow + other.apow,
        }
        .reduce(base)
    }
}

/// Weight-graded series: weight (grid units) to localized fraction.
type WSeries = BTreeMap<i64, Frac>;

struct LiftContext {
    /// Pbar coefficients by y-power: weight-graded, with the unit part of
    /// the linear coefficient a nonzero constant at weight 0.
    pbar: Vec<WSeries>,
    base: MPoly,
    e_grid: i64,
}

impl LiftContext {
    /// Decompose a recentred polynomial into the normalized pipeline data
    /// over the ground ring Q[x] localized at the initial form of dP/dy.
    fn from_poly(p: &YPoly, w: &WeightVector) -> Result<Self> {
        if p.deg_y() == 0 {
            return Err(Error::ConstantInY);
        }
        let d = w.grid_denom() as i64;
        let to_grid = |poly: &MPoly| -> Result<WSeries> {
            let mut out = WSeries::new();
            if poly.is_zero() {
                return Ok(out);
            }
            for (weight, part) in graded_decompose(poly, w)? {
                let k = (weight * rat_int(d)).to_integer().to_i64().expect("grid weight");
                out.insert(
                    k,
                    Frac {
                        num: part,
                        apow: 0,
                    },
                );
            }
            Ok(out)
        };
        let coeffs: Vec<WSeries> = p
            .coeffs()
            .iter()
            .map(to_grid)
            .collect::<Result<_>>()?;
        let c1 = &coeffs[1];
        let (&e_grid, lead) = c1.iter().next().ok_or(Error::NotSeparable)?;
        let base = lead.num.clone();
        debug_assert!(
            omega_homogeneous_weight(&base, w).is_some(),
            "initial forms are homogeneous by construction"
        );

        // Pbar_j = c_j * a^{j-2} / t^e, coefficients in Q[x] localized at a
        let mut pbar: Vec<WSeries> = Vec::with_capacity(coeffs.len());
        for (j, cj) in coeffs.iter().enumerate() {
            let mut out = WSeries::new();
            for (&k, f) in cj {
                let frac = if j >= 2 {
                    Frac {
                        num: &f.num * &base.pow((j - 2) as u32),
                        apow: 0,
                    }
                } else {
                    Frac {
                        num: f.num.clone(),
                        apow: (2 - j) as u32,
                    }
                    .reduce(&base)
                };
                out.insert(k - e_grid, frac);
            }
            pbar.push(out);
        }
        // the weight-0 entry of Pbar_1 is a / a^1, a nonzero constant
        let unit = pbar[1].get(&0).expect("unit part present");
        debug_assert!(unit.apow == 0 && unit.num.is_constant());
        Ok(LiftContext {
            pbar,
            base,
            e_grid,
        })
    }

    fn unit_value(&self) -> Rational {
        self.pbar[1].get(&0).expect("unit present").num.constant_term()
    }
}

fn wmul(a: &WSeries, b: &WSeries, base: &MPoly, keep: i64) -> WSeries {
    let mut out = WSeries::new();
    for (&ka, fa) in a {
        for (&kb, fb) in b {
            if ka + kb > keep {
                continue;
            }
            let prod = fa.mul(fb, base);
            if prod.is_zero() {
                continue;
            }
            let entry = out.entry(ka + kb).or_insert_with(Frac::zero);
            *entry = entry.add(&prod, base);
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

/// Lift the branch pinned by a polynomial seed to the graded
/// representation with weights up to `cap` (in weight units).
pub fn graded_root_lift(
    p: &YPoly,
    w: &WeightVector,
    seed: &MPoly,
    cap: &Rational,
) -> Result<GradedSeries> {
    lift_inner(p, w, seed, cap, 1)
}

/// Ramified variant: substitute x_i -> x_i^q and lift; the result is read
/// on the (1/q)-exponent grid.
pub fn graded_puiseux(
    p: &YPoly,
    w: &WeightVector,
    q: u32,
    seed: &MPoly,
    cap: &Rational,
) -> Result<GradedSeries> {
    if q == 0 {
        return Err(Error::ZeroRamification);
    }
    lift_inner(p, w, seed, cap, q)
}

fn lift_inner(
    p: &YPoly,
    w: &WeightVector,
    seed: &MPoly,
    cap: &Rational,
    ram: u32,
) -> Result<GradedSeries> {
    if p.nvars_x() > w.len() {
        return Err(Error::WeightLength(p.nvars_x(), w.len()));
    }
    let d = w.grid_denom() as i64;
    let cap_grid = (cap * rat_int(d)).floor().to_integer().to_i64().ok_or_else(|| {
        Error::InvalidArgument("cap too large".into())
    })?;
    let stretched = if ram > 1 { p.stretch_x(ram) } else { p.clone() };
    let recentred = stretched.recenter(seed);
    let ctx = LiftContext::from_poly(&recentred, w)?;
    let unit = ctx.unit_value();

    // linear recursion: b_s = -(coefficient of t^s in Pbar(g_partial)) / unit
    let deg = ctx.pbar.len() - 1;
    let mut powers: Vec<WSeries> = vec![BTreeMap::new(); deg + 1];
    powers[0].insert(
        0,
        Frac {
            num: MPoly::one(),
            apow: 0,
        },
    );
    let mut tail: Vec<(i64, Frac)> = Vec::new();
    let mut root_ord: Option<i64> = None;
    let keep = {
        let reach = ctx
            .pbar
            .iter()
            .flat_map(|c| c.keys().next().copied())
            .min()
            .unwrap_or(0)
            .min(0);
        cap_grid - reach
    };
    let start = ctx.pbar[0].keys().next().copied().unwrap_or(cap_grid + 1);
    for s in start..=cap_grid {
        let mut v = ctx.pbar[0].get(&s).cloned().unwrap_or_else(Frac::zero);
        for (j, cj) in ctx.pbar.iter().enumerate().skip(1) {
            for (&wq, cw) in cj {
                if j == 1 && wq == 0 {
                    continue; // unit contributes the unknown itself
                }
                if let Some(gp) = powers[j].get(&(s - wq)) {
                    v = v.add(&cw.mul(gp, &ctx.base), &ctx.base);
                }
            }
        }
        if v.is_zero() {
            continue;
        }
        let b = Frac {
            num: v.num.scalar_mul(&(-Rational::one() / &unit)),
            apow: v.apow,
        }
        .reduce(&ctx.base);
        if root_ord.is_none() {
            root_ord = Some(s);
            // seed sufficiency: each higher coefficient must meet the
            // recursion strictly later than the unknown it determines
            for (j, cj) in ctx.pbar.iter().enumerate().skip(2) {
                if let Some(&oj) = cj.keys().next() {
                    if oj + (j as i64 - 1) * s <= 0 {
                        return Err(Error::SeedAccuracy {
                            residual: format!("{s}/{d} (first graded piece)"),
                            derivative: format!("{}/{d} (order of coefficient {j})", oj + ctx.e_grid),
                        });
                    }
                }
            }
        }
        // update powers with g <- g + b t^s
        let old = powers.clone();
        for (j, pj) in powers.iter_mut().enumerate().skip(1) {
            let mut bpow = Frac {
                num: MPoly::one(),
                apow: 0,
            };
            let mut binom = Integer::one();
            for i in 1..=j {
                binom = binom * Integer::from((j - i + 1) as i64) / Integer::from(i as i64);
                bpow = bpow.mul(&b, &ctx.base);
                let scaled = Frac {
                    num: bpow.num.scalar_mul(&Rational::from_integer(binom.clone())),
                    apow: bpow.apow,
                };
                let shift = s * i as i64;
                for (&wq, f) in &old[j - i] {
                    if wq + shift > keep {
                        continue;
                    }
                    let add = f.mul(&scaled, &ctx.base);
                    if add.is_zero() {
                        continue;
                    }
                    let entry = pj.entry(wq + shift).or_insert_with(Frac::zero);
                    *entry = entry.add(&add, &ctx.base);
                }
            }
            pj.retain(|_, f| !f.is_zero());
        }
        tail.push((s, b));
    }

    // assemble: seed pieces + base * tail pieces, shifted back by e
    let mut pieces: BTreeMap<i64, Piece> = BTreeMap::new();
    let mut push = |k: i64, f: Frac| {
        if f.is_zero() || k > cap_grid {
            return;
        }
        let entry = pieces.entry(k).or_insert(Piece {
            num: MPoly::zero(),
            den_pow: 0,
        });
        let merged = Frac {
            num: entry.num.clone(),
            apow: entry.den_pow,
        }
        .add(&f, &ctx.base);
        *entry = Piece {
            num: merged.num,
            den_pow: merged.apow,
        };
    };
    if !seed.is_zero() {
        for (weight, part) in graded_decompose(seed, w)? {
            let k = (weight * rat_int(d)).to_integer().to_i64().expect("grid weight");
            push(
                k,
                Frac {
                    num: part,
                    apow: 0,
                },
            );
        }
    }
    for (s, b) in tail {
        // the substitution y = a z scales values, not the grading: the
        // piece base * b_s stays at weight s
        let f = Frac {
            num: &b.num * &ctx.base,
            apow: b.apow,
        }
        .reduce(&ctx.base);
        push(s, f);
    }
    pieces.retain(|_, p| !p.num.is_zero());

    let out = GradedSeries {
        omega: w.clone(),
        ram,
        base: ctx.base,
        pieces,
        cap_grid,
    };
    validate_laws(&out)?;
    Ok(out)
}

/// The Thm-5 shape: every piece is omega-homogeneous of weight exactly l
/// and its reduced denominator exponent obeys ceil(l - l0) + 1.
fn validate_laws(g: &GradedSeries) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidArgument(format!("graded series: {msg}")));
    let Some(lo) = g.lo() else { return Ok(()) };
    let base_weight = if g.base.is_constant() {
        Rational::zero()
    } else {
        nu_omega(&g.base, &g.omega)?
    };
    for (weight, piece) in g.pieces() {
        if omega_homogeneous_weight(&piece.num, &g.omega).is_none() {
            return fail(format!("numerator at weight {weight} is not homogeneous"));
        }
        let nw = nu_omega(&piece.num, &g.omega)?;
        let piece_weight = nw - rat_int(piece.den_pow as i64) * &base_weight;
        if piece_weight != weight {
            return fail(format!(
                "piece valuation {piece_weight} differs from its weight {weight}"
            ));
        }
        let bound = (&weight - &lo).ceil() + Rational::one();
        if rat_int(piece.den_pow as i64) > bound {
            return fail(format!(
                "denominator exponent {} exceeds the bound {bound} at weight {weight}",
                piece.den_pow
            ));
        }
    }
    Ok(())
}

/// Weighted completion norm exponent: ord(f) - ord(g), or the nu_omega
/// difference when weights are supplied. The norm itself is
/// e^{-result} and stays symbolic.
pub fn completion_norm(f: &MPoly, g: &MPoly, w: Option<&WeightVector>) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    match w {
        Some(w) => Ok(nu_omega(f, w)? - nu_omega(g, w)?),
        None => Ok(rat_int(f.ord().unwrap() as i64) - rat_int(g.ord().unwrap() as i64)),
    }
}

/// The omega-initial monomial of the denominator base, with ties broken
/// by an expansion direction (a permutation of the variables, earliest =
/// smallest). Returns the exponent beta and the remaining monomials'
/// direction vectors, the data the support cone is built from.
pub(crate) fn initial_monomial_directions(
    a: &MPoly,
    w: &WeightVector,
    direction: Option<&[usize]>,
) -> Result<(Vec<i64>, Vec<Vec<i64>>)> {
    let (_, init) = initial_form_omega(a, w)?;
    let n = a.nvars();
    let monomials: Vec<Vec<u32>> = init
        .terms()
        .map(|(e, _)| {
            let mut v = e.clone();
            v.resize(n, 0);
            v
        })
        .collect();
    let pick = if monomials.len() == 1 {
        monomials[0].clone()
    } else {
        let Some(dir) = direction else {
            return Err(Error::InitialFormTie);
        };
        // rank by the direction: earlier variables weigh less
        let mut rank = vec![0usize; n];
        for (r, &v) in dir.iter().enumerate() {
            if v < n {
                rank[v] = r;
            }
        }
        let score = |e: &Vec<u32>| -> (i64, Vec<u32>) {
            let s: i64 = e
                .iter()
                .enumerate()
                .map(|(i, &k)| rank.get(i).copied().unwrap_or(n) as i64 * k as i64)
                .sum();
            (s, e.clone())
        };
        monomials
            .iter()
            .min_by_key(|e| score(e))
            .cloned()
            .expect("nonempty initial form")
    };
    let beta: Vec<i64> = pick.iter().map(|&k| k as i64).collect();
    let dirs: Vec<Vec<i64>> = a
        .terms()
        .filter(|(e, _)| **e != pick)
        .map(|(e, _)| {
            (0..n)
                .map(|i| e.get(i).copied().unwrap_or(0) as i64 - beta.get(i).copied().unwrap_or(0))
                .collect()
        })
        .collect();
    Ok((beta, dirs))
}
