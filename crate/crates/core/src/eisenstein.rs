//! Eisenstein denominator certificates.
//!
//! `certify` runs the constructive pipeline on a univariate defining
//! equation: clear the initial segment, recenter, read the initial form
//! a x^e of dP/dy, normalize to Pbar(x, z) = P(x, a z) / (a^2 x^e), and
//! take lambda = 1 / s_min from the orders of the non-unit part. The
//! resulting a_final satisfies a^{l+1} f_l integral for every l, which
//! `verify` checks directly on coefficient streams. `certify_multi`
//! reduces several variables to the single-variable pipeline through the
//! weighted monomial substitution and returns the square of the
//! single-variable constant. `search` and `weakly_eisenstein_check`
//! provide the denominator-based transcendence diagnostics.

use crate::error::{Error, Result};
use crate::exactnum::{factorize_with_cap, DEFAULT_FACTOR_CAP};
use crate::puiseux::{lift_grid, LSeries, LYPoly};
use crate::series::{
    make_injective_weights, phi_substitute_poly, PuiseuxSeries, RGSeries, TSeries, YPoly,
};
use crate::{rat_int, Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Output of the constructive proof pipeline. `a_final^{l+1} f_l` is
/// integral for every l up to `verified_to`, checked by expansion; the
/// certificate itself is order-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinCertificate {
    /// Coefficient of the initial form a x^e of dP/dy after recentring.
    pub a_raw: Integer,
    /// Order of dP/dy at the root.
    pub e: Rational,
    /// min( ord(Pbar(x,0))/2, ord(unit part - 1) ); `None` encodes
    /// +infinity (the root is polynomial after recentring).
    pub s_min: Option<Rational>,
    /// 1 / s_min, or zero when s_min is infinite.
    pub lambda: Rational,
    /// Normalized denominator base: c * |a_raw|^max(ceil(lambda), 1) with
    /// c clearing the initial segment.
    pub a_final: Integer,
    /// Every coefficient through this index was verified.
    pub verified_to: u32,
}

/// Outcome of a coefficient-stream check against a candidate constant.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyOutcome {
    Pass,
    /// Smallest index l with a^{l+1} f_l not integral, and that value.
    FailAt { index: usize, witness: Rational },
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, VerifyOutcome::Pass)
    }
}

/// Check a^{l+1} f_l in Z for all l.
pub fn verify(coeffs: &[Rational], a: &Integer) -> Result<VerifyOutcome> {
    if !a.is_positive() {
        return Err(Error::InvalidArgument(
            "verification constant must be positive".into(),
        ));
    }
    let ar = Rational::from_integer(a.clone());
    let mut pw = ar.clone(); // a^{l+1}
    for (l, f) in coeffs.iter().enumerate() {
        let witness = f * &pw;
        if !witness.denom().is_one() {
            return Ok(VerifyOutcome::FailAt { index: l, witness });
        }
        pw *= &ar;
    }
    Ok(VerifyOutcome::Pass)
}

/// Multivariate outcome: the first failing exponent in graded
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub enum MultiOutcome {
    Pass,
    FailAt { exponent: Vec<u32>, witness: Rational },
}

impl MultiOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, MultiOutcome::Pass)
    }
}

/// Check a^{|alpha|+1} f_alpha in Z for all |alpha| <= cap; equivalent to
/// integrality of the rescale a f(a x_1, ..., a x_n).
pub fn verify_multi(f: &TSeries, a: &Integer) -> Result<MultiOutcome> {
    if !a.is_positive() {
        return Err(Error::InvalidArgument(
            "verification constant must be positive".into(),
        ));
    }
    for (e, c) in f.sorted_terms() {
        let k = e.iter().sum::<u32>() + 1;
        let witness = c * Rational::from_integer(a.pow(k));
        if !witness.denom().is_one() {
            return Ok(MultiOutcome::FailAt {
                exponent: e,
                witness,
            });
        }
    }
    Ok(MultiOutcome::Pass)
}

/// What the grid pipeline extracts before any verification.
struct PipelineOutcome {
    a_raw: Integer,
    e: Rational,
    s_min: Option<Rational>,
    lambda: Rational,
    clear_constant: Integer,
    /// Initial segment of the scaled root (grid exponents <= e).
    f0: LSeries,
    /// Normalized Pbar coefficients (Laurent, unit part starts at 1).
    pbar: Vec<LSeries>,
    /// Order of the recentred scaled root, grid units.
    root_ord: Option<i64>,
}

/// The proof pipeline over a (1/D)-grid. `lp` must have integral
/// coefficients; `seed` pins a simple root.
fn pipeline(lp: &LYPoly, seed: &LSeries, grid: u32) -> Result<PipelineOutcome> {
    let d = lp.deg_y();
    let dr = Rational::from_integer(Integer::from(grid as i64));

    // determine e = ord dP/dy at the root by lifting far enough to see it
    let mut probe = 8i64;
    let (mut root, e_grid);
    loop {
        root = lift_grid(lp, seed, probe)?.0;
        let dv = lp.derivative_y().eval(&root);
        match dv.ord_grid() {
            Some(e) => {
                e_grid = e;
                break;
            }
            None => {
                probe *= 4;
                if probe > 1 << 22 {
                    return Err(Error::NotSeparable);
                }
            }
        }
    }
    if root.cap().map(|c| c < e_grid).unwrap_or(false) {
        root = lift_grid(lp, seed, e_grid + 1)?.0;
    }

    // initial segment f^(0): exponents <= e, cleared by c1
    let f0_raw: Vec<(i64, Rational)> = root
        .terms()
        .filter(|(&l, _)| l <= e_grid)
        .map(|(&l, c)| (l, c.clone()))
        .collect();
    let mut c1 = Integer::one();
    for (_, c) in &f0_raw {
        c1 = c1.lcm(c.denom());
    }
    c1 = c1.abs();
    let c1r = Rational::from_integer(c1.clone());

    // scale P <- c1^d P(x, y/c1) and recenter by the scaled segment
    let scaled = LYPoly {
        coeffs: lp
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.scalar_mul(&Rational::from_integer(c1.pow((d - j) as u32))))
            .collect(),
    };
    let f0: LSeries = RGSeries::from_terms(grid, f0_raw.iter().map(|(l, c)| (*l, c * &c1r)), None);
    let recentred = recenter_series(&scaled, &f0);

    let c0 = recentred.coeffs[0].clone();
    let cy = recentred.coeffs[1].clone();
    let e_check = cy
        .ord_grid()
        .expect("derivative order visible after recentring");
    assert_eq!(e_check, e_grid, "initial form order is stable under recentring");
    let a_raw_rat = cy.coefficient(e_grid);
    assert!(
        a_raw_rat.denom().is_one(),
        "cleared polynomial has integer initial form"
    );
    let a_raw = a_raw_rat.numer().clone();

    // s_min candidates in t-units
    let unit_minus_1 = {
        let mut u = cy.shift(-e_grid).scalar_mul(&(Rational::one() / &a_raw_rat));
        u.set_coefficient(0, u.coefficient(0) - Rational::one());
        u
    };
    let s2 = unit_minus_1.ord_grid().map(|o| rat_int(o) / &dr);

    let (s_min, lambda, root_ord) = if c0.is_zero() {
        // the recentred root is exactly zero: the branch is polynomial
        (None, Rational::zero(), None)
    } else {
        let g_ord = c0.ord_grid().unwrap() - e_grid;
        let s1 = Rational::new(Integer::from(c0.ord_grid().unwrap() - e_grid), Integer::from(2))
            / &dr;
        let s_min = match s2 {
            Some(b) => s1.min(b),
            None => s1,
        };
        assert!(s_min.is_positive(), "normalization forces positive s_min");
        let lambda = Rational::one() / &s_min;
        (Some(s_min), lambda, Some(g_ord))
    };

    // Pbar coefficients: c_j * a_raw^{j-2} / x^e, exact Laurent data
    let pbar: Vec<LSeries> = recentred
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let apow = if j >= 2 {
                Rational::from_integer(a_raw.pow((j - 2) as u32))
            } else {
                Rational::new(Integer::one(), a_raw.pow((2 - j) as u32))
            };
            c.shift(-e_grid).scalar_mul(&apow)
        })
        .collect();

    Ok(PipelineOutcome {
        a_raw,
        e: rat_int(e_grid) / &dr,
        s_min,
        lambda,
        clear_constant: c1,
        f0,
        pbar,
        root_ord,
    })
}

/// P(x, s(x) + y) for a series segment s, by Horner in y.
fn recenter_series(lp: &LYPoly, s: &LSeries) -> LYPoly {
    let grid = s.grid_denom();
    let shift_coeffs = [s.clone(), RGSeries::constant(grid, Rational::one())];
    let mut acc: Vec<LSeries> = vec![RGSeries::zero(grid)];
    for c in lp.coeffs.iter().rev() {
        // acc = acc * (s + y) + c
        let mut next = vec![RGSeries::zero(grid); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in shift_coeffs.iter().enumerate() {
                next[i + j] = next[i + j].add(&a.mul(b));
            }
        }
        next[0] = next[0].add(c);
        while next.len() > 1 && next.last().map(|c| c.is_zero()).unwrap_or(false) {
            next.pop();
        }
        acc = next;
    }
    LYPoly { coeffs: acc }
}

/// Expand the recentred, z-scaled root through the paper's linear
/// recursion: with the unit part of Pbar starting at exactly 1, the
/// coefficient of x^s in Pbar(x, g) determines b_s from earlier ones.
/// Powers of the partial sum are kept dense and updated in place, highest
/// power first so each update only reads not-yet-touched lower powers.
fn recursion_tail(pbar: &[LSeries], root_ord: i64, cap: i64) -> Vec<(i64, Rational)> {
    let deg = pbar.len() - 1;
    // the extraction window must reach past negative Laurent exponents
    let reach = pbar
        .iter()
        .filter_map(|c| c.ord_grid())
        .min()
        .unwrap_or(0)
        .min(0)
        .unsigned_abs() as i64;
    let keep = (cap + reach).max(0) as usize;
    if root_ord < 0 {
        // scaled roots of the pipeline always have positive order
        return Vec::new();
    }
    // powers[j][w] = coefficient of x^w in g^j
    let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::zero(); keep + 1]; deg + 1];
    powers[0][0] = Rational::one();
    let mut out: Vec<(i64, Rational)> = Vec::new();
    for s in root_ord..=cap {
        // value of [x^s] Pbar(x, g_partial)
        let mut v = pbar[0].coefficient(s);
        for (j, c) in pbar.iter().enumerate().skip(1) {
            for (&w, cw) in c.terms() {
                if j == 1 && w == 0 {
                    continue; // the unit 1 contributes the unknown b_s itself
                }
                let idx = s - w;
                if (0..=keep as i64).contains(&idx) {
                    let g = &powers[j][idx as usize];
                    if !g.is_zero() {
                        v += cw * g;
                    }
                }
            }
        }
        let b = -v;
        if b.is_zero() {
            continue;
        }
        // g <- g + b x^s: update high powers first, so the lower powers
        // read below are still the old values
        for j in (1..=deg).rev() {
            let mut binom = Integer::one();
            let mut bp = Rational::one();
            for i in 1..=j {
                binom = binom * Integer::from((j - i + 1) as i64) / Integer::from(i as i64);
                bp *= &b;
                let scale = Rational::from_integer(binom.clone()) * &bp;
                let shift = (s as usize) * i;
                if shift > keep {
                    break;
                }
                let top = keep - shift;
                let (lo, hi) = powers.split_at_mut(j);
                let src = &lo[j - i];
                let dst = &mut hi[0];
                for (w, cw) in src.iter().enumerate() {
                    if w > top {
                        break;
                    }
                    if !cw.is_zero() {
                        dst[w + shift] += cw * &scale;
                    }
                }
            }
        }
        out.push((s, b));
    }
    out
}

/// Certify a univariate defining equation: the full pipeline plus
/// verification of a_final^{l+1} f_l over l <= order by expansion.
pub fn certify(p: &YPoly, seed: &PuiseuxSeries, order: u32) -> Result<EisensteinCertificate> {
    Ok(certify_with_expansion(p, seed, order)?.0)
}

/// Certification together with the coefficient stream it was verified
/// against, so callers running further denominator diagnostics reuse the
/// expansion.
pub fn certify_with_expansion(
    p: &YPoly,
    seed: &PuiseuxSeries,
    order: u32,
) -> Result<(EisensteinCertificate, Vec<Rational>)> {
    if seed.ram() != 1 {
        return Err(Error::InvalidArgument(
            "certification requires an unramified (ram 1) seed".into(),
        ));
    }
    p.is_squarefree_y()?;
    let (cleared, _) = p.clear_denominators();
    let lp = LYPoly::from_ypoly(&cleared)?;
    let out = pipeline(&lp, &seed.to_grid(), 1)?;

    let ceil_lambda = out.lambda.ceil().numer().to_u32().expect("small lambda");
    let a_final = &out.clear_constant * out.a_raw.abs().pow(ceil_lambda.max(1));

    // expand the original branch to `order` and verify
    let coeffs = expansion_from_pipeline(&out, order as i64);
    match verify(&coeffs, &a_final)? {
        VerifyOutcome::Pass => {}
        VerifyOutcome::FailAt { index, witness } => unreachable!(
            "certificate soundness: a_final failed at l = {index} with witness {witness}"
        ),
    }

    Ok((
        EisensteinCertificate {
            a_raw: out.a_raw,
            e: out.e,
            s_min: out.s_min,
            lambda: out.lambda,
            a_final,
            verified_to: order,
        },
        coeffs,
    ))
}

/// Coefficients f_0..f_cap of the original root recovered from the
/// pipeline data: f = (f0 + a_raw * g) / c1.
fn expansion_from_pipeline(out: &PipelineOutcome, cap: i64) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); (cap + 1) as usize];
    let c1r = Rational::from_integer(out.clear_constant.clone());
    for (&l, c) in out.f0.terms() {
        if (0..=cap).contains(&l) {
            coeffs[l as usize] += c / &c1r;
        }
    }
    if let Some(root_ord) = out.root_ord {
        let ar = Rational::from_integer(out.a_raw.clone());
        for (l, b) in recursion_tail(&out.pbar, root_ord, cap) {
            if (0..=cap).contains(&l) {
                coeffs[l as usize] += b * &ar / &c1r;
            }
        }
    }
    coeffs
}

/// Expansion of a univariate branch via the pipeline recursion; cheaper
/// than repeated Newton refinement for long coefficient streams.
pub fn expand_branch(p: &YPoly, seed: &PuiseuxSeries, order: u32) -> Result<Vec<Rational>> {
    if seed.ram() != 1 {
        return Err(Error::InvalidArgument(
            "expansion requires an unramified (ram 1) seed".into(),
        ));
    }
    let (cleared, _) = p.clear_denominators();
    let lp = LYPoly::from_ypoly(&cleared)?;
    let out = pipeline(&lp, &seed.to_grid(), 1)?;
    Ok(expansion_from_pipeline(&out, order as i64))
}

/// Newton expansion of the multivariate branch pinned by a constant seed.
pub fn expand_root_multi(p: &YPoly, seed: &Rational, cap: u32) -> Result<TSeries> {
    let n = p.nvars_x().max(1);
    let at_origin = p.eval_constant(seed).eval_origin();
    if !at_origin.is_zero() {
        return Err(Error::SeedNotRoot(format!("{at_origin}"), "0".into()));
    }
    let dp = p.derivative_y();
    if dp.eval_constant(seed).eval_origin().is_zero() {
        return Err(Error::NotSeparable);
    }
    let mut xi = TSeries::constant(n, cap, seed.clone());
    loop {
        let r = p.eval_tseries(&xi)?;
        if r.is_zero() {
            return Ok(xi);
        }
        let d = dp.eval_tseries(&xi)?;
        let delta = r.mul(&d.invert_unit()?)?;
        xi = xi.sub(&delta)?;
    }
}

/// Several indeterminates via the weighted substitution: certify the
/// one-variable image on the exponent grid, convert with
/// <alpha, omega> <= 2 |alpha|, and return the squared constant. The
/// reported e, s_min and lambda are those of the grid image.
pub fn certify_multi(p: &YPoly, seed: &Rational, order: u32) -> Result<EisensteinCertificate> {
    p.is_squarefree_y()?;
    let n = p.nvars_x();
    if n <= 1 {
        let s = PuiseuxSeries::constant(seed.clone(), 0);
        return certify(p, &s, order);
    }
    let (cleared, _) = p.clear_denominators();
    let w = make_injective_weights(n, order.max(1));
    let grid = w.grid_denom();
    let coeffs: Vec<LSeries> = cleared
        .coeffs()
        .iter()
        .map(|c| phi_substitute_poly(c, &w))
        .collect::<Result<_>>()?;
    let lp = LYPoly { coeffs };
    let seed_series = RGSeries::from_terms(grid, [(0, seed.clone())], Some(0));
    let out = pipeline(&lp, &seed_series, grid)?;

    let ceil_lambda = out.lambda.ceil().numer().to_u32().expect("small lambda");
    let b = &out.clear_constant * out.a_raw.abs().pow(ceil_lambda.max(1));
    let a_final = &b * &b;

    let expansion = expand_root_multi(p, seed, order)?;
    match verify_multi(&expansion, &a_final)? {
        MultiOutcome::Pass => {}
        MultiOutcome::FailAt { exponent, witness } => unreachable!(
            "certificate soundness: a_final failed at alpha = {exponent:?} with witness {witness}"
        ),
    }

    Ok(EisensteinCertificate {
        a_raw: out.a_raw,
        e: out.e,
        s_min: out.s_min,
        lambda: out.lambda,
        a_final,
        verified_to: order,
    })
}

/// Reduced denominators of a coefficient stream with running lcm, prime
/// support and per-index maximal multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct DenominatorProfile {
    denominators: Vec<Integer>,
    running_lcm: Vec<Integer>,
    prime_support: Vec<Integer>,
    first_seen: Vec<(Integer, usize)>,
    max_multiplicities: Vec<u32>,
}

impl DenominatorProfile {
    pub fn from_coeffs(coeffs: &[Rational]) -> Result<Self> {
        Self::from_coeffs_with_cap(coeffs, DEFAULT_FACTOR_CAP)
    }

    pub fn from_coeffs_with_cap(coeffs: &[Rational], cap: u64) -> Result<Self> {
        let mut denominators = Vec::with_capacity(coeffs.len());
        let mut running_lcm = Vec::with_capacity(coeffs.len());
        let mut lcm = Integer::one();
        let mut support: Vec<Integer> = Vec::new();
        let mut first_seen: Vec<(Integer, usize)> = Vec::new();
        let mut max_multiplicities = Vec::with_capacity(coeffs.len());
        for (l, c) in coeffs.iter().enumerate() {
            let b = c.denom().abs();
            let f = factorize_with_cap(&b, cap)?;
            for (p, _) in f.factors() {
                if !support.contains(p) {
                    support.push(p.clone());
                    first_seen.push((p.clone(), l));
                }
            }
            max_multiplicities.push(f.max_multiplicity());
            lcm = lcm.lcm(&b);
            denominators.push(b);
            running_lcm.push(lcm.clone());
        }
        support.sort();
        Ok(DenominatorProfile {
            denominators,
            running_lcm,
            prime_support: support,
            first_seen,
            max_multiplicities,
        })
    }

    pub fn len(&self) -> usize {
        self.denominators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denominators.is_empty()
    }

    pub fn denominators(&self) -> &[Integer] {
        &self.denominators
    }

    pub fn running_lcm(&self) -> &[Integer] {
        &self.running_lcm
    }

    pub fn prime_support(&self) -> &[Integer] {
        &self.prime_support
    }

    /// beta(l): largest prime multiplicity of the l-th denominator.
    pub fn max_multiplicities(&self) -> &[u32] {
        &self.max_multiplicities
    }

    /// Index of the last denominator that introduced a new prime.
    pub fn support_stable_from(&self) -> usize {
        self.first_seen.iter().map(|(_, l)| *l).max().unwrap_or(0)
    }

    /// b_l divides a^{l+1} for all l.
    fn admits(&self, a: &Integer) -> bool {
        self.denominators.iter().enumerate().all(|(l, b)| {
            if b.is_one() {
                return true;
            }
            a.modpow(&Integer::from(l as u64 + 1), b).is_zero()
        })
    }
}

/// Smallest a <= bound whose powers clear the observed denominators, or
/// `None`. Candidates are the numbers with prime support inside the
/// profile's; a failure up to a bound is transcendence *evidence*, never
/// proof.
pub fn search(profile: &DenominatorProfile, bound: u64) -> Option<Integer> {
    if profile.is_empty() {
        return None;
    }
    let mut candidates: Vec<Integer> = vec![Integer::one()];
    for p in profile.prime_support() {
        if p > &Integer::from(bound) {
            continue;
        }
        let mut next = Vec::new();
        for c in &candidates {
            let mut v = c.clone();
            loop {
                next.push(v.clone());
                v = &v * p;
                if v > Integer::from(bound) {
                    break;
                }
            }
        }
        candidates = next;
    }
    candidates.sort();
    candidates.into_iter().find(|a| profile.admits(a))
}

/// Observed-range weak-Eisenstein diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct WeaklyEisensteinReport {
    pub prime_support: Vec<Integer>,
    /// No new prime enters the support after this index.
    pub support_stable_from: usize,
    /// The support stopped growing in the first half of the observed
    /// range; a statement about the observed range only.
    pub is_finite_observed: bool,
    /// beta(l) per index: the largest prime multiplicity of b_l.
    pub beta: Vec<u32>,
    /// Least natural lambda whose excess max_l (beta(l) - lambda l) is no
    /// larger than the anchor beta(0), with mu that excess clamped at 0;
    /// fitted only when the support looks finite.
    pub linear_fit: Option<(u32, u32)>,
}

pub fn weakly_eisenstein_check(profile: &DenominatorProfile) -> WeaklyEisensteinReport {
    let beta: Vec<u32> = profile.max_multiplicities().to_vec();
    let stable_from = profile.support_stable_from();
    let is_finite_observed = profile.is_empty() || stable_from <= profile.len() / 2;
    let linear_fit = if is_finite_observed && !profile.is_empty() {
        let anchor = i64::from(beta[0]);
        let mut lambda = 0u32;
        loop {
            let excess = beta
                .iter()
                .enumerate()
                .map(|(l, &b)| i64::from(b) - i64::from(lambda) * l as i64)
                .max()
                .unwrap();
            if excess <= anchor {
                break Some((lambda, excess.max(0) as u32));
            }
            lambda += 1;
        }
    } else {
        None
    };
    WeaklyEisensteinReport {
        prime_support: profile.prime_support().to_vec(),
        support_stable_from: stable_from,
        is_finite_observed,
        beta,
        linear_fit,
    }
}
