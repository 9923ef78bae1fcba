//! Weight vectors, weighted valuations, graded decomposition, and the
//! monomial substitution x_i -> t^{omega_i}.
//!
//! Q-linear independence of real weights is replaced, for a fixed
//! truncation cap N, by constructive injectivity of alpha -> <alpha, omega>
//! on the box |alpha| <= N. The weights produced here are
//! omega_1 = 1 and omega_i = 1 + B^{i-2}/B^{n-1} for i >= 2, with
//! B = 2N + 1: a base-B digit argument shows injectivity, and every
//! omega_i stays in [1, 2] so that <alpha, omega> <= 2|alpha|.

use super::mpoly::MPoly;
use super::rgseries::RGSeries;
use super::tseries::TSeries;
use crate::error::{Error, Result};
use crate::{Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    omega: Vec<Rational>,
    cap: u32,
    injective_on_cap: bool,
}

impl WeightVector {
    /// Wrap user-supplied positive weights without an injectivity
    /// certificate.
    pub fn new(omega: Vec<Rational>, cap: u32) -> Result<Self> {
        if omega.is_empty() || omega.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidArgument(
                "weights must be a nonempty list of positive rationals".into(),
            ));
        }
        Ok(WeightVector {
            omega,
            cap,
            injective_on_cap: false,
        })
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn injective_on_cap(&self) -> bool {
        self.injective_on_cap
    }

    /// Weighted degree of a single exponent vector (shorter vectors are
    /// padded with zeros).
    pub fn weight_of(&self, e: &[u32]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                acc += &self.omega[i] * Rational::from_integer(Integer::from(k));
            }
        }
        acc
    }

    /// Common denominator D of the weights: every <alpha, omega> lies on
    /// the grid (1/D)N.
    pub fn grid_denom(&self) -> u32 {
        let mut d = Integer::one();
        for w in &self.omega {
            d = d.lcm(w.denom());
        }
        d.to_u32().expect("weight denominators stay at desk scale")
    }

    /// Exhaustively check injectivity of alpha -> <alpha, omega> over the
    /// box |alpha| <= cap and record the certificate. Errors out when the
    /// box is unreasonably large.
    pub fn certify_injective(&mut self) -> Result<bool> {
        let n = self.omega.len();
        let count = lattice_box_size(n, self.cap);
        if count > 200_000 {
            return Err(Error::SizeGuard(format!(
                "injectivity check over {count} lattice points"
            )));
        }
        let mut seen = std::collections::HashMap::new();
        let mut ok = true;
        for e in lattice_box(n, self.cap) {
            let w = self.weight_of(&e);
            if seen.insert(w, e).is_some() {
                ok = false;
                break;
            }
        }
        self.injective_on_cap = ok;
        Ok(ok)
    }

    fn certified_by_construction(omega: Vec<Rational>, cap: u32) -> Self {
        WeightVector {
            omega,
            cap,
            injective_on_cap: true,
        }
    }
}

fn lattice_box_size(n: usize, cap: u32) -> u64 {
    // C(cap + n, n)
    let mut acc: u64 = 1;
    for i in 1..=n as u64 {
        acc = acc.saturating_mul(cap as u64 + i) / i;
    }
    acc
}

/// All exponent vectors of length n with |alpha| <= cap.
pub fn lattice_box(n: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, cap, &mut cur, &mut out);
    out
}

/// Construct weights in [1, 2] whose pairing is injective on the box
/// |alpha| <= cap, certificate set by construction.
pub fn make_injective_weights(n: usize, cap: u32) -> WeightVector {
    assert!(n >= 1);
    if n == 1 {
        return WeightVector::certified_by_construction(vec![Rational::one()], cap);
    }
    let b = Integer::from(2 * cap + 1);
    let scale = b.pow(n as u32 - 1);
    let mut omega = vec![Rational::one()];
    for i in 2..=n {
        let num = b.pow(i as u32 - 2);
        omega.push(Rational::one() + Rational::new(num, scale.clone()));
    }
    WeightVector::certified_by_construction(omega, cap)
}

/// Minimum weighted degree of a nonzero polynomial.
pub fn nu_omega(f: &MPoly, w: &WeightVector) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.nvars() > w.len() {
        return Err(Error::WeightLength(f.nvars(), w.len()));
    }
    Ok(f.terms().map(|(e, _)| w.weight_of(e)).min().unwrap())
}

/// Minimum weighted degree of a nonzero truncated series.
pub fn nu_omega_tseries(f: &TSeries, w: &WeightVector) -> Result<Rational> {
    if f.nvars() > w.len() {
        return Err(Error::WeightLength(f.nvars(), w.len()));
    }
    f.terms()
        .map(|(e, _)| w.weight_of(e))
        .min()
        .ok_or(Error::ZeroInput)
}

/// The omega-initial form: all terms of minimal weighted degree.
pub fn initial_form_omega(f: &MPoly, w: &WeightVector) -> Result<(Rational, MPoly)> {
    let nu = nu_omega(f, w)?;
    let init = MPoly::from_terms(
        f.terms()
            .filter(|(e, _)| w.weight_of(e) == nu)
            .map(|(e, c)| (e.clone(), c.clone())),
    );
    Ok((nu, init))
}

/// Split a polynomial into omega-homogeneous parts with strictly
/// increasing weights. The parts sum back to the input.
pub fn graded_decompose(f: &MPoly, w: &WeightVector) -> Result<Vec<(Rational, MPoly)>> {
    if f.nvars() > w.len() {
        return Err(Error::WeightLength(f.nvars(), w.len()));
    }
    let mut buckets: std::collections::BTreeMap<Rational, Vec<(Vec<u32>, Rational)>> =
        std::collections::BTreeMap::new();
    for (e, c) in f.terms() {
        buckets
            .entry(w.weight_of(e))
            .or_default()
            .push((e.clone(), c.clone()));
    }
    Ok(buckets
        .into_iter()
        .map(|(wt, terms)| (wt, MPoly::from_terms(terms)))
        .collect())
}

/// A polynomial is omega-homogeneous when all its monomials share one
/// weighted degree; returns that degree (zero polynomial passes vacuously
/// with weight None).
pub fn omega_homogeneous_weight(f: &MPoly, w: &WeightVector) -> Option<Option<Rational>> {
    if f.is_zero() {
        return Some(None);
    }
    let mut wt: Option<Rational> = None;
    for (e, _) in f.terms() {
        let v = w.weight_of(e);
        match &wt {
            None => wt = Some(v),
            Some(u) if *u == v => {}
            Some(_) => return None,
        }
    }
    Some(wt)
}

/// The substitution phi(h)(t) = h(t^{omega_1}, ..., t^{omega_n}): the term
/// x^alpha lands at grid exponent <alpha, omega>. Requires the injectivity
/// certificate so that no two terms collide.
pub fn phi_substitute(h: &TSeries, w: &WeightVector) -> Result<RGSeries<Rational>> {
    if !w.injective_on_cap() || w.cap() < h.cap() {
        return Err(Error::MissingInjectivity(h.cap()));
    }
    if h.nvars() > w.len() {
        return Err(Error::WeightLength(h.nvars(), w.len()));
    }
    let d = w.grid_denom() as i64;
    let dr = Rational::from_integer(Integer::from(d));
    // Terms of weight <= cap are fully determined by the truncation
    // (omega_i >= 1 forces |alpha| <= <alpha, omega>); beyond that an
    // unseen term of higher total degree could interfere.
    let cap_grid = (h.cap() as i64) * d;
    let mut out = RGSeries::zero(w.grid_denom());
    let mut seen = std::collections::HashSet::new();
    for (e, c) in h.terms() {
        let k_rat = w.weight_of(e) * &dr;
        debug_assert!(k_rat.denom().is_one());
        let k = k_rat.numer().to_i64().expect("grid exponent fits in i64");
        assert!(seen.insert(k), "injectivity certificate violated");
        if k <= cap_grid {
            out.set_coefficient(k, c.clone());
        }
    }
    Ok(out.truncate(cap_grid))
}

/// Grid image of a polynomial under phi (no cap semantics, used to map
/// defining equations).
pub fn phi_substitute_poly(p: &MPoly, w: &WeightVector) -> Result<RGSeries<Rational>> {
    if p.nvars() > w.len() {
        return Err(Error::WeightLength(p.nvars(), w.len()));
    }
    let d = w.grid_denom() as i64;
    let dr = Rational::from_integer(Integer::from(d));
    let mut out = RGSeries::zero(w.grid_denom());
    for (e, c) in p.terms() {
        let k_rat = w.weight_of(e) * &dr;
        debug_assert!(k_rat.denom().is_one());
        let k = k_rat.numer().to_i64().expect("grid exponent fits in i64");
        out.set_coefficient(k, out.coefficient(k) + c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    fn wv(ws: &[(i64, i64)], cap: u32) -> WeightVector {
        WeightVector::new(ws.iter().map(|&(n, d)| rat(n, d)).collect(), cap).unwrap()
    }

    #[test]
    fn nu_omega_examples() {
        // f = x1 + x2^2, omega = (3,1): min(3, 2) = 2
        let f = &x(0) + &x(1).pow(2);
        assert_eq!(nu_omega(&f, &wv(&[(3, 1), (1, 1)], 8)).unwrap(), rat_int(2));
        assert_eq!(nu_omega(&x(0), &wv(&[(1, 1), (1, 1)], 8)).unwrap(), rat_int(1));
        // x1^2 x2 with omega = (1/2, 2): 2*(1/2) + 2 = 3
        let g = &x(0).pow(2) * &x(1);
        assert_eq!(nu_omega(&g, &wv(&[(1, 2), (2, 1)], 8)).unwrap(), rat_int(3));
        assert!(matches!(
            nu_omega(&MPoly::zero(), &wv(&[(1, 1)], 8)),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn nu_omega_is_multiplicative() {
        let w = wv(&[(1, 1), (3, 2)], 8);
        let f = &(&x(0) * &x(1)) + &x(0).pow(3);
        let g = &x(1).pow(2) + &x(0);
        let lhs = nu_omega(&(&f * &g), &w).unwrap();
        let rhs = nu_omega(&f, &w).unwrap() + nu_omega(&g, &w).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_decompose_examples() {
        let w11 = wv(&[(1, 1), (1, 1)], 8);
        let w12 = wv(&[(1, 1), (2, 1)], 8);
        let f = &x(0) + &x(1);
        let parts = graded_decompose(&f, &w11).unwrap();
        assert_eq!(parts, vec![(rat_int(1), f.clone())]);
        let parts = graded_decompose(&f, &w12).unwrap();
        assert_eq!(parts, vec![(rat_int(1), x(0)), (rat_int(2), x(1))]);

        // x1^2 + x1 x2 + x2^3 under total degree
        let g = &(&x(0).pow(2) + &(&x(0) * &x(1))) + &x(1).pow(3);
        let parts = graded_decompose(&g, &w11).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (rat_int(2), &x(0).pow(2) + &(&x(0) * &x(1))));
        assert_eq!(parts[1], (rat_int(3), x(1).pow(3)));

        // parts sum to the input and are homogeneous
        let mut sum = MPoly::zero();
        for (wt, p) in &parts {
            assert_eq!(
                omega_homogeneous_weight(p, &w11),
                Some(Some(wt.clone()))
            );
            sum = &sum + p;
        }
        assert_eq!(sum, g);
    }

    #[test]
    fn injective_weights_construction() {
        let w = make_injective_weights(1, 10);
        assert_eq!(w.omega(), &[rat_int(1)]);
        assert!(w.injective_on_cap());

        // n = 2, cap = 3: omega = (1, 1 + 1/7)
        let w = make_injective_weights(2, 3);
        assert_eq!(w.omega(), &[rat_int(1), rat(8, 7)]);
        let mut w2 = w.clone();
        assert!(w2.certify_injective().unwrap());

        // n = 3, cap = 2: exhaustive pairwise distinctness
        let mut w = make_injective_weights(3, 2);
        assert!(w.omega().iter().all(|o| *o >= rat_int(1) && *o <= rat_int(2)));
        assert!(w.certify_injective().unwrap());
    }

    #[test]
    fn phi_substitute_examples() {
        // (1, 3/2) is injective on the box |alpha| <= 2
        let w = {
            let mut w = WeightVector::new(vec![rat_int(1), rat(3, 2)], 2).unwrap();
            assert!(w.certify_injective().unwrap());
            w
        };
        // x1 + x2 -> t + t^{3/2}
        let h = TSeries::from_mpoly(&(&x(0) + &x(1)), 2, 2).unwrap();
        let img = phi_substitute(&h, &w).unwrap();
        assert_eq!(img.grid_denom(), 2);
        assert_eq!(img.coefficient(2), rat_int(1));
        assert_eq!(img.coefficient(3), rat_int(1));
        // x1 x2 -> t^{5/2}; the input is exact, so use the polynomial map
        let img = phi_substitute_poly(&(&x(0) * &x(1)), &w).unwrap();
        assert_eq!(img.coefficient(5), rat_int(1));
        assert_eq!(img.num_terms(), 1);

        // (1+x1)(1+x2): four distinct exponents 0, w1, w2, w1+w2
        let p = &(&MPoly::from_int(1) + &x(0)) * &(&MPoly::from_int(1) + &x(1));
        let w = make_injective_weights(2, 4);
        let h = TSeries::from_mpoly(&p, 2, 4).unwrap();
        let img = phi_substitute(&h, &w).unwrap();
        assert_eq!(img.num_terms(), 4);

        // missing certificate is rejected
        let bare = WeightVector::new(vec![rat_int(1), rat_int(1)], 4).unwrap();
        assert!(matches!(
            phi_substitute(&h, &bare),
            Err(Error::MissingInjectivity(_))
        ));
    }

    #[test]
    fn phi_is_multiplicative() {
        let w = make_injective_weights(2, 6);
        let f = TSeries::from_mpoly(&(&x(0) + &x(1).pow(2)), 2, 3).unwrap();
        let g = TSeries::from_mpoly(&(&MPoly::from_int(1) + &(&x(0) * &x(1))), 2, 3).unwrap();
        let lhs = phi_substitute(&f.mul(&g).unwrap(), &w).unwrap();
        let rhs = phi_substitute(&f, &w).unwrap().mul(&phi_substitute(&g, &w).unwrap());
        let cap = lhs.cap().unwrap().min(rhs.cap().unwrap());
        assert_eq!(lhs.truncate(cap), rhs.truncate(cap));
    }
}
