//! Rational polyhedral cones, strong convexity, and the support cone of a
//! graded series.

use super::{initial_monomial_directions, GradedSeries};
use crate::error::{Error, Result};
use crate::{rat_int, Integer, Rational};
use num_integer::Integer as NumInteger;
use num_traits::{Signed, Zero};

/// A translated rational cone gamma + cone(generators). Construction
/// verifies strong convexity: no nonzero vector lies in the cone together
/// with its negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    generators: Vec<Vec<i64>>,
    translate: Vec<i64>,
}

impl Cone {
    pub fn new(generators: Vec<Vec<i64>>, translate: Vec<i64>) -> Result<Self> {
        let generators: Vec<Vec<i64>> = generators
            .into_iter()
            .filter(|g| g.iter().any(|&c| c != 0))
            .map(primitive)
            .collect();
        let mut dedup: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            if !dedup.contains(&g) {
                dedup.push(g);
            }
        }
        if !strongly_convex(&dedup) {
            return Err(Error::NotStronglyConvex(format!("{dedup:?}")));
        }
        Ok(Cone {
            generators: dedup,
            translate,
        })
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn translate(&self) -> &[i64] {
        &self.translate
    }

    pub fn dim(&self) -> usize {
        self.translate.len()
    }

    /// Exact membership: point - translate is a nonnegative combination
    /// of the generators (rational LP feasibility).
    pub fn contains(&self, point: &[i64]) -> bool {
        let shifted: Vec<Rational> = point
            .iter()
            .zip(&self.translate)
            .map(|(&p, &t)| rat_int(p - t))
            .collect();
        if shifted.iter().all(Rational::is_zero) {
            return true;
        }
        if self.generators.is_empty() {
            return false;
        }
        let rows: Vec<Vec<Rational>> = (0..shifted.len())
            .map(|i| {
                self.generators
                    .iter()
                    .map(|g| rat_int(g[i]))
                    .collect()
            })
            .collect();
        lp_feasible(&rows, &shifted)
    }
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let mut g: i64 = 0;
    for &c in &v {
        g = g.gcd(&c.abs());
    }
    if g <= 1 {
        return v;
    }
    v.into_iter().map(|c| c / g).collect()
}

/// No nonzero nonnegative combination of the generators vanishes: the
/// feasibility LP { nu >= 0, G nu = 0, sum nu = 1 } must be empty.
pub(crate) fn strongly_convex(generators: &[Vec<i64>]) -> bool {
    if generators.is_empty() {
        return true;
    }
    let n = generators[0].len();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| generators.iter().map(|g| rat_int(g[i])).collect())
        .collect();
    rows.push(vec![rat_int(1); generators.len()]);
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(rat_int(1));
    !lp_feasible(&rows, &rhs)
}

/// Phase-one simplex with Bland's rule, exact rational arithmetic:
/// feasibility of { x >= 0 : A x = b }.
fn lp_feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let m = a.len();
    let n = if m == 0 { return true } else { a[0].len() };
    // tableau with artificial variables; flip rows to keep b >= 0
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r: Vec<Rational> = row.to_vec();
        let mut rhs = b[i].clone();
        if rhs.is_negative() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        r.push(rhs);
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect(); // artificials
    // objective: minimize sum of artificials; reduced costs for the
    // original columns are -(sum of rows)
    let mut obj: Vec<Rational> = (0..=n)
        .map(|j| {
            let mut s = Rational::zero();
            for row in &t {
                s -= &row[j];
            }
            s
        })
        .collect();

    loop {
        // entering: first original column with negative reduced cost
        let Some(enter) = (0..n).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // ratio test with Bland's tie-break
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[n] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(b) => &ratio < b || (&ratio == b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // unbounded below cannot happen for a phase-one objective
            break;
        };
        // pivot
        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=n {
                    let delta = &f * &t[leave][j];
                    t[i][j] -= delta;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..=n {
                let delta = &f * &t[leave][j];
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }
    // feasible iff all artificial variables can be zero: objective value 0
    let mut value = Rational::zero();
    for (i, &bv) in basis.iter().enumerate() {
        if bv >= n {
            value += &t[i][m.min(n)]; // t[i][n] is the rhs column
        }
    }
    value.is_zero()
}

/// Smallest natural lambda for which every support point p satisfies
/// p + lambda <omega, p> beta >= 0 componentwise, i.e. the support of
/// psi_lambda(xi) lands in the positive orthant; `None` when no lambda
/// works (a coordinate with beta_i = 0 is already negative, or a point
/// of nonpositive weight has a negative entry).
pub fn normalizing_lambda(
    points: &[Vec<i64>],
    omega: &[Rational],
    beta: &[i64],
) -> Option<u64> {
    let mut lambda: u64 = 0;
    for p in points {
        let weight: Rational = p
            .iter()
            .zip(omega)
            .map(|(&a, w)| rat_int(a) * w)
            .sum();
        for (i, &pi) in p.iter().enumerate() {
            if pi >= 0 {
                continue;
            }
            if beta[i] <= 0 || !weight.is_positive() {
                return None;
            }
            // need lambda >= -p_i / (weight * beta_i)
            let need = rat_int(-pi) / (&weight * rat_int(beta[i]));
            let need = need.ceil().to_integer();
            if need > Integer::from(lambda) {
                lambda = u64::try_from(need).ok()?;
            }
        }
    }
    Some(lambda)
}

/// A support cone together with the normalization data of the monomial
/// map argument: the smallest lambda sending every structural support
/// point into the positive orthant, when one exists.
#[derive(Debug, Clone)]
pub struct SupportConeReport {
    pub cone: Cone,
    pub normalizing: Option<(u64, super::MonomialMap)>,
}

/// Support cone of a graded series: gamma is the componentwise minimum of
/// the structural base points supp(num_l) - den_pow * beta, and the cone
/// is generated by those points shifted by -gamma together with the
/// Laurent tail directions of the base (its other monomials minus the
/// initial one). Every exponent of the full Laurent expansion, at any
/// depth, lies in gamma + cone.
pub fn support_cone(g: &GradedSeries, direction: Option<&[usize]>) -> Result<Cone> {
    Ok(support_cone_report(g, direction)?.cone)
}

pub fn support_cone_report(
    g: &GradedSeries,
    direction: Option<&[usize]>,
) -> Result<SupportConeReport> {
    let n = g
        .pieces()
        .map(|(_, p)| p.num.nvars())
        .max()
        .unwrap_or(0)
        .max(g.base().nvars());
    if g.is_zero() {
        return Ok(SupportConeReport {
            cone: Cone::new(Vec::new(), vec![0; n])?,
            normalizing: None,
        });
    }
    let (beta, tail_dirs) = if g.base().is_constant() {
        (vec![0i64; n], Vec::new())
    } else {
        let (b, d) = initial_monomial_directions(g.base(), g.omega(), direction)?;
        let pad = |mut v: Vec<i64>| {
            v.resize(n, 0);
            v
        };
        (pad(b), d.into_iter().map(pad).collect())
    };

    // structural base points
    let mut base_points: Vec<Vec<i64>> = Vec::new();
    for (_, piece) in g.pieces() {
        for (e, _) in piece.num.terms() {
            let mut v: Vec<i64> = (0..n)
                .map(|i| e.get(i).copied().unwrap_or(0) as i64)
                .collect();
            for i in 0..n {
                v[i] -= piece.den_pow as i64 * beta[i];
            }
            if !base_points.contains(&v) {
                base_points.push(v);
            }
        }
    }
    let gamma: Vec<i64> = (0..n)
        .map(|i| base_points.iter().map(|p| p[i]).min().unwrap_or(0))
        .collect();

    let mut generators: Vec<Vec<i64>> = Vec::new();
    if g.base().is_constant() {
        // polynomial-like series: the positive orthant
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            generators.push(e);
        }
    } else {
        for p in &base_points {
            let d: Vec<i64> = p.iter().zip(&gamma).map(|(a, b)| a - b).collect();
            if d.iter().any(|&c| c != 0) {
                generators.push(d);
            }
        }
        generators.extend(tail_dirs);
        if n == 2 {
            generators = angular_extremes(generators);
        }
    }

    // normalization data: the smallest natural lambda whose psi map sends
    // every structural point into the positive orthant
    let normalizing = if g.base().is_constant() || beta.iter().all(|&b| b == 0) {
        None
    } else {
        let omega: Vec<Rational> = g.omega().omega().iter().take(n).cloned().collect();
        normalizing_lambda(&base_points, &omega, &beta).and_then(|lambda| {
            let beta_u: Vec<u32> = beta.iter().map(|&b| b as u32).collect();
            let w = crate::series::WeightVector::new(omega, g.omega().cap()).ok()?;
            super::psi_lambda(lambda, &w, &beta_u).ok().map(|m| (lambda, m))
        })
    };

    Ok(SupportConeReport {
        cone: Cone::new(generators, gamma)?,
        normalizing,
    })
}

/// In the plane a cone is spanned by its two angular extremes; reduce the
/// generator list accordingly (all generators lie in a half-plane because
/// strong convexity is checked afterwards anyway).
fn angular_extremes(generators: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let gens: Vec<Vec<i64>> = generators.into_iter().map(primitive).collect();
    let mut extremes: Vec<Vec<i64>> = Vec::new();
    for g in &gens {
        if extremes.contains(g) {
            continue;
        }
        // keep g unless it is a nonnegative combination of two others
        extremes.push(g.clone());
    }
    // drop generators inside the cone of the others
    let mut keep: Vec<Vec<i64>> = Vec::new();
    for (i, g) in extremes.iter().enumerate() {
        let others: Vec<Vec<i64>> = extremes
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        if others.is_empty() {
            keep.push(g.clone());
            continue;
        }
        let rows: Vec<Vec<Rational>> = (0..2)
            .map(|r| others.iter().map(|h| rat_int(h[r])).collect())
            .collect();
        let rhs: Vec<Rational> = g.iter().map(|&c| rat_int(c)).collect();
        if !lp_feasible(&rows, &rhs) {
            keep.push(g.clone());
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{MPoly, WeightVector, YPoly};
    use crate::{rat, rat_int};

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn strong_convexity_checks() {
        assert!(strongly_convex(&[vec![1, 0], vec![-1, 1]]));
        assert!(strongly_convex(&[vec![1, 0], vec![0, 1]]));
        // contains the x-axis as a line
        assert!(!strongly_convex(&[vec![1, 0], vec![-1, 0]]));
        assert!(!strongly_convex(&[vec![1, 0], vec![-1, 1], vec![0, -1]]));
        assert!(strongly_convex(&[]));
        assert!(matches!(
            Cone::new(vec![vec![1, 1], vec![-1, -1]], vec![0, 0]),
            Err(Error::NotStronglyConvex(_))
        ));
    }

    #[test]
    fn membership() {
        let c = Cone::new(vec![vec![1, 0], vec![-1, 1]], vec![1, 0]).unwrap();
        assert!(c.contains(&[1, 0]));
        assert!(c.contains(&[5, 2]));
        assert!(c.contains(&[-3, 4])); // (1,0) + 0*(1,0) + 4*(-1,1)
        assert!(!c.contains(&[0, -1]));
        assert!(!c.contains(&[-3, 3])); // would need coefficient -1 on (1,0)
    }

    #[test]
    fn thm5_fixture_cone() {
        // pieces (-1)^{l+1} C_{l-1} x1^{2l} / (x1+x2)^l with x1 the
        // expansion direction: gamma = (1,0), generators (1,0), (-1,1)
        let s = &x(0) + &x(1);
        let p = YPoly::new(vec![-x(0).pow(2), s.clone(), s]);
        let w = WeightVector::new(vec![rat_int(1), rat_int(1)], 24).unwrap();
        let g = super::super::graded_root_lift(&p, &w, &MPoly::zero(), &rat_int(12)).unwrap();
        let cone = support_cone(&g, Some(&[0, 1])).unwrap();
        assert_eq!(cone.translate(), &[1, 0]);
        let mut gens = cone.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![vec![-1, 1], vec![1, 0]]);
        // exhaustive containment of the truncated Laurent support
        for k in 1..=12i64 {
            for j in 0..=14i64 {
                assert!(cone.contains(&[k - j, j]), "({}, {j})", k - j);
            }
        }
    }

    #[test]
    fn polynomial_series_gets_orthant() {
        // a graded series with constant base: gamma = 0, cone = R_{>=0}^n
        let p = YPoly::new(vec![
            &MPoly::from_int(-1) - &(&x(0) * &x(1)),
            MPoly::one(),
        ]);
        let w = WeightVector::new(vec![rat_int(1), rat_int(1)], 8).unwrap();
        let g = super::super::graded_root_lift(&p, &w, &MPoly::one(), &rat_int(6)).unwrap();
        let cone = support_cone(&g, None).unwrap();
        assert_eq!(cone.translate(), &[0, 0]);
        let mut gens = cone.generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn single_term_trivial_cone() {
        // x1^2 / x2 as a one-piece series: gamma = (2,-1), no generators
        let p = YPoly::new(vec![-x(0).pow(2), x(1)]);
        let w = WeightVector::new(vec![rat_int(1), rat(1, 2)], 8).unwrap();
        let g = super::super::graded_root_lift(&p, &w, &MPoly::zero(), &rat_int(6)).unwrap();
        let cone = support_cone(&g, None).unwrap();
        assert_eq!(cone.translate(), &[2, -1]);
        assert!(cone.generators().is_empty());
        assert!(cone.contains(&[2, -1]));
        assert!(!cone.contains(&[2, 0]));
    }

    #[test]
    fn normalizing_lambda_examples() {
        // fixture points (k-j, j), k in 1..=4, j in 0..=6, omega slightly
        // favoring x1, beta = (1,0)
        let omega = [rat_int(1), rat(8, 7)];
        let beta = [1i64, 0];
        let mut pts = Vec::new();
        for k in 1..=4i64 {
            for j in 0..=6i64 {
                pts.push(vec![k - j, j]);
            }
        }
        let lambda = normalizing_lambda(&pts, &omega, &beta).unwrap();
        // every image must be componentwise nonnegative
        for p in &pts {
            let w: Rational = p.iter().zip(&omega).map(|(&a, u)| rat_int(a) * u).sum();
            for (i, &pi) in p.iter().enumerate() {
                let img = rat_int(pi) + rat_int(lambda as i64) * &w * rat_int(beta[i]);
                assert!(img >= Rational::zero(), "{p:?} at {i}");
            }
        }
        // and lambda is minimal
        assert!(lambda > 0);
        let smaller = lambda - 1;
        let violated = pts.iter().any(|p| {
            let w: Rational = p.iter().zip(&omega).map(|(&a, u)| rat_int(a) * u).sum();
            p.iter().enumerate().any(|(i, &pi)| {
                rat_int(pi) + rat_int(smaller as i64) * &w * rat_int(beta[i])
                    < Rational::zero()
            })
        });
        assert!(violated);

        // beta = 0 with a negative coordinate is hopeless
        assert_eq!(
            normalizing_lambda(&[vec![-1, 0]], &omega, &[0, 0]),
            None
        );
    }
}
