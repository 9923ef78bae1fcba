//! The monomial normalization maps psi_lambda of the MacDonald argument.

use crate::error::{Error, Result};
use crate::series::WeightVector;
use crate::{rat_int, Rational};
use num_traits::Zero;

/// The monomial map x_i -> x_i * x^{lambda omega_i beta}. Its matrix is
/// the rank-one update I + lambda omega beta^T with determinant
/// chi(lambda) = 1 + lambda <beta, omega>, and the inverse is
/// I - lambda omega beta^T / chi(lambda). On exponent vectors the map
/// acts by alpha -> alpha + lambda <omega, alpha> beta.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMap {
    pub lambda: u64,
    pub omega: Vec<Rational>,
    pub beta: Vec<u32>,
    pub matrix: Vec<Vec<Rational>>,
}

impl MonomialMap {
    /// chi(lambda) = 1 + lambda <beta, omega> in closed form.
    pub fn chi(&self) -> Rational {
        rat_int(1) + rat_int(self.lambda as i64) * pair(&self.beta, &self.omega)
    }

    /// Determinant by elimination, for cross-checking the rank-one law.
    pub fn det(&self) -> Rational {
        let mut m = self.matrix.clone();
        let n = m.len();
        let mut det = rat_int(1);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                m.swap(k, p);
                det = -det;
            }
            det *= &m[k][k];
            let pivot = m[k][k].clone();
            for r in k + 1..n {
                let f = &m[r][k] / &pivot;
                for c in k..n {
                    let delta = &f * &m[k][c];
                    m[r][c] -= delta;
                }
            }
        }
        det
    }

    /// Closed-form inverse: I - lambda omega beta^T / chi(lambda).
    pub fn inverse(&self) -> Vec<Vec<Rational>> {
        let n = self.omega.len();
        let chi = self.chi();
        let l = rat_int(self.lambda as i64);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = -(&l * &self.omega[i] * rat_int(self.beta[j] as i64)) / &chi;
                        if i == j {
                            v += rat_int(1);
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Image of an exponent vector: alpha + lambda <omega, alpha> beta.
    pub fn apply_exponent(&self, alpha: &[i64]) -> Vec<Rational> {
        let wsum: Rational = alpha
            .iter()
            .zip(&self.omega)
            .map(|(&a, w)| rat_int(a) * w)
            .sum();
        let l = rat_int(self.lambda as i64);
        alpha
            .iter()
            .zip(&self.beta)
            .map(|(&a, &b)| rat_int(a) + &l * &wsum * rat_int(b as i64))
            .collect()
    }
}

fn pair(beta: &[u32], omega: &[Rational]) -> Rational {
    beta.iter()
        .zip(omega)
        .map(|(&b, w)| rat_int(b as i64) * w)
        .sum()
}

/// Build psi_lambda; rejects a singular map (chi(lambda) = 0, impossible
/// for positive weights but guarded for general inputs).
pub fn psi_lambda(lambda: u64, w: &WeightVector, beta: &[u32]) -> Result<MonomialMap> {
    if beta.len() != w.len() {
        return Err(Error::WeightLength(w.len(), beta.len()));
    }
    let omega = w.omega().to_vec();
    let n = omega.len();
    let l = rat_int(lambda as i64);
    let matrix: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = &l * &omega[i] * rat_int(beta[j] as i64);
                    if i == j {
                        v += rat_int(1);
                    }
                    v
                })
                .collect()
        })
        .collect();
    let map = MonomialMap {
        lambda,
        omega,
        beta: beta.to_vec(),
        matrix,
    };
    if map.chi().is_zero() {
        return Err(Error::SingularPsi);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn wv(ws: &[(i64, i64)]) -> WeightVector {
        WeightVector::new(ws.iter().map(|&(n, d)| rat(n, d)).collect(), 8).unwrap()
    }

    #[test]
    fn worked_matrix() {
        // omega = (1,2), beta = (1,1), lambda = 1: M = [[2,1],[2,3]],
        // det = 4 = chi(1) = 1 + 3*lambda
        let m = psi_lambda(1, &wv(&[(1, 1), (2, 1)]), &[1, 1]).unwrap();
        assert_eq!(
            m.matrix,
            vec![
                vec![rat_int(2), rat_int(1)],
                vec![rat_int(2), rat_int(3)],
            ]
        );
        assert_eq!(m.chi(), rat_int(4));
        assert_eq!(m.det(), rat_int(4));
    }

    #[test]
    fn identity_at_lambda_zero() {
        let m = psi_lambda(0, &wv(&[(1, 1), (2, 1)]), &[1, 1]).unwrap();
        assert_eq!(m.chi(), rat_int(1));
        assert_eq!(m.matrix[0], vec![rat_int(1), rat_int(0)]);
        assert_eq!(m.matrix[1], vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn rank_one_inverse_is_exact() {
        let m = psi_lambda(3, &wv(&[(1, 1), (2, 1)]), &[2, 1]).unwrap();
        let inv = m.inverse();
        let n = 2;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    acc += &m.matrix[i][k] * &inv[k][j];
                }
                assert_eq!(acc, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn exponent_action_is_multiplicative() {
        // image of a product of monomials = sum of images
        let m = psi_lambda(2, &wv(&[(1, 1), (3, 2)]), &[1, 0]).unwrap();
        let a = [2i64, 1];
        let b = [0i64, 3];
        let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let img_a = m.apply_exponent(&a);
        let img_b = m.apply_exponent(&b);
        let img_ab = m.apply_exponent(&ab);
        for i in 0..2 {
            assert_eq!(img_ab[i], &img_a[i] + &img_b[i]);
        }
    }

    #[test]
    fn chi_law_randomized() {
        // det(I + lambda omega beta^T) = 1 + lambda <beta, omega> across
        // dimensions and parameters
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let n = 1 + (next() % 4) as usize;
            let omega: Vec<Rational> = (0..n)
                .map(|_| rat(1 + (next() % 7) as i64, 1 + (next() % 5) as i64))
                .collect();
            let beta: Vec<u32> = (0..n).map(|_| (next() % 5) as u32).collect();
            let lambda = next() % 6;
            let w = WeightVector::new(omega, 4).unwrap();
            let m = psi_lambda(lambda, &w, &beta).unwrap();
            assert_eq!(m.det(), m.chi());
            // inverse check
            let inv = m.inverse();
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Rational::zero();
                    for k in 0..n {
                        acc += &m.matrix[i][k] * &inv[k][j];
                    }
                    assert_eq!(acc, if i == j { rat_int(1) } else { rat_int(0) });
                }
            }
        }
    }
}
