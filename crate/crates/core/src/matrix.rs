//! Exact dense linear algebra over `Z`, `Q` and `Z[t, t^-1]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPolynomial;

/// Fraction-free (Bareiss) determinant over `Z[t, t^-1]`.
pub fn laurent_determinant(mut m: Vec<Vec<LaurentPolynomial>>) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let mut negate = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return LaurentPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is an exact division");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Fraction-free determinant over `Z`.
pub fn integer_determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if negate {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    }
}

/// Fraction-free determinant in machine integers; `None` on overflow.
pub fn small_determinant(a: &[Vec<i64>]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Some(0);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = num / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

fn to_rational(a: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Rank over `Q`.
pub fn rational_rank(a: &[Vec<BigInt>]) -> usize {
    let mut m = to_rational(a);
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[rank][c];
            for j in c..cols {
                let d = &f * &m[rank][j];
                m[r][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// Counts of positive, negative and zero entries after congruence
/// diagonalisation of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric integer matrix by exact symmetric Gaussian
/// elimination (simultaneous row and column operations).
///
/// When every remaining diagonal entry is zero but some off-diagonal entry
/// `a_ij` is not, row/column `j` is added to row/column `i`, which puts
/// `2 a_ij` on the diagonal.
pub fn inertia(a: &[Vec<BigInt>]) -> Inertia {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut m = to_rational(a);
    let mut positive = 0;
    let mut negative = 0;
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                let Some((i, j)) = off else {
                    break;
                };
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
                i
            }
        };
        if p != k {
            m.swap(p, k);
            for row in m.iter_mut() {
                row.swap(p, k);
            }
        }
        let d = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &d;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
            for r in 0..n {
                let v = &f * &m[r][k];
                m[r][i] -= v;
            }
        }
        if d.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        k += 1;
    }
    Inertia { positive, negative, zero: n - positive - negative }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn inertia_of_small_forms() {
        assert_eq!(inertia(&big(&[])).signature(), 0);
        assert_eq!(inertia(&big(&[&[-2, 1], &[1, -2]])).signature(), -2);
        // indefinite: det < 0
        assert_eq!(inertia(&big(&[&[-2, 1], &[1, 2]])).signature(), 0);
        // zero diagonal needs the off-diagonal trick
        let h = inertia(&big(&[&[0, 1], &[1, 0]]));
        assert_eq!((h.positive, h.negative, h.zero), (1, 1, 0));
        let z = inertia(&big(&[&[0, 0], &[0, 0]]));
        assert_eq!(z.zero, 2);
        // rank-deficient: [[1,1],[1,1]]
        let r = inertia(&big(&[&[1, 1], &[1, 1]]));
        assert_eq!((r.positive, r.negative, r.zero), (1, 0, 1));
    }

    #[test]
    fn inertia_matches_eigenvalue_count_on_tridiagonal() {
        // [[-2,1,0],[1,0,1],[0,1,-2]] has eigenvalues -2 and -1 +- sqrt(3)
        let h = inertia(&big(&[&[-2, 1, 0], &[1, 0, 1], &[0, 1, -2]]));
        assert_eq!((h.positive, h.negative), (1, 2));
    }

    #[test]
    fn determinants_and_rank() {
        let a = big(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]);
        // cofactor expansion by hand: 0 - 2(0 - 12) + 1(1 - 0) = 25
        assert_eq!(integer_determinant(&a), BigInt::from(25));
        assert_eq!(small_determinant(&[vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]]), Some(25));
        assert_eq!(small_determinant(&[vec![0, 1], vec![0, 2]]), Some(0));
        assert_eq!(rational_rank(&a), 3);
        assert_eq!(rational_rank(&big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn laurent_determinant_of_trefoil_form() {
        // V = [[-1, 1], [0, -1]]; det(V - t V^T) = t^2 - t + 1
        let t = LaurentPolynomial::t();
        let one = LaurentPolynomial::one();
        let m = vec![
            vec![&t - &one, one.clone()],
            vec![-t.clone(), &t - &one],
        ];
        let d = laurent_determinant(m);
        assert_eq!(d, LaurentPolynomial::from_terms([(0, 1), (1, -1), (2, 1)]));
    }
}
