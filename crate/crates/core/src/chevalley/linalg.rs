//! Exact dense linear algebra over a field.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rationals with a square root of -1 adjoined.
pub type GaussRat = Complex<BigRational>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gauss(n: i64) -> GaussRat {
    Complex::new(rat(n), BigRational::zero())
}

pub fn imag_unit() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Field operations needed by the elimination routines.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>
        + std::ops::Div<Output = T>
{
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Field>(rows: &mut Vec<Vec<T>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                for j in c..cols {
                    if !rows[r][j].is_zero() {
                        let v = rows[k][j].clone() - factor.clone() * rows[r][j].clone();
                        rows[k][j] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<T: Field>(rows: &[Vec<T>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `cols`.
pub fn kernel<T: Field>(rows: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                if !m[r][f].is_zero() {
                    v[p] = T::zero() - m[r][f].clone();
                }
            }
            v
        })
        .collect()
}

/// Pivots of symmetric Gaussian elimination without row exchanges. A
/// symmetric matrix is negative definite iff every pivot exists and is
/// negative.
pub fn symmetric_pivots(matrix: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = m[k][k].clone();
        if p.is_zero() {
            return None;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].clone() / p.clone();
            for j in k..n {
                if !m[k][j].is_zero() {
                    let v = m[i][j].clone() - factor.clone() * m[k][j].clone();
                    m[i][j] = v;
                }
            }
        }
        pivots.push(p);
    }
    Some(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigRational = (0..3).map(|j| rows[0][j].clone() * v[j].clone()).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&rows, 3), 1);
    }

    #[test]
    fn complex_kernel() {
        // x + i y = 0
        let rows = vec![vec![gauss(1), imag_unit()]];
        let k = kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone() + imag_unit() * k[0][1].clone(), gauss(0));
    }

    #[test]
    fn definiteness() {
        let m = vec![vec![rat(-2), rat(1)], vec![rat(1), rat(-2)]];
        assert!(symmetric_pivots(&m).unwrap().iter().all(|p| p.is_negative()));
        let m = vec![vec![rat(-1), rat(2)], vec![rat(2), rat(-1)]];
        assert!(!symmetric_pivots(&m).unwrap().iter().all(|p| p.is_negative()));
    }
}
