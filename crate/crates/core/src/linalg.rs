//! Exact linear algebra over the rationals.
//!
//! Rows are scaled to integers and reduced with Bareiss' fraction-free
//! elimination; rationals only reappear during back substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::common_denominator;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<BigRational>>;

/// Integer row echelon form of `rows` and its pivot columns.
pub fn echelon(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let den = BigRational::from_integer(common_denominator(row.iter()));
            row.iter().map(|q| (q * &den).to_integer()).collect()
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let num = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    echelon(rows, ncols).1.len()
}

/// Basis of `{x : rows * x = 0}`. Each basis vector has a 1 in one free
/// column and 0 in the others.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (m, pivots) = echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = BigRational::zero();
                for j in pc + 1..ncols {
                    if !m[r][j].is_zero() {
                        acc += BigRational::from_integer(m[r][j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / BigRational::from_integer(m[r][pc].clone());
            }
            x
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>], inner: usize) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(BigRational::zero(), |acc, (p, q)| acc + p * q))
        .collect()
}

/// Characteristic polynomial `det(x I - a)`, coefficients lowest degree first.
///
/// Faddeev-LeVerrier recursion; exact over the rationals.
pub fn charpoly(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let identity = |k: &BigRational| -> Matrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { k.clone() } else { BigRational::zero() })
                    .collect()
            })
            .collect()
    };
    let mut m: Matrix = identity(&BigRational::zero());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m, n);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(a, &next, n);
        let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
        m = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn q(n: i64) -> BigRational {
        BigRational::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn nullspace_is_annihilated_and_rank_nullity_holds() {
        let a = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = nullspace(&a, 4);
        assert_eq!(rank(&a, 4) + ns.len(), 4);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn fractional_entries() {
        let a = vec![vec![BigRational::from_frac(1, 2), BigRational::from_frac(1, 3)]];
        let ns = nullspace(&a, 2);
        assert_eq!(ns, vec![vec![BigRational::from_frac(-2, 3), q(1)]]);
    }

    #[test]
    fn empty_and_full_rank() {
        assert_eq!(nullspace(&[], 2).len(), 2);
        assert!(nullspace(&mat(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn charpoly_of_small_matrices() {
        // [[2,1],[0,3]] -> x^2 - 5x + 6
        assert_eq!(charpoly(&mat(&[&[2, 1], &[0, 3]])), vec![q(6), q(-5), q(1)]);
        assert_eq!(charpoly(&[]), vec![q(1)]);
        // companion of x^3 - 2x + 1 has that charpoly
        let c = mat(&[&[0, 0, -1], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(charpoly(&c), vec![q(1), q(-2), q(0), q(1)]);
    }
}
