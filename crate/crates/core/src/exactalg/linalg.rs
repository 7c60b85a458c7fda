//! Fraction-free linear algebra over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::ExprMatrix;
use super::AlgError;

/// Row echelon form of an integer matrix by Bareiss elimination.
///
/// Returns the reduced rows and the pivot column of each nonzero row. Every
/// intermediate entry is a minor of the input, so the divisions by the
/// previous pivot are exact.
fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss step");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Exact basis of the right nullspace of a rational matrix with `ncols` columns.
///
/// One vector per free column: that coordinate is 1, the other free
/// coordinates are 0. Returns an empty list when the columns are independent.
pub fn nullspace_rational(m: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    assert!(m.iter().all(|row| row.len() == ncols), "ragged matrix");
    let (ech, pivots) = bareiss(integer_rows(m), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in ech.iter().zip(&pivots).rev() {
                let mut s = BigRational::zero();
                for j in pc + 1..ncols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s += BigRational::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -s / BigRational::from_integer(row[pc].clone());
            }
            v
        })
        .collect()
}

pub fn rank_rational(m: &[Vec<BigRational>], ncols: usize) -> usize {
    bareiss(integer_rows(m), ncols).1.len()
}

/// Nullspace of a matrix whose entries are all rational constants.
pub fn nullspace(m: &ExprMatrix) -> Result<Vec<Vec<BigRational>>, AlgError> {
    let rows: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    e.as_rational().ok_or_else(|| AlgError::NotConstant(e.to_string()))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(nullspace_rational(&rows, m.cols()))
}
