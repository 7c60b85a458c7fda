use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;

use super::expr::LaurentExpr;
use super::generator::Generator;
use super::AlgError;

/// A dense row-major matrix of [`LaurentExpr`].
#[derive(Clone, PartialEq, Eq)]
pub struct ExprMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentExpr>,
}

impl ExprMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentExpr>) -> Result<ExprMatrix, AlgError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(AlgError::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(ExprMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentExpr) -> ExprMatrix {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExprMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentExpr>>) -> Result<ExprMatrix, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> ExprMatrix {
        Self::from_fn(rows, cols, |_, _| LaurentExpr::zero())
    }

    pub fn identity(n: usize) -> ExprMatrix {
        Self::from_fn(n, n, |i, j| if i == j { LaurentExpr::one() } else { LaurentExpr::zero() })
    }

    pub fn diagonal(d: &[LaurentExpr]) -> ExprMatrix {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { LaurentExpr::zero() })
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> ExprMatrix {
        Self::from_fn(
            perm.len(),
            perm.len(),
            |i, j| {
                if perm[j] == i {
                    LaurentExpr::one()
                } else {
                    LaurentExpr::zero()
                }
            },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentExpr {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[LaurentExpr] {
        &self.entries
    }

    pub fn with_entry(&self, i: usize, j: usize, e: LaurentExpr) -> ExprMatrix {
        let mut out = self.clone();
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        out.entries[i * self.cols + j] = e;
        out
    }

    pub fn try_mul(&self, rhs: &ExprMatrix) -> Result<ExprMatrix, AlgError> {
        if self.cols != rhs.rows {
            return Err(AlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = vec![LaurentExpr::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut entries[i * rhs.cols + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(ExprMatrix { rows: self.rows, cols: rhs.cols, entries })
    }

    pub fn mul(&self, rhs: &ExprMatrix) -> ExprMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }

    fn zip(&self, rhs: &ExprMatrix, f: impl Fn(&LaurentExpr, &LaurentExpr) -> LaurentExpr) -> ExprMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix dimension mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        ExprMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, rhs: &ExprMatrix) -> ExprMatrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &ExprMatrix) -> ExprMatrix {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &LaurentExpr) -> ExprMatrix {
        self.map(|e| e * c)
    }

    pub fn map(&self, f: impl Fn(&LaurentExpr) -> LaurentExpr) -> ExprMatrix {
        ExprMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&LaurentExpr) -> Result<LaurentExpr, AlgError>) -> Result<ExprMatrix, AlgError> {
        let entries = self.entries.iter().map(f).collect::<Result<_, _>>()?;
        Ok(ExprMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn substitute(&self, map: &HashMap<Generator, LaurentExpr>) -> Result<ExprMatrix, AlgError> {
        self.try_map(|e| e.substitute(map))
    }

    pub fn transpose(&self) -> ExprMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &ExprMatrix) -> ExprMatrix {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            let a = self.get(i / rhs.rows, j / rhs.cols);
            if a.is_zero() {
                return LaurentExpr::zero();
            }
            a * rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Largest term count among the nonzero entries, 0 for the zero matrix.
    pub fn max_terms(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).map(|e| e.term_count()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &HashMap<Generator, BigRational>) -> Result<Vec<Vec<BigRational>>, AlgError> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval_rational(point)).collect()).collect()
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentExpr)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }
}

impl fmt::Display for ExprMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExprMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExprMatrix {
        ExprMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| LaurentExpr::int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kron_and_mul() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i = ExprMatrix::identity(2);
        let k = i.kron(&a);
        assert_eq!(k.get(2, 3), &LaurentExpr::int(2));
        assert_eq!(k.get(0, 2), &LaurentExpr::zero());
        assert_eq!(a.mul(&i), a);
        assert_eq!(a.mul(&a), m(&[&[7, 10], &[15, 22]]));
    }

    #[test]
    fn permutation_moves_basis_vectors() {
        let p = ExprMatrix::permutation(&[1, 2, 0]);
        let e0 = m(&[&[1], &[0], &[0]]);
        assert_eq!(p.mul(&e0), m(&[&[0], &[1], &[0]]));
        assert_eq!(p.mul(&p.transpose()), ExprMatrix::identity(3));
    }

    #[test]
    fn shape_checks() {
        assert!(ExprMatrix::new(2, 2, vec![LaurentExpr::one()]).is_err());
        assert!(m(&[&[1, 2]]).try_mul(&m(&[&[1, 2]])).is_err());
    }
}
