//! Dense matrices over an exact field with Gaussian elimination.

use crate::error::{Error, Result};
use crate::field::Field;

/// A `rows x cols` matrix acting on column vectors, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F::Elem) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    f.add_mul(&mut acc, self.get(i, j), x);
                }
                acc
            })
            .collect())
    }

    /// `self * rhs`
    pub fn compose(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let mut acc = out.get(i, j).clone();
                    f.add_mul(&mut acc, a, rhs.get(k, j));
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(rhs, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        self.zip_with(rhs, |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Matrix<F> {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f.neg(x)).collect(),
        }
    }

    fn zip_with(
        &self,
        rhs: &Matrix<F>,
        op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem,
    ) -> Result<Matrix<F>> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let f = &self.field;
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| op(f, a, b))
                .collect(),
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, pivot_row);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let x = f.mul(m.get(row, j), &inv);
                m.set(row, j, x);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let x = f.sub(m.get(r, j), &f.mul(&factor, m.get(row, j)));
                    m.set(r, j, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` if the
    /// system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, PrimeField, Rationals};

    #[test]
    fn rank_and_solve_over_q() {
        let q = Rationals;
        let m = Matrix::from_rows(
            &q,
            3,
            3,
            [1, 2, 3, 2, 4, 6, 0, 1, 1]
                .iter()
                .map(|&x| q.from_i64(x))
                .collect(),
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        let b = vec![q.from_i64(1), q.from_i64(2), q.from_i64(1)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
        let inconsistent = vec![q.from_i64(1), q.from_i64(3), q.from_i64(0)];
        assert_eq!(m.solve(&inconsistent).unwrap(), None);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        // p = [0 | 1] on a 2-dim space: the solution of p x = 1 is (0, 1)
        let f = PrimeField::new(2).unwrap();
        let p = Matrix::from_rows(&f, 1, 2, vec![0, 1]).unwrap();
        assert_eq!(p.solve(&[1]).unwrap().unwrap(), vec![0, 1]);
    }

    #[test]
    fn compose_with_identity() {
        let q = Rationals;
        let m = Matrix::from_rows(&q, 2, 3, (0..6).map(|x| rational(x, 2)).collect()).unwrap();
        assert_eq!(Matrix::identity(&q, 2).compose(&m).unwrap(), m);
        assert_eq!(m.compose(&Matrix::identity(&q, 3)).unwrap(), m);
        assert!(m.compose(&m).is_err());
    }
}
