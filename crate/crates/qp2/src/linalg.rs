//! Dense exact linear algebra over a [`Field`], sized for the small systems
//! the workbench solves (n <= 10 or so).

use crate::field::{Field, Scalar};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch")]
    Dimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for s in row {
                assert!(s.field() == field, "matrix entry from foreign field");
                data.push(s);
            }
        }
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn diagonal(field: &Field, entries: &[Scalar]) -> Matrix {
        let mut m = Matrix::zero(field, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.at(i, k).mul(other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                return self.field.zero();
            };
            if p != col {
                for j in 0..n {
                    let a = m.at(p, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(col, j) = a;
                }
                det = det.neg();
            }
            let pv = m.at(col, col).clone();
            det = det.mul(&pv);
            let pv_inv = pv.inv();
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).mul(&pv_inv);
                for j in col..n {
                    let t = factor.mul(m.at(col, j));
                    *m.at_mut(r, j) = m.at(r, j).sub(&t);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.row(i);
                for j in 0..n {
                    row.push(if i == j {
                        self.field.one()
                    } else {
                        self.field.zero()
                    });
                }
                row
            })
            .collect();
        let pivots = rref(&self.field, &mut aug);
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(k, &c)| c != k) {
            return Err(LinalgError::Singular);
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(Matrix::from_rows(&self.field, rows))
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i)).collect();
        rref(&self.field, &mut rows).len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i)).collect();
        let pivots = rref(&self.field, &mut rows);
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivot_set.iter().enumerate() {
                v[pc] = rows[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// In-place reduced row echelon form; returns the pivot columns in order.
/// Rows consisting entirely of zeros are moved to the bottom. Deterministic:
/// the first row with a nonzero entry in the current column is chosen.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(p) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, p);
        let inv = rows[next_row][col].inv();
        for x in rows[next_row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for j in 0..ncols {
                let t = factor.mul(&rows[next_row][j]);
                rows[r][j] = rows[r][j].sub(&t);
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    let _ = field;
    pivots
}

/// One solution of `A x = b`, or `None` when inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.nrows(), b.len());
    let field = a.field().clone();
    let mut rows: Vec<Vec<Scalar>> = (0..a.nrows())
        .map(|i| {
            let mut row = a.row(i);
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&field, &mut rows);
    if pivots.contains(&a.ncols()) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![field.zero(); a.ncols()];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][a.ncols()].clone();
    }
    Some(x)
}
