//! Dense matrices with exact entries.

use super::{FieldError, FieldSpec, Scalar};
use std::fmt;

/// Dense row-major matrix. All entries share the field tag; dimensions may
/// be zero in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        let m = Matrix { rows, cols, field, data };
        debug_assert!(m.data.iter().all(|s| s.field() == field));
        m
    }

    /// Integer literals row by row; convenient in tests and fixtures.
    /// Panics on ragged rows.
    pub fn from_int_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix::from_fn(field, rows.len(), ncols, |r, c| {
            Scalar::from_int(field, rows[r][c])
        })
    }

    pub fn from_scalars(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Matrix, FieldError> {
        if data.len() != rows * cols {
            return Err(FieldError::DimensionMismatch("from_scalars"));
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(FieldError::EntryFieldMismatch);
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        assert_eq!(v.field(), self.field, "mixed fields");
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        assert_eq!(self.field, other.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows, other.cols, |r, c| {
            let mut acc = Scalar::zero(self.field);
            for k in 0..self.cols {
                let t = self.get(r, k).mul(other.get(k, c));
                acc = acc.add(&t);
            }
            acc
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.get(r, c).add(other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&Scalar::from_int(self.field, -1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.get(r, c).mul(s)
        })
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        assert_eq!(self.field, other.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        assert_eq!(self.field, other.field, "mixed fields");
        Matrix::from_fn(self.field, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        })
    }

    pub fn column(&self, c: usize) -> Matrix {
        self.columns_subset(&[c])
    }

    pub fn columns_subset(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, j| {
            self.get(r, cols[j]).clone()
        })
    }

    /// Rows 0..n of self, padded with zero rows up to `rows`.
    pub fn pad_rows(&self, rows: usize) -> Matrix {
        assert!(rows >= self.rows, "cannot shrink");
        Matrix::from_fn(self.field, rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                Scalar::zero(self.field)
            }
        })
    }

    /// Reduced row echelon form. Pivoting is deterministic: columns are
    /// scanned left to right, and within a column the first nonzero entry
    /// from the top is the pivot.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..m.rows {
                if !m.get(i, c).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(p) = pivot_row else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).neg();
                    m.add_scaled_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one column per free variable, in free column
    /// order. Ambient dimension is the column count of self.
    pub fn kernel_basis(&self) -> Matrix {
        let Echelon { rref, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Matrix::from_fn(self.field, self.cols, free.len(), |v, j| {
            let f = free[j];
            if v == f {
                Scalar::one(self.field)
            } else if let Some(i) = pivots.iter().position(|&p| p == v) {
                rref.get(i, f).neg()
            } else {
                Scalar::zero(self.field)
            }
        })
    }

    /// Pivot columns of the original matrix: a deterministic basis of the
    /// column space.
    pub fn image_basis(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.columns_subset(&pivots)
    }

    /// Solves self * X = rhs exactly; None when any column is inconsistent.
    /// Free variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "row counts differ");
        assert_eq!(self.field, rhs.field, "mixed fields");
        let aug = self.hstack(rhs);
        let Echelon { rref, pivots } = aug.rref();
        // A pivot landing in the rhs block means an inconsistent system.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, rref.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c).mul(s);
            self.set(r, c, v);
        }
    }

    /// row[i] += factor * row[j]
    fn add_scaled_row(&mut self, i: usize, j: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(i, c).add(&self.get(j, c).mul(factor));
            self.set(i, c, v);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
