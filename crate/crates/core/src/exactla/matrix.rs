use std::fmt;

use super::{EpsScalar, Rational, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    /// Pivot column of each nonzero row of `reduced`, increasing.
    pub pivots: Vec<usize>,
    /// One vector per free column; the free coordinate is 1, the others are 0.
    pub kernel_basis: Vec<Vec<F>>,
    /// Nonzero rows of the reduced matrix (a basis of the row space).
    pub image_basis: Vec<Vec<F>>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).clone() + a.clone() * b.clone();
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form by Gauss–Jordan elimination.
    ///
    /// Pivots are taken in the leftmost column that still has a nonzero entry
    /// at or below the current row; within a column the first such row wins.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m.get(row, col).clone();
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).clone() - factor.clone() * pv.clone();
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();

        let mut kernel_basis = Vec::with_capacity(m.cols - rank);
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..m.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![F::zero(); m.cols];
            v[free] = F::one();
            for (i, &pc) in pivots.iter().enumerate() {
                if pc < free {
                    v[pc] = -m.get(i, free).clone();
                }
            }
            kernel_basis.push(v);
        }
        let image_basis = (0..rank).map(|r| m.row(r).to_vec()).collect();
        Rref {
            reduced: m,
            rank,
            pivots,
            kernel_basis,
            image_basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Solves `self · x = b`.
    ///
    /// Returns the particular solution with every free variable set to zero,
    /// or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.reduced.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(F::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            for r in col + 1..m.rows {
                let factor = m.get(r, col).clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix<F>>> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let red = aug.rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.reduced.get(r, n + c).clone());
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Matrix<EpsScalar> {
    /// Rank after substituting ε = `value` in every entry.
    pub fn rank_at(&self, value: &Rational) -> Result<usize> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(x.eval(value)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
        .rank())
    }

    /// A nonzero maximal minor, as a rational function of ε.
    ///
    /// Rows and columns are chosen from the pivots of `self` and its
    /// transpose, so the minor is nonzero exactly when ε avoids the finitely
    /// many points where the rank drops below the generic rank along this
    /// particular minor.
    pub fn witness_minor(&self) -> EpsScalar {
        let cols = self.rref().pivots;
        let rows = self.transpose().rref().pivots;
        let mut sub = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                sub.set(i, j, self.get(r, c).clone());
            }
        }
        sub.det().expect("square by construction")
    }
}

/// Coordinates of vectors in the column space of a full-column-rank matrix.
///
/// Precomputes a square invertible submatrix (rows chosen by pivoting on the
/// transpose) so that each lookup is a single matrix-vector product.
#[derive(Clone, Debug)]
pub struct ColumnCoordinates<F> {
    basis: Matrix<F>,
    rows: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: Scalar> ColumnCoordinates<F> {
    pub fn new(basis: Matrix<F>) -> Result<Self> {
        let rows = basis.transpose().rref().pivots;
        if rows.len() != basis.cols() {
            return Err(Error::Dimension(format!(
                "columns are not independent (rank {} of {})",
                rows.len(),
                basis.cols()
            )));
        }
        let mut sq = Matrix::zeros(rows.len(), rows.len());
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..basis.cols() {
                sq.set(i, c, basis.get(r, c).clone());
            }
        }
        let inverse = sq
            .inverse()?
            .ok_or_else(|| Error::Internal("pivot submatrix is singular".into()))?;
        Ok(ColumnCoordinates {
            basis,
            rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    /// Coordinates of `v`, checked: `None` if `v` is outside the span.
    pub fn coords(&self, v: &[F]) -> Result<Option<Vec<F>>> {
        let picked: Vec<F> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let x = self.inverse.mul_vec(&picked)?;
        if self.basis.mul_vec(&x)? == v {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }
}

impl<F: Scalar> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
