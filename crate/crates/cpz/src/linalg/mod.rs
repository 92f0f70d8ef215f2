//! Dense real linear algebra, nonnegative-integer exponent matrices,
//! symmetric eigendecomposition, and interval scalar arithmetic.
//!
//! All types are immutable values in spirit: every operation returns a new
//! value and never mutates shared state, so they are freely shareable across
//! threads.

mod eig;
mod interval;

pub use eig::sym_eig;
pub use interval::IntervalScalar;

use crate::{CpzError, Result};

/// Dense real matrix in row-major order. Zero-dimension matrices are
/// representable and distinguish "0 rows" from "0 cols".
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(CpzError::Validation(format!(
                "matrix data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// The empty matrix `[ ]` with a given number of rows and no columns.
    pub fn empty(rows: usize) -> Self {
        Self::zeros(rows, 0)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn col(&self, j: usize) -> DenseVector {
        DenseVector::new((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CpzError::shape(
                "matrix addition",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hcat(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows {
            return Err(CpzError::shape(
                "horizontal concatenation",
                format!("{} rows", self.rows),
                format!("{} rows", other.rows),
            ));
        }
        let mut m = DenseMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vcat(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.cols {
            return Err(CpzError::shape(
                "vertical concatenation",
                format!("{} cols", self.cols),
                format!("{} cols", other.cols),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(DenseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn mat_vec(&self, v: &DenseVector) -> Result<DenseVector> {
        if self.cols != v.len() {
            return Err(CpzError::shape(
                "matrix-vector product",
                format!("{}x{}", self.rows, self.cols),
                format!("{}", v.len()),
            ));
        }
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        Ok(DenseVector::new(out))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// Standard matrix product; errors with both shapes on an inner-dimension
/// mismatch. A zero inner dimension yields the zero matrix.
pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(CpzError::shape(
            "matrix product",
            format!("{}x{}", a.rows, a.cols),
            format!("{}x{}", b.rows, b.cols),
        ));
    }
    let mut out = DenseMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == 0.0 {
                continue;
            }
            for j in 0..b.cols {
                out.data[i * b.cols + j] += aik * b.get(k, j);
            }
        }
    }
    Ok(out)
}

/// Solve the square system `a x = rhs` by Gaussian elimination with partial
/// pivoting. Intended for the small systems of the Gauss-Newton polish.
pub fn solve(a: &DenseMatrix, rhs: &DenseVector) -> Result<DenseVector> {
    let n = a.rows;
    if a.cols != n || rhs.len() != n {
        return Err(CpzError::shape(
            "linear solve",
            format!("{}x{}", a.rows, a.cols),
            format!("{}", rhs.len()),
        ));
    }
    let mut m = a.clone();
    let mut x: Vec<f64> = rhs.as_slice().to_vec();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m.get(r, col).abs() > m.get(piv, col).abs() {
                piv = r;
            }
        }
        if m.get(piv, col).abs() < 1e-300 {
            return Err(CpzError::Validation("singular linear system".into()));
        }
        if piv != col {
            for j in 0..n {
                let tmp = m.get(col, j);
                m.set(col, j, m.get(piv, j));
                m.set(piv, j, tmp);
            }
            x.swap(col, piv);
        }
        for r in col + 1..n {
            let f = m.get(r, col) / m.get(col, col);
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m.get(r, j) - f * m.get(col, j);
                m.set(r, j, v);
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for j in col + 1..n {
            acc -= m.get(col, j) * x[j];
        }
        x[col] = acc / m.get(col, col);
    }
    Ok(DenseVector::new(x))
}

/// Dense real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    data: Vec<f64>,
}

impl DenseVector {
    pub fn new(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            data: vec![0.0; len],
        }
    }

    pub fn empty() -> Self {
        Self { data: Vec::new() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn add(&self, other: &DenseVector) -> Result<DenseVector> {
        if self.len() != other.len() {
            return Err(CpzError::shape("vector addition", self.len(), other.len()));
        }
        Ok(DenseVector::new(
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &DenseVector) -> Result<DenseVector> {
        if self.len() != other.len() {
            return Err(CpzError::shape("vector subtraction", self.len(), other.len()));
        }
        Ok(DenseVector::new(
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, s: f64) -> DenseVector {
        DenseVector::new(self.data.iter().map(|v| v * s).collect())
    }

    pub fn concat(&self, other: &DenseVector) -> DenseVector {
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        DenseVector::new(data)
    }

    pub fn dot(&self, other: &DenseVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(CpzError::shape("dot product", self.len(), other.len()));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn inf_norm(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl std::ops::Index<usize> for DenseVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

/// Nonnegative-integer exponent matrix (the `E` and `R` components of a CPZ).
/// Rows index factors, columns index generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ExponentMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(CpzError::Validation(format!(
                "exponent matrix data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn empty(rows: usize) -> Self {
        Self::zeros(rows, 0)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j) == 0)
    }

    pub fn hcat(&self, other: &ExponentMatrix) -> Result<ExponentMatrix> {
        if self.rows != other.rows {
            return Err(CpzError::shape(
                "exponent concatenation",
                format!("{} rows", self.rows),
                format!("{} rows", other.rows),
            ));
        }
        let mut m = ExponentMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    pub fn block_diag(&self, other: &ExponentMatrix) -> ExponentMatrix {
        let mut m = ExponentMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    /// Pad with zero rows above and below (factor re-indexing for block
    /// constructions).
    pub fn pad_rows(&self, above: usize, below: usize) -> ExponentMatrix {
        let mut m = ExponentMatrix::zeros(above + self.rows + below, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(above + i, j, self.get(i, j));
            }
        }
        m
    }

    /// Add a column vector to every column (the `E + E(:,j) 1` construction of
    /// the quadratic map).
    pub fn add_col_broadcast(&self, col: &[u32]) -> ExponentMatrix {
        assert_eq!(col.len(), self.rows);
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j) + col[i]);
            }
        }
        m
    }
}
