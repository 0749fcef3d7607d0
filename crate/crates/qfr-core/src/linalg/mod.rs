//! Dense/sparse complex matrices and the classical brute-force oracles the
//! quantum circuits are tested against. Everything here may densify: these
//! routines exist for verification at desk scale, not performance.

mod eig;

pub use eig::{eig_hermitian, EigenDecomposition};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the constructor-side hermitian check.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    /// Row-major dense entries.
    Dense(Vec<Complex64>),
    /// Coordinate list of nonzeros; duplicates rejected at construction.
    Sparse(Vec<(usize, usize, Complex64)>),
}

/// A complex matrix with either dense or coordinate-sparse storage.
///
/// The `hermitian` flag is established by the constructor, never trusted
/// from callers.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    storage: Storage,
    hermitian: bool,
}

impl Matrix {
    pub fn dense(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for {}x{}, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        let mut m = Matrix {
            rows,
            cols,
            storage: Storage::Dense(entries),
            hermitian: false,
        };
        m.hermitian = m.check_hermitian();
        Ok(m)
    }

    /// Coordinate-sparse constructor; only nonzeros are stored and duplicate
    /// coordinates are rejected.
    pub fn sparse(
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, Complex64)>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::SparseEntryOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            if !seen.insert((r, c)) {
                return Err(Error::DuplicateSparseEntry { row: r, col: c });
            }
            if v != Complex64::new(0.0, 0.0) {
                kept.push((r, c, v));
            }
        }
        let mut m = Matrix {
            rows,
            cols,
            storage: Storage::Sparse(kept),
            hermitian: false,
        };
        m.hermitian = m.check_hermitian();
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::dense(rows, cols, entries)
    }

    /// Convenience constructor from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::dense(rows.len(), cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .expect("identity dimensions are valid")
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Self::from_fn(values.len(), values.len(), |r, c| {
            if r == c {
                Complex64::new(values[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .expect("diagonal dimensions are valid")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::dense(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
            .expect("zero dimensions are valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[row * self.cols + col],
            Storage::Sparse(s) => s
                .iter()
                .find(|(r, c, _)| *r == row && *c == col)
                .map(|(_, _, v)| *v)
                .unwrap_or_else(|| Complex64::new(0.0, 0.0)),
        }
    }

    /// Row-major dense copy of the entries.
    pub fn to_dense_entries(&self) -> Vec<Complex64> {
        match &self.storage {
            Storage::Dense(d) => d.clone(),
            Storage::Sparse(s) => {
                let mut d = vec![Complex64::new(0.0, 0.0); self.rows * self.cols];
                for (r, c, v) in s {
                    d[r * self.cols + c] = *v;
                }
                d
            }
        }
    }

    fn check_hermitian(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > HERMITIAN_TOL {
                    return false;
                }
            }
        }
        true
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let a = self.to_dense_entries();
        let b = other.to_dense_entries();
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); n * m];
        for i in 0..n {
            for l in 0..k {
                let ail = a[i * k + l];
                if ail == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..m {
                    out[i * m + j] += ail * b[l * m + j];
                }
            }
        }
        Matrix::dense(n, m, out)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let a = self.to_dense_entries();
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += a[i * self.cols + j] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let a = self.to_dense_entries();
        let b = other.to_dense_entries();
        let entries = a.iter().zip(b.iter()).map(|(&x, &y)| f(x, y)).collect();
        Matrix::dense(self.rows, self.cols, entries)
    }

    pub fn scale(&self, factor: Complex64) -> Matrix {
        let entries = self.to_dense_entries().iter().map(|&x| x * factor).collect();
        Matrix::dense(self.rows, self.cols, entries).expect("scaling preserves shape")
    }

    pub fn scale_real(&self, factor: f64) -> Matrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
            .expect("adjoint preserves shape")
    }

    pub fn max_abs(&self) -> f64 {
        self.to_dense_entries()
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.to_dense_entries()
            .iter()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest |A*A^dag - I| entry; zero for a unitary matrix.
    pub fn unitarity_deviation(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let prod = self.matmul(&self.adjoint())?;
        Ok(prod.sub(&Matrix::identity(self.rows))?.max_abs())
    }

    /// Embed into a larger identity block: the result is `dim x dim` with
    /// `self` as the leading block and ones on the trailing diagonal. Keeps
    /// determinant and the leading spectrum unchanged.
    pub fn pad_to(&self, dim: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if dim < self.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot pad {}x{} down to {}",
                self.rows, self.cols, dim
            )));
        }
        if dim == self.rows {
            return Ok(self.clone());
        }
        let n = self.rows;
        Matrix::from_fn(dim, dim, |r, c| {
            if r < n && c < n {
                self.get(r, c)
            } else if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// Determinant by LU elimination with partial pivoting. A numerically
/// singular input yields 0 rather than an error.
pub fn det_classical(a: &Matrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut w = a.to_dense_entries();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = w[col * n + col].norm();
        for r in (col + 1)..n {
            let mag = w[r * n + col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot_row != col {
            for c in 0..n {
                w.swap(col * n + c, pivot_row * n + c);
            }
            det = -det;
        }
        let pivot = w[col * n + col];
        det *= pivot;
        for r in (col + 1)..n {
            let factor = w[r * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in col..n {
                let sub = factor * w[col * n + c];
                w[r * n + c] -= sub;
            }
        }
    }
    Ok(det)
}

/// Sum of the diagonal.
pub fn trace_classical(a: &Matrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.rows() {
        acc += a.get(i, i);
    }
    Ok(acc)
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let scale = a.max_abs();
    if scale == 0.0 {
        return Err(Error::SingularMatrix);
    }
    let mut w = a.to_dense_entries();
    let mut inv = Matrix::identity(n).to_dense_entries();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = w[col * n + col].norm();
        for r in (col + 1)..n {
            let mag = w[r * n + col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag < 1e-14 * scale {
            return Err(Error::SingularMatrix);
        }
        if pivot_row != col {
            for c in 0..n {
                w.swap(col * n + c, pivot_row * n + c);
                inv.swap(col * n + c, pivot_row * n + c);
            }
        }
        let pivot = w[col * n + col];
        for c in 0..n {
            w[col * n + c] /= pivot;
            inv[col * n + c] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = w[r * n + col];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..n {
                let dw = factor * w[col * n + c];
                w[r * n + c] -= dw;
                let di = factor * inv[col * n + c];
                inv[r * n + c] -= di;
            }
        }
    }
    Matrix::dense(n, n, inv)
}

/// Matrix power by repeated squaring.
pub fn matpow(a: &Matrix, mut power: u64) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut result = Matrix::identity(a.rows());
    let mut base = a.clone();
    while power > 0 {
        if power & 1 == 1 {
            result = result.matmul(&base)?;
        }
        power >>= 1;
        if power > 0 {
            base = base.matmul(&base)?;
        }
    }
    Ok(result)
}
