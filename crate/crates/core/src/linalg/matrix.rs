use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::MalformedInstance("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, found: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k / cols, col: k % cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Column vector (n x 1).
    pub fn column(entries: &[Complex64]) -> Self {
        Self { rows: entries.len(), cols: 1, data: entries.to_vec() }
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scaled(&self, alpha: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * alpha).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * p..(k + 1) * p];
                let dst = &mut out[i * p..(i + 1) * p];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(Self { rows: n, cols: p, data: out })
    }

    /// `self† · other` without materializing the adjoint.
    pub fn adjoint_matmul(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let (m, n, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for k in 0..m {
            for i in 0..n {
                let a = self.data[k * n + i].conj();
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * p..(k + 1) * p];
                let dst = &mut out[i * p..(i + 1) * p];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(Self { rows: n, cols: p, data: out })
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Frobenius norm of `self - self†`; square matrices only.
    pub fn hermitian_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }
}

/// Complex square matrix that is exactly self-adjoint.
///
/// Construction goes through [`HermitianMatrix::hermitize`] (checked) or the
/// crate-internal projection, both of which write the upper triangle and
/// mirror it, so `entry(i, j) == entry(j, i).conj()` holds bit for bit and the
/// diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Checked projection `(raw + raw†) / 2`.
    ///
    /// Fails with `NotHermitian` when `||raw - raw†||_F > tol * max(1, ||raw||_F)`.
    pub fn hermitize(raw: &ComplexMatrix, tol: f64) -> Result<Self> {
        let defect = raw.hermitian_defect()?;
        let bound = tol * raw.frobenius_norm().max(1.0);
        if defect > bound {
            return Err(Error::NotHermitian { asymmetry: defect, tolerance: bound });
        }
        Ok(Self::project(raw))
    }

    /// Unchecked projection onto the Hermitian part. `raw` must be square.
    pub(crate) fn project(raw: &ComplexMatrix) -> Self {
        debug_assert!(raw.is_square());
        let n = raw.rows();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(raw.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                let v = (raw.get(i, j) + raw.get(j, i).conj()) * 0.5;
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        Self { inner: m }
    }

    pub fn zeros(n: usize) -> Self {
        Self { inner: ComplexMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: ComplexMatrix::identity(n) }
    }

    /// `c · I_n`.
    pub fn scalar(n: usize, c: f64) -> Self {
        Self::from_real_diag(&vec![c; n])
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            inner: ComplexMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(diag[i], 0.0) } else { ZERO }),
        }
    }

    /// Real symmetric matrix from rows; only the upper triangle is read.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::project(&ComplexMatrix::from_real_rows(rows))
    }

    /// Builds `U · diag(values) · U†` for a square `U`.
    pub fn from_spectrum(u: &ComplexMatrix, values: &[f64]) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::NotSquare { rows: u.rows(), cols: u.cols() });
        }
        if values.len() != u.cols() {
            return Err(Error::DimensionMismatch { expected: u.cols(), found: values.len() });
        }
        let n = u.rows();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &v) in values.iter().enumerate() {
                    if v != 0.0 {
                        acc += u.get(i, k) * u.get(j, k).conj() * v;
                    }
                }
                m.set(i, j, acc);
            }
        }
        for i in 0..n {
            m.set(i, i, Complex64::new(m.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                m.set(j, i, m.get(i, j).conj());
            }
        }
        Ok(Self { inner: m })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self { inner: self.inner.checked_add(&other.inner)? })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { inner: self.inner.checked_sub(&other.inner)? })
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self { inner: self.inner.scaled(Complex64::new(alpha, 0.0)) }
    }

    /// Product of two Hermitian matrices; generally not Hermitian.
    pub fn matmul(&self, other: &Self) -> Result<ComplexMatrix> {
        self.inner.matmul(&other.inner)
    }

    /// `self - s · I`.
    pub fn shifted(&self, s: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            let d = out.inner.get(i, i);
            out.inner.set(i, i, Complex64::new(d.re - s, 0.0));
        }
        out
    }

    /// Weighted sum `Σ w_k M_k`; all terms must share a dimension.
    pub fn linear_combination(terms: &[(f64, &HermitianMatrix)]) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::MalformedInstance("empty linear combination".into()))?;
        let mut acc = first.1.scaled(first.0);
        for (w, m) in &terms[1..] {
            acc = acc.checked_add(&m.scaled(*w))?;
        }
        Ok(acc)
    }

    /// Real part of `x† A x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<f64> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        let mut acc = ZERO;
        for i in 0..n {
            let mut row = ZERO;
            for j in 0..n {
                row += self.inner.get(i, j) * x[j];
            }
            acc += x[i].conj() * row;
        }
        debug_assert!(
            acc.im.abs() <= 1e-12 * self.frobenius_norm().max(f64::MIN_POSITIVE) * vec_norm_sqr(x) + 1e-300,
            "imaginary residue {} in quadratic form",
            acc.im
        );
        Ok(acc.re)
    }
}

pub(crate) fn vec_norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    vec_norm_sqr(x).sqrt()
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    cols: Option<usize>,
    entries: Vec<[f64; 2]>,
}

impl MatrixRepr {
    fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = m.data.iter().map(|z| [z.re, z.im]).collect();
        if m.is_square() {
            Self { dim: Some(m.rows), rows: None, cols: None, entries }
        } else {
            Self { dim: None, rows: Some(m.rows), cols: Some(m.cols), entries }
        }
    }

    fn into_matrix(self) -> Result<ComplexMatrix> {
        let (rows, cols) = match (self.dim, self.rows, self.cols) {
            (Some(n), None, None) => (n, n),
            (None, Some(r), Some(c)) => (r, c),
            _ => {
                return Err(Error::MalformedInstance(
                    "matrix needs either `dim` or both `rows` and `cols`".into(),
                ))
            }
        };
        let data = self.entries.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(rows, cols, data)
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr::from_matrix(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixRepr::deserialize(d)?.into_matrix().map_err(D::Error::custom)
    }
}

/// Tolerance used when reading Hermitian matrices from JSON.
pub const JSON_HERMITIAN_TOL: f64 = 1e-10;

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.inner.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexMatrix::deserialize(d)?;
        HermitianMatrix::hermitize(&raw, JSON_HERMITIAN_TOL).map_err(D::Error::custom)
    }
}
