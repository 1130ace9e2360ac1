//! Cyclic complex Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation to the
//! resulting real symmetric 2x2 block. Sweeps visit pivots in row-major order,
//! so the result is a deterministic function of the input.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Relative convergence target on the off-diagonal Frobenius norm.
pub const EIG_TOL: f64 = 1e-12;
/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// `A = U · diag(λ) · U†` with eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Unitary whose columns are the eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Reassembles `U · diag(g(λ)) · U†`.
    pub fn reassemble(&self, g: impl Fn(f64) -> f64) -> HermitianMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        HermitianMatrix::from_spectrum(&self.eigenvectors, &values).expect("decomposition is square")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

/// Jacobi eigendecomposition with the default tolerance and sweep cap.
pub fn spectral_decompose(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    spectral_decompose_with(a, EIG_TOL, MAX_SWEEPS)
}

pub fn spectral_decompose_with(a: &HermitianMatrix, tol: f64, max_sweeps: usize) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut w: Vec<Complex64> = a.as_matrix().entries().to_vec();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if n > 1 && scale > 0.0 {
        // stop well below tol; Jacobi converges quadratically once off-diagonal mass is small
        let target = (1e-3 * tol).max(4.0 * f64::EPSILON) * scale;
        let mut off = off_norm(&w, n);
        let mut sweeps = 0;
        while off > target && sweeps < max_sweeps {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    rotated |= rotate(&mut w, &mut v, n, p, q);
                }
            }
            sweeps += 1;
            off = off_norm(&w, n);
            if !rotated {
                break;
            }
        }
        if off > tol * scale {
            return Err(Error::ConvergenceFailure { sweeps, off_norm: off });
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| w[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));

    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let mut u = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let norm: f64 = (0..n).map(|i| v.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        // first component above the noise floor is made real positive
        let pivot = (0..n).find(|&i| v.get(i, k).norm() > 1e-12 * norm);
        let phase = pivot.map_or(Complex64::new(1.0, 0.0), |ip| {
            let z = v.get(ip, k);
            z.conj() / z.norm()
        });
        for i in 0..n {
            let e = if Some(i) == pivot {
                Complex64::new(v.get(i, k).norm(), 0.0)
            } else {
                v.get(i, k) * phase
            };
            u.set(i, col, e);
        }
    }
    Ok(SpectralDecomposition { eigenvalues, eigenvectors: u })
}

fn off_norm(w: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating `w[p][q]`. Returns false when the pivot is already zero.
fn rotate(w: &mut [Complex64], v: &mut ComplexMatrix, n: usize, p: usize, q: usize) -> bool {
    let apq = w[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return false;
    }
    let app = w[p * n + p].re;
    let aqq = w[q * n + q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ph = apq.conj() / r;

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = ph * (-s);
    let g_qq = ph * c;

    for k in 0..n {
        let akp = w[k * n + p];
        let akq = w[k * n + q];
        w[k * n + p] = akp * g_pp + akq * g_qp;
        w[k * n + q] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = w[p * n + k];
        let aqk = w[q * n + k];
        w[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        w[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    w[p * n + q] = Complex64::new(0.0, 0.0);
    w[q * n + p] = Complex64::new(0.0, 0.0);
    w[p * n + p].im = 0.0;
    w[q * n + q].im = 0.0;

    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * g_pp + vkq * g_qp);
        v.set(k, q, vkp * g_pq + vkq * g_qq);
    }
    true
}
