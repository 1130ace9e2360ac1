//! Continuous functional calculus and spectral predicates.

use num_complex::Complex64;

use super::eigen::{spectral_decompose, SpectralDecomposition};
use super::interval::Interval;
use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;

/// Eigenvalues may sit this far outside a function's domain and are clamped back in.
pub const DOMAIN_TOL: f64 = 1e-9;

/// `f(A) = U · diag(f(λ)) · U†` with the default domain tolerance.
pub fn apply_function(f: &ScalarFunction, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    apply_function_with(f, a, DOMAIN_TOL)
}

pub fn apply_function_with(f: &ScalarFunction, a: &HermitianMatrix, dom_tol: f64) -> Result<HermitianMatrix> {
    let dec = spectral_decompose(a)?;
    apply_to_decomposition(f, &dec, dom_tol)
}

/// Functional calculus on an existing decomposition.
pub fn apply_to_decomposition(f: &ScalarFunction, dec: &SpectralDecomposition, dom_tol: f64) -> Result<HermitianMatrix> {
    let dom = f.domain();
    let mut values = Vec::with_capacity(dec.dim());
    for &l in &dec.eigenvalues {
        if !dom.contains(l, dom_tol) {
            return Err(Error::DomainViolation { function: f.name().to_string(), value: l, lo: dom.lo(), hi: dom.hi() });
        }
        values.push(f.eval(dom.clamp(l)));
    }
    HermitianMatrix::from_spectrum(&dec.eigenvectors, &values)
}

/// Applies an arbitrary real map to the spectrum, no domain checks.
pub fn map_spectrum(a: &HermitianMatrix, g: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    Ok(spectral_decompose(a)?.reassemble(g))
}

/// `|A|`, positive semidefinite.
pub fn operator_abs(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    map_spectrum(a, f64::abs)
}

/// `max |λ_i|`.
pub fn operator_norm(a: &HermitianMatrix) -> Result<f64> {
    let dec = spectral_decompose(a)?;
    Ok(dec.min_eigenvalue().abs().max(dec.max_eigenvalue().abs()))
}

/// `sup { |φ(λ)| : λ ∈ spec(A) }`.
pub fn function_sup_norm(phi: impl Fn(f64) -> f64, a: &HermitianMatrix) -> Result<f64> {
    let dec = spectral_decompose(a)?;
    Ok(dec.eigenvalues.iter().map(|&l| phi(l).abs()).fold(0.0, f64::max))
}

/// Every eigenvalue lies in `[lo - tol, hi + tol]`.
pub fn spectrum_in(a: &HermitianMatrix, interval: &Interval, tol: f64) -> Result<bool> {
    let dec = spectral_decompose(a)?;
    Ok(interval.contains(dec.min_eigenvalue(), tol) && interval.contains(dec.max_eigenvalue(), tol))
}

/// `A ⪯ B` up to `tol`: the smallest eigenvalue of `B - A` is at least `-tol`.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<bool> {
    let diff = b.checked_sub(a)?;
    Ok(spectral_decompose(&diff)?.min_eigenvalue() >= -tol)
}

pub fn min_eigenvalue(a: &HermitianMatrix) -> Result<f64> {
    Ok(spectral_decompose(a)?.min_eigenvalue())
}

/// `exp(i·t·H)`, a unitary for Hermitian `H`.
pub fn unitary_exp(h: &HermitianMatrix, t: f64) -> Result<ComplexMatrix> {
    let dec = spectral_decompose(h)?;
    let n = dec.dim();
    let u = &dec.eigenvectors;
    let phases: Vec<Complex64> = dec.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, t * l)).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| u.get(i, k) * phases[k] * u.get(j, k).conj()).sum()))
}
