//! Hermitian matrix arithmetic, spectral decomposition and the functional calculus.

mod calculus;
mod eigen;
mod interval;
mod matrix;

pub use calculus::{
    apply_function, apply_function_with, apply_to_decomposition, function_sup_norm, loewner_leq, map_spectrum,
    min_eigenvalue, operator_abs, operator_norm, spectrum_in, unitary_exp, DOMAIN_TOL,
};
pub use eigen::{spectral_decompose, spectral_decompose_with, SpectralDecomposition, EIG_TOL, MAX_SWEEPS};
pub use interval::Interval;
pub use matrix::{vec_norm, ComplexMatrix, HermitianMatrix, JSON_HERMITIAN_TOL};
pub use num_complex::Complex64;
