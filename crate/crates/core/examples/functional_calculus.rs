//! Spectral decomposition and `f(A)` on a small Hermitian matrix.

use opineq::functions::builtin;
use opineq::linalg::{apply_function, operator_abs, operator_norm, spectral_decompose, HermitianMatrix};

fn main() -> opineq::Result<()> {
    let a = HermitianMatrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[1.0, 2.0, 1.0], &[0.0, 1.0, 2.0]]);
    let dec = spectral_decompose(&a)?;
    println!("eigenvalues of A: {:?}", dec.eigenvalues);

    let cube = builtin("pow:3")?;
    let a3 = apply_function(&cube, &a)?;
    println!("eigenvalues of A^3: {:?}", spectral_decompose(&a3)?.eigenvalues);

    let b = a.shifted(2.5);
    println!("||A - 2.5|| = {:.6}", operator_norm(&b)?);
    println!("eigenvalues of |A - 2.5|: {:?}", spectral_decompose(&operator_abs(&b)?)?.eigenvalues);
    Ok(())
}
