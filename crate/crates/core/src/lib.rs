//! Numerical laboratory for operator Popoviciu, Jensen, Hlawka and Bohr type
//! inequalities over Hermitian matrices and positive unital linear maps.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: Hermitian matrices, a Jacobi eigensolver and the functional calculus `f(A)`.
//! * [`maps`]: positive maps in Kraus form, unital maps and map families.
//! * [`functions`]: the scalar function catalog with support constants and class flags.
//! * [`claims`]: the claim registry, term-by-term evaluators and the proof-step tracer.
//! * [`harness`]: seeded instance generators, parallel campaigns and counterexample refinement.
//! * [`cli`]: the command-line driver behind the `opineq` binary.

pub mod claims;
pub mod cli;
pub mod error;
pub mod functions;
pub mod harness;
pub mod linalg;
pub mod maps;

pub use error::{Error, Result};
