//! Independent oracles: plain scalar formulas and naive dense arithmetic,
//! written without touching the library's evaluators or eigensolver.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use num_complex::Complex64;
use opineq::linalg::HermitianMatrix;

pub type Dense = Vec<Vec<Complex64>>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn opineq(args: &[&str], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_opineq"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("OPINEQ_THREADS", n.to_string()),
        None => cmd.env_remove("OPINEQ_THREADS"),
    };
    cmd.output().expect("binary runs")
}

pub fn dense(a: &HermitianMatrix) -> Dense {
    let n = a.dim();
    (0..n).map(|i| (0..n).map(|j| a.entry(i, j)).collect()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn trace(a: &Dense) -> Complex64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// `f(mean) + (f(a)+f(b)+f(d))/3 − (2/3)Σ f(pair mean)`.
pub fn popoviciu_gap(f: impl Fn(f64) -> f64, a: f64, b: f64, d: f64) -> f64 {
    let lhs = f((a + b + d) / 3.0) + (f(a) + f(b) + f(d)) / 3.0;
    let rhs = 2.0 / 3.0 * (f((a + b) / 2.0) + f((b + d) / 2.0) + f((a + d) / 2.0));
    lhs - rhs
}

/// Scalar form of the superquadratic Popoviciu claim with its six correction terms.
pub fn thm21_sides(f: impl Fn(f64) -> f64, a: f64, b: f64, d: f64) -> (f64, f64) {
    let lhs = (f(a) + f(b) + f(d)) / 3.0 + f((a + b + d) / 3.0);
    let pairs = 2.0 / 3.0 * (f((a + b) / 2.0) + f((b + d) / 2.0) + f((a + d) / 2.0));
    let corr = f((a - (b + d) / 2.0).abs())
        + f(((2.0 * a - b - d) / 6.0).abs())
        + f((d - (a + b) / 2.0).abs())
        + f(((2.0 * d - a - b) / 6.0).abs())
        + f((b - (a + d) / 2.0).abs())
        + f(((2.0 * b - a - d) / 6.0).abs());
    (lhs, pairs + corr / 3.0)
}

pub fn hlawka_gap(a: f64, b: f64, c: f64) -> f64 {
    (a + b + c).abs() + a.abs() + b.abs() + c.abs() - (a + c).abs() - (b + c).abs() - (a + b).abs()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
