//! Local search that lowers a claim's gap while keeping every hypothesis intact.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::generate::{gen_hermitian, trial_rng};
use crate::claims::{evaluate, ClaimId, Instance};
use crate::error::{Error, Result};
use crate::linalg::{spectral_decompose, unitary_exp, vec_norm, Complex64, HermitianMatrix, Interval};

const INITIAL_STEP: f64 = 0.25;
const MIN_STEP: f64 = 1e-9;
const GROWTH: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub claim_id: ClaimId,
    pub instance: Instance,
    pub start_gap: f64,
    pub final_gap: f64,
    /// Moves that kept or lowered the gap.
    pub accepted: usize,
    pub evaluations: usize,
}

/// Window the eigenvalue moves are projected onto.
fn refine_window(claim: ClaimId, inst: &Instance) -> Interval {
    if let Some(w) = inst.interval {
        return w;
    }
    let dom = inst.f.as_ref().map(|f| f.domain());
    match claim {
        ClaimId::HlawkaScalar | ClaimId::HlawkaOp | ClaimId::HlawkaNorm => Interval::real_line(),
        ClaimId::Eq15 | ClaimId::Thm3 | ClaimId::PopNorm => dom.unwrap_or(Interval::real_line()),
        ClaimId::GgPop => Interval::new(f64::MIN_POSITIVE, f64::INFINITY).expect("valid"),
        _ => Interval::nonnegative(),
    }
}

#[derive(Clone, Copy)]
enum Move {
    Eigenvalue,
    Rotate,
    Vector,
}

fn pick_operator<'a>(rng: &mut impl Rng, inst: &'a mut Instance) -> Option<&'a mut HermitianMatrix> {
    let n_ops: usize = inst.operators.values().map(|s| s.as_slice().len()).sum();
    if n_ops == 0 {
        return None;
    }
    let mut k = rng.random_range(0..n_ops);
    for slot in inst.operators.values_mut() {
        let ops = slot.as_mut_slice();
        if k < ops.len() {
            return Some(&mut ops[k]);
        }
        k -= ops.len();
    }
    None
}

fn propose(rng: &mut impl Rng, inst: &Instance, window: &Interval, step: f64, mv: Move) -> Result<Instance> {
    let mut next = inst.clone();
    match mv {
        Move::Eigenvalue | Move::Rotate => {
            let Some(a) = pick_operator(rng, &mut next) else { return Ok(next) };
            let dec = spectral_decompose(a)?;
            let n = dec.dim();
            let mut values = dec.eigenvalues.clone();
            let mut basis = dec.eigenvectors.clone();
            if let Move::Eigenvalue = mv {
                let i = rng.random_range(0..n);
                let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                let delta: f64 = rng.sample(StandardNormal);
                values[i] = window.clamp(values[i] + step * scale * delta);
            } else {
                let h = gen_hermitian(rng, n, &Interval::new(-1.0, 1.0)?)?;
                basis = unitary_exp(&h, step)?.matmul(&basis)?;
            }
            *a = HermitianMatrix::from_spectrum(&basis, &values)?;
        }
        Move::Vector => {
            if let Some(x) = next.x.as_mut() {
                for z in x.iter_mut() {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    *z += Complex64::new(re, im) * step;
                }
                let n = vec_norm(x);
                if n > 1e-12 {
                    x.iter_mut().for_each(|z| *z /= n);
                } else {
                    return Ok(inst.clone());
                }
            }
        }
    }
    Ok(next)
}

/// Greedy local search from `start`.
///
/// Each step perturbs one eigenvalue (projected onto the spectrum window), rotates one
/// operator by `exp(i·step·H)`, or perturbs and renormalises the vector. Candidates that
/// fail a hypothesis are rejected; the rest are accepted when the gap does not rise.
/// Rejections halve the step and acceptances grow it. Deterministic for a fixed seed.
pub fn refine_counterexample(claim: ClaimId, start: &Instance, budget: usize, seed: u64) -> Result<Refinement> {
    let start_gap = evaluate(claim, start)?.gap;
    let window = refine_window(claim, start);
    let mut rng = trial_rng(seed, 0);
    let moves: Vec<Move> = if start.x.is_some() { vec![Move::Eigenvalue, Move::Rotate, Move::Vector] } else { vec![Move::Eigenvalue, Move::Rotate] };

    let (mut best, mut best_gap) = (start.clone(), start_gap);
    let mut step = INITIAL_STEP;
    let (mut accepted, mut evaluations) = (0, 1);
    for _ in 0..budget {
        let mv = moves[rng.random_range(0..moves.len())];
        let cand = propose(&mut rng, &best, &window, step, mv)?;
        evaluations += 1;
        match evaluate(claim, &cand) {
            Ok(b) if b.gap <= best_gap => {
                best = cand;
                best_gap = b.gap;
                accepted += 1;
                step = (step * GROWTH).min(1e3);
            }
            Ok(_) | Err(Error::HypothesisViolation { .. }) | Err(Error::DomainViolation { .. }) => {
                step *= 0.5;
                if step < MIN_STEP {
                    step = INITIAL_STEP;
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Refinement { claim_id: claim, instance: best, start_gap, final_gap: best_gap, accepted, evaluations })
}
