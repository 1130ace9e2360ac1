//! Shared evaluation state for the vector-state claims.
//!
//! For a family `{Φ_j}` with Kraus operators `V_jk` and a unit vector `x`,
//! `⟨Σ_j Φ_j(g(E_j)) x, x⟩ = Σ_j Σ_i g(λ_ji) · w_ji` where `λ_ji` are the
//! eigenvalues of `E_j` with eigenvectors `e_ji` and
//! `w_ji = Σ_k |⟨V_jk x, e_ji⟩|²`. Each operator is therefore reduced once to a
//! discrete weighted spectrum and every functional-calculus term is a sum over it.

use std::borrow::Cow;

use super::instance::Instance;
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::linalg::{spectral_decompose, Complex64, HermitianMatrix, SpectralDecomposition, DOMAIN_TOL};
use crate::maps::MapFamily;

/// `f(t)` after clamping values within `DOMAIN_TOL` of the domain.
pub(crate) fn eval_clamped(f: &ScalarFunction, t: f64) -> Result<f64> {
    let dom = f.domain();
    if !dom.contains(t, DOMAIN_TOL) {
        return Err(Error::DomainViolation { function: f.name().to_string(), value: t, lo: dom.lo(), hi: dom.hi() });
    }
    Ok(f.eval(dom.clamp(t)))
}

/// Discrete weighted spectrum of one operator slot under the vector state.
#[derive(Debug, Clone)]
pub(crate) struct WeightedSpectrum {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSpectrum {
    pub(crate) fn expect(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&p, &w)| w * g(p)).sum()
    }

    pub(crate) fn try_expect(&self, g: impl Fn(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&p, &w) in self.points.iter().zip(&self.weights) {
            acc += w * g(p)?;
        }
        Ok(acc)
    }

    pub(crate) fn mean(&self) -> f64 {
        self.expect(|t| t)
    }

    /// `⟨Σ Φ_j(f(E_j)) x, x⟩`.
    pub(crate) fn expect_f(&self, f: &ScalarFunction) -> Result<f64> {
        self.try_expect(|t| eval_clamped(f, t))
    }

    /// `⟨Σ Φ_j(f(|E_j − s·1|)) x, x⟩`.
    pub(crate) fn expect_f_shifted_abs(&self, f: &ScalarFunction, s: f64) -> Result<f64> {
        self.try_expect(|t| eval_clamped(f, (t - s).abs()))
    }
}

/// Decomposed operator slots plus the map family and the pulled-back vectors `V_jk x`.
pub(crate) struct Context<'a> {
    pub(crate) family: Cow<'a, MapFamily>,
    pub(crate) x: &'a [Complex64],
    pulled: Vec<Vec<Vec<Complex64>>>,
}

impl<'a> Context<'a> {
    pub(crate) fn new(inst: &'a Instance) -> Result<Self> {
        let family = inst.map_family()?;
        let x = inst.vector()?;
        if x.len() != family.dim_k() {
            return Err(Error::DimensionMismatch { expected: family.dim_k(), found: x.len() });
        }
        let pulled = family
            .maps()
            .iter()
            .map(|m| m.kraus().iter().map(|v| v.apply(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { family, x, pulled })
    }

    /// Weighted spectrum of a slot with one decomposition per family member.
    pub(crate) fn weighted(&self, decs: &[SpectralDecomposition]) -> Result<WeightedSpectrum> {
        if decs.len() != self.pulled.len() {
            return Err(Error::LengthMismatch { expected: self.pulled.len(), found: decs.len() });
        }
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (dec, ys) in decs.iter().zip(&self.pulled) {
            let n = dec.dim();
            for (i, &lambda) in dec.eigenvalues.iter().enumerate() {
                let mut w = 0.0;
                for y in ys {
                    let mut dot = Complex64::new(0.0, 0.0);
                    for (r, yr) in y.iter().enumerate().take(n) {
                        dot += dec.eigenvectors.get(r, i).conj() * yr;
                    }
                    w += dot.norm_sqr();
                }
                points.push(lambda);
                weights.push(w);
            }
        }
        Ok(WeightedSpectrum { points, weights })
    }

    /// `⟨Σ_j Φ_j(Σ_c α_c E_c,j) x, x⟩` through full map application.
    pub(crate) fn expect_combination(&self, combo: &[(f64, &[HermitianMatrix])]) -> Result<f64> {
        let members = self.family.len();
        let mut ops = Vec::with_capacity(members);
        for j in 0..members {
            let terms: Vec<(f64, &HermitianMatrix)> = combo.iter().map(|(a, slot)| (*a, &slot[j])).collect();
            ops.push(HermitianMatrix::linear_combination(&terms)?);
        }
        self.family.family_apply(&ops)?.quadratic_form(self.x)
    }
}

/// Decomposes each matrix of a slot, checking its size against `dim_h`.
pub(crate) fn decompose_slot(slot: &[HermitianMatrix], dim_h: usize, members: usize) -> Result<Vec<SpectralDecomposition>> {
    if slot.len() != members {
        return Err(Error::LengthMismatch { expected: members, found: slot.len() });
    }
    slot.iter()
        .map(|a| {
            if a.dim() != dim_h {
                return Err(Error::DimensionMismatch { expected: dim_h, found: a.dim() });
            }
            spectral_decompose(a)
        })
        .collect()
}
