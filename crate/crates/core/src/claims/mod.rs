//! Claim registry, evaluators and the proof-step tracer.
//!
//! Every claim is oriented so that it asserts `gap = lhs − rhs ≥ 0`. Claims
//! whose source form reads `≤` (subquadratic or concave variants) swap their
//! sides inside the evaluator, so reports always share one sign convention.

mod context;
mod instance;
mod operator;
mod registry;
mod scalar;
mod trace;

use serde::{Deserialize, Serialize};

pub use instance::{Instance, OperatorSlot};
pub use operator::{
    evaluate, evaluate_bohr_norm, evaluate_hlawka_norm, evaluate_hlawka_operator,
    evaluate_jensen_refined, evaluate_jensen_superquadratic, evaluate_multimap_jensen, evaluate_multimap_popoviciu,
    evaluate_popoviciu_convex, evaluate_popoviciu_derivative, evaluate_popoviciu_norm, evaluate_popoviciu_subquadratic,
    evaluate_popoviciu_superquadratic, BohrDirection, SPECTRUM_TOL, VECTOR_NORM_TOL,
};
pub use registry::{list_claims, lookup, ClaimId, ClaimInfo, InstanceShape, REGISTRY};
pub use scalar::{scalar_gg_popoviciu, scalar_hlawka, scalar_popoviciu};
pub use trace::{trace_popoviciu, StepRecord, StepTrace, SOUND_STEPS};

/// A named contribution to one side of a claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

/// Outcome of one hypothesis check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl HypothesisCheck {
    pub fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Self { name: name.into(), passed, detail }
    }
}

/// Ordered list of terms on one side.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Side(Vec<Term>);

impl Side {
    pub(crate) fn push(&mut self, name: impl Into<String>, value: f64) {
        self.0.push(Term { name: name.into(), value });
    }
}

/// Term-by-term evaluation of a claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermBreakdown {
    pub claim_id: ClaimId,
    pub lhs_terms: Vec<Term>,
    pub rhs_terms: Vec<Term>,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`; the claim asserts `gap ≥ 0`.
    pub gap: f64,
    pub hypothesis_report: Vec<HypothesisCheck>,
}

impl TermBreakdown {
    pub(crate) fn new(claim_id: ClaimId, lhs: Side, rhs: Side, hypothesis_report: Vec<HypothesisCheck>) -> Self {
        let l: f64 = lhs.0.iter().map(|t| t.value).sum();
        let r: f64 = rhs.0.iter().map(|t| t.value).sum();
        Self { claim_id, lhs_terms: lhs.0, rhs_terms: rhs.0, lhs: l, rhs: r, gap: l - r, hypothesis_report }
    }

    /// Swaps sides, for claims asserted with `≤`.
    pub(crate) fn reversed(self) -> Self {
        Self {
            claim_id: self.claim_id,
            lhs_terms: self.rhs_terms,
            rhs_terms: self.lhs_terms,
            lhs: self.rhs,
            rhs: self.lhs,
            gap: self.rhs - self.lhs,
            hypothesis_report: self.hypothesis_report,
        }
    }

    pub(crate) fn with_claim(mut self, id: ClaimId) -> Self {
        self.claim_id = id;
        self
    }

    /// `max(|lhs|, |rhs|, 1)`.
    pub fn scale(&self) -> f64 {
        self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }

    pub fn is_violation(&self, threshold: &Threshold) -> bool {
        threshold.is_violation(self.gap, self.scale())
    }
}

/// A gap counts as a violation when `gap < −(abs + rel · scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Threshold {
    fn default() -> Self {
        Self { abs: 1e-8, rel: 1e-8 }
    }
}

impl Threshold {
    pub fn is_violation(&self, gap: f64, scale: f64) -> bool {
        gap < -(self.abs + self.rel * scale)
    }
}
