//! Step-by-step replay of the superquadratic Popoviciu argument.
//!
//! Each inequality of the argument is evaluated with the true support
//! constants `C_{s_i}`. The two places where the argument replaces those
//! constants by `C = min C_{s_i}` are recorded as signed drops, so a negative
//! drop shows exactly where the chain of inequalities breaks.

use serde::{Deserialize, Serialize};

use super::context::{decompose_slot, eval_clamped, Context};
use super::instance::Instance;
use super::operator::evaluate;
use super::registry::ClaimId;
use crate::error::Result;
use crate::functions::ScalarFunction;

/// Labels of the six inequalities that follow from the superquadratic definition alone.
pub const SOUND_STEPS: [&str; 6] = ["2.2/2.4", "2.2/2.5", "2.2/2.6", "1.4/2.9", "1.4/2.10", "1.4/2.11"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`.
    pub slack: f64,
    /// For the min-C replacements: `(1/3) Σ_i (C_{s_i} − C) · t_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dropped: Option<f64>,
}

impl StepRecord {
    fn new(label: &str, lhs: f64, rhs: f64) -> Self {
        Self { label: label.to_string(), lhs, rhs, slack: lhs - rhs, dropped: None }
    }

    pub fn scale(&self) -> f64 {
        self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }

    pub fn is_min_c(&self) -> bool {
        self.dropped.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepTrace {
    pub claim_id: ClaimId,
    pub function: String,
    /// `s_1 = ⟨Φ((B+D)/2)x,x⟩`, `s_2 = ⟨Φ((A+B)/2)x,x⟩`, `s_3 = ⟨Φ((A+D)/2)x,x⟩`.
    pub s: [f64; 3],
    /// `C_{s_1}, C_{s_2}, C_{s_3}`.
    pub c_s: [f64; 3],
    /// `C = min C_{s_i}`.
    pub c_min: f64,
    /// `⟨Φ((A+B+D)/3)x,x⟩`.
    pub mean: f64,
    /// `⟨Φ((2A−B−D)/2)x,x⟩, ⟨Φ((2D−A−B)/2)x,x⟩, ⟨Φ((2B−A−D)/2)x,x⟩`.
    pub t_halves: [f64; 3],
    /// `⟨Φ((2D−A−B)/6)x,x⟩, ⟨Φ((2A−B−D)/6)x,x⟩, ⟨Φ((2B−A−D)/6)x,x⟩`, in step order.
    pub t_sixths: [f64; 3],
    pub t_sum_halves: f64,
    pub t_sum_sixths: f64,
    pub steps: Vec<StepRecord>,
    pub gap: f64,
}

impl StepTrace {
    pub fn step(&self, label: &str) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.label == label)
    }

    /// Sound steps whose slack falls below `−rel · scale`.
    pub fn unsound_steps(&self, rel: f64) -> Vec<&StepRecord> {
        self.steps
            .iter()
            .filter(|s| SOUND_STEPS.contains(&s.label.as_str()) && s.slack < -rel * s.scale())
            .collect()
    }

    /// `gap − drops − (1/3) Σ sound slacks − (C/3)(Σt + Σu)`; zero up to rounding.
    pub fn decomposition_residual(&self) -> f64 {
        let drops: f64 = self.steps.iter().filter_map(|s| s.dropped).sum();
        let slacks: f64 = self.steps.iter().filter(|s| SOUND_STEPS.contains(&s.label.as_str())).map(|s| s.slack).sum();
        self.gap - drops - slacks / 3.0 - self.c_min / 3.0 * (self.t_sum_halves + self.t_sum_sixths)
    }

    /// Aligned text table: step, lhs, rhs, slack, drop.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "claim {}  f = {}\ns = [{:.12e}, {:.12e}, {:.12e}]\nC_s = [{:.12e}, {:.12e}, {:.12e}]  C = {:.12e}\n",
            self.claim_id, self.function, self.s[0], self.s[1], self.s[2], self.c_s[0], self.c_s[1], self.c_s[2], self.c_min
        );
        out.push_str(&format!("{:<12} {:>22} {:>22} {:>22} {:>22}\n", "step", "lhs", "rhs", "slack", "minC drop"));
        for s in &self.steps {
            let drop = s.dropped.map_or(String::new(), |d| format!("{d:.15e}"));
            let flag = if s.is_min_c() { " *" } else { "" };
            out.push_str(&format!("{:<12} {:>22.15e} {:>22.15e} {:>22.15e} {:>22}{flag}\n", s.label, s.lhs, s.rhs, s.slack, drop));
        }
        out.push_str(&format!(
            "t sums: halves {:.3e}, sixths {:.3e}\n* min-C replacement; negative drop breaks the chain\n",
            self.t_sum_halves, self.t_sum_sixths
        ));
        out
    }
}

fn support_at(f: &ScalarFunction, s: f64) -> f64 {
    f.support_constant(f.domain().clamp(s))
}

/// Replays the argument on a THM2.1 instance (COR5-POP for families).
pub fn trace_popoviciu(inst: &Instance) -> Result<StepTrace> {
    let ctx = Context::new(inst)?;
    let claim = if ctx.family.len() == 1 { ClaimId::Thm21 } else { ClaimId::Cor5Pop };
    let breakdown = evaluate(claim, inst)?;
    let f = inst.function()?;
    let (dh, members) = (ctx.family.dim_h(), ctx.family.len());
    let (a_ops, b_ops, d_ops) = (inst.operator("A")?, inst.operator("B")?, inst.operator("D")?);
    let wa = ctx.weighted(&decompose_slot(a_ops, dh, members)?)?;
    let wb = ctx.weighted(&decompose_slot(b_ops, dh, members)?)?;
    let wd = ctx.weighted(&decompose_slot(d_ops, dh, members)?)?;

    let (ea, eb, ed) = (wa.mean(), wb.mean(), wd.mean());
    let s = [(eb + ed) / 2.0, (ea + eb) / 2.0, (ea + ed) / 2.0];
    let mean = (ea + eb + ed) / 3.0;
    let c_s = s.map(|v| support_at(f, v));
    let c_min = c_s.iter().copied().fold(f64::INFINITY, f64::min);
    let fv = |t: f64| eval_clamped(f, t);

    // t-vectors straight from the operators, so their cancellation is a real check
    let t_halves = [
        ctx.expect_combination(&[(1.0, a_ops), (-0.5, b_ops), (-0.5, d_ops)])?,
        ctx.expect_combination(&[(1.0, d_ops), (-0.5, a_ops), (-0.5, b_ops)])?,
        ctx.expect_combination(&[(1.0, b_ops), (-0.5, a_ops), (-0.5, d_ops)])?,
    ];
    let sixth = 1.0 / 6.0;
    let t_sixths = [
        ctx.expect_combination(&[(2.0 * sixth, d_ops), (-sixth, a_ops), (-sixth, b_ops)])?,
        ctx.expect_combination(&[(2.0 * sixth, a_ops), (-sixth, b_ops), (-sixth, d_ops)])?,
        ctx.expect_combination(&[(2.0 * sixth, b_ops), (-sixth, a_ops), (-sixth, d_ops)])?,
    ];

    let mut steps = Vec::with_capacity(9);
    let operator_steps = [("2.2/2.4", &wa, 0usize), ("2.2/2.5", &wd, 1), ("2.2/2.6", &wb, 2)];
    for (label, w, i) in operator_steps {
        let rhs = fv(s[i])? + c_s[i] * t_halves[i] + w.expect_f_shifted_abs(f, s[i])?;
        steps.push(StepRecord::new(label, w.expect_f(f)?, rhs));
    }
    let third = 1.0 / 3.0;
    let min_c = |label: &str, weighted: f64, sum: f64| {
        let mut r = StepRecord::new(label, third * weighted, third * c_min * sum);
        r.dropped = Some(r.slack);
        r
    };
    let weighted_halves: f64 = (0..3).map(|i| c_s[i] * t_halves[i]).sum();
    steps.push(min_c("minC-2.8", weighted_halves, t_halves.iter().sum()));

    // 2.9 expands at s_2, 2.10 at s_1, 2.11 at s_3
    let pairing = [("1.4/2.9", 1usize), ("1.4/2.10", 0), ("1.4/2.11", 2)];
    let f_mean = fv(mean)?;
    let mut weighted_sixths = 0.0;
    for (k, (label, i)) in pairing.into_iter().enumerate() {
        let u = t_sixths[k];
        weighted_sixths += c_s[i] * u;
        steps.push(StepRecord::new(label, f_mean, fv(s[i])? + c_s[i] * u + fv(u.abs())?));
    }
    steps.push(min_c("minC-2.13", weighted_sixths, t_sixths.iter().sum()));
    steps.push(StepRecord::new("combine-2.3", breakdown.lhs, breakdown.rhs));

    Ok(StepTrace {
        claim_id: claim,
        function: f.name().to_string(),
        s,
        c_s,
        c_min,
        mean,
        t_halves,
        t_sixths,
        t_sum_halves: t_halves.iter().sum(),
        t_sum_sixths: t_sixths.iter().sum(),
        steps,
        gap: breakdown.gap,
    })
}
