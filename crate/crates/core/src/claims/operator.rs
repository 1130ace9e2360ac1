//! Evaluators for the operator claims, each guarded by its hypothesis set.

use super::context::{decompose_slot, eval_clamped, Context, WeightedSpectrum};
use super::instance::Instance;
use super::registry::ClaimId;
use super::scalar::{scalar_gg_popoviciu, scalar_hlawka, scalar_popoviciu};
use super::{HypothesisCheck, Side, TermBreakdown};
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::linalg::{apply_to_decomposition, operator_norm, vec_norm, HermitianMatrix, Interval, SpectralDecomposition, DOMAIN_TOL};
use crate::maps::{MapFamily, UNITAL_TOL};

/// Eigenvalues may leave a declared spectrum window by this much.
pub const SPECTRUM_TOL: f64 = DOMAIN_TOL;
/// Allowed deviation of `‖x‖` from 1.
pub const VECTOR_NORM_TOL: f64 = 1e-12;

#[derive(Default)]
struct Checks(Vec<HypothesisCheck>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.0.push(HypothesisCheck::new(name, passed, detail));
    }

    fn finish(self, claim: ClaimId) -> Result<Vec<HypothesisCheck>> {
        let failed: Vec<String> = self
            .0
            .iter()
            .filter(|c| !c.passed)
            .map(|c| match &c.detail {
                Some(d) => format!("{} ({d})", c.name),
                None => c.name.clone(),
            })
            .collect();
        if failed.is_empty() {
            Ok(self.0)
        } else {
            Err(Error::HypothesisViolation { claim: claim.to_string(), failed })
        }
    }

    fn spectra_in(&mut self, name: &str, decs: &[SpectralDecomposition], window: &Interval) {
        let lo = decs.iter().map(|d| d.min_eigenvalue()).fold(f64::INFINITY, f64::min);
        let hi = decs.iter().map(|d| d.max_eigenvalue()).fold(f64::NEG_INFINITY, f64::max);
        let ok = window.contains(lo, SPECTRUM_TOL) && window.contains(hi, SPECTRUM_TOL);
        self.add(format!("spec({name}) in {window}"), ok, Some(format!("eigenvalues in [{lo:.6e}, {hi:.6e}]")));
    }

    fn psd(&mut self, name: &str, decs: &[SpectralDecomposition]) {
        let lo = decs.iter().map(|d| d.min_eigenvalue()).fold(f64::INFINITY, f64::min);
        self.add(format!("{name} PSD"), lo >= -SPECTRUM_TOL, Some(format!("min eigenvalue {lo:.6e}")));
    }

    fn unital(&mut self, family: &MapFamily) {
        let defect = family.unit_defect();
        let ok = defect <= UNITAL_TOL * family.dim_k() as f64;
        let name = if family.len() == 1 { "Phi unital" } else { "sum_j Phi_j(1) = 1" };
        self.add(name, ok, Some(format!("defect {defect:.3e}")));
    }

    fn unit_vector(&mut self, ctx: &Context<'_>) {
        let n = vec_norm(ctx.x);
        self.add("||x|| = 1", (n - 1.0).abs() <= VECTOR_NORM_TOL, Some(format!("||x|| = {n:.17}")));
    }

    fn flag(&mut self, name: &str, ok: bool) {
        self.add(name, ok, None);
    }
}

/// Which of the two readings of a `≥ (≤)` claim applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Orientation {
    Forward,
    Reversed,
}

fn orient(b: TermBreakdown, o: Orientation) -> TermBreakdown {
    match o {
        Orientation::Forward => b,
        Orientation::Reversed => b.reversed(),
    }
}

/// Superquadratic reads `≥`, subquadratic-only reads `≤`.
fn quadratic_orientation(checks: &mut Checks, f: &ScalarFunction) -> Orientation {
    let fl = f.flags();
    checks.flag("f superquadratic or subquadratic", fl.superquadratic || fl.subquadratic);
    if fl.superquadratic {
        Orientation::Forward
    } else {
        Orientation::Reversed
    }
}

/// Convex reads `≥`, concave-only reads `≤`.
fn convex_orientation(checks: &mut Checks, name: &str, f: &ScalarFunction) -> Orientation {
    let fl = f.flags();
    checks.flag(&format!("{name} convex or concave"), fl.convex || fl.concave);
    if fl.convex {
        Orientation::Forward
    } else {
        Orientation::Reversed
    }
}

/// Operator slots decomposed against the instance's map family.
struct Prepared<'a> {
    ctx: Context<'a>,
    decs: Vec<Vec<SpectralDecomposition>>,
    label: &'static str,
}

impl<'a> Prepared<'a> {
    fn new(inst: &'a Instance, names: &[&str]) -> Result<Self> {
        let ctx = Context::new(inst)?;
        let (dh, members) = (ctx.family.dim_h(), ctx.family.len());
        let decs = names
            .iter()
            .map(|n| decompose_slot(inst.operator(n)?, dh, members))
            .collect::<Result<Vec<_>>>()?;
        let label = if members == 1 { "Phi" } else { "sum_j Phi_j" };
        Ok(Self { ctx, decs, label })
    }

    fn weighted(&self) -> Result<Vec<WeightedSpectrum>> {
        self.decs.iter().map(|d| self.ctx.weighted(d)).collect()
    }

    fn base_checks(&self, names: &[&str], psd: bool) -> Checks {
        let mut c = Checks::default();
        if psd {
            for (n, d) in names.iter().zip(&self.decs) {
                c.psd(n, d);
            }
        }
        c.unital(&self.ctx.family);
        c.unit_vector(&self.ctx);
        c
    }
}

const ABD: [&str; 3] = ["A", "B", "D"];

/// Jensen-type breakdown `⟨Φ(f(A))x,x⟩` against `f(s) + ⟨Φ(f(|A − s|))x,x⟩ [+ f(0)]`.
fn jensen_terms(claim: ClaimId, phi: &str, w: &WeightedSpectrum, f: &ScalarFunction, with_f0: bool, report: Vec<HypothesisCheck>) -> Result<TermBreakdown> {
    let s = w.mean();
    let mut lhs = Side::default();
    lhs.push(format!("<{phi}(f(A))x,x>"), w.expect_f(f)?);
    let mut rhs = Side::default();
    rhs.push(format!("f(<{phi}(A)x,x>)"), eval_clamped(f, s)?);
    rhs.push(format!("<{phi}(f(|A - s 1|))x,x>"), w.expect_f_shifted_abs(f, s)?);
    if with_f0 {
        rhs.push("f(0)", f.eval(0.0));
    }
    Ok(TermBreakdown::new(claim, lhs, rhs, report))
}

/// The two-versus-three-term core shared by every Popoviciu-type claim.
fn popoviciu_core(phi: &str, ws: &[WeightedSpectrum], f: &ScalarFunction) -> Result<(Side, Side, [f64; 3])> {
    let (a, b, d) = (ws[0].mean(), ws[1].mean(), ws[2].mean());
    let s = [(b + d) / 2.0, (a + b) / 2.0, (a + d) / 2.0];
    let m = (a + b + d) / 3.0;
    let mut lhs = Side::default();
    let mean_f = (ws[0].expect_f(f)? + ws[1].expect_f(f)? + ws[2].expect_f(f)?) / 3.0;
    lhs.push(format!("<{phi}((f(A)+f(B)+f(D))/3)x,x>"), mean_f);
    lhs.push(format!("f(<{phi}((A+B+D)/3)x,x>)"), eval_clamped(f, m)?);
    let mut rhs = Side::default();
    rhs.push(format!("(2/3) f(<{phi}((A+B)/2)x,x>)"), 2.0 / 3.0 * eval_clamped(f, s[1])?);
    rhs.push(format!("(2/3) f(<{phi}((B+D)/2)x,x>)"), 2.0 / 3.0 * eval_clamped(f, s[0])?);
    rhs.push(format!("(2/3) f(<{phi}((A+D)/2)x,x>)"), 2.0 / 3.0 * eval_clamped(f, s[2])?);
    Ok((lhs, rhs, s))
}

/// Adds the six correction terms of the superquadratic Popoviciu claim.
fn popoviciu_corrections(phi: &str, rhs: &mut Side, ws: &[WeightedSpectrum], s: [f64; 3], f: &ScalarFunction) -> Result<()> {
    let (a, b, d) = (ws[0].mean(), ws[1].mean(), ws[2].mean());
    let third = 1.0 / 3.0;
    rhs.push(format!("(1/3) <{phi}(f(|A - <{phi}((B+D)/2)x,x> 1|))x,x>"), third * ws[0].expect_f_shifted_abs(f, s[0])?);
    rhs.push(format!("(1/3) f(|<{phi}((2A-B-D)/6)x,x>|)"), third * eval_clamped(f, ((2.0 * a - b - d) / 6.0).abs())?);
    rhs.push(format!("(1/3) <{phi}(f(|D - <{phi}((A+B)/2)x,x> 1|))x,x>"), third * ws[2].expect_f_shifted_abs(f, s[1])?);
    rhs.push(format!("(1/3) f(|<{phi}((2D-A-B)/6)x,x>|)"), third * eval_clamped(f, ((2.0 * d - a - b) / 6.0).abs())?);
    rhs.push(format!("(1/3) <{phi}(f(|B - <{phi}((A+D)/2)x,x> 1|))x,x>"), third * ws[1].expect_f_shifted_abs(f, s[2])?);
    rhs.push(format!("(1/3) f(|<{phi}((2B-A-D)/6)x,x>|)"), third * eval_clamped(f, ((2.0 * b - a - d) / 6.0).abs())?);
    Ok(())
}

fn superquadratic_popoviciu(claim: ClaimId, inst: &Instance, reversed: bool) -> Result<TermBreakdown> {
    let f = inst.function()?;
    let p = Prepared::new(inst, &ABD)?;
    let mut c = p.base_checks(&ABD, true);
    if reversed {
        c.flag("f subquadratic", f.flags().subquadratic);
    } else {
        c.flag("f superquadratic", f.flags().superquadratic);
    }
    let report = c.finish(claim)?;
    let ws = p.weighted()?;
    let (lhs, mut rhs, s) = popoviciu_core(p.label, &ws, f)?;
    popoviciu_corrections(p.label, &mut rhs, &ws, s, f)?;
    let b = TermBreakdown::new(claim, lhs, rhs, report);
    Ok(if reversed { b.reversed() } else { b })
}

/// THM1: operator Jensen inequality for super(sub)quadratic `f`.
pub fn evaluate_jensen_superquadratic(inst: &Instance) -> Result<TermBreakdown> {
    jensen_claim(ClaimId::Thm1, inst, false)
}

/// COR2: THM1 with the additional `f(0)` term.
pub fn evaluate_jensen_refined(inst: &Instance) -> Result<TermBreakdown> {
    jensen_claim(ClaimId::Cor2, inst, true)
}

/// COR5-JENSEN: COR2 over a map family.
pub fn evaluate_multimap_jensen(inst: &Instance) -> Result<TermBreakdown> {
    jensen_claim(ClaimId::Cor5Jensen, inst, true)
}

fn jensen_claim(claim: ClaimId, inst: &Instance, with_f0: bool) -> Result<TermBreakdown> {
    let f = inst.function()?;
    let p = Prepared::new(inst, &["A"])?;
    let mut c = p.base_checks(&["A"], true);
    let o = quadratic_orientation(&mut c, f);
    let report = c.finish(claim)?;
    let w = &p.weighted()?[0];
    Ok(orient(jensen_terms(claim, p.label, w, f, with_f0, report)?, o))
}

/// THM2.1: Popoviciu inequality with correction terms for superquadratic `f`.
pub fn evaluate_popoviciu_superquadratic(inst: &Instance) -> Result<TermBreakdown> {
    superquadratic_popoviciu(ClaimId::Thm21, inst, false)
}

/// COR1: the reversed THM2.1 form for subquadratic `f`.
pub fn evaluate_popoviciu_subquadratic(inst: &Instance) -> Result<TermBreakdown> {
    superquadratic_popoviciu(ClaimId::Cor1, inst, true)
}

/// COR5-POP: THM2.1 with `Φ(·)` replaced by `Σ_j Φ_j(·_j)`.
pub fn evaluate_multimap_popoviciu(inst: &Instance) -> Result<TermBreakdown> {
    superquadratic_popoviciu(ClaimId::Cor5Pop, inst, false)
}

/// Popoviciu without correction terms for PRP1, PRP3 and THM3, hypotheses chosen by `claim`.
pub fn evaluate_popoviciu_convex(claim: ClaimId, inst: &Instance) -> Result<TermBreakdown> {
    let f = inst.function()?;
    let p = Prepared::new(inst, &ABD)?;
    let (mut c, o) = match claim {
        ClaimId::Prp1 => {
            let mut c = p.base_checks(&ABD, true);
            c.flag("f superquadratic", f.flags().superquadratic);
            c.flag("f nonnegative", f.flags().nonnegative);
            (c, Orientation::Forward)
        }
        ClaimId::Prp3 => {
            let mut c = p.base_checks(&ABD, true);
            let o = convex_orientation(&mut c, "g", f);
            let g0 = if f.domain().contains(0.0, 0.0) { f.eval(0.0) } else { f64::NAN };
            c.add("g(0) = 0", g0.abs() <= 1e-12, Some(format!("g(0) = {g0}")));
            (c, o)
        }
        ClaimId::Thm3 => {
            let window = inst.interval.unwrap_or_else(|| f.domain());
            let mut c = p.base_checks(&ABD, false);
            c.add(format!("{window} within dom f"), f.domain().contains_interval(&window), Some(format!("dom f = {}", f.domain())));
            for (n, d) in ABD.iter().zip(&p.decs) {
                c.spectra_in(n, d, &window);
            }
            let o = convex_orientation(&mut c, "f", f);
            (c, o)
        }
        other => return Err(Error::MalformedInstance(format!("{other} is not a convex Popoviciu claim"))),
    };
    if claim != ClaimId::Thm3 {
        c.add("dom f contains [0, inf)", f.domain().contains_interval(&Interval::nonnegative()), None);
    }
    let report = c.finish(claim)?;
    let ws = p.weighted()?;
    let (lhs, rhs, _) = popoviciu_core(p.label, &ws, f)?;
    Ok(orient(TermBreakdown::new(claim, lhs, rhs, report), o))
}

/// PRP2: the convex Popoviciu shape applied to `f'`.
pub fn evaluate_popoviciu_derivative(inst: &Instance) -> Result<TermBreakdown> {
    let claim = ClaimId::Prp2;
    let f = inst.function()?;
    let df = f.derivative_function()?;
    let p = Prepared::new(inst, &ABD)?;
    let mut c = p.base_checks(&ABD, true);
    c.add(
        "f(0) = f'(0) = 0",
        f.vanishes_to_first_order_at_zero(1e-12),
        Some(format!("f(0) = {}, f'(0) = {:?}", f.eval(0.0), f.derivative(0.0))),
    );
    let o = convex_orientation(&mut c, "f'", &df);
    let report = c.finish(claim)?;
    let ws = p.weighted()?;
    let (lhs, rhs, _) = popoviciu_core(p.label, &ws, &df)?;
    let rename = |side: Side| Side(side.0.into_iter().map(|t| super::Term { name: t.name.replace("f(", "f'("), value: t.value }).collect());
    Ok(orient(TermBreakdown::new(claim, rename(lhs), rename(rhs), report), o))
}

/// Direction of the Bohr-type norm claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrDirection {
    Super,
    Sub,
}

/// BOHR-SUPER / BOHR-SUB: supremum form of COR2 with operator norms.
pub fn evaluate_bohr_norm(inst: &Instance, direction: BohrDirection) -> Result<TermBreakdown> {
    let claim = match direction {
        BohrDirection::Super => ClaimId::BohrSuper,
        BohrDirection::Sub => ClaimId::BohrSub,
    };
    let f = inst.function()?;
    let map = inst.single_map()?;
    let a = inst.single_operator("A")?;
    let dec = &decompose_slot(std::slice::from_ref(a), map.dim_h(), 1)?[0];
    let mut c = Checks::default();
    c.psd("A", std::slice::from_ref(dec));
    c.unital(&MapFamily::unchecked(vec![map.clone()]));
    match direction {
        BohrDirection::Super => c.flag("f superquadratic", f.flags().superquadratic),
        BohrDirection::Sub => c.flag("f subquadratic", f.flags().subquadratic),
    }
    let report = c.finish(claim)?;

    let na = operator_norm(&map.apply(a)?)?;
    let nfa = operator_norm(&map.apply(&apply_to_decomposition(f, dec, DOMAIN_TOL)?)?)?;
    let values: Vec<f64> = dec.eigenvalues.iter().map(|&l| eval_clamped(f, (l - na).abs())).collect::<Result<_>>()?;
    let shifted = HermitianMatrix::from_spectrum(&dec.eigenvectors, &values)?;
    let ncorr = operator_norm(&map.apply(&shifted)?)?;

    let mut diff = Side::default();
    diff.push("||Phi(f(A))||", nfa);
    diff.push("-f(||Phi(A)||)", -eval_clamped(f, na)?);
    diff.push("-f(0)", -f.eval(0.0));
    let mut corr = Side::default();
    corr.push("||Phi(f(|A - ||Phi(A)|| 1|))||", ncorr);
    Ok(match direction {
        BohrDirection::Super => TermBreakdown::new(claim, diff, corr, report),
        BohrDirection::Sub => TermBreakdown::new(claim, corr, diff, report),
    })
}

const ABC: [&str; 3] = ["A", "B", "C"];

/// HLAWKA-OP: `|⟨Φ(A+B+C)x,x⟩| + ⟨Φ(|A|+|B|+|C|)x,x⟩` against the three pairwise absolute values.
pub fn evaluate_hlawka_operator(inst: &Instance) -> Result<TermBreakdown> {
    let claim = ClaimId::HlawkaOp;
    let p = Prepared::new(inst, &ABC)?;
    let report = p.base_checks(&ABC, false).finish(claim)?;
    let ws = p.weighted()?;
    let phi = p.label;
    let (a, b, cc) = (ws[0].mean(), ws[1].mean(), ws[2].mean());
    let abs_sum: f64 = ws.iter().map(|w| w.expect(f64::abs)).sum();
    let mut lhs = Side::default();
    lhs.push(format!("|<{phi}(A+B+C)x,x>|"), (a + b + cc).abs());
    lhs.push(format!("<{phi}(|A|+|B|+|C|)x,x>"), abs_sum);
    let mut rhs = Side::default();
    rhs.push(format!("|<{phi}(A+C)x,x>|"), (a + cc).abs());
    rhs.push(format!("|<{phi}(B+C)x,x>|"), (b + cc).abs());
    rhs.push(format!("|<{phi}(A+B)x,x>|"), (a + b).abs());
    Ok(TermBreakdown::new(claim, lhs, rhs, report))
}

/// Images `Φ(A), Φ(B), Φ(C)` and the decompositions of `A, B, C`.
fn norm_inputs(inst: &Instance) -> Result<(crate::maps::PositiveUnitalMap, Vec<SpectralDecomposition>, Vec<HermitianMatrix>)> {
    let map = inst.single_map()?.clone();
    let mut decs = Vec::new();
    let mut images = Vec::new();
    for n in ABC {
        let a = inst.single_operator(n)?;
        decs.push(decompose_slot(std::slice::from_ref(a), map.dim_h(), 1)?.remove(0));
        images.push(map.apply(a)?);
    }
    Ok((map, decs, images))
}

fn norm_of(terms: &[(f64, &HermitianMatrix)]) -> Result<f64> {
    operator_norm(&HermitianMatrix::linear_combination(terms)?)
}

/// HLAWKA-NORM: supremum form of HLAWKA-OP.
pub fn evaluate_hlawka_norm(inst: &Instance) -> Result<TermBreakdown> {
    let claim = ClaimId::HlawkaNorm;
    let (map, decs, im) = norm_inputs(inst)?;
    let mut c = Checks::default();
    c.unital(&MapFamily::unchecked(vec![map.clone()]));
    let report = c.finish(claim)?;
    let mut abs_sum = HermitianMatrix::zeros(map.dim_k());
    for d in &decs {
        abs_sum = abs_sum.checked_add(&map.apply(&d.reassemble(f64::abs))?)?;
    }
    let mut lhs = Side::default();
    lhs.push("||Phi(A+B+C)||", norm_of(&[(1.0, &im[0]), (1.0, &im[1]), (1.0, &im[2])])?);
    lhs.push("||Phi(|A|+|B|+|C|)||", operator_norm(&abs_sum)?);
    let mut rhs = Side::default();
    rhs.push("||Phi(A+C)||", norm_of(&[(1.0, &im[0]), (1.0, &im[2])])?);
    rhs.push("||Phi(B+C)||", norm_of(&[(1.0, &im[1]), (1.0, &im[2])])?);
    rhs.push("||Phi(A+B)||", norm_of(&[(1.0, &im[0]), (1.0, &im[1])])?);
    Ok(TermBreakdown::new(claim, lhs, rhs, report))
}

/// POP-NORM: Popoviciu form with operator norms for convex increasing `g`.
pub fn evaluate_popoviciu_norm(inst: &Instance) -> Result<TermBreakdown> {
    let claim = ClaimId::PopNorm;
    let g = inst.function()?;
    let (map, decs, im) = norm_inputs(inst)?;
    let mut c = Checks::default();
    for (n, d) in ABC.iter().zip(&decs) {
        c.spectra_in(n, std::slice::from_ref(d), &g.domain());
    }
    c.flag("Phi positive", true);
    c.flag("g convex", g.flags().convex);
    c.flag("g increasing", g.flags().increasing);
    let report = c.finish(claim)?;
    let mut g_sum = HermitianMatrix::zeros(map.dim_k());
    for d in &decs {
        g_sum = g_sum.checked_add(&map.apply(&apply_to_decomposition(g, d, DOMAIN_TOL)?)?)?;
    }
    let third = 1.0 / 3.0;
    let mut lhs = Side::default();
    lhs.push("g(||Phi((A+B+C)/3)||)", eval_clamped(g, norm_of(&[(third, &im[0]), (third, &im[1]), (third, &im[2])])?)?);
    lhs.push("||Phi((g(A)+g(B)+g(C))/3)||", operator_norm(&g_sum.scaled(third))?);
    let mut rhs = Side::default();
    for (label, i, j) in [("A+C", 0, 2), ("B+C", 1, 2), ("A+B", 0, 1)] {
        let n = norm_of(&[(0.5, &im[i]), (0.5, &im[j])])?;
        rhs.push(format!("(2/3) g(||Phi(({label})/2)||)"), 2.0 / 3.0 * eval_clamped(g, n)?);
    }
    Ok(TermBreakdown::new(claim, lhs, rhs, report))
}

fn scalar_claim(claim: ClaimId, inst: &Instance) -> Result<TermBreakdown> {
    let (x, y, z) = (inst.scalar("A")?, inst.scalar("B")?, inst.scalar("D")?);
    let mut c = Checks::default();
    match claim {
        ClaimId::HlawkaScalar => {
            let report = c.finish(claim)?;
            let mut b = scalar_hlawka(x, y, z);
            b.hypothesis_report = report;
            Ok(b)
        }
        ClaimId::Eq15 => {
            let f = inst.function()?;
            let dom = f.domain();
            c.add(format!("x, y, z in {dom}"), [x, y, z].iter().all(|&t| dom.contains(t, 0.0)), None);
            let o = convex_orientation(&mut c, "f", f);
            let report = c.finish(claim)?;
            let mut b = scalar_popoviciu(x, y, z, f)?;
            b.hypothesis_report = report;
            Ok(orient(b, o))
        }
        ClaimId::GgPop => {
            let f = inst.function()?;
            c.add("x, y, z > 0", x > 0.0 && y > 0.0 && z > 0.0, None);
            c.flag("f GG-convex", f.flags().gg_convex);
            let report = c.finish(claim)?;
            let mut b = scalar_gg_popoviciu(x, y, z, f)?;
            b.hypothesis_report = report;
            Ok(b)
        }
        other => Err(Error::MalformedInstance(format!("{other} is not a scalar claim"))),
    }
}

/// Evaluates `claim` on `inst`. Fails with `HypothesisViolation` when the claim's hypotheses are unmet.
pub fn evaluate(claim: ClaimId, inst: &Instance) -> Result<TermBreakdown> {
    let b = match claim {
        ClaimId::Eq15 | ClaimId::HlawkaScalar | ClaimId::GgPop => scalar_claim(claim, inst)?,
        ClaimId::Thm1 => evaluate_jensen_superquadratic(inst)?,
        ClaimId::Thm21 => evaluate_popoviciu_superquadratic(inst)?,
        ClaimId::Cor1 => evaluate_popoviciu_subquadratic(inst)?,
        ClaimId::Cor2 => evaluate_jensen_refined(inst)?,
        ClaimId::BohrSuper => evaluate_bohr_norm(inst, BohrDirection::Super)?,
        ClaimId::BohrSub => evaluate_bohr_norm(inst, BohrDirection::Sub)?,
        ClaimId::Cor5Pop => evaluate_multimap_popoviciu(inst)?,
        ClaimId::Cor5Jensen => evaluate_multimap_jensen(inst)?,
        ClaimId::Prp1 | ClaimId::Prp3 | ClaimId::Thm3 => evaluate_popoviciu_convex(claim, inst)?,
        ClaimId::Prp2 => evaluate_popoviciu_derivative(inst)?,
        ClaimId::HlawkaOp => evaluate_hlawka_operator(inst)?,
        ClaimId::HlawkaNorm => evaluate_hlawka_norm(inst)?,
        ClaimId::PopNorm => evaluate_popoviciu_norm(inst)?,
    };
    Ok(b.with_claim(claim))
}
