//! The ten acceptance criteria, one pass/fail line each.

mod common;

use std::time::{Duration, Instant};

use common::*;
use opineq::claims::{evaluate, scalar_popoviciu, trace_popoviciu, ClaimId, Instance, SOUND_STEPS};
use opineq::functions::{builtin, check_superquadratic_grid, linear_grid, superquadratic_residual, FunctionFlags, ScalarFunction};
use opineq::harness::{
    gen_hermitian, gen_map, gen_unit_vector, instance_for_trial, run_campaign_with_threads, trial_rng, uniform,
    CampaignConfig, CampaignReport, MapKind,
};
use opineq::linalg::{apply_function, spectral_decompose, Interval};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("runtime {:.2} s exceeds {:.0} s", t.as_secs_f64(), limit.as_secs_f64()))
}

fn f(spec: &str) -> ScalarFunction {
    builtin(spec).unwrap()
}

fn interval(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn campaign(cfg: &CampaignConfig) -> Result<CampaignReport, String> {
    run_campaign_with_threads(cfg, 4).map_err(|e| e.to_string())
}

fn real_line_power(name: &str, p: i32) -> ScalarFunction {
    ScalarFunction::custom(name, Interval::real_line(), move |t| t.powi(p), None, FunctionFlags::default()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (sq, cube) = (real_line_power("square", 2), real_line_power("cube", 3));
    let window = interval(-5.0, 5.0);
    let (mut worst_poly, mut worst_spec) = (0.0f64, 0.0f64);
    for i in 0..500u64 {
        let mut rng = trial_rng(1, i);
        let dim = 2 + (i as usize % 7);
        let a = gen_hermitian(&mut rng, dim, &window).map_err(|e| e.to_string())?;
        let ad = dense(&a);
        let a2 = mul(&ad, &ad);
        let a3 = mul(&a2, &ad);
        let lambda = spectral_decompose(&a).map_err(|e| e.to_string())?.eigenvalues;
        for (g, oracle, p) in [(&sq, &a2, 2), (&cube, &a3, 3)] {
            let fa = apply_function(g, &a).map_err(|e| e.to_string())?;
            worst_poly = worst_poly.max(max_abs_diff(&dense(&fa), oracle) / max_abs(oracle).max(1.0));
            let mut mapped: Vec<f64> = lambda.iter().map(|l| l.powi(p)).collect();
            mapped.sort_by(f64::total_cmp);
            let got = spectral_decompose(&fa).map_err(|e| e.to_string())?.eigenvalues;
            let scale = mapped.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (x, y) in got.iter().zip(&mapped) {
                worst_spec = worst_spec.max((x - y).abs() / scale);
            }
        }
    }
    ensure(worst_poly <= 1e-8, || format!("polynomial mismatch {worst_poly:e}"))?;
    ensure(worst_spec <= 1e-9, || format!("spectral mapping mismatch {worst_spec:e}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("500 matrices; poly rel err {worst_poly:.1e}, spectral mapping err {worst_spec:.1e}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let grid = linear_grid(0.0, 5.0, 50);
    let sq = check_superquadratic_grid(&f("pow:2"), &grid, &grid, 0.0).map_err(|e| e.to_string())?;
    ensure(sq.max_residual.abs() <= 1e-12 && sq.min_residual.abs() <= 1e-12, || format!("pow:2 residual range [{}, {}]", sq.min_residual, sq.max_residual))?;
    for spec in ["pow:3", "expc"] {
        let r = check_superquadratic_grid(&f(spec), &grid, &grid, 1e-12).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.summary())?;
    }
    let p15 = check_superquadratic_grid(&f("pow:1.5"), &grid, &grid, 1e-12).map_err(|e| e.to_string())?;
    ensure(!p15.passed(), || "pow:1.5 shows no violation".into())?;
    // f(4) − f(1) − f'(1)(4 − 1) − f(3) with f = t^1.5
    let oracle = 8.0 - (1.0 + 1.5 * 3.0 + 3f64.powf(1.5));
    ensure(close(oracle, 8.0 - (1.0 + 4.5 + 27f64.sqrt()), 1e-12), || "oracle self-check".into())?;
    let got = superquadratic_residual(&f("pow:1.5"), 1.0, 4.0);
    ensure(close(got, oracle, 1e-9), || format!("residual(1,4) = {got}, oracle {oracle}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("pow:1.5 violations {}, residual(1,4) = {got:.12}", p15.violations.len()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cfg = CampaignConfig {
        trials: 1000,
        dims: vec![1, 2, 4, 6],
        maps: vec![MapKind::Identity, MapKind::Unitary, MapKind::Pinching, MapKind::TraceAverage, MapKind::RandomKraus(3)],
        functions: ["pow:2", "pow:3", "pow:4", "expc"].map(f).to_vec(),
        seed: 42,
        ..CampaignConfig::for_claim(ClaimId::Thm1)
    };
    let r = campaign(&cfg)?;
    ensure(r.verdict.violations == 0, || format!("{} violations", r.verdict.violations))?;
    ensure(r.verdict.trials == 1000, || format!("{} skipped", r.verdict.skipped_hypothesis_failures))?;
    within(start, Duration::from_secs(30))?;
    Ok(r.summary_line())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let runs = [
        (ClaimId::Prp1, vec!["pow:2", "relupow:2"], interval(0.0, 3.0)),
        (ClaimId::Prp3, vec!["pow:2", "abs", "relupow:2"], interval(0.0, 3.0)),
        (ClaimId::Thm3, vec!["pow:2"], interval(0.0, 5.0)),
        (ClaimId::Thm3, vec!["abs", "relupow:2"], interval(-3.0, 3.0)),
    ];
    let mut dim1 = 0;
    let mut lines = Vec::new();
    for (claim, specs, window) in runs {
        let cfg = CampaignConfig {
            trials: 1000,
            functions: specs.iter().map(|s| f(s)).collect(),
            interval: Some(window),
            seed: 42,
            ..CampaignConfig::for_claim(claim)
        };
        let r = campaign(&cfg)?;
        ensure(r.verdict.violations == 0, || format!("{claim} on {window}: {} violations", r.verdict.violations))?;
        ensure(r.verdict.skipped_hypothesis_failures == 0, || format!("{claim}: hypothesis skips"))?;
        for rec in &r.records {
            let inst = instance_for_trial(&cfg, rec.trial).map_err(|e| e.to_string())?;
            let a = inst.single_operator("A").map_err(|e| e.to_string())?;
            if a.dim() != 1 {
                continue;
            }
            let (x, y, z) = (inst.scalar("A").unwrap(), inst.scalar("B").unwrap(), inst.scalar("D").unwrap());
            let g = inst.function().unwrap();
            let lib = scalar_popoviciu(x, y, z, g).map_err(|e| e.to_string())?.gap;
            let oracle = popoviciu_gap(|t| g.eval(t), x, y, z);
            let gap = rec.gap.unwrap();
            ensure(close(gap, lib, 1e-12) && close(gap, oracle, 1e-12), || {
                format!("{claim} trial {}: gap {gap}, scalar {lib}, oracle {oracle}", rec.trial)
            })?;
            dim1 += 1;
        }
        lines.push(format!("{claim}[{}]@{window}", specs.join(",")));
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("0 violations in {}; {dim1} dim-1 trials match the scalar form", lines.join(" ")))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let cfg = CampaignConfig { trials: 1000, seed: 42, ..CampaignConfig::for_claim(ClaimId::HlawkaOp) };
    let r = campaign(&cfg)?;
    ensure(r.verdict.violations == 0, || format!("{} violations", r.verdict.violations))?;
    let psd = CampaignConfig { interval: Some(interval(0.0, 3.0)), ..cfg };
    let p = campaign(&psd)?;
    let worst = p.records.iter().filter_map(|r| r.gap).fold(0.0f64, |m, g| m.max(g.abs()));
    ensure(p.verdict.trials == 1000 && worst <= 1e-9, || format!("PSD gaps up to {worst:e}"))?;
    within(start, Duration::from_secs(20))?;
    Ok(format!("{}; PSD max |gap| {worst:.1e}", r.summary_line()))
}

fn criterion_6() -> Outcome {
    let sq = |t: f64| t * t;
    let (ol, or) = thm21_sides(sq, 1.0, 0.0, 0.0);
    ensure(close(ol, 4.0 / 9.0, 1e-15) && close(or, 8.0 / 9.0, 1e-15), || format!("oracle sides {ol}, {or}"))?;
    let path = fixture("witness_thm21.json");
    let inst = Instance::load(&path).map_err(|e| e.to_string())?;
    let b = evaluate(ClaimId::Thm21, &inst).map_err(|e| e.to_string())?;
    ensure(close(b.lhs, ol, 1e-12) && close(b.rhs, or, 1e-12) && close(b.gap, ol - or, 1e-12), || {
        format!("evaluator lhs {} rhs {} gap {}", b.lhs, b.rhs, b.gap)
    })?;
    let code = opineq(&["check", "--claim", "THM2.1", "--instance", path.to_str().unwrap()], None).status.code();
    ensure(code == Some(1), || format!("check exit {code:?}"))?;

    let t = trace_popoviciu(&inst).map_err(|e| e.to_string())?;
    for label in SOUND_STEPS {
        let s = t.step(label).ok_or(format!("missing step {label}"))?;
        ensure(s.slack.abs() <= 1e-12, || format!("{label} slack {}", s.slack))?;
    }
    // C_s = f'(s) = 2s at s = ((b+d)/2, (a+b)/2, (a+d)/2); t-vector (a-(b+d)/2, d-(a+b)/2, b-(a+d)/2)
    let (a, bb, d) = (1.0, 0.0, 0.0);
    let s = [(bb + d) / 2.0, (a + bb) / 2.0, (a + d) / 2.0];
    let c: Vec<f64> = s.iter().map(|v| 2.0 * v).collect();
    let c_min = c.iter().copied().fold(f64::INFINITY, f64::min);
    let tv = [a - (bb + d) / 2.0, d - (a + bb) / 2.0, bb - (a + d) / 2.0];
    let drop_oracle: f64 = (0..3).map(|i| (c[i] - c_min) * tv[i]).sum::<f64>() / 3.0;
    ensure(close(drop_oracle, -1.0 / 3.0, 1e-15), || format!("oracle drop {drop_oracle}"))?;
    let drop = t.step("minC-2.8").and_then(|s| s.dropped).ok_or("no minC-2.8 drop")?;
    ensure(close(drop, drop_oracle, 1e-12), || format!("minC-2.8 drop {drop}"))?;
    Ok(format!("lhs {:.15} rhs {:.15} gap {:.15}; minC-2.8 drop {drop:.15}; check exit 1", b.lhs, b.rhs, b.gap))
}

fn criterion_7() -> Outcome {
    // A = diag(0,1), f = t^2, Phi = id: ||A^2|| = 1, f(||A||) = 1, f(0) = 0,
    // |A - ||A|| 1| = diag(1,0) so ||f(|A - ||A|| 1|)|| = 1
    let diag = [0.0f64, 1.0];
    let norm = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let na = norm(&diag);
    let lhs = norm(&diag.map(|x| x * x)) - na * na - 0.0;
    let rhs = norm(&diag.map(|x| (x - na).abs().powi(2)));
    let oracle = lhs - rhs;
    ensure(close(oracle, -1.0, 1e-15), || format!("oracle {oracle}"))?;
    let path = fixture("witness_bohr.json");
    let inst = Instance::load(&path).map_err(|e| e.to_string())?;
    let b = evaluate(ClaimId::BohrSuper, &inst).map_err(|e| e.to_string())?;
    ensure(close(b.gap, oracle, 1e-12), || format!("gap {}", b.gap))?;
    let code = opineq(&["check", "--claim", "BOHR-SUPER", "--instance", path.to_str().unwrap()], None).status.code();
    ensure(code == Some(1), || format!("check exit {code:?}"))?;
    Ok(format!("gap {:.15}; check exit 1", b.gap))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let cfg = CampaignConfig { trials: 1000, seed: 42, ..CampaignConfig::for_claim(ClaimId::Thm21) };
    let (mut worst_rel, mut worst_t) = (0.0f64, 0.0f64);
    let mut drops_negative = 0;
    for i in 0..cfg.trials {
        let inst = instance_for_trial(&cfg, i).map_err(|e| e.to_string())?;
        let t = trace_popoviciu(&inst).map_err(|e| format!("trial {i}: {e}"))?;
        for label in SOUND_STEPS {
            let s = t.step(label).unwrap();
            worst_rel = worst_rel.min(s.slack / s.scale());
        }
        worst_t = worst_t.max(t.t_sum_halves.abs()).max(t.t_sum_sixths.abs());
        if t.steps.iter().any(|s| s.dropped.is_some_and(|d| d < -1e-9)) {
            drops_negative += 1;
        }
    }
    ensure(worst_rel >= -1e-9, || format!("sound-step slack/scale down to {worst_rel:e}"))?;
    ensure(worst_t <= 1e-10, || format!("t-vector sum up to {worst_t:e}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("min slack/scale {worst_rel:.1e}, max |t sum| {worst_t:.1e}; {drops_negative} traces with a negative min-C drop"))
}

fn criterion_9() -> Outcome {
    let mut rng = trial_rng(9, 0);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let p: [f64; 3] = std::array::from_fn(|_| uniform(&mut rng, 0.0, 3.0));
        let h: [f64; 3] = std::array::from_fn(|_| uniform(&mut rng, -3.0, 3.0));
        let map = gen_map(&mut rng, MapKind::RandomKraus(3), 1, 1).map_err(|e| e.to_string())?;
        let x = gen_unit_vector(&mut rng, 1);
        for spec in ["pow:2", "pow:3"] {
            let g = f(spec);
            let e = if spec == "pow:2" { 2 } else { 3 };
            let pw = move |t: f64| t.powi(e);
            let inst = Instance::scalar3(p[0], p[1], p[2], Some(g)).with_map(map.clone()).with_vector(x.clone());
            let thm = evaluate(ClaimId::Thm21, &inst).map_err(|e| e.to_string())?;
            let (ol, or) = thm21_sides(pw, p[0], p[1], p[2]);
            let prp = evaluate(ClaimId::Prp1, &inst).map_err(|e| e.to_string())?;
            worst = worst.max((thm.lhs - ol).abs()).max((thm.rhs - or).abs()).max((prp.gap - popoviciu_gap(pw, p[0], p[1], p[2])).abs());
        }
        let hl = Instance::scalar3(h[0], h[1], h[2], None).with_map(map).with_vector(x);
        let b = evaluate(ClaimId::HlawkaOp, &hl).map_err(|e| e.to_string())?;
        worst = worst.max((b.gap - hlawka_gap(h[0], h[1], h[2])).abs());
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("200 triples; max deviation {worst:.1e}"))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for claim in ["THM1", "THM2.1", "COR5-POP"] {
        let mut bytes = Vec::new();
        for threads in [1, 8] {
            let out = dir.path().join(format!("{claim}-{threads}.json"));
            let o = opineq(
                &["campaign", "--claim", claim, "--trials", "1000", "--seed", "42", "--out", out.to_str().unwrap()],
                Some(threads),
            );
            ensure(matches!(o.status.code(), Some(0 | 1)), || format!("{claim}: exit {:?}", o.status.code()))?;
            bytes.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure(bytes[0] == bytes[1], || format!("{claim}: reports differ between 1 and 8 threads"))?;
        summary.push(format!("{claim} {} bytes", bytes[0].len()));
    }
    Ok(format!("identical reports: {}", summary.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("functional calculus", criterion_1),
        ("superquadratic definition", criterion_2),
        ("operator Jensen campaign", criterion_3),
        ("convex Popoviciu campaigns", criterion_4),
        ("operator Hlawka campaign", criterion_5),
        ("THM2.1 witness", criterion_6),
        ("BOHR-SUPER witness", criterion_7),
        ("proof-step soundness", criterion_8),
        ("dimension-1 oracle equivalence", criterion_9),
        ("determinism across thread counts", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.2} s)", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.2} s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
