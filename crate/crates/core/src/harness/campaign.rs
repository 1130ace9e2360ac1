//! Seeded campaigns: per-claim instance builders, parallel evaluation and reports.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{gen_family, gen_hermitian, gen_map, gen_unit_vector, trial_rng, uniform, MapKind};
use crate::claims::{evaluate, ClaimId, Instance, Threshold};
use crate::error::{Error, Result};
use crate::functions::{builtin, ScalarFunction};
use crate::linalg::{HermitianMatrix, Interval};

/// Environment variable that fixes the worker count.
pub const THREADS_ENV: &str = "OPINEQ_THREADS";
/// Number of worst trials kept with their full instances.
pub const TOP_WORST: usize = 5;
/// Largest operator dimension a campaign accepts.
pub const MAX_DIM: usize = 16;

/// What to draw and how to judge it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub claim: ClaimId,
    pub trials: usize,
    /// Trial `i` uses `dims[i % dims.len()]`.
    pub dims: Vec<usize>,
    /// Cycled after the dimensions.
    pub maps: Vec<MapKind>,
    /// Cycled after dimensions and maps; empty for claims without a function.
    pub functions: Vec<ScalarFunction>,
    /// Spectrum window; `None` picks the claim default per function.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    pub seed: u64,
    #[serde(default)]
    pub threshold: Threshold,
    /// Fixed instances evaluated as the first trials.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inject: Vec<Instance>,
}

fn fns(specs: &[&str]) -> Vec<ScalarFunction> {
    specs.iter().map(|s| builtin(s).expect("catalog entry")).collect()
}

const SINGLE_MAPS: [MapKind; 5] =
    [MapKind::Identity, MapKind::Unitary, MapKind::Pinching, MapKind::TraceAverage, MapKind::RandomKraus(3)];

impl CampaignConfig {
    /// Claim defaults: dims {1,2,3,4} (dim 1 for scalar claims), every single-map kind
    /// (two- and three-member families for family claims) and functions meeting the hypotheses.
    pub fn for_claim(claim: ClaimId) -> Self {
        let shape = claim.info().shape;
        let dims = if shape.scalar { vec![1] } else { vec![1, 2, 3, 4] };
        let maps = if shape.scalar {
            vec![MapKind::Identity]
        } else if shape.family {
            vec![MapKind::Family(2), MapKind::Family(3)]
        } else {
            SINGLE_MAPS.to_vec()
        };
        let functions = match claim {
            ClaimId::Eq15 => fns(&["pow:2", "pow:3", "abs", "exp"]),
            ClaimId::HlawkaScalar | ClaimId::HlawkaOp | ClaimId::HlawkaNorm => vec![],
            ClaimId::GgPop => fns(&["pow:2", "pow:3", "exp"]),
            ClaimId::Thm1 | ClaimId::Cor2 | ClaimId::BohrSuper | ClaimId::Cor5Jensen => fns(&["pow:2", "pow:3", "expc", "sqmc:1"]),
            ClaimId::Thm21 | ClaimId::Cor5Pop => fns(&["pow:2", "pow:3", "expc"]),
            ClaimId::Cor1 | ClaimId::BohrSub => fns(&["pow:1.5", "pow:2", "relupow:2"]),
            ClaimId::Prp1 => fns(&["pow:2", "pow:3", "relupow:2", "expc"]),
            ClaimId::Prp2 => fns(&["pow:2", "pow:3", "pow:4", "expc"]),
            ClaimId::Prp3 => fns(&["pow:2", "abs", "relupow:2"]),
            ClaimId::Thm3 => fns(&["pow:2", "abs", "relupow:2", "exp"]),
            ClaimId::PopNorm => fns(&["pow:2", "pow:3", "expc", "exp"]),
        };
        Self { claim, trials: 1000, dims, maps, functions, interval: None, seed: 42, threshold: Threshold::default(), inject: vec![] }
    }

    pub fn validate(&self) -> Result<()> {
        let shape = self.claim.info().shape;
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > MAX_DIM) {
            return bad(format!("dims must be non-empty with entries in 1..={MAX_DIM}"));
        }
        if shape.scalar && self.dims.iter().any(|&d| d != 1) {
            return bad(format!("{} is a scalar claim; dims must be [1]", self.claim));
        }
        if self.maps.is_empty() {
            return bad("at least one map kind is required".into());
        }
        if !shape.scalar {
            if let Some(k) = self.maps.iter().find(|k| k.is_family() != shape.family) {
                let want = if shape.family { "family(k)" } else { "a single-map kind" };
                return bad(format!("{} needs {want}, got {k}", self.claim));
            }
        }
        if shape.needs_function && self.functions.is_empty() {
            return bad(format!("{} needs at least one function", self.claim));
        }
        if !shape.needs_function && !self.functions.is_empty() {
            return bad(format!("{} takes no function", self.claim));
        }
        for f in &self.functions {
            self.window(Some(f))?;
        }
        if self.functions.is_empty() {
            self.window(None)?;
        }
        Ok(())
    }

    /// Spectrum window for trials that use `f`.
    pub fn window(&self, f: Option<&ScalarFunction>) -> Result<Interval> {
        if let Some(w) = self.interval {
            if !w.is_bounded() {
                return Err(Error::InvalidConfig(format!("interval {w} must be bounded")));
            }
            return Ok(w);
        }
        let clip = Interval::new(-3.0, 3.0)?;
        let base = match self.claim {
            ClaimId::GgPop => Interval::new(0.1, 4.0)?,
            ClaimId::HlawkaScalar | ClaimId::HlawkaOp | ClaimId::HlawkaNorm => clip,
            ClaimId::Eq15 | ClaimId::Thm3 | ClaimId::PopNorm => clip,
            _ => Interval::new(0.0, 3.0)?,
        };
        let dom = f.map_or(Interval::real_line(), |f| f.domain());
        base.intersect(&dom)
            .ok_or_else(|| Error::InvalidConfig(format!("window {base} misses dom {}", f.map_or("", |f| f.name()))))
    }
}

fn operator_names(claim: ClaimId) -> &'static [&'static str] {
    match (claim.info().shape.operators, claim) {
        (1, _) => &["A"],
        (_, ClaimId::HlawkaOp | ClaimId::HlawkaNorm | ClaimId::PopNorm) => &["A", "B", "C"],
        _ => &["A", "B", "D"],
    }
}

/// Draws the `index`-th generated instance (injected instances excluded) from its own stream.
pub fn generate_instance(cfg: &CampaignConfig, index: usize) -> Result<Instance> {
    let shape = cfg.claim.info().shape;
    let (nd, nm) = (cfg.dims.len(), cfg.maps.len());
    let dim = cfg.dims[index % nd];
    let kind = cfg.maps[(index / nd) % nm];
    let f = (!cfg.functions.is_empty()).then(|| &cfg.functions[(index / (nd * nm)) % cfg.functions.len()]);
    let window = cfg.window(f)?;
    let mut rng = trial_rng(cfg.seed, index as u64);

    let mut inst = Instance::empty().with_claim(cfg.claim).with_interval(window);
    if let Some(f) = f {
        inst = inst.with_function(f.clone());
    }
    if shape.scalar {
        for name in operator_names(cfg.claim) {
            let v = uniform(&mut rng, window.lo(), window.hi());
            inst = inst.with_operator(name, HermitianMatrix::from_real_diag(&[v]));
        }
        return Ok(inst);
    }

    let dim_k = kind.dim_k(dim);
    if let MapKind::Family(k) = kind {
        for name in operator_names(cfg.claim) {
            let list = (0..k).map(|_| gen_hermitian(&mut rng, dim, &window)).collect::<Result<Vec<_>>>()?;
            inst = inst.with_operator_list(name, list);
        }
        inst = inst.with_family(gen_family(&mut rng, k, dim, dim_k)?);
    } else {
        for name in operator_names(cfg.claim) {
            inst = inst.with_operator(name, gen_hermitian(&mut rng, dim, &window)?);
        }
        inst = inst.with_map(gen_map(&mut rng, kind, dim, dim_k)?);
    }
    if shape.needs_vector {
        inst = inst.with_vector(gen_unit_vector(&mut rng, dim_k));
    }
    Ok(inst)
}

/// Instance evaluated as trial `trial`: injected ones first, then generated draws.
pub fn instance_for_trial(cfg: &CampaignConfig, trial: usize) -> Result<Instance> {
    match cfg.inject.get(trial) {
        Some(inst) => Ok(inst.clone()),
        None => generate_instance(cfg, trial - cfg.inject.len()),
    }
}

/// Per-trial outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// `None` when the hypotheses failed and the trial was skipped.
    pub gap: Option<f64>,
    pub scale: Option<f64>,
    pub hypothesis_ok: bool,
    pub violation: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_hypotheses: Option<Vec<String>>,
}

/// A trial kept with its full instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Offender {
    pub trial: usize,
    pub gap: f64,
    pub instance: Instance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim_id: ClaimId,
    /// Evaluated trials: configured trials minus skipped ones.
    pub trials: usize,
    pub violations: usize,
    pub worst_gap: Option<f64>,
    /// Worst instance, present when at least one trial violates the claim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Instance>,
    pub skipped_hypothesis_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub label: String,
    pub count: usize,
}

/// Upper edges of the gap bins below the zero band, and lower edges above it.
const NEG_EDGES: [f64; 4] = [-1.0, -1e-2, -1e-4, -1e-8];
const POS_EDGES: [f64; 4] = [1e-8, 1e-4, 1e-2, 1.0];

/// Fixed gap bins: four negative decades, the band `(−1e−8, 1e−8)`, four positive decades.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bins: Vec<HistogramBin>,
}

impl Histogram {
    fn labels() -> Vec<String> {
        vec![
            "(-inf, -1]".into(),
            "(-1, -1e-2]".into(),
            "(-1e-2, -1e-4]".into(),
            "(-1e-4, -1e-8]".into(),
            "(-1e-8, 1e-8)".into(),
            "[1e-8, 1e-4)".into(),
            "[1e-4, 1e-2)".into(),
            "[1e-2, 1)".into(),
            "[1, inf)".into(),
        ]
    }

    pub fn bin_index(gap: f64) -> usize {
        if let Some(i) = NEG_EDGES.iter().position(|&e| gap <= e) {
            return i;
        }
        if gap < POS_EDGES[0] {
            return 4;
        }
        5 + POS_EDGES[1..].iter().position(|&e| gap < e).unwrap_or(3)
    }

    pub fn from_gaps(gaps: impl IntoIterator<Item = f64>) -> Self {
        let mut bins: Vec<HistogramBin> = Self::labels().into_iter().map(|label| HistogramBin { label, count: 0 }).collect();
        for g in gaps {
            bins[Self::bin_index(g)].count += 1;
        }
        Self { bins }
    }

    pub fn total(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub verdict: Verdict,
    pub histogram: Histogram,
    pub min_gap: Option<f64>,
    pub median_gap: Option<f64>,
    /// Up to five lowest gaps, ascending, ties by trial index.
    pub worst: Vec<Offender>,
    pub records: Vec<TrialRecord>,
    /// Kept out of the JSON so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CampaignReport {
    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per trial: `trial,gap,hypothesis_ok`; skipped trials leave `gap` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,gap,hypothesis_ok\n");
        for r in &self.records {
            let gap = r.gap.map_or(String::new(), |g| format!("{g:e}"));
            out.push_str(&format!("{},{},{}\n", r.trial, gap, r.hypothesis_ok));
        }
        out
    }

    /// `claim=… trials=… violations=… worst_gap=…`.
    pub fn summary_line(&self) -> String {
        let worst = self.verdict.worst_gap.map_or("none".to_string(), |g| format!("{g:e}"));
        format!(
            "claim={} trials={} violations={} worst_gap={}",
            self.verdict.claim_id, self.verdict.trials, self.verdict.violations, worst
        )
    }
}

/// Worker count from `OPINEQ_THREADS`, else the machine parallelism.
pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidConfig(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    run_campaign_with_threads(cfg, thread_count()?)
}

fn run_trial(cfg: &CampaignConfig, trial: usize) -> Result<TrialRecord> {
    let inst = instance_for_trial(cfg, trial)?;
    match evaluate(cfg.claim, &inst) {
        Ok(b) => Ok(TrialRecord {
            trial,
            gap: Some(b.gap),
            scale: Some(b.scale()),
            hypothesis_ok: true,
            violation: b.is_violation(&cfg.threshold),
            failed_hypotheses: None,
        }),
        Err(Error::HypothesisViolation { failed, .. }) => Ok(TrialRecord {
            trial,
            gap: None,
            scale: None,
            hypothesis_ok: false,
            violation: false,
            failed_hypotheses: Some(failed),
        }),
        Err(e) => Err(e),
    }
}

/// Runs every trial on a pool of `threads` workers; the report does not depend on `threads`.
pub fn run_campaign_with_threads(cfg: &CampaignConfig, threads: usize) -> Result<CampaignReport> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let records: Vec<TrialRecord> =
        pool.install(|| (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect::<Result<Vec<_>>>())?;

    let mut evaluated: Vec<(usize, f64)> = records.iter().filter_map(|r| r.gap.map(|g| (r.trial, g))).collect();
    evaluated.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let skipped = records.iter().filter(|r| !r.hypothesis_ok).count();
    let violations = records.iter().filter(|r| r.violation).count();
    let worst = evaluated
        .iter()
        .take(TOP_WORST)
        .map(|&(trial, gap)| Ok(Offender { trial, gap, instance: instance_for_trial(cfg, trial)? }))
        .collect::<Result<Vec<_>>>()?;
    let median_gap = (!evaluated.is_empty()).then(|| {
        let n = evaluated.len();
        if n % 2 == 1 {
            evaluated[n / 2].1
        } else {
            0.5 * (evaluated[n / 2 - 1].1 + evaluated[n / 2].1)
        }
    });
    let verdict = Verdict {
        claim_id: cfg.claim,
        trials: cfg.trials - skipped,
        violations,
        worst_gap: evaluated.first().map(|w| w.1),
        witness: if violations > 0 { worst.first().map(|o| o.instance.clone()) } else { None },
        skipped_hypothesis_failures: skipped,
    };
    Ok(CampaignReport {
        config: cfg.clone(),
        verdict,
        histogram: Histogram::from_gaps(evaluated.iter().map(|e| e.1)),
        min_gap: evaluated.first().map(|w| w.1),
        median_gap,
        worst,
        records,
        wall_time: start.elapsed(),
    })
}

/// Draws a random feasible starting instance for a claim from its default generator.
pub fn random_start(claim: ClaimId, seed: u64) -> Result<Instance> {
    let mut cfg = CampaignConfig::for_claim(claim);
    cfg.seed = seed;
    let idx = trial_rng(seed, u64::MAX).random_range(0..1000);
    generate_instance(&cfg, idx)
}
