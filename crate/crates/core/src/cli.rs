//! The `opineq` command line: `check`, `trace`, `campaign`, `search`, `list-claims`.
//!
//! Exit codes: 0 the claim held on every evaluated input, 1 a violation was found,
//! 2 usage, configuration or input errors, 3 the instance misses a hypothesis.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::claims::{evaluate, list_claims, trace_popoviciu, ClaimId, Instance, TermBreakdown, Threshold};
use crate::error::{Error, Result};
use crate::functions::builtin;
use crate::harness::{refine_counterexample, run_campaign, CampaignConfig, MapKind};
use crate::linalg::Interval;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "opineq", version, about = "Evaluate, trace and stress-test operator inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a claim term by term on one instance.
    Check(CheckArgs),
    /// Replay the superquadratic Popoviciu argument step by step.
    Trace(TraceArgs),
    /// Run a seeded randomized campaign.
    Campaign(CampaignArgs),
    /// Refine an instance towards a lower gap.
    Search(SearchArgs),
    /// Print the claim registry.
    ListClaims(ListArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Claim id; defaults to the `claim` field of the instance.
    #[arg(long)]
    claim: Option<String>,
    #[arg(long)]
    instance: PathBuf,
    /// Compact JSON output.
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[arg(long)]
    instance: PathBuf,
    /// JSON instead of the text table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CampaignArgs {
    #[arg(long)]
    claim: Option<String>,
    /// Base configuration; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Comma-separated map kinds, e.g. `identity,random_kraus(3)`.
    #[arg(long = "map", value_delimiter = ',')]
    maps: Option<Vec<String>>,
    /// Comma-separated function specs, e.g. `pow:2,abs`.
    #[arg(long = "f", value_delimiter = ',')]
    functions: Option<Vec<String>>,
    /// Spectrum window `LO,HI`.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Absolute part of the violation threshold.
    #[arg(long)]
    threshold_abs: Option<f64>,
    /// Relative part of the violation threshold.
    #[arg(long)]
    threshold_rel: Option<f64>,
    /// Report JSON destination.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-trial CSV destination.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    claim: Option<String>,
    #[arg(long)]
    start: PathBuf,
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Destination of the refined instance.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ListArgs {
    #[arg(long)]
    json: bool,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that stopped a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolation { .. } => EXIT_HYPOTHESIS,
        _ => EXIT_USAGE,
    }
}

fn io<T>(r: std::io::Result<T>) -> Result<T> {
    r.map_err(Error::from)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    io(std::fs::write(path, text))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check(a) => cmd_check(a, out),
        Command::Trace(a) => cmd_trace(a, out),
        Command::Campaign(a) => cmd_campaign(a, out, err),
        Command::Search(a) => cmd_search(a, out),
        Command::ListClaims(a) => cmd_list_claims(a, out),
    }
}

fn resolve_claim(flag: Option<&str>, inst: Option<&Instance>) -> Result<ClaimId> {
    match (flag, inst.and_then(|i| i.claim)) {
        (Some(s), _) => s.parse(),
        (None, Some(c)) => Ok(c),
        (None, None) => Err(Error::InvalidConfig("no claim given: pass --claim or set `claim` in the instance".into())),
    }
}

fn verdict_code(violated: bool) -> i32 {
    if violated {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

/// Aligned text rendering of a breakdown.
pub fn breakdown_table(b: &TermBreakdown, threshold: &Threshold) -> String {
    let width = b.lhs_terms.iter().chain(&b.rhs_terms).map(|t| t.name.chars().count()).max().unwrap_or(4).max(4);
    let mut s = format!("claim {}\n", b.claim_id);
    for (side, terms) in [("lhs", &b.lhs_terms), ("rhs", &b.rhs_terms)] {
        for t in terms {
            s.push_str(&format!("  {side}  {:<width$}  {:>24.16e}\n", t.name, t.value));
        }
    }
    s.push_str(&format!("lhs = {:.16e}\nrhs = {:.16e}\ngap = {:.16e}\n", b.lhs, b.rhs, b.gap));
    for h in &b.hypothesis_report {
        let mark = if h.passed { "ok" } else { "FAILED" };
        match &h.detail {
            Some(d) => s.push_str(&format!("  [{mark}] {} ({d})\n", h.name)),
            None => s.push_str(&format!("  [{mark}] {}\n", h.name)),
        }
    }
    let status = if b.is_violation(threshold) { "VIOLATED" } else { "holds" };
    s.push_str(&format!("verdict: {status}\n"));
    s
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = Instance::load(&a.instance)?;
    let claim = resolve_claim(a.claim.as_deref(), Some(&inst))?;
    let b = evaluate(claim, &inst)?;
    let threshold = Threshold::default();
    let text = if a.json {
        serde_json::to_string(&b)? + "\n"
    } else if a.pretty {
        serde_json::to_string_pretty(&b)? + "\n"
    } else {
        breakdown_table(&b, &threshold)
    };
    io(out.write_all(text.as_bytes()))?;
    Ok(verdict_code(b.is_violation(&threshold)))
}

fn cmd_trace(a: TraceArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = Instance::load(&a.instance)?;
    let t = trace_popoviciu(&inst)?;
    let text = if a.json { serde_json::to_string_pretty(&t)? + "\n" } else { t.to_table() };
    io(out.write_all(text.as_bytes()))?;
    Ok(verdict_code(Threshold::default().is_violation(t.gap, t.steps.last().map_or(1.0, |s| s.scale()))))
}

/// Parses `LO,HI`.
pub fn parse_interval(s: &str) -> Result<Interval> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(Error::InvalidConfig(format!("interval `{s}` must be LO,HI")));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| Error::InvalidConfig(format!("`{t}` in interval is not a number")));
    Interval::new(num(lo)?, num(hi)?).map_err(|e| Error::InvalidConfig(e.to_string()))
}

fn campaign_config(a: &CampaignArgs) -> Result<CampaignConfig> {
    let base = match &a.config {
        Some(p) => Some(serde_json::from_str::<CampaignConfig>(&io(std::fs::read_to_string(p))?)?),
        None => None,
    };
    let claim = match (&a.claim, &base) {
        (Some(s), _) => s.parse::<ClaimId>()?,
        (None, Some(b)) => b.claim,
        (None, None) => return Err(Error::InvalidConfig("--claim is required".into())),
    };
    let mut cfg = match base {
        Some(b) if b.claim == claim => b,
        _ => CampaignConfig::for_claim(claim),
    };
    if let Some(n) = a.trials {
        cfg.trials = n;
    }
    if let Some(d) = &a.dims {
        cfg.dims = d.clone();
    }
    if let Some(m) = &a.maps {
        cfg.maps = m.iter().map(|s| s.parse::<MapKind>()).collect::<Result<_>>()?;
    }
    if let Some(fs) = &a.functions {
        cfg.functions = fs.iter().map(|s| builtin(s)).collect::<Result<_>>()?;
    }
    if let Some(i) = &a.interval {
        cfg.interval = Some(parse_interval(i)?);
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(t) = a.threshold_abs {
        cfg.threshold.abs = t;
    }
    if let Some(t) = a.threshold_rel {
        cfg.threshold.rel = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_campaign(a: CampaignArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = campaign_config(&a)?;
    let report = run_campaign(&cfg)?;
    if let Some(p) = &a.out {
        write_file(p, &(report.to_json_pretty()? + "\n"))?;
    }
    if let Some(p) = &a.csv {
        write_file(p, &report.to_csv())?;
    }
    io(writeln!(out, "{}", report.summary_line()))?;
    io(writeln!(err, "wall time {:.3} s", report.wall_time.as_secs_f64()))?;
    Ok(verdict_code(report.verdict.violations > 0))
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let start = Instance::load(&a.start)?;
    let claim = resolve_claim(a.claim.as_deref(), Some(&start))?;
    let r = refine_counterexample(claim, &start, a.budget, a.seed)?;
    let refined = r.instance.clone().with_claim(claim);
    if let Some(p) = &a.out {
        refined.save(p)?;
    }
    io(writeln!(
        out,
        "claim={} start_gap={:e} final_gap={:e} accepted={} evaluations={}",
        claim, r.start_gap, r.final_gap, r.accepted, r.evaluations
    ))?;
    let b = evaluate(claim, &refined)?;
    Ok(verdict_code(b.is_violation(&Threshold::default())))
}

fn cmd_list_claims(a: ListArgs, out: &mut dyn Write) -> Result<i32> {
    let claims = list_claims();
    let text = if a.json {
        serde_json::to_string_pretty(claims)? + "\n"
    } else {
        let w = claims.iter().map(|c| c.id.as_str().len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in claims {
            s.push_str(&format!("{:<w$}  {}  [{}]\n", c.id.as_str(), c.statement, c.hypotheses));
        }
        s
    };
    io(out.write_all(text.as_bytes()))?;
    Ok(EXIT_OK)
}
