//! Refines the worst campaign trial of HLAWKA-NORM into a sharper witness.

use opineq::claims::ClaimId;
use opineq::harness::{refine_counterexample, run_campaign, CampaignConfig};

fn main() -> opineq::Result<()> {
    let claim = ClaimId::HlawkaNorm;
    let report = run_campaign(&CampaignConfig { trials: 300, ..CampaignConfig::for_claim(claim) })?;
    println!("{}", report.summary_line());
    let Some(worst) = report.worst.first() else {
        return Ok(());
    };
    let r = refine_counterexample(claim, &worst.instance, 2000, 1)?;
    println!(
        "refined trial {}: gap {:.6} -> {:.6} ({} of {} moves accepted)",
        worst.trial, r.start_gap, r.final_gap, r.accepted, r.evaluations
    );
    println!("{}", r.instance.to_json_pretty()?);
    Ok(())
}
