//! Seeded campaigns over a claim that holds and one that fails.

use opineq::claims::ClaimId;
use opineq::harness::{run_campaign, CampaignConfig};

fn main() -> opineq::Result<()> {
    for claim in [ClaimId::Thm1, ClaimId::Thm21, ClaimId::PopNorm] {
        let report = run_campaign(&CampaignConfig { trials: 500, ..CampaignConfig::for_claim(claim) })?;
        println!("{}", report.summary_line());
        for bin in report.histogram.bins.iter().filter(|b| b.count > 0) {
            println!("  {:<16} {}", bin.label, bin.count);
        }
    }
    Ok(())
}
