//! The scalar instance on which THM2.1 fails, next to claims that hold there.

use opineq::claims::{evaluate, ClaimId, Instance};
use opineq::functions::builtin;
use opineq::maps::PositiveUnitalMap;

fn main() -> opineq::Result<()> {
    let inst = Instance::scalar3(1.0, 0.0, 0.0, Some(builtin("pow:2")?))
        .with_map(PositiveUnitalMap::identity(1))
        .with_real_vector(&[1.0]);
    for claim in [ClaimId::Thm21, ClaimId::Prp1, ClaimId::Cor1] {
        let b = evaluate(claim, &inst)?;
        println!("{:<7} lhs {:>10.6} rhs {:>10.6} gap {:>10.6}", claim.as_str(), b.lhs, b.rhs, b.gap);
    }
    let b = evaluate(ClaimId::Thm21, &inst)?;
    for t in &b.rhs_terms {
        println!("  rhs term {:<48} {:.6}", t.name, t.value);
    }
    Ok(())
}
