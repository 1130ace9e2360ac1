//! Step-by-step trace of the superquadratic Popoviciu argument.

use opineq::claims::{trace_popoviciu, Instance};
use opineq::functions::builtin;
use opineq::maps::PositiveUnitalMap;

fn main() -> opineq::Result<()> {
    let inst = Instance::scalar3(1.0, 0.0, 0.0, Some(builtin("pow:2")?))
        .with_map(PositiveUnitalMap::identity(1))
        .with_real_vector(&[1.0]);
    let t = trace_popoviciu(&inst)?;
    print!("{}", t.to_table());
    println!("decomposition residual {:.1e}", t.decomposition_residual());
    Ok(())
}
