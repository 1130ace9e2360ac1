//! Built-in unital maps and a random Kraus map acting on one operator.

use opineq::harness::{gen_map, trial_rng, MapKind};
use opineq::linalg::{spectral_decompose, HermitianMatrix};
use opineq::maps::PositiveUnitalMap;

fn main() -> opineq::Result<()> {
    let a = HermitianMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 3.0]]);
    let mut rng = trial_rng(42, 0);
    let maps = [
        ("identity", PositiveUnitalMap::identity(2)),
        ("pinching", PositiveUnitalMap::pinching(2)),
        ("trace_average", PositiveUnitalMap::make_trace_average(2)),
        ("random_kraus(3)", gen_map(&mut rng, MapKind::RandomKraus(3), 2, 2)?),
    ];
    for (name, m) in &maps {
        let image = m.apply(&a)?;
        println!(
            "{name:<16} unit defect {:.1e}  spectrum of Phi(A) {:?}",
            m.unit_defect(),
            spectral_decompose(&image)?.eigenvalues
        );
    }
    Ok(())
}
