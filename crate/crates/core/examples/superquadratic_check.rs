//! Grid check of the superquadratic inequality for catalog functions.

use opineq::functions::{builtin, check_superquadratic_grid, linear_grid, superquadratic_residual};

fn main() -> opineq::Result<()> {
    let grid = linear_grid(0.0, 5.0, 50);
    for spec in ["pow:2", "pow:3", "expc", "pow:1.5"] {
        let f = builtin(spec)?;
        println!("{}", check_superquadratic_grid(&f, &grid, &grid, 1e-12)?.summary());
    }
    let r = superquadratic_residual(&builtin("pow:1.5")?, 1.0, 4.0);
    println!("pow:1.5 residual at (x, t) = (1, 4): {r:.12}");
    Ok(())
}
