//! Scalar three-point inequalities.

use super::registry::ClaimId;
use super::{Side, TermBreakdown};
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;

fn eval_in_domain(f: &ScalarFunction, t: f64) -> Result<f64> {
    let dom = f.domain();
    if !dom.contains(t, 0.0) {
        return Err(Error::DomainViolation { function: f.name().to_string(), value: t, lo: dom.lo(), hi: dom.hi() });
    }
    Ok(f.eval(t))
}

/// Convex-orientation Popoviciu breakdown:
/// `f((x+y+z)/3) + (f(x)+f(y)+f(z))/3` against `(2/3)[f((x+z)/2) + f((y+z)/2) + f((x+y)/2)]`.
pub fn scalar_popoviciu(x: f64, y: f64, z: f64, f: &ScalarFunction) -> Result<TermBreakdown> {
    let v = |t: f64| eval_in_domain(f, t);
    let mut lhs = Side::default();
    lhs.push("f((x+y+z)/3)", v((x + y + z) / 3.0)?);
    lhs.push("(f(x)+f(y)+f(z))/3", (v(x)? + v(y)? + v(z)?) / 3.0);
    let mut rhs = Side::default();
    rhs.push("(2/3) f((x+z)/2)", 2.0 / 3.0 * v((x + z) / 2.0)?);
    rhs.push("(2/3) f((y+z)/2)", 2.0 / 3.0 * v((y + z) / 2.0)?);
    rhs.push("(2/3) f((x+y)/2)", 2.0 / 3.0 * v((x + y) / 2.0)?);
    Ok(TermBreakdown::new(ClaimId::Eq15, lhs, rhs, Vec::new()))
}

/// `|x|+|y|+|z|+|x+y+z|` against `|x+z|+|z+y|+|x+y|`.
pub fn scalar_hlawka(x: f64, y: f64, z: f64) -> TermBreakdown {
    let mut lhs = Side::default();
    lhs.push("|x|", x.abs());
    lhs.push("|y|", y.abs());
    lhs.push("|z|", z.abs());
    lhs.push("|x+y+z|", (x + y + z).abs());
    let mut rhs = Side::default();
    rhs.push("|x+z|", (x + z).abs());
    rhs.push("|z+y|", (z + y).abs());
    rhs.push("|x+y|", (x + y).abs());
    TermBreakdown::new(ClaimId::HlawkaScalar, lhs, rhs, Vec::new())
}

/// Geometric-mean Popoviciu inequality in log form.
pub fn scalar_gg_popoviciu(x: f64, y: f64, z: f64, f: &ScalarFunction) -> Result<TermBreakdown> {
    for (name, v) in [("x", x), ("y", y), ("z", z)] {
        if !(v > 0.0) {
            return Err(Error::DomainViolation { function: format!("GG-POP point {name}"), value: v, lo: 0.0, hi: f64::INFINITY });
        }
    }
    let logf = |t: f64| -> Result<f64> {
        let v = eval_in_domain(f, t)?;
        if !(v > 0.0) {
            return Err(Error::NonPositiveFunction { function: f.name().to_string(), at: t });
        }
        Ok(v.ln())
    };
    let mut lhs = Side::default();
    lhs.push("3 log f(cbrt(xyz))", 3.0 * logf((x * y * z).cbrt())?);
    lhs.push("log f(x)", logf(x)?);
    lhs.push("log f(y)", logf(y)?);
    lhs.push("log f(z)", logf(z)?);
    let mut rhs = Side::default();
    rhs.push("2 log f(sqrt(xz))", 2.0 * logf((x * z).sqrt())?);
    rhs.push("2 log f(sqrt(yz))", 2.0 * logf((y * z).sqrt())?);
    rhs.push("2 log f(sqrt(xy))", 2.0 * logf((x * y).sqrt())?);
    Ok(TermBreakdown::new(ClaimId::GgPop, lhs, rhs, Vec::new()))
}
