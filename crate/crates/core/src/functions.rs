//! Scalar function catalog: evaluation, support constants, class flags and
//! grid checks of the support-line and superquadratic definitions.
//!
//! Functions are addressed by short spec strings (`pow:3`, `abs`, `expc`, ...)
//! so instances and campaign configs can name them in JSON.

use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Interval;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Class membership of a scalar function on its domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFlags {
    pub superquadratic: bool,
    pub subquadratic: bool,
    pub convex: bool,
    pub concave: bool,
    pub nonnegative: bool,
    pub increasing: bool,
    pub gg_convex: bool,
}

#[derive(Clone)]
enum Kind {
    Pow(f64),
    ScaledPow { coef: f64, p: f64 },
    SquareMinusC(f64),
    Abs,
    Sign,
    Identity,
    ExpCentered,
    ExpMinusOne,
    ReluPower(f64),
    ScaledReluPow { coef: f64, p: f64 },
    Exp,
    Custom { eval: RealFn, derivative: Option<RealFn> },
}

/// Real function with a domain, class flags and a support constant `x ↦ C_x`.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    domain: Interval,
    kind: Kind,
    flags: FunctionFlags,
    support_override: Option<RealFn>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("flags", &self.flags)
            .finish()
    }
}

/// Functions compare by name and domain; catalog names are canonical spec strings.
impl PartialEq for ScalarFunction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.domain == other.domain
    }
}

fn power(t: f64, p: f64) -> f64 {
    if p == 0.0 {
        return 1.0;
    }
    if t == 0.0 {
        return 0.0;
    }
    if p.fract() == 0.0 && p.abs() <= 64.0 {
        t.powi(p as i32)
    } else {
        t.powf(p)
    }
}

impl ScalarFunction {
    /// User-supplied function. Flags are taken on trust except that a
    /// superquadratic flag requires `f(0) ≤ 0`.
    pub fn custom(
        name: impl Into<String>,
        domain: Interval,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: Option<RealFn>,
        flags: FunctionFlags,
    ) -> Result<Self> {
        let f = Self {
            name: name.into(),
            domain,
            kind: Kind::Custom { eval: Arc::new(eval), derivative },
            flags,
            support_override: None,
        };
        if flags.superquadratic && domain.contains(0.0, 0.0) && f.eval(0.0) > 0.0 {
            return Err(Error::BadParameter {
                function: f.name.clone(),
                reason: "a superquadratic function must satisfy f(0) <= 0".into(),
            });
        }
        Ok(f)
    }

    /// Replaces the support constant used by the superquadratic and
    /// support-line checks (and by the proof tracer).
    pub fn with_support_constant(mut self, c: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.support_override = Some(Arc::new(c));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn flags(&self) -> FunctionFlags {
        self.flags
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Pow(p) => power(t, *p),
            Kind::ScaledPow { coef, p } => coef * power(t, *p),
            Kind::SquareMinusC(c) => t * t - c,
            Kind::Abs => t.abs(),
            Kind::Sign => sign(t),
            Kind::Identity => t,
            Kind::ExpCentered => t.exp_m1() - t,
            Kind::ExpMinusOne => t.exp_m1(),
            Kind::ReluPower(p) => power(t.max(0.0), *p),
            Kind::ScaledReluPow { coef, p } => coef * power(t.max(0.0), *p),
            Kind::Exp => t.exp(),
            Kind::Custom { eval, .. } => eval(t),
        }
    }

    /// Closed-form derivative (a subgradient at kinks), when known.
    pub fn derivative(&self, t: f64) -> Option<f64> {
        let d = match &self.kind {
            Kind::Pow(p) => p * power(t, p - 1.0),
            Kind::ScaledPow { coef, p } => coef * p * power(t, p - 1.0),
            Kind::SquareMinusC(_) => 2.0 * t,
            Kind::Abs => sign(t),
            Kind::Sign => 0.0,
            Kind::Identity => 1.0,
            Kind::ExpCentered => t.exp_m1(),
            Kind::ExpMinusOne | Kind::Exp => t.exp(),
            Kind::ReluPower(p) => p * power(t.max(0.0), p - 1.0),
            Kind::ScaledReluPow { coef, p } => coef * p * power(t.max(0.0), p - 1.0),
            Kind::Custom { derivative, .. } => return derivative.as_ref().map(|d| d(t)),
        };
        Some(d)
    }

    pub fn has_derivative(&self) -> bool {
        !matches!(&self.kind, Kind::Custom { derivative: None, .. })
    }

    /// Difference quotient with step `1e-6 · max(1, |x|)`; one-sided at a finite domain end.
    pub fn numeric_derivative(&self, x: f64) -> f64 {
        let h = 1e-6 * x.abs().max(1.0);
        let dom = self.domain;
        if x - h < dom.lo() {
            (self.eval(x + h) - self.eval(x)) / h
        } else if x + h > dom.hi() {
            (self.eval(x) - self.eval(x - h)) / h
        } else {
            (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
        }
    }

    /// `C_x`: the override if set, else `f'(x)`, else a difference quotient.
    pub fn support_constant(&self, x: f64) -> f64 {
        if let Some(c) = &self.support_override {
            return c(x);
        }
        self.derivative(x).unwrap_or_else(|| self.numeric_derivative(x))
    }

    /// `f'` as a catalog function, carrying its own class flags.
    pub fn derivative_function(&self) -> Result<ScalarFunction> {
        let nonneg_dom = Interval::nonnegative();
        let mk = |name: String, domain: Interval, kind: Kind, flags: FunctionFlags| ScalarFunction {
            name,
            domain,
            kind,
            flags,
            support_override: None,
        };
        let d = match &self.kind {
            Kind::Pow(p) => scaled_pow(*p, p - 1.0, self.domain),
            Kind::ScaledPow { coef, p } => scaled_pow(coef * p, p - 1.0, self.domain),
            Kind::SquareMinusC(_) => scaled_pow(2.0, 1.0, self.domain),
            Kind::Identity => scaled_pow(1.0, 0.0, self.domain),
            Kind::ExpCentered => mk(
                format!("d({})", self.name),
                nonneg_dom,
                Kind::ExpMinusOne,
                FunctionFlags { convex: true, nonnegative: true, increasing: true, ..Default::default() },
            ),
            Kind::ExpMinusOne | Kind::Exp => mk(
                format!("d({})", self.name),
                self.domain,
                Kind::Exp,
                FunctionFlags { convex: true, nonnegative: true, increasing: true, gg_convex: true, ..Default::default() },
            ),
            Kind::ReluPower(p) => {
                let q = p - 1.0;
                mk(
                    format!("d({})", self.name),
                    self.domain,
                    Kind::ScaledReluPow { coef: *p, p: q },
                    FunctionFlags { convex: q >= 1.0, nonnegative: true, increasing: true, ..Default::default() },
                )
            }
            Kind::ScaledReluPow { coef, p } => {
                let q = p - 1.0;
                mk(
                    format!("d({})", self.name),
                    self.domain,
                    Kind::ScaledReluPow { coef: coef * p, p: q },
                    FunctionFlags { convex: q >= 1.0, nonnegative: *coef >= 0.0, increasing: *coef >= 0.0, ..Default::default() },
                )
            }
            Kind::Abs => mk(format!("d({})", self.name), self.domain, Kind::Sign, FunctionFlags { increasing: true, ..Default::default() }),
            Kind::Sign => scaled_pow(0.0, 0.0, self.domain),
            Kind::Custom { derivative: Some(d), .. } => {
                let d = d.clone();
                mk(
                    format!("d({})", self.name),
                    self.domain,
                    Kind::Custom { eval: d, derivative: None },
                    FunctionFlags::default(),
                )
            }
            Kind::Custom { derivative: None, .. } => return Err(Error::MissingDerivative(self.name.clone())),
        };
        Ok(d)
    }

    /// `f(0) = 0` and `f'(0) = 0` within `tol`.
    pub fn vanishes_to_first_order_at_zero(&self, tol: f64) -> bool {
        self.domain.contains(0.0, 0.0)
            && self.eval(0.0).abs() <= tol
            && self.derivative(0.0).is_some_and(|d| d.abs() <= tol)
    }
}

fn sign(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `coef · t^q`, flags derived from `coef ≥ 0` and `q`.
fn scaled_pow(coef: f64, q: f64, domain: Interval) -> ScalarFunction {
    let pos = coef >= 0.0;
    let affine = q == 0.0 || q == 1.0;
    let flags = FunctionFlags {
        convex: affine || (pos && q >= 1.0) || (!pos && (0.0..=1.0).contains(&q)),
        concave: affine || (pos && (0.0..=1.0).contains(&q)) || (!pos && q >= 1.0),
        nonnegative: pos,
        increasing: pos && q >= 0.0,
        ..Default::default()
    };
    ScalarFunction {
        name: format!("{coef}*pow:{q}"),
        domain,
        kind: Kind::ScaledPow { coef, p: q },
        flags,
        support_override: None,
    }
}

/// Looks up a catalog entry by spec string.
///
/// | spec        | f(t)              | domain   |
/// |-------------|-------------------|----------|
/// | `pow:p`     | `t^p`, `p > 0`    | `[0, ∞)` |
/// | `sqmc:c`    | `t² − c`, `c ≥ 0` | `[0, ∞)` |
/// | `abs`       | `|t|`             | ℝ        |
/// | `id`        | `t`               | ℝ        |
/// | `expc`      | `eᵗ − t − 1`      | `[0, ∞)` |
/// | `relupow:p` | `max(t,0)^p`, `p ≥ 2` | ℝ    |
/// | `exp`       | `eᵗ`              | ℝ        |
pub fn builtin(spec: &str) -> Result<ScalarFunction> {
    let spec = spec.trim();
    let (head, param) = match spec.split_once(':') {
        Some((h, p)) => (h, Some(p)),
        None => (spec, None),
    };
    let parse = |p: Option<&str>| -> Result<f64> {
        let raw = p.ok_or_else(|| Error::BadParameter { function: head.into(), reason: "missing parameter".into() })?;
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| Error::BadParameter { function: head.into(), reason: format!("`{raw}` is not a number") })?;
        if !v.is_finite() {
            return Err(Error::BadParameter { function: head.into(), reason: "parameter must be finite".into() });
        }
        Ok(v)
    };
    let no_param = |p: Option<&str>| -> Result<()> {
        match p {
            Some(_) => Err(Error::BadParameter { function: head.into(), reason: "takes no parameter".into() }),
            None => Ok(()),
        }
    };
    let nonneg = Interval::nonnegative();
    let (name, domain, kind, flags) = match head {
        "pow" => {
            let p = parse(param)?;
            if p <= 0.0 {
                return Err(Error::BadParameter { function: "pow".into(), reason: format!("exponent {p} must be positive") });
            }
            let flags = FunctionFlags {
                superquadratic: p >= 2.0,
                subquadratic: p <= 2.0,
                convex: p >= 1.0,
                concave: p <= 1.0,
                nonnegative: true,
                increasing: true,
                gg_convex: true,
            };
            (format!("pow:{p}"), nonneg, Kind::Pow(p), flags)
        }
        "sqmc" => {
            let c = parse(param)?;
            if c < 0.0 {
                return Err(Error::BadParameter { function: "sqmc".into(), reason: format!("offset {c} must be >= 0") });
            }
            let flags = FunctionFlags {
                superquadratic: true,
                subquadratic: c == 0.0,
                convex: true,
                nonnegative: c == 0.0,
                increasing: true,
                ..Default::default()
            };
            (format!("sqmc:{c}"), nonneg, Kind::SquareMinusC(c), flags)
        }
        "abs" => {
            no_param(param)?;
            ("abs".to_string(), Interval::real_line(), Kind::Abs, FunctionFlags { convex: true, nonnegative: true, ..Default::default() })
        }
        "id" => {
            no_param(param)?;
            let flags = FunctionFlags { convex: true, concave: true, increasing: true, ..Default::default() };
            ("id".to_string(), Interval::real_line(), Kind::Identity, flags)
        }
        "expc" => {
            no_param(param)?;
            let flags = FunctionFlags { superquadratic: true, convex: true, nonnegative: true, increasing: true, ..Default::default() };
            ("expc".to_string(), nonneg, Kind::ExpCentered, flags)
        }
        "relupow" => {
            let p = parse(param)?;
            if p < 2.0 {
                return Err(Error::BadParameter { function: "relupow".into(), reason: format!("exponent {p} must be >= 2") });
            }
            // superquadratic refers to the restriction to [0, ∞), where it equals t^p
            let flags = FunctionFlags {
                superquadratic: true,
                subquadratic: p == 2.0,
                convex: true,
                nonnegative: true,
                increasing: true,
                ..Default::default()
            };
            (format!("relupow:{p}"), Interval::real_line(), Kind::ReluPower(p), flags)
        }
        "exp" => {
            no_param(param)?;
            let flags = FunctionFlags { convex: true, nonnegative: true, increasing: true, gg_convex: true, ..Default::default() };
            ("exp".to_string(), Interval::real_line(), Kind::Exp, flags)
        }
        _ => return Err(Error::UnknownFunction(spec.to_string())),
    };
    let f = ScalarFunction { name, domain, kind, flags, support_override: None };
    // f(0) ≤ 0 for every superquadratic entry
    assert!(!f.flags.superquadratic || f.eval(0.0) <= 0.0, "catalog entry {} breaks f(0) <= 0", f.name);
    Ok(f)
}

/// All parameter-free entries plus representative powers; used by listings and tests.
pub fn catalog_samples() -> Vec<ScalarFunction> {
    ["pow:1.5", "pow:2", "pow:3", "pow:4", "sqmc:1", "abs", "id", "expc", "relupow:2", "exp"]
        .iter()
        .map(|s| builtin(s).expect("catalog sample"))
        .collect()
}

impl Serialize for ScalarFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl<'de> Deserialize<'de> for ScalarFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = String::deserialize(d)?;
        builtin(&spec).map_err(D::Error::custom)
    }
}

/// One grid point where a definition check failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: f64,
    pub t: f64,
    pub residual: f64,
}

/// Outcome of a grid check. An empty violation list means "no violation found
/// on the grid", which is evidence and not a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefinitionCheckReport {
    pub function: String,
    pub grid: String,
    pub points_checked: usize,
    pub violations: Vec<Violation>,
    pub max_residual: f64,
    pub min_residual: f64,
}

impl DefinitionCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: no violation found on grid {} ({} points)", self.function, self.grid, self.points_checked)
        } else {
            format!(
                "{}: {} violation(s) on grid {}, worst residual {:.6e}",
                self.function,
                self.violations.len(),
                self.grid,
                self.min_residual
            )
        }
    }
}

pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` log-spaced points from `lo` to `hi`, both positive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo, "log grid needs 0 < lo <= hi");
    linear_grid(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

fn describe(xs: &[f64], ts: &[f64]) -> String {
    let span = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        format!("{}pts[{lo}, {hi}]", v.len())
    };
    format!("x:{} t:{}", span(xs), span(ts))
}

fn run_grid(
    f: &ScalarFunction,
    xs: &[f64],
    ts: &[f64],
    tol_def: f64,
    residual: impl Fn(f64, f64) -> f64,
) -> Result<DefinitionCheckReport> {
    let dom = f.domain();
    if let Some(&bad) = xs.iter().chain(ts).find(|v| !dom.contains(**v, 0.0)) {
        return Err(Error::DomainViolation { function: f.name().into(), value: bad, lo: dom.lo(), hi: dom.hi() });
    }
    let mut violations = Vec::new();
    let mut max_residual = f64::NEG_INFINITY;
    let mut min_residual = f64::INFINITY;
    for &x in xs {
        for &t in ts {
            let r = residual(x, t);
            max_residual = max_residual.max(r);
            min_residual = min_residual.min(r);
            if r < -tol_def {
                violations.push(Violation { x, t, residual: r });
            }
        }
    }
    Ok(DefinitionCheckReport {
        function: f.name().to_string(),
        grid: describe(xs, ts),
        points_checked: xs.len() * ts.len(),
        violations,
        max_residual,
        min_residual,
    })
}

/// Residual of the superquadratic inequality
/// `f(t) − f(x) − C_x (t − x) − f(|t − x|)` over the grid.
pub fn check_superquadratic_grid(f: &ScalarFunction, xs: &[f64], ts: &[f64], tol_def: f64) -> Result<DefinitionCheckReport> {
    let dom = f.domain();
    if !dom.contains(0.0, 0.0) {
        return Err(Error::DomainViolation { function: f.name().into(), value: 0.0, lo: dom.lo(), hi: dom.hi() });
    }
    run_grid(f, xs, ts, tol_def, |x, t| superquadratic_residual(f, x, t))
}

pub fn superquadratic_residual(f: &ScalarFunction, x: f64, t: f64) -> f64 {
    f.eval(t) - f.eval(x) - f.support_constant(x) * (t - x) - f.eval((t - x).abs())
}

/// Residual of the support-line inequality `f(t) − f(x) − C_x (t − x)` over the grid.
pub fn check_convex_support(f: &ScalarFunction, xs: &[f64], ts: &[f64], tol_def: f64) -> Result<DefinitionCheckReport> {
    run_grid(f, xs, ts, tol_def, |x, t| f.eval(t) - f.eval(x) - f.support_constant(x) * (t - x))
}
