use std::borrow::Cow;
use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::registry::ClaimId;
use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::linalg::{Complex64, HermitianMatrix, Interval};
use crate::maps::{MapFamily, PositiveUnitalMap};

/// One named operator: a single matrix, or one matrix per family member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSlot {
    Single(HermitianMatrix),
    List(Vec<HermitianMatrix>),
}

impl OperatorSlot {
    pub fn as_slice(&self) -> &[HermitianMatrix] {
        match self {
            OperatorSlot::Single(a) => std::slice::from_ref(a),
            OperatorSlot::List(v) => v,
        }
    }

    pub fn as_mut_slice(&mut self) -> &mut [HermitianMatrix] {
        match self {
            OperatorSlot::Single(a) => std::slice::from_mut(a),
            OperatorSlot::List(v) => v,
        }
    }
}

/// Everything a claim is evaluated on.
///
/// JSON form:
/// `{"claim": "THM2.1", "operators": {"A": M, "B": M, "D": M}, "map": {...} | "family": [...],
///   "x": [[re, im], ...], "f": "pow:2", "interval": [lo, hi]}`.
/// Scalar claims read `A`, `B`, `D` as 1x1 matrices and need no map or vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimId>,
    pub operators: BTreeMap<String, OperatorSlot>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<PositiveUnitalMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<MapFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<ScalarFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
}

impl Instance {
    pub fn empty() -> Self {
        Self { claim: None, operators: BTreeMap::new(), map: None, family: None, x: None, f: None, interval: None }
    }

    /// Three real numbers stored as 1x1 operators `A`, `B`, `D`.
    pub fn scalar3(x: f64, y: f64, z: f64, f: Option<ScalarFunction>) -> Self {
        Self::empty()
            .with_operator("A", HermitianMatrix::from_real_diag(&[x]))
            .with_operator("B", HermitianMatrix::from_real_diag(&[y]))
            .with_operator("D", HermitianMatrix::from_real_diag(&[z]))
            .with_function_opt(f)
    }

    pub fn with_claim(mut self, claim: ClaimId) -> Self {
        self.claim = Some(claim);
        self
    }

    pub fn with_operator(mut self, name: &str, a: HermitianMatrix) -> Self {
        self.operators.insert(name.to_string(), OperatorSlot::Single(a));
        self
    }

    pub fn with_operator_list(mut self, name: &str, list: Vec<HermitianMatrix>) -> Self {
        self.operators.insert(name.to_string(), OperatorSlot::List(list));
        self
    }

    pub fn with_map(mut self, map: PositiveUnitalMap) -> Self {
        self.map = Some(map);
        self.family = None;
        self
    }

    pub fn with_family(mut self, family: MapFamily) -> Self {
        self.family = Some(family);
        self.map = None;
        self
    }

    pub fn with_vector(mut self, x: Vec<Complex64>) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_real_vector(self, x: &[f64]) -> Self {
        self.with_vector(x.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn with_function(mut self, f: ScalarFunction) -> Self {
        self.f = Some(f);
        self
    }

    fn with_function_opt(mut self, f: Option<ScalarFunction>) -> Self {
        self.f = f;
        self
    }

    pub fn with_interval(mut self, interval: Interval) -> Self {
        self.interval = Some(interval);
        self
    }

    /// Operator slot by name; `D` falls back to `C` and vice versa.
    pub fn operator(&self, name: &str) -> Result<&[HermitianMatrix]> {
        let alias = match name {
            "D" => Some("C"),
            "C" => Some("D"),
            _ => None,
        };
        self.operators
            .get(name)
            .or_else(|| alias.and_then(|a| self.operators.get(a)))
            .map(OperatorSlot::as_slice)
            .ok_or_else(|| Error::MalformedInstance(format!("operator `{name}` is missing")))
    }

    /// The single matrix in slot `name`.
    pub fn single_operator(&self, name: &str) -> Result<&HermitianMatrix> {
        match self.operator(name)? {
            [a] => Ok(a),
            list => Err(Error::MalformedInstance(format!("operator `{name}` must be a single matrix, found a list of {}", list.len()))),
        }
    }

    /// Real value of a 1x1 operator.
    pub fn scalar(&self, name: &str) -> Result<f64> {
        let a = self.single_operator(name)?;
        if a.dim() != 1 {
            return Err(Error::MalformedInstance(format!("scalar claims need 1x1 operators, `{name}` is {0}x{0}", a.dim())));
        }
        Ok(a.entry(0, 0).re)
    }

    pub fn function(&self) -> Result<&ScalarFunction> {
        self.f.as_ref().ok_or_else(|| Error::MalformedInstance("function `f` is missing".into()))
    }

    pub fn vector(&self) -> Result<&[Complex64]> {
        self.x.as_deref().ok_or_else(|| Error::MalformedInstance("vector `x` is missing".into()))
    }

    /// The map as a family; a single map becomes a one-member family.
    /// Unitality of a single map is a hypothesis, so it is not enforced here.
    pub fn map_family(&self) -> Result<Cow<'_, MapFamily>> {
        match (&self.map, &self.family) {
            (Some(_), Some(_)) => Err(Error::MalformedInstance("give either `map` or `family`, not both".into())),
            (Some(m), None) => Ok(Cow::Owned(MapFamily::unchecked(vec![m.clone()]))),
            (None, Some(f)) => Ok(Cow::Borrowed(f)),
            (None, None) => Err(Error::MalformedInstance("`map` or `family` is required".into())),
        }
    }

    /// The single map; errors for families.
    pub fn single_map(&self) -> Result<&PositiveUnitalMap> {
        match (&self.map, &self.family) {
            (Some(m), None) => Ok(m),
            (None, Some(f)) if f.len() == 1 => Ok(&f.maps()[0]),
            (None, Some(_)) => Err(Error::MalformedInstance("this claim takes a single map, not a family".into())),
            _ => Err(Error::MalformedInstance("`map` is required".into())),
        }
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json_pretty()? + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::builtin;

    #[test]
    fn json_round_trip() {
        let inst = Instance::scalar3(1.0, 0.0, 0.0, Some(builtin("pow:2").unwrap()))
            .with_claim(ClaimId::Thm21)
            .with_map(PositiveUnitalMap::identity(1))
            .with_real_vector(&[1.0])
            .with_interval(Interval::nonnegative());
        let text = inst.to_json_pretty().unwrap();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json_pretty().unwrap(), text);
    }

    #[test]
    fn third_operator_alias() {
        let inst = Instance::empty().with_operator("C", HermitianMatrix::identity(2));
        assert_eq!(inst.single_operator("D").unwrap().dim(), 2);
        assert!(inst.operator("B").is_err());
    }

    #[test]
    fn parses_hand_written_json() {
        let text = r#"{
            "claim": "THM1",
            "operators": {"A": {"dim": 1, "entries": [[2.0, 0.0]]}},
            "map": {"dim_h": 1, "dim_k": 1, "kraus": [{"dim": 1, "entries": [[1.0, 0.0]]}], "unital": true},
            "x": [[1.0, 0.0]],
            "f": "pow:3"
        }"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.claim, Some(ClaimId::Thm1));
        assert_eq!(inst.scalar("A").unwrap(), 2.0);
        assert_eq!(inst.function().unwrap().name(), "pow:3");
        assert!(inst.interval.is_none());
    }

    #[test]
    fn rejects_both_map_and_family() {
        let mut inst = Instance::empty().with_map(PositiveUnitalMap::identity(1));
        inst.family = Some(MapFamily::singleton(PositiveUnitalMap::identity(1)).unwrap());
        assert!(inst.map_family().is_err());
    }
}
