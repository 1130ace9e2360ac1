//! Positive linear maps in Kraus form, `Φ(A) = Σ_j V_j† A V_j`.
//!
//! Each Kraus operator is an `n_H × n_K` matrix, so `Φ` sends `n_H × n_H`
//! operators to `n_K × n_K` ones. Positivity is structural; unitality
//! (`Σ V_j† V_j = I_K`) is checked at construction when requested. Only
//! completely positive maps are representable this way.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, HermitianMatrix};

/// Relative tolerance (per codomain dimension) for `Σ V† V = I`.
pub const UNITAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PositiveUnitalMap {
    dim_h: usize,
    dim_k: usize,
    kraus: Vec<ComplexMatrix>,
    unital: bool,
}

impl PositiveUnitalMap {
    /// Map with the given Kraus list; with `require_unital` the sum
    /// `Σ V† V` must equal `I_K` within `1e-10 · n_K`.
    pub fn make_kraus(ops: Vec<ComplexMatrix>, require_unital: bool) -> Result<Self> {
        let first = ops.first().ok_or_else(|| Error::MalformedInstance("Kraus list is empty".into()))?;
        let shape = (first.rows(), first.cols());
        if let Some(bad) = ops.iter().find(|v| (v.rows(), v.cols()) != shape) {
            return Err(Error::ShapeMismatch { expected: shape, found: (bad.rows(), bad.cols()) });
        }
        let map = Self { dim_h: shape.0, dim_k: shape.1, kraus: ops, unital: require_unital };
        if require_unital {
            let defect = map.unit_defect();
            if defect > UNITAL_TOL * map.dim_k as f64 {
                return Err(Error::NotUnital { defect });
            }
        }
        Ok(map)
    }

    pub fn identity(n: usize) -> Self {
        Self { dim_h: n, dim_k: n, kraus: vec![ComplexMatrix::identity(n)], unital: true }
    }

    /// `A ↦ U† A U`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::make_kraus(vec![u], true)
    }

    /// Keeps the diagonal: Kraus operators are the rank-one projectors `e_i e_i†`.
    pub fn pinching(n: usize) -> Self {
        let kraus = (0..n)
            .map(|i| {
                let mut p = ComplexMatrix::zeros(n, n);
                p.set(i, i, Complex64::new(1.0, 0.0));
                p
            })
            .collect();
        Self { dim_h: n, dim_k: n, kraus, unital: true }
    }

    /// `A ↦ (tr A / n) · I_n`, from the `n²` Kraus operators `E_ij / √n`.
    pub fn make_trace_average(n: usize) -> Self {
        let w = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        let mut kraus = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = ComplexMatrix::zeros(n, n);
                e.set(i, j, w);
                kraus.push(e);
            }
        }
        Self { dim_h: n, dim_k: n, kraus, unital: true }
    }

    /// `A ↦ V† A V` for an isometry `V` (`V† V = I_K`).
    pub fn make_compression(v: ComplexMatrix) -> Result<Self> {
        let defect = v.adjoint_matmul(&v)?.checked_sub(&ComplexMatrix::identity(v.cols()))?.frobenius_norm();
        if defect > UNITAL_TOL {
            return Err(Error::NotIsometry { defect });
        }
        Ok(Self { dim_h: v.rows(), dim_k: v.cols(), kraus: vec![v], unital: true })
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// `Σ V_j† V_j`, which equals `Φ(I_H)`.
    pub fn kraus_gram(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim_k, self.dim_k);
        for v in &self.kraus {
            acc = acc.checked_add(&v.adjoint_matmul(v).expect("kraus shapes agree")).expect("same shape");
        }
        acc
    }

    /// `||Σ V† V − I_K||_F`.
    pub fn unit_defect(&self) -> f64 {
        self.kraus_gram()
            .checked_sub(&ComplexMatrix::identity(self.dim_k))
            .expect("same shape")
            .frobenius_norm()
    }

    /// `Σ V† X V` on an arbitrary square matrix.
    pub fn apply_raw(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.rows() != self.dim_h || x.cols() != self.dim_h {
            return Err(Error::DimensionMismatch { expected: self.dim_h, found: x.rows().max(x.cols()) });
        }
        let mut acc = ComplexMatrix::zeros(self.dim_k, self.dim_k);
        for v in &self.kraus {
            let xv = x.matmul(v)?;
            acc = acc.checked_add(&v.adjoint_matmul(&xv)?)?;
        }
        Ok(acc)
    }

    /// `Φ(A)`, re-hermitized.
    pub fn apply(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        if a.dim() != self.dim_h {
            return Err(Error::DimensionMismatch { expected: self.dim_h, found: a.dim() });
        }
        Ok(HermitianMatrix::project(&self.apply_raw(a.as_matrix())?))
    }

    /// `X ↦ Φ(U† X U)`; Kraus operators become `U V_j`.
    pub fn precompose_unitary(&self, u: &ComplexMatrix) -> Result<Self> {
        let kraus = self.kraus.iter().map(|v| u.matmul(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self { dim_h: self.dim_h, dim_k: self.dim_k, kraus, unital: self.unital })
    }

    /// Same operators, unitality requirement dropped (family members).
    pub fn as_member(mut self) -> Self {
        self.unital = false;
        self
    }
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    dim_h: usize,
    dim_k: usize,
    kraus: Vec<ComplexMatrix>,
    unital: bool,
}

impl Serialize for PositiveUnitalMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapRepr { dim_h: self.dim_h, dim_k: self.dim_k, kraus: self.kraus.clone(), unital: self.unital }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PositiveUnitalMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MapRepr::deserialize(d)?;
        let map = PositiveUnitalMap::make_kraus(r.kraus, r.unital).map_err(D::Error::custom)?;
        if map.dim_h != r.dim_h || map.dim_k != r.dim_k {
            return Err(D::Error::custom(format!(
                "declared dims ({}, {}) disagree with Kraus shape ({}, {})",
                r.dim_h, r.dim_k, map.dim_h, map.dim_k
            )));
        }
        Ok(map)
    }
}

/// Positive maps `{Φ_j}` with `Σ_j Φ_j(1_H) = 1_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapFamily {
    maps: Vec<PositiveUnitalMap>,
}

impl MapFamily {
    pub fn new(maps: Vec<PositiveUnitalMap>) -> Result<Self> {
        let first = maps.first().ok_or_else(|| Error::MalformedInstance("map family is empty".into()))?;
        let (dh, dk) = (first.dim_h, first.dim_k);
        if let Some(bad) = maps.iter().find(|m| (m.dim_h, m.dim_k) != (dh, dk)) {
            return Err(Error::ShapeMismatch { expected: (dh, dk), found: (bad.dim_h, bad.dim_k) });
        }
        let fam = Self { maps };
        let defect = fam.unit_defect();
        if defect > UNITAL_TOL * dk as f64 {
            return Err(Error::NotUnital { defect });
        }
        Ok(fam)
    }

    /// Skips the family invariant; callers check it as a hypothesis.
    pub(crate) fn unchecked(maps: Vec<PositiveUnitalMap>) -> Self {
        Self { maps }
    }

    /// A single unital map viewed as a one-member family.
    pub fn singleton(map: PositiveUnitalMap) -> Result<Self> {
        Self::new(vec![map])
    }

    pub fn maps(&self) -> &[PositiveUnitalMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn dim_h(&self) -> usize {
        self.maps[0].dim_h
    }

    pub fn dim_k(&self) -> usize {
        self.maps[0].dim_k
    }

    /// `||Σ_j Φ_j(I) − I||_F`.
    pub fn unit_defect(&self) -> f64 {
        let dk = self.dim_k();
        let mut acc = ComplexMatrix::zeros(dk, dk);
        for m in &self.maps {
            acc = acc.checked_add(&m.kraus_gram()).expect("same shape");
        }
        acc.checked_sub(&ComplexMatrix::identity(dk)).expect("same shape").frobenius_norm()
    }

    /// `Σ_j Φ_j(A_j)`.
    pub fn family_apply(&self, ops: &[HermitianMatrix]) -> Result<HermitianMatrix> {
        if ops.len() != self.maps.len() {
            return Err(Error::LengthMismatch { expected: self.maps.len(), found: ops.len() });
        }
        let mut acc: Option<HermitianMatrix> = None;
        for (m, a) in self.maps.iter().zip(ops) {
            let term = m.apply(a)?;
            acc = Some(match acc {
                None => term,
                Some(s) => s.checked_add(&term)?,
            });
        }
        Ok(acc.expect("non-empty family"))
    }

    pub fn precompose_unitary(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self { maps: self.maps.iter().map(|m| m.precompose_unitary(u)).collect::<Result<_>>()? })
    }
}

impl Serialize for MapFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.maps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MapFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let maps = Vec::<PositiveUnitalMap>::deserialize(d)?;
        MapFamily::new(maps).map_err(D::Error::custom)
    }
}
