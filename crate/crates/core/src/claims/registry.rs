use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Stable identifiers of every inequality in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    Eq15,
    HlawkaScalar,
    GgPop,
    Thm1,
    Thm21,
    Cor1,
    Cor2,
    BohrSuper,
    BohrSub,
    Cor5Pop,
    Cor5Jensen,
    Prp1,
    Prp2,
    Prp3,
    Thm3,
    HlawkaOp,
    HlawkaNorm,
    PopNorm,
}

impl ClaimId {
    pub const ALL: [ClaimId; 18] = [
        ClaimId::Eq15,
        ClaimId::HlawkaScalar,
        ClaimId::GgPop,
        ClaimId::Thm1,
        ClaimId::Thm21,
        ClaimId::Cor1,
        ClaimId::Cor2,
        ClaimId::BohrSuper,
        ClaimId::BohrSub,
        ClaimId::Cor5Pop,
        ClaimId::Cor5Jensen,
        ClaimId::Prp1,
        ClaimId::Prp2,
        ClaimId::Prp3,
        ClaimId::Thm3,
        ClaimId::HlawkaOp,
        ClaimId::HlawkaNorm,
        ClaimId::PopNorm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Eq15 => "EQ1.5",
            ClaimId::HlawkaScalar => "HLAWKA-SCALAR",
            ClaimId::GgPop => "GG-POP",
            ClaimId::Thm1 => "THM1",
            ClaimId::Thm21 => "THM2.1",
            ClaimId::Cor1 => "COR1",
            ClaimId::Cor2 => "COR2",
            ClaimId::BohrSuper => "BOHR-SUPER",
            ClaimId::BohrSub => "BOHR-SUB",
            ClaimId::Cor5Pop => "COR5-POP",
            ClaimId::Cor5Jensen => "COR5-JENSEN",
            ClaimId::Prp1 => "PRP1",
            ClaimId::Prp2 => "PRP2",
            ClaimId::Prp3 => "PRP3",
            ClaimId::Thm3 => "THM3",
            ClaimId::HlawkaOp => "HLAWKA-OP",
            ClaimId::HlawkaNorm => "HLAWKA-NORM",
            ClaimId::PopNorm => "POP-NORM",
        }
    }

    pub fn info(self) -> &'static ClaimInfo {
        REGISTRY.iter().find(|c| c.id == self).expect("every id is registered")
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which pieces an instance of a claim carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceShape {
    /// Number of operator slots (`A`; or `A, B, D`).
    pub operators: usize,
    /// Operators are 1x1 and read as real numbers; no map or vector.
    pub scalar: bool,
    /// Operator slots hold one matrix per family member.
    pub family: bool,
    pub needs_vector: bool,
    pub needs_function: bool,
}

/// Registry entry.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimInfo {
    pub id: ClaimId,
    /// The inequality, oriented so that it asserts `lhs ≥ rhs`.
    pub statement: &'static str,
    pub hypotheses: &'static str,
    pub shape: InstanceShape,
    #[serde(skip_serializing_if = "str::is_empty")]
    pub notes: &'static str,
}

const fn shape(operators: usize, scalar: bool, family: bool, needs_vector: bool, needs_function: bool) -> InstanceShape {
    InstanceShape { operators, scalar, family, needs_vector, needs_function }
}

const SCALAR3: InstanceShape = shape(3, true, false, false, true);
const OP1_VEC: InstanceShape = shape(1, false, false, true, true);
const OP3_VEC: InstanceShape = shape(3, false, false, true, true);
const OP1_NORM: InstanceShape = shape(1, false, false, false, true);
const FAM3_VEC: InstanceShape = shape(3, false, true, true, true);
const FAM1_VEC: InstanceShape = shape(1, false, true, true, true);

pub static REGISTRY: [ClaimInfo; 18] = [
    ClaimInfo {
        id: ClaimId::Eq15,
        statement: "f((x+y+z)/3) + (f(x)+f(y)+f(z))/3 >= (2/3)[f((x+z)/2) + f((y+z)/2) + f((x+y)/2)]",
        hypotheses: "f convex (concave: reversed); x, y, z in dom f",
        shape: SCALAR3,
        notes: "equality for affine f",
    },
    ClaimInfo {
        id: ClaimId::HlawkaScalar,
        statement: "|x|+|y|+|z|+|x+y+z| >= |x+z|+|z+y|+|x+y|",
        hypotheses: "x, y, z real",
        shape: shape(3, true, false, false, false),
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::GgPop,
        statement: "f^3(cbrt(xyz)) f(x) f(y) f(z) >= f^2(sqrt(xz)) f^2(sqrt(yz)) f^2(sqrt(xy)), compared in log form",
        hypotheses: "x, y, z > 0; f positive and GG-convex",
        shape: SCALAR3,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Thm1,
        statement: "<Phi(f(A))x,x> >= f(<Phi(A)x,x>) + <Phi(f(|A - <Phi(A)x,x> 1|))x,x>",
        hypotheses: "A PSD; Phi unital; f superquadratic (subquadratic: reversed); ||x|| = 1",
        shape: OP1_VEC,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Thm21,
        statement: "<Phi((f(A)+f(B)+f(D))/3)x,x> + f(<Phi((A+B+D)/3)x,x>) >= (2/3)[three pairwise-mean terms] + (1/3)[six correction terms]",
        hypotheses: "A,B,D PSD; Phi unital; f superquadratic",
        shape: OP3_VEC,
        notes: "fails on scalar instances such as (a,b,d) = (1,0,0) with f = t^2",
    },
    ClaimInfo {
        id: ClaimId::Cor1,
        statement: "reverse of THM2.1: (2/3)[pairwise-mean terms] + (1/3)[corrections] >= <Phi((f(A)+f(B)+f(D))/3)x,x> + f(<Phi((A+B+D)/3)x,x>)",
        hypotheses: "A,B,D PSD; Phi unital; f subquadratic",
        shape: OP3_VEC,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Cor2,
        statement: "<Phi(f(A))x,x> >= f(<Phi(A)x,x>) + <Phi(f(|A - <Phi(A)x,x> 1|))x,x> + f(0)",
        hypotheses: "A PSD; Phi unital; f superquadratic (subquadratic: reversed); ||x|| = 1",
        shape: OP1_VEC,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::BohrSuper,
        statement: "||Phi(f(A))|| - f(||Phi(A)||) - f(0) >= ||Phi(f(|A - ||Phi(A)|| 1|))||",
        hypotheses: "A PSD; Phi unital; f superquadratic",
        shape: OP1_NORM,
        notes: "termwise supremum of COR2; fails e.g. for A = diag(0,1), f = t^2",
    },
    ClaimInfo {
        id: ClaimId::BohrSub,
        statement: "||Phi(f(|A - ||Phi(A)|| 1|))|| >= ||Phi(f(A))|| - f(||Phi(A)||) - f(0)",
        hypotheses: "A PSD; Phi unital; f subquadratic",
        shape: OP1_NORM,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Cor5Pop,
        statement: "THM2.1 with Phi(.) replaced by sum_j Phi_j(._j)",
        hypotheses: "A_j,B_j,D_j PSD; sum_j Phi_j(1) = 1; f superquadratic",
        shape: FAM3_VEC,
        notes: "inner products read with the single vector u throughout",
    },
    ClaimInfo {
        id: ClaimId::Cor5Jensen,
        statement: "<sum Phi_j(f(A_j))u,u> >= f(s) + <sum Phi_j(f(|A_j - s 1|))u,u> + f(0), s = <sum Phi_j(A_j)u,u>",
        hypotheses: "A_j PSD; sum_j Phi_j(1) = 1; f superquadratic (subquadratic: reversed)",
        shape: FAM1_VEC,
        notes: "the source writes >= (<=) under one hypothesis; read as >= for superquadratic, <= for subquadratic",
    },
    ClaimInfo {
        id: ClaimId::Prp1,
        statement: "<Phi((f(A)+f(B)+f(D))/3)x,x> + f(<Phi((A+B+D)/3)x,x>) >= (2/3)[pairwise-mean terms]",
        hypotheses: "A,B,D PSD; Phi unital; f superquadratic and nonnegative",
        shape: OP3_VEC,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Prp2,
        statement: "PRP1 shape applied to f'",
        hypotheses: "A,B,D PSD; Phi unital; f(0) = f'(0) = 0; f' convex (concave: reversed)",
        shape: OP3_VEC,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Prp3,
        statement: "PRP1 shape for g",
        hypotheses: "A,B,D PSD; Phi unital; g convex (concave: reversed); g(0) = 0",
        shape: OP3_VEC,
        notes: "",
    },
    ClaimInfo {
        id: ClaimId::Thm3,
        statement: "PRP1 shape for f on [gamma, Gamma]",
        hypotheses: "spectra of A,B,D in [gamma, Gamma]; Phi unital; f convex (concave: reversed) on [gamma, Gamma]",
        shape: OP3_VEC,
        notes: "equality for f(t) = t; gamma may be negative",
    },
    ClaimInfo {
        id: ClaimId::HlawkaOp,
        statement: "|<Phi(A+B+C)x,x>| + <Phi(|A|+|B|+|C|)x,x> >= |<Phi(A+C)x,x>| + |<Phi(B+C)x,x>| + |<Phi(A+B)x,x>|",
        hypotheses: "A,B,C selfadjoint; Phi unital; ||x|| = 1",
        shape: shape(3, false, false, true, false),
        notes: "third operator may be named C or D",
    },
    ClaimInfo {
        id: ClaimId::HlawkaNorm,
        statement: "||Phi(A+B+C)|| + ||Phi(|A|+|B|+|C|)|| >= ||Phi(A+C)|| + ||Phi(B+C)|| + ||Phi(A+B)||",
        hypotheses: "A,B,C selfadjoint; Phi unital",
        shape: shape(3, false, false, false, false),
        notes: "termwise supremum of HLAWKA-OP",
    },
    ClaimInfo {
        id: ClaimId::PopNorm,
        statement: "g(||Phi((A+B+C)/3)||) + ||Phi((g(A)+g(B)+g(C))/3)|| >= (2/3)[g(||Phi((A+C)/2)||) + g(||Phi((B+C)/2)||) + g(||Phi((A+B)/2)||)]",
        hypotheses: "spectra in dom g; Phi positive; g convex and increasing",
        shape: shape(3, false, false, false, true),
        notes: "",
    },
];

/// The full registry in stable order.
pub fn list_claims() -> &'static [ClaimInfo] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static ClaimInfo> {
    Ok(id.parse::<ClaimId>()?.info())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_eighteen_distinct_ids() {
        assert_eq!(list_claims().len(), 18);
        for (i, c) in list_claims().iter().enumerate() {
            assert_eq!(c.id, ClaimId::ALL[i]);
            assert_eq!(c.id.as_str().parse::<ClaimId>().unwrap(), c.id);
        }
    }

    #[test]
    fn lookup_by_id() {
        assert_eq!(lookup("THM2.1").unwrap().hypotheses, "A,B,D PSD; Phi unital; f superquadratic");
        assert!(matches!(lookup("THM9"), Err(Error::UnknownClaim(_))));
    }
}
