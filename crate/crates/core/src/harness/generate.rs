//! Seeded generators for operators, vectors, unitaries and maps.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{spectral_decompose, Complex64, ComplexMatrix, HermitianMatrix, Interval};
use crate::maps::{MapFamily, PositiveUnitalMap};

/// Largest condition number of `Σ W†W` accepted when normalising random Kraus sets.
pub const MAX_CONDITION: f64 = 1e8;
/// Redraws before a random map generation gives up.
pub const MAX_RETRIES: usize = 10;

/// Child seed for trial `index`: a splitmix64 finaliser over the master seed and the index.
pub fn split_seed(master: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(master.wrapping_add(0x9e37_79b9_7f4a_7c15)) ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1))
}

/// Generator stream for one trial.
pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split_seed(master, index))
}

fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Orthonormalises columns by modified Gram–Schmidt, run twice for stability.
/// The implied `R` has a positive real diagonal.
fn orthonormal_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q: Vec<Vec<Complex64>> = (0..cols).map(|j| (0..rows).map(|i| m.get(i, j)).collect()).collect();
    for j in 0..cols {
        for _pass in 0..2 {
            for k in 0..j {
                let dot: Complex64 = (0..rows).map(|i| q[k][i].conj() * q[j][i]).sum();
                for i in 0..rows {
                    let qk = q[k][i];
                    q[j][i] -= dot * qk;
                }
            }
        }
        let norm = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut q[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| q[j][i])
}

/// Random unitary from the QR factor of a complex Gaussian matrix.
pub fn gen_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    orthonormal_columns(&gaussian_matrix(rng, dim, dim))
}

/// Random isometry `V` (`rows × cols`, `V†V = I`).
pub fn gen_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    orthonormal_columns(&gaussian_matrix(rng, rows, cols))
}

/// Hermitian matrix with eigenvalues uniform in a bounded interval, rotated by a random unitary.
pub fn gen_hermitian(rng: &mut impl Rng, dim: usize, interval: &Interval) -> Result<HermitianMatrix> {
    if !interval.is_bounded() {
        return Err(Error::InvalidConfig(format!("cannot sample eigenvalues from unbounded interval {interval}")));
    }
    let (lo, hi) = (interval.lo(), interval.hi());
    let values: Vec<f64> = (0..dim).map(|_| uniform(rng, lo, hi)).collect();
    let u = gen_unitary(rng, dim);
    HermitianMatrix::from_spectrum(&u, &values)
}

/// Uniform draw from `[lo, hi]`, degenerate intervals included.
pub fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        lo + (hi - lo) * rng.random::<f64>()
    } else {
        lo
    }
}

/// Complex Gaussian vector scaled to unit norm.
pub fn gen_unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// The kinds of unital maps a campaign can draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Identity,
    Unitary,
    Pinching,
    TraceAverage,
    RandomKraus(usize),
    /// `V† A V` for a random isometry onto `ceil(n/2)` dimensions.
    Compression,
    /// `k` members whose units sum to the identity.
    Family(usize),
}

impl MapKind {
    pub fn is_family(self) -> bool {
        matches!(self, MapKind::Family(_))
    }

    /// Codomain dimension for domain dimension `dim_h`.
    pub fn dim_k(self, dim_h: usize) -> usize {
        match self {
            MapKind::Compression => dim_h.div_ceil(2),
            _ => dim_h,
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Identity => f.write_str("identity"),
            MapKind::Unitary => f.write_str("unitary"),
            MapKind::Pinching => f.write_str("pinching"),
            MapKind::TraceAverage => f.write_str("trace_average"),
            MapKind::RandomKraus(m) => write!(f, "random_kraus({m})"),
            MapKind::Compression => f.write_str("compression"),
            MapKind::Family(k) => write!(f, "family({k})"),
        }
    }
}

impl FromStr for MapKind {
    type Err = Error;

    /// Accepts `random_kraus(3)`, `random_kraus:3` and bare `random_kraus` (three operators);
    /// `family` defaults to two members.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find(['(', ':']) {
            Some(i) => (&s[..i], Some(s[i + 1..].trim_end_matches(')').trim())),
            None => (s, None),
        };
        let count = |default: usize| -> Result<usize> {
            match arg {
                None => Ok(default),
                Some(a) => match a.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(n),
                    _ => Err(Error::InvalidConfig(format!("bad count in map kind `{s}`"))),
                },
            }
        };
        let no_arg = |k: MapKind| if arg.is_some() { Err(Error::InvalidConfig(format!("map kind `{head}` takes no argument"))) } else { Ok(k) };
        match head {
            "identity" | "id" => no_arg(MapKind::Identity),
            "unitary" => no_arg(MapKind::Unitary),
            "pinching" => no_arg(MapKind::Pinching),
            "trace_average" => no_arg(MapKind::TraceAverage),
            "random_kraus" => Ok(MapKind::RandomKraus(count(3)?)),
            "compression" => no_arg(MapKind::Compression),
            "family" => Ok(MapKind::Family(count(2)?)),
            _ => Err(Error::InvalidConfig(format!("unknown map kind `{s}`"))),
        }
    }
}

impl Serialize for MapKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MapKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `S^{-1/2}` and the condition number of a positive definite `S`.
fn inverse_sqrt(s: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let h = HermitianMatrix::hermitize(s, 1e-9 * s.frobenius_norm().max(1.0))?;
    let dec = spectral_decompose(&h)?;
    let (lo, hi) = (dec.min_eigenvalue(), dec.max_eigenvalue());
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Ok((ComplexMatrix::zeros(1, 1), cond));
    }
    Ok((dec.reassemble(|l| 1.0 / l.sqrt()).into_matrix(), cond))
}

/// Raw Gaussian Kraus sets normalised jointly so that `Σ_sets Σ_j V†V = I_K`.
fn normalized_kraus_sets(rng: &mut impl Rng, sets: usize, per_set: usize, dim_h: usize, dim_k: usize) -> Result<Vec<Vec<ComplexMatrix>>> {
    let mut last = f64::INFINITY;
    for _ in 0..MAX_RETRIES {
        let raw: Vec<Vec<ComplexMatrix>> = (0..sets).map(|_| (0..per_set).map(|_| gaussian_matrix(rng, dim_h, dim_k)).collect()).collect();
        let mut s = ComplexMatrix::zeros(dim_k, dim_k);
        for w in raw.iter().flatten() {
            s = s.checked_add(&w.adjoint_matmul(w)?)?;
        }
        let (inv, cond) = inverse_sqrt(&s)?;
        last = cond;
        if cond > MAX_CONDITION || !cond.is_finite() {
            continue;
        }
        return raw.into_iter().map(|set| set.iter().map(|w| w.matmul(&inv)).collect::<Result<Vec<_>>>()).collect();
    }
    Err(Error::GenerationFailure { retries: MAX_RETRIES, condition: last })
}

/// Random unital map of the given kind. Family kinds are rejected here; use [`gen_family`].
pub fn gen_map(rng: &mut impl Rng, kind: MapKind, dim_h: usize, dim_k: usize) -> Result<PositiveUnitalMap> {
    let square = |k: MapKind| {
        if dim_h == dim_k {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("map kind {k} needs dim_h = dim_k, got {dim_h} and {dim_k}")))
        }
    };
    match kind {
        MapKind::Identity => square(kind).map(|_| PositiveUnitalMap::identity(dim_h)),
        MapKind::Unitary => {
            square(kind)?;
            PositiveUnitalMap::unitary(gen_unitary(rng, dim_h))
        }
        MapKind::Pinching => square(kind).map(|_| PositiveUnitalMap::pinching(dim_h)),
        MapKind::TraceAverage => square(kind).map(|_| PositiveUnitalMap::make_trace_average(dim_h)),
        MapKind::RandomKraus(m) => {
            let ops = normalized_kraus_sets(rng, 1, m, dim_h, dim_k)?.remove(0);
            PositiveUnitalMap::make_kraus(ops, true)
        }
        MapKind::Compression => {
            if dim_k > dim_h {
                return Err(Error::InvalidConfig(format!("compression needs dim_k <= dim_h, got {dim_k} > {dim_h}")));
            }
            PositiveUnitalMap::make_compression(gen_isometry(rng, dim_h, dim_k))
        }
        MapKind::Family(_) => Err(Error::InvalidConfig("family kinds produce a MapFamily; use gen_family".into())),
    }
}

/// `k` random positive maps with two Kraus operators each and `Σ_j Φ_j(1) = 1`.
pub fn gen_family(rng: &mut impl Rng, k: usize, dim_h: usize, dim_k: usize) -> Result<MapFamily> {
    let sets = normalized_kraus_sets(rng, k, 2, dim_h, dim_k)?;
    let maps = sets.into_iter().map(|ops| PositiveUnitalMap::make_kraus(ops, false)).collect::<Result<Vec<_>>>()?;
    MapFamily::new(maps)
}
