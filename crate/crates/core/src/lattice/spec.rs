use std::fmt;

use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::grading::MVec;

/// The family `{H_{c_1}, …, H_{c_s}, K_{d_1}, …, K_{d_m}}`.
///
/// JSON form: `{"H": [c…], "K": [d…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GeneratorSpec {
    h_degrees: Vec<u32>,
    k_degrees: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(rename = "H", default)]
    h: Vec<u32>,
    #[serde(rename = "K", default)]
    k: Vec<u32>,
}

impl TryFrom<RawSpec> for GeneratorSpec {
    type Error = LatticeError;
    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        GeneratorSpec::new(raw.h, raw.k)
    }
}

impl From<GeneratorSpec> for RawSpec {
    fn from(s: GeneratorSpec) -> Self {
        RawSpec {
            h: s.h_degrees,
            k: s.k_degrees,
        }
    }
}

impl GeneratorSpec {
    /// Degrees are kept in the given order. Rejects the empty family and
    /// degree 0.
    pub fn new(h_degrees: Vec<u32>, k_degrees: Vec<u32>) -> Result<Self, LatticeError> {
        if h_degrees.is_empty() && k_degrees.is_empty() {
            return Err(LatticeError::EmptySpec);
        }
        if h_degrees.contains(&0) || k_degrees.contains(&0) {
            return Err(LatticeError::ZeroDegree);
        }
        Ok(GeneratorSpec { h_degrees, k_degrees })
    }

    pub fn h_degrees(&self) -> &[u32] {
        &self.h_degrees
    }

    pub fn k_degrees(&self) -> &[u32] {
        &self.k_degrees
    }

    /// `ε_i = (-1, c_i)`.
    pub fn eps_roots(&self) -> Vec<MVec> {
        self.h_degrees.iter().map(|&c| MVec(-1, c as i64)).collect()
    }

    /// `e_j = (d_j, -1)`.
    pub fn e_roots(&self) -> Vec<MVec> {
        self.k_degrees.iter().map(|&d| MVec(d as i64, -1)).collect()
    }

    /// All root vectors, `ε`'s first.
    pub fn roots(&self) -> Vec<MVec> {
        let mut out = self.eps_roots();
        out.extend(self.e_roots());
        out
    }

    /// Whether `e` is one of the generators' root vectors.
    pub fn contains_root(&self, e: MVec) -> bool {
        self.roots().contains(&e)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{H:({}), K:({})}}", list(&self.h_degrees), list(&self.k_degrees))
    }
}
