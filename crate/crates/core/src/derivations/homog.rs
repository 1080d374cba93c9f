use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{Derivation, DerivationError};
use crate::grading::{MVec, NVec};

/// A primitive vector of the closed positive quadrant of `N`, defining the
/// linear form `e ↦ ⟨e, ρ⟩` on degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NVec", into = "NVec")]
pub struct TorusDirection(NVec);

impl TorusDirection {
    pub fn new(rho: NVec) -> Result<Self, DerivationError> {
        let NVec(a, b) = rho;
        if a < 0 || b < 0 || (a, b) == (0, 0) || a.gcd(&b) != 1 {
            return Err(DerivationError::InvalidDirection(rho));
        }
        Ok(TorusDirection(rho))
    }

    pub fn rho(self) -> NVec {
        self.0
    }
}

impl TryFrom<NVec> for TorusDirection {
    type Error = DerivationError;
    fn try_from(rho: NVec) -> Result<Self, Self::Error> {
        TorusDirection::new(rho)
    }
}

impl From<TorusDirection> for NVec {
    fn from(t: TorusDirection) -> NVec {
        t.0
    }
}

/// Which supporting line of the Newton polygon a principal part is taken on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Degrees maximizing `⟨e, ρ⟩`.
    #[default]
    Max,
    /// Degrees minimizing `⟨e, ρ⟩`.
    Min,
}

/// Homogeneous pieces of `d`, by ascending degree. They sum to `d` and their
/// degrees are pairwise distinct.
pub fn homog_decompose(d: &Derivation) -> Vec<(MVec, Derivation)> {
    let mut pieces: BTreeMap<MVec, Derivation> = BTreeMap::new();
    for (e, term) in d.graded_terms() {
        let slot = pieces.entry(e).or_default();
        *slot = &*slot + &term;
    }
    pieces.into_iter().collect()
}

/// The principal part on the side maximizing `⟨e, ρ⟩`.
pub fn principal_part(d: &Derivation, t: TorusDirection) -> Result<Derivation, DerivationError> {
    principal_part_at(d, t, Side::Max)
}

/// The sum of the homogeneous pieces of `d` whose degrees lie on the
/// supporting line of the Newton polygon orthogonal to `ρ` on the given side.
pub fn principal_part_at(d: &Derivation, t: TorusDirection, side: Side) -> Result<Derivation, DerivationError> {
    let pieces = homog_decompose(d);
    let values = pieces.iter().map(|(e, _)| t.rho().pair(*e));
    let target = match side {
        Side::Max => values.max(),
        Side::Min => values.min(),
    }
    .ok_or(DerivationError::ZeroDerivation)?;
    Ok(pieces
        .iter()
        .filter(|(e, _)| t.rho().pair(*e) == target)
        .fold(Derivation::zero(), |acc, (_, p)| &acc + p))
}
