use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{GeneratorSpec, LatticeError};
use crate::grading::MVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpanIndex {
    /// `[Z^2 : span]`.
    Index(u64),
    NotFullRank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GcdVerdict {
    Pass,
    /// The gcd of the `d_j - 1` (0 if all `d_j = 1`).
    Fail(u64),
}

/// Index of the sublattice spanned by `vectors`, by row reduction to the
/// echelon form `[[g0, *], [0, g1]]`; the index is `g0 * g1`.
pub(crate) fn lattice_index(vectors: &[MVec]) -> SpanIndex {
    let mut rows: Vec<(i128, i128)> = vectors.iter().map(|v| (v.0 as i128, v.1 as i128)).collect();
    // Fold every row into a pivot row with first entry gcd of all first entries.
    let mut pivot = (0i128, 0i128);
    let mut rest: Vec<i128> = Vec::new();
    for r in rows.drain(..) {
        let (mut a, mut b) = (pivot, r);
        // Euclid on first coordinates, carrying second coordinates along.
        while b.0 != 0 {
            let q = a.0 / b.0;
            let rem = (a.0 - q * b.0, a.1 - q * b.1);
            a = b;
            b = rem;
        }
        if a.0 < 0 {
            a = (-a.0, -a.1);
        }
        pivot = a;
        rest.push(b.1);
    }
    let g0 = pivot.0;
    let g1 = rest.iter().fold(0i128, |g, &v| g.gcd(&v));
    if g0 == 0 || g1 == 0 {
        SpanIndex::NotFullRank
    } else {
        SpanIndex::Index((g0 * g1) as u64)
    }
}

pub fn span_index(spec: &GeneratorSpec) -> SpanIndex {
    lattice_index(&spec.roots())
}

/// `Pass` iff `gcd(d_1 - 1, …, d_m - 1) = 1`.
pub fn gcd_criterion(d_degrees: &[u32]) -> Result<GcdVerdict, LatticeError> {
    if d_degrees.is_empty() {
        return Err(LatticeError::EmptyList);
    }
    let g = d_degrees.iter().fold(0u64, |g, &d| g.gcd(&(d as u64 - 1)));
    Ok(if g == 1 { GcdVerdict::Pass } else { GcdVerdict::Fail(g) })
}
