use serde::{Deserialize, Serialize};

use super::frobenius::RepresentableSet;
use super::{GeneratorSpec, LatticeError};
use crate::grading::MVec;

/// `target = Σ nu + Σ mu` with every `nu` of the form `(d, -1)` and every `mu`
/// of the form `(-1, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDecomposition {
    pub target: MVec,
    pub nu: Vec<MVec>,
    pub mu: Vec<MVec>,
}

impl ConeDecomposition {
    pub fn sum(&self) -> MVec {
        self.nu.iter().chain(&self.mu).copied().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeResult {
    Found(ConeDecomposition),
    NotInCone,
}

/// `table[i][k]` = sums of multisets of exactly `k` elements of `vals[i..]`,
/// as a membership vector up to `max_sum`.
struct MultisetSums {
    vals: Vec<u64>,
    table: Vec<Vec<Vec<bool>>>,
}

impl MultisetSums {
    fn new(vals: &[u64], max_count: usize, max_sum: usize) -> Self {
        let mut vals = vals.to_vec();
        vals.sort_unstable();
        vals.dedup();
        let n = vals.len();
        let empty = {
            let mut row = vec![vec![false; max_sum + 1]; max_count + 1];
            row[0][0] = true;
            row
        };
        let mut table = vec![empty; n + 1];
        for i in (0..n).rev() {
            let v = vals[i] as usize;
            for k in 0..=max_count {
                for s in 0..=max_sum {
                    let with_v = k > 0 && s >= v && table[i][k - 1][s - v];
                    table[i][k][s] = table[i + 1][k][s] || with_v;
                }
            }
        }
        MultisetSums { vals, table }
    }

    fn feasible(&self, from: usize, k: usize, s: usize) -> bool {
        self.table[from]
            .get(k)
            .and_then(|row| row.get(s))
            .copied()
            .unwrap_or(false)
    }

    /// Lexicographically smallest nondecreasing sequence of `k` elements
    /// summing to `s`.
    fn smallest(&self, mut k: usize, mut s: usize) -> Option<Vec<u64>> {
        if !self.feasible(0, k, s) {
            return None;
        }
        let mut out = Vec::with_capacity(k);
        let mut from = 0;
        while k > 0 {
            let i = (from..self.vals.len())
                .find(|&i| {
                    let v = self.vals[i] as usize;
                    v <= s && self.feasible(i, k - 1, s - v)
                })
                .expect("feasibility table is consistent");
            out.push(self.vals[i]);
            s -= self.vals[i] as usize;
            k -= 1;
            from = i;
        }
        Some(out)
    }
}

/// Default cap on the total number of summands.
pub fn default_cone_bound(a: i64) -> u64 {
    (4 * a.max(0) as u64).max(64)
}

/// Exact cap on `M + N` when one is known, and whether membership can be
/// decided without any cap.
///
/// With `c_min d_min ≥ 2`: `N = 1 + Σc ≥ 1 + M c_min` and `a + M = Σd ≥ N d_min`
/// give `M (c_min d_min - 1) ≤ a - d_min` and `N ≤ (a + M) / d_min`.
fn exact_cap(spec: &GeneratorSpec, a: u64) -> Option<u64> {
    let cmin = *spec.h_degrees().iter().min()? as u64;
    let dmin = *spec.k_degrees().iter().min()? as u64;
    if cmin * dmin < 2 {
        return None;
    }
    let m_max = a.saturating_sub(dmin) / (cmin * dmin - 1);
    Some(m_max + (a + m_max) / dmin)
}

/// Decomposes `target = (a, -1)` over the family's root vectors, searching
/// decompositions with at most `bound` summands.
///
/// Among decompositions the one with fewest `mu`'s is chosen, then the
/// lexicographically smallest ascending `nu` list, then the smallest `mu`
/// list. `NotInCone` is returned only when infeasibility is proven:
/// - no K-generators: every decomposition needs at least one `nu`;
/// - no H-generators: the target must itself be a K-root;
/// - `c_min d_min ≥ 2`: the search covers every possible decomposition;
/// - `c_min = d_min = 1`: eliminating `M` and `N` from the two coordinate
///   equations gives `Σ(d-1) + Σ(c-1) = a - 1`, and the roots `(1,-1)` and
///   `(-1,1)` fix the counts, so membership is `a - 1 ∈ ⟨d_j - 1, c_i - 1⟩`.
pub fn cone_decompose(spec: &GeneratorSpec, target: MVec, bound: u64) -> Result<ConeResult, LatticeError> {
    if target.1 != -1 || target.0 < 0 {
        return Err(LatticeError::BadTarget(target));
    }
    let a = target.0 as u64;
    let cs: Vec<u64> = spec.h_degrees().iter().map(|&c| c as u64).collect();
    let ds: Vec<u64> = spec.k_degrees().iter().map(|&d| d as u64).collect();
    if ds.is_empty() {
        return Ok(ConeResult::NotInCone);
    }
    if cs.is_empty() {
        return Ok(if ds.contains(&a) {
            ConeResult::Found(ConeDecomposition {
                target,
                nu: vec![target],
                mu: Vec::new(),
            })
        } else {
            ConeResult::NotInCone
        });
    }
    let cap = exact_cap(spec, a);
    let both_one = cs.contains(&1) && ds.contains(&1);
    if both_one {
        let gaps: Vec<u64> = cs.iter().chain(&ds).map(|v| v - 1).collect();
        if a == 0 || !RepresentableSet::new(&gaps, a - 1).contains(a - 1) {
            return Ok(ConeResult::NotInCone);
        }
    }
    let limit = match cap {
        Some(c) => c.min(bound),
        None => bound,
    } as usize;
    let dmin = *ds.iter().min().expect("nonempty") as usize;
    let max_n = limit;
    let c_sums = MultisetSums::new(&cs, limit, limit);
    let d_sums = MultisetSums::new(&ds, max_n, a as usize + limit);
    for m in 0..=limit {
        let mut best: Option<(Vec<u64>, usize)> = None;
        // N = 1 + Σc must satisfy M + N ≤ limit and N d_min ≤ a + M.
        let max_sc = (limit - m).saturating_sub(1).min((a as usize + m) / dmin.max(1));
        for sc in 0..=max_sc {
            if !c_sums.feasible(0, m, sc) {
                continue;
            }
            let n = 1 + sc;
            if m + n > limit {
                break;
            }
            if let Some(nu) = d_sums.smallest(n, a as usize + m) {
                if best.as_ref().is_none_or(|(b, _)| nu < *b) {
                    best = Some((nu, sc));
                }
            }
        }
        if let Some((nu, sc)) = best {
            let mu = c_sums.smallest(m, sc).expect("checked feasible");
            return Ok(ConeResult::Found(ConeDecomposition {
                target,
                nu: nu.iter().map(|&d| MVec(d as i64, -1)).collect(),
                mu: mu.iter().map(|&c| MVec(-1, c as i64)).collect(),
            }));
        }
    }
    match cap {
        Some(c) if c <= bound => Ok(ConeResult::NotInCone),
        _ => Err(LatticeError::SearchBoundExceeded { bound }),
    }
}

/// [`cone_decompose`] with the bound chosen to make the answer exact
/// whenever a finite cap exists, and the default bound otherwise.
pub fn cone_decompose_exact(spec: &GeneratorSpec, target: MVec) -> Result<ConeResult, LatticeError> {
    let a = target.0.max(0) as u64;
    let bound = exact_cap(spec, a).unwrap_or(0).max(default_cone_bound(target.0));
    cone_decompose(spec, target, bound)
}
