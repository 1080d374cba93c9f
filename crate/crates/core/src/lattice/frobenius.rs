use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;

use super::LatticeError;

fn positive_gaps(gaps: &[u64]) -> Result<Vec<u64>, LatticeError> {
    let mut g: Vec<u64> = gaps.iter().copied().filter(|&x| x > 0).collect();
    g.sort_unstable();
    g.dedup();
    if g.iter().fold(0u64, |acc, &x| acc.gcd(&x)) != 1 {
        return Err(LatticeError::GcdNotOne(gaps.to_vec()));
    }
    Ok(g)
}

/// Largest integer not a nonnegative combination of `gaps`; `-1` when every
/// nonnegative integer is. Zero gaps are ignored.
///
/// Shortest paths on residues modulo the smallest gap: `dist[r]` is the least
/// representable number congruent to `r`, and the answer is
/// `max(dist) - smallest gap`.
pub fn frobenius_number(gaps: &[u64]) -> Result<i64, LatticeError> {
    let g = positive_gaps(gaps)?;
    let a = g[0];
    let mut dist = vec![u64::MAX; a as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0u64))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r as usize] {
            continue;
        }
        for &x in &g[1..] {
            let nd = d + x;
            let nr = (r + x) % a;
            if nd < dist[nr as usize] {
                dist[nr as usize] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    Ok(*dist.iter().max().expect("nonempty") as i64 - a as i64)
}

/// The least `n0 ≥ 0` such that `n - 1` is a nonnegative combination of
/// `gaps` for every `n > n0`.
pub fn frobenius_bound(gaps: &[u64]) -> Result<u64, LatticeError> {
    Ok((frobenius_number(gaps)? + 1) as u64)
}

/// Membership table for the numerical semigroup generated by some gaps, up
/// to a limit, with one representation of each member.
#[derive(Clone, Debug)]
pub struct RepresentableSet {
    gaps: Vec<u64>,
    /// `parent[n]`: index of a gap used last in a representation of `n`.
    parent: Vec<Option<usize>>,
}

impl RepresentableSet {
    /// Zero gaps are ignored. Representations prefer larger gaps.
    pub fn new(gaps: &[u64], limit: u64) -> Self {
        let mut g: Vec<u64> = gaps.iter().copied().filter(|&x| x > 0).collect();
        g.sort_unstable();
        g.dedup();
        let mut parent = vec![None; limit as usize + 1];
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for n in 1..=limit as usize {
            for (i, &x) in g.iter().enumerate().rev() {
                if x as usize <= n && reach[n - x as usize] {
                    reach[n] = true;
                    parent[n] = Some(i);
                    break;
                }
            }
        }
        RepresentableSet { gaps: g, parent }
    }

    pub fn limit(&self) -> u64 {
        self.parent.len() as u64 - 1
    }

    pub fn contains(&self, n: u64) -> bool {
        n == 0 || (n <= self.limit() && self.parent[n as usize].is_some())
    }

    /// Gaps summing to `n`, largest first.
    pub fn representation(&self, n: u64) -> Option<Vec<u64>> {
        if !self.contains(n) {
            return None;
        }
        let mut out = Vec::new();
        let mut m = n;
        while m > 0 {
            let x = self.gaps[self.parent[m as usize]?];
            out.push(x);
            m -= x;
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Some(out)
    }
}

/// One representation of `n` by `gaps`, largest gaps first.
pub fn representation(n: u64, gaps: &[u64]) -> Option<Vec<u64>> {
    RepresentableSet::new(gaps, n).representation(n)
}
