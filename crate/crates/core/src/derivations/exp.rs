use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Derivation, DerivationError};
use crate::exactpoly::{BiPoly, Rat};

pub const DEFAULT_NILPOTENCY_BOUND: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Nilpotency {
    /// The smallest `n` with `d^n(x) = d^n(y) = 0`.
    Nilpotent(u32),
    /// Neither generator was killed within the bound; says nothing either way
    /// about local nilpotency.
    NotNilpotentWithin(u32),
}

impl Nilpotency {
    pub fn is_nilpotent(self) -> bool {
        matches!(self, Nilpotency::Nilpotent(_))
    }
}

fn steps_to_zero(d: &Derivation, p: &BiPoly, bound: u32) -> Option<u32> {
    let mut cur = p.clone();
    for n in 0..=bound {
        if cur.is_zero() {
            return Some(n);
        }
        if n < bound {
            cur = d.apply(&cur);
        }
    }
    None
}

pub fn is_nilpotent(d: &Derivation, bound: u32) -> Nilpotency {
    let nx = steps_to_zero(d, &BiPoly::x(), bound);
    let ny = steps_to_zero(d, &BiPoly::y(), bound);
    match (nx, ny) {
        (Some(a), Some(b)) => Nilpotency::Nilpotent(a.max(b)),
        _ => Nilpotency::NotNilpotentWithin(bound),
    }
}

/// `p + Σ_{k≥1} t^k d^k(p) / k!` with the default nilpotency bound.
pub fn exp_apply(d: &Derivation, t: &Rat, p: &BiPoly) -> Result<BiPoly, DerivationError> {
    exp_apply_with_bound(d, t, p, DEFAULT_NILPOTENCY_BOUND)
}

pub fn exp_apply_with_bound(d: &Derivation, t: &Rat, p: &BiPoly, bound: u32) -> Result<BiPoly, DerivationError> {
    if !is_nilpotent(d, bound).is_nilpotent() {
        return Err(DerivationError::NotLnd { bound });
    }
    Ok(exp_series(d, t, p))
}

/// The series for a derivation already known to be locally nilpotent.
pub(crate) fn exp_series(d: &Derivation, t: &Rat, p: &BiPoly) -> BiPoly {
    let mut out = p.clone();
    if t.is_zero() {
        return out;
    }
    let mut term = p.clone();
    let mut coef = Rat::one();
    let mut k = 1i64;
    loop {
        term = d.apply(&term);
        if term.is_zero() {
            return out;
        }
        coef = coef * t / Rat::from_integer(k.into());
        out += &term.scale(&coef);
        k += 1;
    }
}

/// Images `(exp(t d)(x), exp(t d)(y))`: the automorphism `exp(t d)` as a
/// polynomial map of the plane.
pub fn exp_map(d: &Derivation, t: &Rat) -> Result<(BiPoly, BiPoly), DerivationError> {
    if !is_nilpotent(d, DEFAULT_NILPOTENCY_BOUND).is_nilpotent() {
        return Err(DerivationError::NotLnd {
            bound: DEFAULT_NILPOTENCY_BOUND,
        });
    }
    Ok((exp_series(d, t, &BiPoly::x()), exp_series(d, t, &BiPoly::y())))
}

/// `u + Σ_{k≥1} t^k ad_d^k(u) / k!` with the default bound.
pub fn ad_exp(d: &Derivation, t: &Rat, u: &Derivation) -> Result<Derivation, DerivationError> {
    ad_exp_with_bound(d, t, u, DEFAULT_NILPOTENCY_BOUND)
}

pub fn ad_exp_with_bound(d: &Derivation, t: &Rat, u: &Derivation, bound: u32) -> Result<Derivation, DerivationError> {
    if !is_nilpotent(d, bound).is_nilpotent() {
        return Err(DerivationError::NotLnd { bound });
    }
    let mut out = u.clone();
    if t.is_zero() {
        return Ok(out);
    }
    let mut term = u.clone();
    let mut coef = Rat::one();
    for k in 1..=bound as i64 {
        term = d.bracket(&term);
        if term.is_zero() {
            return Ok(out);
        }
        coef = coef * t / Rat::from_integer(k.into());
        out = &out + &term.scale(&coef);
    }
    Err(DerivationError::AdSeriesNotTerminating { bound })
}
