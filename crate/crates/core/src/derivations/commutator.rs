use num_bigint::BigInt;
use num_traits::Zero;

use super::{from_root, Derivation, DerivationError};
use crate::exactpoly::{BiPoly, Monomial, Rat};
use crate::grading::{falling_factorial, MVec, NVec};

/// `∂_{f,s}`: acts on monomials by `χ^m ↦ ⟨f, m⟩ χ^{m+s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogDerivation {
    pub linear: [BigInt; 2],
    pub degree: MVec,
}

impl HomogDerivation {
    pub fn new(linear: [BigInt; 2], degree: MVec) -> Self {
        HomogDerivation { linear, degree }
    }

    pub fn from_vec(f: NVec, degree: MVec) -> Self {
        HomogDerivation::new([f.0.into(), f.1.into()], degree)
    }

    /// The same operator stored by its images of `x` and `y`.
    pub fn to_derivation(&self) -> Result<Derivation, DerivationError> {
        let image = |coef: &BigInt, m: MVec| -> Result<BiPoly, DerivationError> {
            if coef.is_zero() {
                return Ok(BiPoly::zero());
            }
            if m.0 < 0 || m.1 < 0 {
                return Err(DerivationError::NotPolynomial(self.degree));
            }
            Ok(BiPoly::term(
                Rat::from_integer(coef.clone()),
                Monomial::new(m.0 as u32, m.1 as u32),
            ))
        };
        Ok(Derivation::new(
            image(&self.linear[0], MVec(1, 0) + self.degree)?,
            image(&self.linear[1], MVec(0, 1) + self.degree)?,
        ))
    }
}

fn check_roots(rho: NVec, roots: &[MVec]) -> Result<(), DerivationError> {
    if roots.is_empty() {
        return Err(DerivationError::EmptyRootList);
    }
    for (index, e) in roots.iter().enumerate() {
        let pairing = rho.pair(*e);
        if pairing != -1 {
            return Err(DerivationError::RootPairing { index, pairing });
        }
    }
    Ok(())
}

/// Closed form of `[…[[∂_{r,ε}, ∂_{ρ,e_1}], ∂_{ρ,e_2}] …, ∂_{ρ,e_k}]`:
/// degree `ε + e_1 + … + e_k` and linear part
/// `(-1)^{k+1} (x^{(k-1)} ⟨r, e_1+…+e_k⟩ ρ - x^{(k)} r)` where `x = ⟨ρ, ε⟩`
/// and `x^{(j)}` is the falling factorial.
pub fn iterated_commutator_closed_form(
    rho: NVec,
    r: NVec,
    eps: MVec,
    roots: &[MVec],
) -> Result<HomogDerivation, DerivationError> {
    check_roots(rho, roots)?;
    let k = roots.len() as u32;
    let x = rho.pair(eps);
    let total: MVec = roots.iter().copied().sum();
    let a = falling_factorial(x, k - 1) * BigInt::from(r.pair(total));
    let b = falling_factorial(x, k);
    let mut linear = [
        &a * BigInt::from(rho.0) - &b * BigInt::from(r.0),
        &a * BigInt::from(rho.1) - &b * BigInt::from(r.1),
    ];
    if k.is_multiple_of(2) {
        linear = [-&linear[0], -&linear[1]];
    }
    Ok(HomogDerivation::new(linear, eps + total))
}

/// The same nested bracket computed directly on derivations.
pub fn brute_force_iterated_commutator(
    rho: NVec,
    r: NVec,
    eps: MVec,
    roots: &[MVec],
) -> Result<Derivation, DerivationError> {
    check_roots(rho, roots)?;
    let mut acc = HomogDerivation::from_vec(r, eps).to_derivation()?;
    for e in roots {
        acc = acc.bracket(&from_root(rho, *e)?);
    }
    Ok(acc)
}
