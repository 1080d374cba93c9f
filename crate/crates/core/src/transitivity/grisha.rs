use num_traits::{One, Zero};

use super::certificate::{AdSource, CertBuilder, ClosureCertificate};
use super::TransitivityError;
use crate::derivations::Derivation;
use crate::exactpoly::{rat, Rat};
use crate::grading::MVec;
use crate::lattice::GeneratorSpec;

/// `-d x^{2d-1} d/dy - (a+d) x^{a+d-1} d/dy - a x^{2a-1} d/dy`, the principal
/// part of `Ad_{K_a}(Ad_{K_d}(H_1))` on the side of least `y`-degree.
pub fn grisha_principal_formula(a: u32, d: u32) -> Derivation {
    let term = |c: i64, k: u32| Derivation::k(k).scale(&rat(-c));
    let sum = &term(d as i64, 2 * d - 1) + &term((a + d) as i64, a + d - 1);
    &sum + &term(a as i64, 2 * a - 1)
}

/// Appends the steps certifying `x^{a+d-1} d/dy` from `H_1` (step `h1`) and
/// the certified `x^a d/dy`, `x^d d/dy`; returns the step holding exactly
/// `x^{a+d-1} d/dy`.
pub(crate) fn grisha_into(
    b: &mut CertBuilder,
    h1: usize,
    ka: AdSource,
    kd: AdSource,
    a: u32,
    d: u32,
) -> Result<usize, TransitivityError> {
    let n = a + d - 1;
    let target = MVec(n as i64, -1);
    let conj_d = b.ad(kd, h1)?;
    let companion_d = b.principal_min_y(conj_d)?;
    let chain = b.ad(ka.clone(), conj_d)?;
    let principal = b.principal_min_y(chain)?;
    let extracted = if a == d {
        b.extract(target, principal)?
    } else {
        let conj_a = b.ad(ka, h1)?;
        let companion_a = b.principal_min_y(conj_a)?;
        let minus_one = -Rat::one();
        let rest = b.combine(vec![
            (principal, Rat::one()),
            (companion_d, minus_one.clone()),
            (companion_a, minus_one),
        ])?;
        b.extract(target, rest)?
    };
    let coef = b
        .value(extracted)
        .ratio_to(&Derivation::k(n))
        .filter(|c| !c.is_zero())
        .ok_or(TransitivityError::StageCollapse { stage: 0 })?;
    b.combine(vec![(extracted, Rat::one() / coef)])
}

/// Certificate that `K_{a+d-1}` lies in the closure of `⟨H_1, K_a, K_d⟩`.
pub fn grisha_step(a: u32, d: u32) -> Result<ClosureCertificate, TransitivityError> {
    if a == 0 || d == 0 {
        return Err(TransitivityError::BadDegrees(format!(
            "degrees must be positive, got a = {a}, d = {d}"
        )));
    }
    let mut ks = vec![a.min(d), a.max(d)];
    ks.dedup();
    let spec = GeneratorSpec::new(vec![1], ks)?;
    let mut b = CertBuilder::new(spec);
    let h1 = b.generator(MVec(-1, 1))?;
    let root = |k: u32| AdSource::Root(MVec(k as i64, -1));
    grisha_into(&mut b, h1, root(a), root(d), a, d)?;
    Ok(b.finish(None, Vec::new()))
}
