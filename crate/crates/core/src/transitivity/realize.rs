use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::certificate::{AdSource, CertBuilder, ClosureCertificate, StageRecord};
use super::{Bounds, TransitivityError};
use crate::derivations::from_root;
use crate::exactpoly::Rat;
use crate::grading::{MVec, NVec};
use crate::lattice::{
    cone_decompose, cone_decompose_exact, ConeDecomposition, ConeResult, GeneratorSpec, LatticeError,
};

/// One stage of a root realization: conjugate `∂_mu` by `∂_{phi_prev}` and
/// then by each root of `block`, and read off the piece of degree `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub mu: MVec,
    pub phi_prev: MVec,
    pub block: Vec<MVec>,
    pub phi: MVec,
}

/// Splits a decomposition into stages. The first `nu` serves as `phi_0`;
/// the stage of `mu = (-1, c)` consumes the next `c` of the `nu`'s, so every
/// `phi_i` has second coordinate `-1`.
pub fn phi_sequence(dec: &ConeDecomposition) -> Vec<Stage> {
    let mut stages = Vec::with_capacity(dec.mu.len());
    let Some(&first) = dec.nu.first() else {
        return stages;
    };
    let mut phi = first;
    let mut next = 1;
    for &mu in &dec.mu {
        let c = mu.1 as usize;
        let block = dec.nu[next..next + c].to_vec();
        next += c;
        let new_phi = phi + mu + block.iter().copied().sum::<MVec>();
        assert_eq!(
            new_phi.1, -1,
            "stage degree {new_phi} has second coordinate other than -1"
        );
        stages.push(Stage {
            mu,
            phi_prev: phi,
            block,
            phi: new_phi,
        });
        phi = new_phi;
    }
    assert_eq!(next, dec.nu.len(), "decomposition has unused K-roots");
    stages
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// The coefficient `κ` with `(chain)_{phi} = κ ∂_phi` for a stage conjugated
/// with `t = 1` and unit-normalized `∂_mu`, `∂_{phi_prev}` and block roots.
///
/// The piece of degree `phi` collects `ad_{u_k}^{p_k} ⋯ ad_{u_0}^{p_0}(∂_mu) / Π p_j!`
/// over exponents with `Σ p_j = c + 1` and `Σ p_j x(u_j) = a + 1`, where
/// `mu = (-1, c)`, `phi = (a, -1)`, `u_0 = phi_prev` and `u_1, …` the block.
/// Each nested commutator equals `-c! (a + 1) ∂_phi` by the closed form for
/// iterated commutators, so `κ = -c! (a + 1) W` with `W = Σ 1/Π p_j!`.
pub fn stage_coefficient(stage: &Stage) -> Rat {
    let c = stage.mu.1 as u64;
    let a = stage.phi.0;
    let us: Vec<i64> = std::iter::once(stage.phi_prev.0)
        .chain(stage.block.iter().map(|v| v.0))
        .collect();
    fn walk(us: &[i64], left: u64, need: i64, denom: BigInt, acc: &mut Rat) {
        match us.split_first() {
            None => {
                if left == 0 && need == 0 {
                    *acc += Rat::new(BigInt::one(), denom);
                }
            }
            Some((&u, rest)) => {
                for p in 0..=left {
                    let used = u * p as i64;
                    if used > need {
                        break;
                    }
                    walk(rest, left - p, need - used, &denom * factorial(p), acc);
                }
            }
        }
    }
    let mut w = Rat::zero();
    walk(&us, c + 1, a + 1, BigInt::one(), &mut w);
    -Rat::from_integer(factorial(c) * BigInt::from(a + 1)) * w
}

pub fn realize_root(spec: &GeneratorSpec, target: MVec) -> Result<ClosureCertificate, TransitivityError> {
    realize_root_with(spec, target, &Bounds::default())
}

/// Certificate for `K_a`, `target = (a, -1)`, built stage by stage from a
/// cone decomposition. Intermediate `∂_{phi_i}` are rescaled to unit
/// coefficient before conjugating by them; the conclusion is
/// `κ_last x^a d/dy`.
pub fn realize_root_with(
    spec: &GeneratorSpec,
    target: MVec,
    bounds: &Bounds,
) -> Result<ClosureCertificate, TransitivityError> {
    let found = match bounds.cone_search {
        Some(b) => cone_decompose(spec, target, b),
        None => cone_decompose_exact(spec, target),
    };
    let dec = match found {
        Ok(ConeResult::Found(dec)) => dec,
        Ok(ConeResult::NotInCone) => return Err(TransitivityError::NotInCone(target)),
        Err(LatticeError::SearchBoundExceeded { bound }) => {
            return Err(TransitivityError::SearchBoundExceeded { bound })
        }
        Err(e) => return Err(e.into()),
    };
    realize_decomposition(spec, dec, bounds)
}

pub(crate) fn realize_decomposition(
    spec: &GeneratorSpec,
    dec: ConeDecomposition,
    bounds: &Bounds,
) -> Result<ClosureCertificate, TransitivityError> {
    let mut b = CertBuilder::with_bound(spec.clone(), bounds.nilpotency);
    if dec.mu.is_empty() {
        b.generator(dec.target)?;
        return Ok(b.finish(Some(dec), Vec::new()));
    }
    let stages = phi_sequence(&dec);
    let mut records = Vec::with_capacity(stages.len());
    let mut prev = AdSource::Root(stages[0].phi_prev);
    for (k, st) in stages.iter().enumerate() {
        let mu = b.generator(st.mu)?;
        let mut cur = b.ad(prev.clone(), mu)?;
        for &v in &st.block {
            cur = b.ad(AdSource::Root(v), cur)?;
        }
        let principal = b.principal_min_y(cur)?;
        let root = from_root(NVec::RAY_Y, st.phi)?;
        let coefficient = b
            .value(principal)
            .piece(st.phi)
            .ratio_to(&root)
            .filter(|c| !c.is_zero())
            .ok_or(TransitivityError::StageCollapse { stage: k })?;
        let extracted = b.extract(st.phi, principal)?;
        records.push(StageRecord {
            mu: st.mu,
            phi_prev: st.phi_prev,
            block: st.block.clone(),
            phi: st.phi,
            coefficient: coefficient.clone(),
            step: extracted,
        });
        if k + 1 < stages.len() {
            let unit = b.combine(vec![(extracted, Rat::one() / coefficient)])?;
            prev = AdSource::Step(unit);
        }
    }
    Ok(b.finish(Some(dec), records))
}
