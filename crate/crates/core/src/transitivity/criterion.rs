use serde::{Deserialize, Serialize};

use super::bootstrap::BootstrapPlan;
use super::certificate::ClosureCertificate;
use super::realize::realize_root_with;
use super::{Bounds, TransitivityError};
use crate::grading::MVec;
use crate::lattice::{
    cone_decompose, cone_decompose_exact, span_index, ConeResult, GeneratorSpec, LatticeError, SpanIndex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Answer {
    InfinitelyTransitive,
    NotTwoTransitive,
}

/// How the groups `K_n`, `n ≥ threshold`, are certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Iterated bracket steps from `H_1`; requires `gcd(d_j - 1) = 1`.
    Bootstrap,
    /// Stage-wise realization of cone decompositions.
    Cone,
}

/// Everything the point-moving construction needs: an H-generator degree
/// `t`, a threshold `s` with every `K_n`, `n ≥ s`, certifiable, and the
/// certificates for a window `[s, s + shift)` from which every larger degree
/// is reached by adding `shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessMachinery {
    pub route: Route,
    pub h_degree: u32,
    /// Frobenius bound of the gaps `d_j - 1` (bootstrap route only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<u64>,
    pub threshold: u64,
    pub shift: u64,
    pub certificates: Vec<ClosureCertificate>,
}

/// `value ≡ expected (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCheck {
    pub description: String,
    pub value: i64,
    pub expected: i64,
    pub modulus: u64,
}

impl CongruenceCheck {
    pub fn holds(&self) -> bool {
        (self.value - self.expected).rem_euclid(self.modulus as i64) == 0
    }
}

/// Why a family with a degenerate root lattice is not 2-transitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankDeficiency {
    /// Only K-generators: every generator fixes the `x`-coordinate.
    NoHGenerators,
    /// Only H-generators: every generator fixes the `y`-coordinate.
    NoKGenerators,
    /// Only `H_1` and `K_1`: every generator is linear, so pairs `(P, 2P)`
    /// stay of that form.
    LinearGenerators,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// With `ω` a primitive `m`-th root of unity, the set
    /// `{((z, w), (ω z, ω^{x(e_1)} w))}` is invariant under every generator
    /// exactly when the recorded congruences hold.
    Congruence {
        m: u64,
        checks: Vec<CongruenceCheck>,
    },
    RankDeficient {
        reason: RankDeficiency,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    WitnessMachinery(WitnessMachinery),
    Obstruction(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub evidence: Evidence,
}

/// The invariant-set obstruction for a family whose roots do not span the
/// whole lattice.
pub fn obstruction_certificate(spec: &GeneratorSpec) -> Result<Obstruction, TransitivityError> {
    if spec.h_degrees().is_empty() {
        return Ok(Obstruction::RankDeficient {
            reason: RankDeficiency::NoHGenerators,
        });
    }
    if spec.k_degrees().is_empty() {
        return Ok(Obstruction::RankDeficient {
            reason: RankDeficiency::NoKGenerators,
        });
    }
    let m = match span_index(spec) {
        SpanIndex::Index(1) => return Err(TransitivityError::CriterionHolds),
        SpanIndex::Index(m) => m,
        SpanIndex::NotFullRank => {
            return Ok(Obstruction::RankDeficient {
                reason: RankDeficiency::LinearGenerators,
            })
        }
    };
    let mut checks = Vec::new();
    for &d in spec.k_degrees() {
        for &c in spec.h_degrees() {
            checks.push(CongruenceCheck {
                description: format!("x(e) y(eps) for e = ({d},-1), eps = (-1,{c})"),
                value: d as i64 * c as i64,
                expected: 1,
                modulus: m,
            });
        }
    }
    let d1 = spec.k_degrees()[0] as i64;
    for &d in &spec.k_degrees()[1..] {
        checks.push(CongruenceCheck {
            description: format!("x(e_1) = {d1} against x(e) = {d}"),
            value: d1,
            expected: d as i64,
            modulus: m,
        });
    }
    if let Some(bad) = checks.iter().find(|c| !c.holds()) {
        return Err(TransitivityError::ObstructionFailed(bad.description.clone()));
    }
    Ok(Obstruction::Congruence { m, checks })
}

fn in_cone(spec: &GeneratorSpec, a: u64, bounds: &Bounds) -> Result<bool, TransitivityError> {
    let target = MVec(a as i64, -1);
    let r = match bounds.cone_search {
        Some(b) => cone_decompose(spec, target, b),
        None => cone_decompose_exact(spec, target),
    };
    match r {
        Ok(ConeResult::Found(_)) => Ok(true),
        Ok(ConeResult::NotInCone) => Ok(false),
        Err(LatticeError::SearchBoundExceeded { bound }) => Err(TransitivityError::SearchBoundExceeded { bound }),
        Err(e) => Err(e.into()),
    }
}

/// Least positive `c d - 1` over generator degrees: adding `(-1, c)` and `c`
/// copies of `(d, -1)` to a decomposition of `(a, -1)` decomposes
/// `(a + c d - 1, -1)`.
fn cone_shift(spec: &GeneratorSpec) -> Option<u64> {
    spec.h_degrees()
        .iter()
        .flat_map(|&c| spec.k_degrees().iter().map(move |&d| c as u64 * d as u64 - 1))
        .filter(|&v| v > 0)
        .min()
}

/// Largest degree scanned when locating the cone threshold.
const CONE_SCAN_LIMIT: u64 = 4096;

/// Route, H-degree, threshold and shift for a family passing the lattice
/// criterion, without certificates.
pub(crate) struct MachineryPlan {
    pub(crate) route: Route,
    pub(crate) h_degree: u32,
    pub(crate) n0: Option<u64>,
    pub(crate) threshold: u64,
    pub(crate) shift: u64,
}

pub(crate) fn plan_machinery(spec: &GeneratorSpec, bounds: &Bounds) -> Result<MachineryPlan, TransitivityError> {
    let h_degree = *spec
        .h_degrees()
        .iter()
        .min()
        .ok_or_else(|| TransitivityError::UnsupportedSpec(format!("{spec} has no H-generator")))?;
    if let Ok(plan) = BootstrapPlan::new(spec, 0) {
        let shift = spec
            .k_degrees()
            .iter()
            .map(|&d| d as u64 - 1)
            .filter(|&g| g > 0)
            .min()
            .expect("gcd 1 forces a positive gap");
        return Ok(MachineryPlan {
            route: Route::Bootstrap,
            h_degree,
            n0: Some(plan.n0),
            threshold: plan.threshold,
            shift,
        });
    }
    let shift =
        cone_shift(spec).ok_or_else(|| TransitivityError::CriterionFails(format!("{spec} has no positive shift")))?;
    let mut run_start = None;
    let mut threshold = None;
    for a in 1..=CONE_SCAN_LIMIT {
        if in_cone(spec, a, bounds)? {
            let start = *run_start.get_or_insert(a);
            if a + 1 - start >= shift {
                threshold = Some(start);
                break;
            }
        } else {
            run_start = None;
        }
    }
    let threshold = threshold.ok_or(TransitivityError::SearchBoundExceeded { bound: CONE_SCAN_LIMIT })?;
    Ok(MachineryPlan {
        route: Route::Cone,
        h_degree,
        n0: None,
        threshold,
        shift,
    })
}

/// Certificate for `K_n` along the given route.
pub(crate) fn certify_k(
    spec: &GeneratorSpec,
    route: Route,
    n: u64,
    bounds: &Bounds,
) -> Result<ClosureCertificate, TransitivityError> {
    match route {
        Route::Bootstrap => BootstrapPlan::new(spec, n)?.certificate(n),
        Route::Cone => realize_root_with(spec, MVec(n as i64, -1), bounds),
    }
}

/// Certificates and threshold for a family passing the lattice criterion.
pub fn witness_machinery(spec: &GeneratorSpec, bounds: &Bounds) -> Result<WitnessMachinery, TransitivityError> {
    let plan = plan_machinery(spec, bounds)?;
    let certificates = (plan.threshold..plan.threshold + plan.shift)
        .map(|n| certify_k(spec, plan.route, n, bounds))
        .collect::<Result<_, _>>()?;
    Ok(WitnessMachinery {
        route: plan.route,
        h_degree: plan.h_degree,
        n0: plan.n0,
        threshold: plan.threshold,
        shift: plan.shift,
        certificates,
    })
}

pub fn check_spec(spec: &GeneratorSpec) -> Result<Verdict, TransitivityError> {
    check_spec_with(spec, &Bounds::default())
}

/// Infinitely transitive iff the roots span the whole lattice; the evidence
/// is either the witness machinery or an invariant-set obstruction.
pub fn check_spec_with(spec: &GeneratorSpec, bounds: &Bounds) -> Result<Verdict, TransitivityError> {
    if spec.h_degrees().is_empty() && spec.k_degrees().is_empty() {
        return Err(TransitivityError::EmptySpec);
    }
    if span_index(spec) == SpanIndex::Index(1) {
        Ok(Verdict {
            answer: Answer::InfinitelyTransitive,
            evidence: Evidence::WitnessMachinery(witness_machinery(spec, bounds)?),
        })
    } else {
        Ok(Verdict {
            answer: Answer::NotTwoTransitive,
            evidence: Evidence::Obstruction(obstruction_certificate(spec)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{gcd_criterion, GcdVerdict};
    use crate::transitivity::certificate::verify_certificate;

    fn spec(h: &[u32], k: &[u32]) -> GeneratorSpec {
        GeneratorSpec::new(h.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let v = check_spec(&spec(&[1], &[2])).unwrap();
        assert_eq!(v.answer, Answer::InfinitelyTransitive);
        let v = check_spec(&spec(&[1], &[3, 5, 7])).unwrap();
        assert_eq!(v.answer, Answer::NotTwoTransitive);
        assert!(matches!(
            v.evidence,
            Evidence::Obstruction(Obstruction::Congruence { m: 2, .. })
        ));
        let v = check_spec(&spec(&[2], &[2, 3, 4])).unwrap();
        assert_eq!(v.answer, Answer::InfinitelyTransitive);
        match v.evidence {
            Evidence::WitnessMachinery(w) => {
                assert_eq!(w.route, Route::Cone);
                assert_eq!(w.threshold, 2);
                assert_eq!(w.shift, 3);
                for c in &w.certificates {
                    assert!(verify_certificate(c).is_valid());
                }
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn obstruction_examples() {
        match obstruction_certificate(&spec(&[1], &[3, 5])).unwrap() {
            Obstruction::Congruence { m, checks } => {
                assert_eq!(m, 2);
                assert_eq!(checks.len(), 3);
                assert!(checks.iter().all(CongruenceCheck::holds));
            }
            o => panic!("{o:?}"),
        }
        assert!(matches!(
            obstruction_certificate(&spec(&[1], &[2])),
            Err(TransitivityError::CriterionHolds)
        ));
        match obstruction_certificate(&spec(&[3], &[3])).unwrap() {
            Obstruction::Congruence { m, checks } => {
                assert_eq!(m, 8);
                assert_eq!(checks[0].value, 9);
                assert!(checks[0].holds());
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(
            obstruction_certificate(&spec(&[], &[2, 3])).unwrap(),
            Obstruction::RankDeficient {
                reason: RankDeficiency::NoHGenerators
            }
        );
        assert_eq!(
            obstruction_certificate(&spec(&[1], &[1, 1])).unwrap(),
            Obstruction::RankDeficient {
                reason: RankDeficiency::LinearGenerators
            }
        );
    }

    #[test]
    fn agrees_with_gcd_criterion_on_small_h1_family() {
        for d1 in 2..=5u32 {
            for d2 in d1..=5u32 {
                let s = spec(&[1], &[d1, d2]);
                let v = check_spec(&s).unwrap();
                let pass = gcd_criterion(s.k_degrees()).unwrap() == GcdVerdict::Pass;
                assert_eq!(v.answer == Answer::InfinitelyTransitive, pass, "{s}");
            }
        }
    }

    #[test]
    fn mixed_family_uses_cone_route() {
        // gcd(d - 1) = 2 but H_2 fills the lattice.
        let v = check_spec(&spec(&[1, 2], &[3, 5])).unwrap();
        match v.evidence {
            Evidence::WitnessMachinery(w) => {
                assert_eq!(w.route, Route::Cone);
                assert_eq!(w.h_degree, 1);
                for c in &w.certificates {
                    assert!(verify_certificate(c).is_valid());
                }
            }
            e => panic!("{e:?}"),
        }
    }
}
