use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::{AdSource, CertBuilder, ClosureCertificate};
use super::grisha::grisha_into;
use super::TransitivityError;
use crate::grading::MVec;
use crate::lattice::{frobenius_bound, gcd_criterion, GcdVerdict, GeneratorSpec, RepresentableSet};

/// Certificates for the groups `K_n` reachable by iterated bracket steps
/// from `H_1` and the family's K-generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bootstrap {
    /// Every `n > n0` has `n - 1` representable by the gaps `d_j - 1`.
    pub n0: u64,
    /// Least `s` such that every `n ≥ s` is certifiable.
    pub threshold: u64,
    pub certificates: BTreeMap<u64, ClosureCertificate>,
}

/// Degrees `n` certifiable from `H_1` and `K_{d_j}`: the `d_j` themselves and
/// every `n ≥ 2` with `n - 1` a nonempty sum of gaps `d_j - 1`.
pub(crate) struct BootstrapPlan {
    spec: GeneratorSpec,
    reps: RepresentableSet,
    pub(crate) n0: u64,
    pub(crate) threshold: u64,
}

impl BootstrapPlan {
    pub(crate) fn new(spec: &GeneratorSpec, up_to: u64) -> Result<Self, TransitivityError> {
        if !spec.h_degrees().contains(&1) {
            return Err(TransitivityError::UnsupportedSpec(format!(
                "{spec} has no generator H_1"
            )));
        }
        match gcd_criterion(spec.k_degrees()) {
            Ok(GcdVerdict::Pass) => {}
            Ok(GcdVerdict::Fail(g)) => {
                return Err(TransitivityError::CriterionFails(format!(
                    "gcd of the d_j - 1 is {g}, not 1"
                )))
            }
            Err(e) => return Err(TransitivityError::CriterionFails(e.to_string())),
        }
        let gaps: Vec<u64> = spec.k_degrees().iter().map(|&d| d as u64 - 1).collect();
        let n0 = frobenius_bound(&gaps)?;
        let reps = RepresentableSet::new(&gaps, up_to.max(n0 + 2));
        let mut plan = BootstrapPlan {
            spec: spec.clone(),
            reps,
            n0,
            threshold: 0,
        };
        let mut s = (n0 + 1).max(2);
        while s > 1 && plan.certifiable(s - 1) {
            s -= 1;
        }
        plan.threshold = s;
        Ok(plan)
    }

    pub(crate) fn certifiable(&self, n: u64) -> bool {
        self.spec.k_degrees().contains(&(n as u32)) || (n >= 2 && self.reps.contains(n - 1))
    }

    /// Chains bracket steps along a representation of `n - 1`, largest gap
    /// first, each step pairing the degree reached so far with a generator.
    pub(crate) fn certificate(&self, n: u64) -> Result<ClosureCertificate, TransitivityError> {
        let mut b = CertBuilder::new(self.spec.clone());
        if self.spec.k_degrees().contains(&(n as u32)) {
            b.generator(MVec(n as i64, -1))?;
            return Ok(b.finish(None, Vec::new()));
        }
        let gaps = match n.checked_sub(1).and_then(|m| self.reps.representation(m)) {
            Some(g) if !g.is_empty() => g,
            _ => {
                return Err(TransitivityError::BadDegrees(format!(
                    "K_{n} is not reachable from {} by bracket steps",
                    self.spec
                )))
            }
        };
        let h1 = b.generator(MVec(-1, 1))?;
        let mut cur = gaps[0] + 1;
        let mut cur_src = AdSource::Root(MVec(cur as i64, -1));
        for &g in &gaps[1..] {
            let d = g + 1;
            let step = grisha_into(
                &mut b,
                h1,
                cur_src,
                AdSource::Root(MVec(d as i64, -1)),
                cur as u32,
                d as u32,
            )?;
            cur += g;
            cur_src = AdSource::Step(step);
        }
        Ok(b.finish(None, Vec::new()))
    }
}

/// Certificates for every certifiable `K_n` with `n ≤ up_to`, together with
/// the Frobenius bound `n0` of the gaps `d_j - 1`.
pub fn bootstrap_k_groups(spec: &GeneratorSpec, up_to: u64) -> Result<Bootstrap, TransitivityError> {
    let plan = BootstrapPlan::new(spec, up_to)?;
    let mut certificates = BTreeMap::new();
    for n in 1..=up_to {
        if plan.certifiable(n) {
            certificates.insert(n, plan.certificate(n)?);
        }
    }
    Ok(Bootstrap {
        n0: plan.n0,
        threshold: plan.threshold,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::Derivation;
    use crate::transitivity::certificate::verify_certificate;

    fn spec(h: &[u32], k: &[u32]) -> GeneratorSpec {
        GeneratorSpec::new(h.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn h1_k2_reaches_every_degree_from_two() {
        let b = bootstrap_k_groups(&spec(&[1], &[2]), 8).unwrap();
        assert_eq!(b.n0, 0);
        assert_eq!(b.threshold, 2);
        assert_eq!(
            b.certificates.keys().copied().collect::<Vec<_>>(),
            (2..=8).collect::<Vec<_>>()
        );
        for (n, c) in &b.certificates {
            assert_eq!(c.conclusion, Derivation::k(*n as u32));
            assert!(verify_certificate(c).is_valid(), "K_{n}");
        }
    }

    #[test]
    fn h1_k3_k4() {
        let b = bootstrap_k_groups(&spec(&[1], &[3, 4]), 10).unwrap();
        assert_eq!(b.n0, 2);
        assert_eq!(b.threshold, 3);
        assert_eq!(
            b.certificates.keys().copied().collect::<Vec<_>>(),
            (3..=10).collect::<Vec<_>>()
        );
        for (n, c) in &b.certificates {
            assert_eq!(c.conclusion, Derivation::k(*n as u32));
            assert!(verify_certificate(c).is_valid(), "K_{n}");
        }
    }

    #[test]
    fn failing_gcd() {
        assert!(matches!(
            bootstrap_k_groups(&spec(&[1], &[3, 5]), 10),
            Err(TransitivityError::CriterionFails(_))
        ));
        assert!(matches!(
            bootstrap_k_groups(&spec(&[2], &[2]), 10),
            Err(TransitivityError::UnsupportedSpec(_))
        ));
    }

    #[test]
    fn threshold_below_frobenius_bound_when_generators_fill_gaps() {
        // Gap 1 makes every n ≥ 2 reachable, and K_1 is a generator.
        let b = bootstrap_k_groups(&spec(&[1], &[5, 7, 2, 1]), 6).unwrap();
        assert_eq!(b.threshold, 1);
    }
}
