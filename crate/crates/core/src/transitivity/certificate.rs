use serde::{Deserialize, Serialize};

use num_traits::Zero;

use super::TransitivityError;
use crate::derivations::{
    ad_exp_with_bound, homog_decompose, is_nilpotent, principal_part_at, root_derivation, Derivation, Side,
    TorusDirection, DEFAULT_NILPOTENCY_BOUND,
};
use crate::exactpoly::{rat_serde, Rat};
use crate::grading::MVec;
use crate::lattice::{ConeDecomposition, GeneratorSpec};

/// What an `ad` step conjugates by: a generator's root derivation or the
/// result of an earlier step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AdSource {
    Root(MVec),
    Step(usize),
}

/// `(step index, coefficient)` in a linear combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombineTerm(pub usize, #[serde(with = "rat_serde")] pub Rat);

/// One step of a closure certificate. Steps taking an input read it from
/// `src`, defaulting to the previous step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum CertStep {
    /// The root derivation of a generator.
    #[serde(rename = "generator")]
    UseGenerator { root: MVec },
    /// `exp(t ad_by)(src) = Σ t^k ad_by^k(src) / k!`, the image of `src` under
    /// conjugation by `exp(-t by)`.
    #[serde(rename = "ad")]
    AdConjugate {
        by: AdSource,
        #[serde(with = "rat_serde")]
        t: Rat,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        src: Option<usize>,
    },
    /// The principal part of `src` for a one-parameter torus.
    #[serde(rename = "principal")]
    PrincipalPart {
        dir: TorusDirection,
        #[serde(default)]
        side: Side,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        src: Option<usize>,
    },
    /// The homogeneous piece of degree `deg` of `src`, whose pieces must be
    /// commuting root derivations of one ray.
    #[serde(rename = "extract")]
    ExtractSummand {
        deg: MVec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        src: Option<usize>,
    },
    /// A linear combination of pairwise commuting earlier results.
    #[serde(rename = "combine")]
    LinearCombine { terms: Vec<CombineTerm> },
}

/// One stage of a root realization: the chain
/// `Ad_{block_last}(… Ad_{block_1}(Ad_{phi_prev}(∂_mu)))` whose degree-`phi`
/// piece, extracted at step `step`, equals `coefficient · ∂_phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub mu: MVec,
    pub phi_prev: MVec,
    pub block: Vec<MVec>,
    pub phi: MVec,
    #[serde(with = "rat_serde")]
    pub coefficient: Rat,
    pub step: usize,
}

/// A replayable derivation that the conclusion generates a one-parameter
/// subgroup of the closure of the group generated by `spec`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub spec: GeneratorSpec,
    pub steps: Vec<CertStep>,
    pub conclusion: Derivation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<ConeDecomposition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<StageRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum CertVerdict {
    Valid,
    /// `step == steps.len()` refers to the conclusion or the stage records.
    Invalid {
        step: usize,
        reason: String,
    },
}

impl CertVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertVerdict::Valid)
    }
}

fn input(values: &[Derivation], i: usize, src: Option<usize>) -> Result<&Derivation, String> {
    let j = match src {
        Some(j) => j,
        None => i.checked_sub(1).ok_or("no previous step to read from")?,
    };
    if j >= i {
        return Err(format!("input step {j} is not earlier than step {i}"));
    }
    Ok(&values[j])
}

fn generator(spec: &GeneratorSpec, root: MVec) -> Result<Derivation, String> {
    if !spec.contains_root(root) {
        return Err(format!("{root} is not a root of a generator of {spec}"));
    }
    root_derivation(root).map(|(_, d)| d).map_err(|e| e.to_string())
}

fn check_nilpotent(d: &Derivation, bound: u32) -> Result<(), String> {
    if is_nilpotent(d, bound).is_nilpotent() {
        Ok(())
    } else {
        Err(format!("result is not locally nilpotent within {bound} iterations"))
    }
}

/// Computes step `i` from the earlier results, checking its precondition.
pub(crate) fn replay_step(
    spec: &GeneratorSpec,
    step: &CertStep,
    i: usize,
    values: &[Derivation],
    bound: u32,
) -> Result<Derivation, String> {
    match step {
        CertStep::UseGenerator { root } => generator(spec, *root),
        CertStep::AdConjugate { by, t, src } => {
            let by = match by {
                AdSource::Root(e) => generator(spec, *e)?,
                AdSource::Step(j) => input(values, i, Some(*j))?.clone(),
            };
            let src = input(values, i, *src)?;
            ad_exp_with_bound(&by, t, src, bound).map_err(|e| e.to_string())
        }
        CertStep::PrincipalPart { dir, side, src } => {
            let out = principal_part_at(input(values, i, *src)?, *dir, *side).map_err(|e| e.to_string())?;
            check_nilpotent(&out, bound)?;
            Ok(out)
        }
        CertStep::ExtractSummand { deg, src } => {
            let pieces = homog_decompose(input(values, i, *src)?);
            let mut ray = None;
            for (e, p) in &pieces {
                let (rho, root) =
                    root_derivation(*e).map_err(|_| format!("piece of degree {e} is not a root derivation"))?;
                if p.ratio_to(&root).is_none() {
                    return Err(format!("piece of degree {e} is not a multiple of a root derivation"));
                }
                if *ray.get_or_insert(rho) != rho {
                    return Err("pieces belong to different rays".to_string());
                }
            }
            for (a, (_, p)) in pieces.iter().enumerate() {
                for (_, q) in &pieces[a + 1..] {
                    if !p.bracket(q).is_zero() {
                        return Err("pieces do not commute".to_string());
                    }
                }
            }
            pieces
                .into_iter()
                .find(|(e, _)| e == deg)
                .map(|(_, p)| p)
                .ok_or_else(|| format!("degree {deg} is not in the support"))
        }
        CertStep::LinearCombine { terms } => {
            if terms.is_empty() {
                return Err("empty combination".to_string());
            }
            let inputs = terms
                .iter()
                .map(|CombineTerm(j, _)| input(values, i, Some(*j)))
                .collect::<Result<Vec<_>, _>>()?;
            for (a, p) in inputs.iter().enumerate() {
                for q in &inputs[a + 1..] {
                    if !p.bracket(q).is_zero() {
                        return Err("combined derivations do not commute".to_string());
                    }
                }
            }
            let out = terms
                .iter()
                .zip(&inputs)
                .fold(Derivation::zero(), |acc, (CombineTerm(_, c), d)| &acc + &d.scale(c));
            if out.is_zero() {
                return Err("combination is zero".to_string());
            }
            check_nilpotent(&out, bound)?;
            Ok(out)
        }
    }
}

/// Every step's result, or the first failing step.
pub fn replay(cert: &ClosureCertificate, bound: u32) -> Result<Vec<Derivation>, (usize, String)> {
    let mut values = Vec::with_capacity(cert.steps.len());
    for (i, step) in cert.steps.iter().enumerate() {
        let v = replay_step(&cert.spec, step, i, &values, bound).map_err(|r| (i, r))?;
        values.push(v);
    }
    Ok(values)
}

pub fn verify_certificate(cert: &ClosureCertificate) -> CertVerdict {
    verify_certificate_with_bound(cert, DEFAULT_NILPOTENCY_BOUND)
}

/// Replays every step; `Valid` iff each precondition holds, the last result
/// equals the conclusion and every stage record matches its step.
pub fn verify_certificate_with_bound(cert: &ClosureCertificate, bound: u32) -> CertVerdict {
    let end = cert.steps.len();
    let invalid = |step, reason: String| CertVerdict::Invalid { step, reason };
    let values = match replay(cert, bound) {
        Ok(v) => v,
        Err((step, reason)) => return invalid(step, reason),
    };
    match values.last() {
        None => return invalid(end, "no steps".to_string()),
        Some(last) if *last != cert.conclusion => {
            return invalid(
                end,
                format!("replay gives {last}, conclusion states {}", cert.conclusion),
            )
        }
        _ => {}
    }
    if let Some(dec) = &cert.decomposition {
        if dec.sum() != dec.target {
            return invalid(end, "decomposition does not sum to its target".to_string());
        }
    }
    for (k, st) in cert.stages.iter().enumerate() {
        let Some(v) = values.get(st.step) else {
            return invalid(end, format!("stage {k} names a missing step"));
        };
        let Ok((_, root)) = root_derivation(st.phi) else {
            return invalid(end, format!("stage {k}: {} is not a root", st.phi));
        };
        if st.coefficient.is_zero() || *v != root.scale(&st.coefficient) {
            return invalid(
                end,
                format!(
                    "stage {k}: step {} is not {} times the root derivation",
                    st.step, st.coefficient
                ),
            );
        }
    }
    CertVerdict::Valid
}

/// Incremental construction with every step replayed as it is added.
pub(crate) struct CertBuilder {
    spec: GeneratorSpec,
    steps: Vec<CertStep>,
    values: Vec<Derivation>,
    bound: u32,
}

impl CertBuilder {
    pub(crate) fn new(spec: GeneratorSpec) -> Self {
        CertBuilder::with_bound(spec, DEFAULT_NILPOTENCY_BOUND)
    }

    pub(crate) fn with_bound(spec: GeneratorSpec, bound: u32) -> Self {
        CertBuilder {
            spec,
            steps: Vec::new(),
            values: Vec::new(),
            bound,
        }
    }

    pub(crate) fn push(&mut self, step: CertStep) -> Result<usize, TransitivityError> {
        let i = self.steps.len();
        let v = replay_step(&self.spec, &step, i, &self.values, self.bound)
            .map_err(|reason| TransitivityError::Replay { step: i, reason })?;
        self.steps.push(step);
        self.values.push(v);
        Ok(i)
    }

    pub(crate) fn value(&self, i: usize) -> &Derivation {
        &self.values[i]
    }

    pub(crate) fn generator(&mut self, root: MVec) -> Result<usize, TransitivityError> {
        self.push(CertStep::UseGenerator { root })
    }

    pub(crate) fn ad(&mut self, by: AdSource, src: usize) -> Result<usize, TransitivityError> {
        self.push(CertStep::AdConjugate {
            by,
            t: Rat::from_integer(1.into()),
            src: Some(src),
        })
    }

    /// Principal part for the torus `(0, 1)` on the side of least `y`-degree.
    pub(crate) fn principal_min_y(&mut self, src: usize) -> Result<usize, TransitivityError> {
        self.push(CertStep::PrincipalPart {
            dir: TorusDirection::new(crate::grading::NVec::RAY_Y)?,
            side: Side::Min,
            src: Some(src),
        })
    }

    pub(crate) fn extract(&mut self, deg: MVec, src: usize) -> Result<usize, TransitivityError> {
        self.push(CertStep::ExtractSummand { deg, src: Some(src) })
    }

    pub(crate) fn combine(&mut self, terms: Vec<(usize, Rat)>) -> Result<usize, TransitivityError> {
        self.push(CertStep::LinearCombine {
            terms: terms.into_iter().map(|(i, c)| CombineTerm(i, c)).collect(),
        })
    }

    pub(crate) fn finish(
        self,
        decomposition: Option<ConeDecomposition>,
        stages: Vec<StageRecord>,
    ) -> ClosureCertificate {
        ClosureCertificate {
            conclusion: self.values.last().cloned().unwrap_or_default(),
            spec: self.spec,
            steps: self.steps,
            decomposition,
            stages,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::TorusDirection;
    use crate::grading::NVec;

    fn spec(h: &[u32], k: &[u32]) -> GeneratorSpec {
        GeneratorSpec::new(h.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn single_generator_certificate() {
        let cert = ClosureCertificate {
            spec: spec(&[1], &[2]),
            steps: vec![CertStep::UseGenerator { root: MVec(2, -1) }],
            conclusion: Derivation::k(2),
            decomposition: None,
            stages: Vec::new(),
        };
        assert_eq!(verify_certificate(&cert), CertVerdict::Valid);
        let mut wrong = cert.clone();
        wrong.conclusion = Derivation::k(3);
        assert!(matches!(
            verify_certificate(&wrong),
            CertVerdict::Invalid { step: 1, .. }
        ));
        let mut foreign = cert;
        foreign.steps = vec![CertStep::UseGenerator { root: MVec(3, -1) }];
        foreign.conclusion = Derivation::k(3);
        assert!(matches!(
            verify_certificate(&foreign),
            CertVerdict::Invalid { step: 0, .. }
        ));
    }

    #[test]
    fn extraction_of_absent_degree_is_invalid() {
        let steps = vec![
            CertStep::UseGenerator { root: MVec(-1, 1) },
            CertStep::AdConjugate {
                by: AdSource::Root(MVec(2, -1)),
                t: Rat::from_integer(1.into()),
                src: None,
            },
            CertStep::PrincipalPart {
                dir: TorusDirection::new(NVec::RAY_Y).unwrap(),
                side: Side::Min,
                src: None,
            },
            CertStep::ExtractSummand {
                deg: MVec(7, -1),
                src: None,
            },
        ];
        let cert = ClosureCertificate {
            spec: spec(&[1], &[2]),
            steps,
            conclusion: Derivation::k(7),
            decomposition: None,
            stages: Vec::new(),
        };
        match verify_certificate(&cert) {
            CertVerdict::Invalid { step, reason } => {
                assert_eq!(step, 3);
                assert!(reason.contains("support"), "{reason}");
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn extraction_needs_one_ray() {
        // y d/dx + x^2 d/dy mixes the two rays.
        let steps = vec![
            CertStep::UseGenerator { root: MVec(-1, 1) },
            CertStep::UseGenerator { root: MVec(2, -1) },
            CertStep::LinearCombine {
                terms: vec![
                    CombineTerm(0, Rat::from_integer(1.into())),
                    CombineTerm(1, Rat::from_integer(1.into())),
                ],
            },
        ];
        let cert = ClosureCertificate {
            spec: spec(&[1], &[2]),
            steps,
            conclusion: Derivation::zero(),
            decomposition: None,
            stages: Vec::new(),
        };
        assert!(matches!(
            verify_certificate(&cert),
            CertVerdict::Invalid { step: 2, .. }
        ));
    }

    #[test]
    fn json_round_trip() {
        let steps = vec![
            CertStep::UseGenerator { root: MVec(-1, 1) },
            CertStep::AdConjugate {
                by: AdSource::Root(MVec(2, -1)),
                t: Rat::from_integer(1.into()),
                src: None,
            },
            CertStep::AdConjugate {
                by: AdSource::Step(0),
                t: Rat::new(1.into(), 2.into()),
                src: Some(1),
            },
            CertStep::PrincipalPart {
                dir: TorusDirection::new(NVec::RAY_Y).unwrap(),
                side: Side::Min,
                src: None,
            },
            CertStep::LinearCombine {
                terms: vec![CombineTerm(3, Rat::new((-1).into(), 2.into()))],
            },
        ];
        let json = serde_json::to_string(&steps).unwrap();
        assert!(json.contains(r#"{"op":"ad","by":[2,-1],"t":"1"}"#), "{json}");
        assert!(json.contains(r#""by":0"#), "{json}");
        assert!(
            json.contains(r#"{"op":"principal","dir":[0,1],"side":"min"}"#),
            "{json}"
        );
        assert!(json.contains(r#"{"op":"combine","terms":[[3,"-1/2"]]}"#), "{json}");
        let back: Vec<CertStep> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, steps);
        let defaulted: CertStep = serde_json::from_str(r#"{"op":"principal","dir":[0,1]}"#).unwrap();
        assert!(matches!(
            defaulted,
            CertStep::PrincipalPart {
                side: Side::Max,
                src: None,
                ..
            }
        ));
    }
}
