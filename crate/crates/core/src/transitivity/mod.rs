//! Closure certificates, root realization, the transitivity criterion with
//! its obstruction, and explicit point-moving words.
//!
//! A closure certificate is a register machine over derivations: each step
//! produces a locally nilpotent derivation whose one-parameter group lies in
//! the closure of the group generated by a family of shears, justified by the
//! steps before it.

mod bootstrap;
mod certificate;
mod criterion;
mod grisha;
mod realize;
mod witness;

pub use bootstrap::{bootstrap_k_groups, Bootstrap};
pub use certificate::{
    replay, verify_certificate, verify_certificate_with_bound, AdSource, CertStep, CertVerdict, ClosureCertificate,
    CombineTerm, StageRecord,
};
pub use criterion::{
    check_spec, check_spec_with, obstruction_certificate, witness_machinery, Answer, CongruenceCheck, Evidence,
    Obstruction, RankDeficiency, Route, Verdict, WitnessMachinery,
};
pub use grisha::{grisha_principal_formula, grisha_step};
pub use realize::{phi_sequence, realize_root, realize_root_with, stage_coefficient, Stage};
pub use witness::{
    build_witness, k_letter_degrees, witness_in_spec, witness_in_spec_with, SpecWitness, WitnessRequest,
};

use thiserror::Error;

use crate::derivations::{DerivationError, DEFAULT_NILPOTENCY_BOUND};
use crate::exactpoly::PolyError;
use crate::grading::MVec;
use crate::lattice::LatticeError;

/// Search limits shared by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Iterations allowed when establishing local nilpotency.
    pub nilpotency: u32,
    /// Cap on the number of summands in cone decompositions; `None` picks
    /// the exact cap when one exists.
    pub cone_search: Option<u64>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            nilpotency: DEFAULT_NILPOTENCY_BOUND,
            cone_search: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransitivityError {
    #[error("bad degrees: {0}")]
    BadDegrees(String),
    #[error("the criterion fails: {0}")]
    CriterionFails(String),
    #[error("the roots span the whole lattice; there is no obstruction")]
    CriterionHolds,
    #[error("obstruction check failed: {0}")]
    ObstructionFailed(String),
    #[error("{0} is not in the cone of the generators' roots")]
    NotInCone(MVec),
    #[error("search bound {bound} exhausted")]
    SearchBoundExceeded { bound: u64 },
    #[error("stage {stage} produced a zero summand")]
    StageCollapse { stage: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("step {step} of the witness construction failed")]
    StepFailure { step: u8 },
    #[error("unsupported family: {0}")]
    UnsupportedSpec(String),
    #[error("the generator family is empty")]
    EmptySpec,
    #[error("certificate step {step} failed: {reason}")]
    Replay { step: usize, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
