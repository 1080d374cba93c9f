//! Integer-lattice computations on the root vectors `ε_i = (-1, c_i)` and
//! `e_j = (d_j, -1)` of a generator family: span index, the gcd criterion,
//! Frobenius bounds and decompositions of `(a, -1)` in the cone they span.

mod cone;
mod frobenius;
mod index;
mod spec;

pub use cone::{cone_decompose, cone_decompose_exact, ConeDecomposition, ConeResult};
pub use frobenius::{frobenius_bound, frobenius_number, representation, RepresentableSet};
pub use index::{gcd_criterion, span_index, GcdVerdict, SpanIndex};
pub use spec::GeneratorSpec;

use thiserror::Error;

use crate::grading::MVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the generator family is empty")]
    EmptySpec,
    #[error("empty list of degrees")]
    EmptyList,
    #[error("the gaps {0:?} do not have gcd 1")]
    GcdNotOne(Vec<u64>),
    #[error("target {0} must have second coordinate -1 and first coordinate >= 0")]
    BadTarget(MVec),
    #[error("search bound {bound} exhausted without deciding cone membership")]
    SearchBoundExceeded { bound: u64 },
    #[error("degree-0 generators are translations and move the origin")]
    ZeroDegree,
}
