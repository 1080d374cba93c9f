//! Exact uni- and bivariate polynomials over arbitrary-precision rationals.
//!
//! [`BiPoly`] is a sparse map from monomials to nonzero coefficients, kept in
//! graded lexicographic order (`x > y`) so that printing is canonical. Its text
//! form (`3/2*x^2*y - y^3`) round-trips exactly through [`BiPoly::from_str`].
//! [`UniPoly`] is a dense polynomial used for interpolants and the one-variable
//! shears `(x, y) ↦ (x, y + S(x))`.

mod bipoly;
mod hermite;
pub(crate) mod parse;
mod rat;
mod unipoly;

pub use bipoly::{BiPoly, Monomial};
pub use hermite::{hermite_interpolate, HermiteConstraint};
pub use rat::{parse_rat, rat, rat_frac, rat_serde, Rat};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("duplicate interpolation constraint at node {node} of order {order}")]
    DuplicateConstraint { node: String, order: u32 },
    #[error("derivative orders at node {node} skip order {missing}")]
    GapInOrders { node: String, missing: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `p(img_x, img_y)`, expanded.
pub fn substitute(p: &BiPoly, img_x: &BiPoly, img_y: &BiPoly) -> BiPoly {
    p.substitute(img_x, img_y)
}

/// Exact value of `p` at a rational point.
pub fn eval_point(p: &BiPoly, pt: (&Rat, &Rat)) -> Rat {
    p.eval(pt.0, pt.1)
}

pub fn poly_add(a: &BiPoly, b: &BiPoly) -> BiPoly {
    a + b
}

pub fn poly_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    a * b
}
