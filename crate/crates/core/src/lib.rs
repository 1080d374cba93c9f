//! Symbolic machinery for automorphism groups of the affine plane generated by
//! triangular shears: exact polynomials, derivations and their exponentials,
//! Demazure-root lattice combinatorics, closure certificates and explicit
//! point-moving witnesses.

pub mod automorphisms;
pub mod derivations;
pub mod exactpoly;
pub mod grading;
pub mod lattice;
pub mod transitivity;
