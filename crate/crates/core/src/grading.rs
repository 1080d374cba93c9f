//! The standard torus grading of the plane: character lattice `M`, the lattice
//! of one-parameter subgroups `N`, and the pairing between them.
//!
//! A monomial `x^a y^b` has degree `(a, b)` in `M`. The positive quadrant of
//! `N` is spanned by the two rays `(1, 0)` and `(0, 1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// A vector of the character lattice `M` (degrees of monomials and of
/// homogeneous derivations).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct MVec(pub i64, pub i64);

/// A vector of the lattice `N` of one-parameter subgroups of the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct NVec(pub i64, pub i64);

macro_rules! lattice_vector {
    ($t:ident) => {
        impl From<[i64; 2]> for $t {
            fn from(v: [i64; 2]) -> Self {
                $t(v[0], v[1])
            }
        }

        impl From<$t> for [i64; 2] {
            fn from(v: $t) -> Self {
                [v.0, v.1]
            }
        }

        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $t(self.0 + rhs.0, self.1 + rhs.1)
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $t(self.0 - rhs.0, self.1 - rhs.1)
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(-self.0, -self.1)
            }
        }

        impl Mul<$t> for i64 {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $t(self * rhs.0, self * rhs.1)
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({},{})", self.0, self.1)
            }
        }

        impl std::iter::Sum for $t {
            fn sum<I: Iterator<Item = $t>>(iter: I) -> $t {
                iter.fold($t(0, 0), |a, b| a + b)
            }
        }
    };
}

lattice_vector!(MVec);
lattice_vector!(NVec);

impl MVec {
    pub const ZERO: MVec = MVec(0, 0);

    pub fn x(self) -> i64 {
        self.0
    }

    pub fn y(self) -> i64 {
        self.1
    }
}

impl NVec {
    /// Ray generator of the `x`-axis of `N`; its Demazure roots are the
    /// degrees `(-1, c)` of `y^c d/dx`.
    pub const RAY_X: NVec = NVec(1, 0);
    /// Ray generator of the `y`-axis of `N`; its Demazure roots are the
    /// degrees `(b, -1)` of `x^b d/dy`.
    pub const RAY_Y: NVec = NVec(0, 1);

    pub fn pair(self, m: MVec) -> i64 {
        self.0 * m.0 + self.1 * m.1
    }

    /// The other ray generator, if `self` is one of the two rays.
    pub fn other_ray(self) -> Option<NVec> {
        match self {
            NVec::RAY_X => Some(NVec::RAY_Y),
            NVec::RAY_Y => Some(NVec::RAY_X),
            _ => None,
        }
    }
}

/// `⟨n, m⟩`.
pub fn pairing(n: NVec, m: MVec) -> i64 {
    n.pair(m)
}

/// Falling factorial `x (x-1) ... (x-k+1)`, with the empty product `1` at `k = 0`.
pub fn falling_factorial(x: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::from(1), |acc, i| acc * BigInt::from(x - i))
}

/// Whether `e` is a Demazure root of the ray `rho` of the positive quadrant:
/// `⟨rho, e⟩ = -1` and `⟨rho', e⟩ ≥ 0` for the other ray `rho'`.
pub fn is_demazure_root(rho: NVec, e: MVec) -> bool {
    match rho.other_ray() {
        Some(other) => rho.pair(e) == -1 && other.pair(e) >= 0,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5, 0), BigInt::from(1));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(3, 4), BigInt::from(0));
        assert_eq!(falling_factorial(0, 1), BigInt::from(0));
        assert_eq!(falling_factorial(-2, 2), BigInt::from(6));
    }

    #[test]
    fn roots_of_the_two_rays() {
        assert!(is_demazure_root(NVec::RAY_X, MVec(-1, 3)));
        assert!(is_demazure_root(NVec::RAY_Y, MVec(4, -1)));
        assert!(!is_demazure_root(NVec::RAY_Y, MVec(-1, -1)));
        assert!(!is_demazure_root(NVec::RAY_X, MVec(-1, -2)));
        assert!(!is_demazure_root(NVec(1, 1), MVec(-1, 0)));
    }

    #[test]
    fn serde_as_pairs() {
        let v: MVec = serde_json::from_str("[12,-1]").unwrap();
        assert_eq!(v, MVec(12, -1));
        assert_eq!(serde_json::to_string(&NVec(0, 1)).unwrap(), "[0,1]");
    }
}
