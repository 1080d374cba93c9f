//! Derivations of `Q[x, y]`.
//!
//! A [`Derivation`] is stored by its images of `x` and `y`. Every derivation
//! splits into finitely many pieces homogeneous for the torus grading; the
//! degree of the piece containing `c x^a y^b d/dx` is `(a-1, b)`, and that of
//! `c x^a y^b d/dy` is `(a, b-1)`.

mod commutator;
mod exp;
mod homog;
mod newton;

pub use commutator::{brute_force_iterated_commutator, iterated_commutator_closed_form, HomogDerivation};
pub(crate) use exp::exp_series;
pub use exp::{
    ad_exp, ad_exp_with_bound, exp_apply, exp_apply_with_bound, exp_map, is_nilpotent, Nilpotency,
    DEFAULT_NILPOTENCY_BOUND,
};
pub use homog::{homog_decompose, principal_part, principal_part_at, Side, TorusDirection};
pub use newton::{face_sum, newton_polygon, NewtonPolygon};

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::parse::{Parser, Token};
use crate::exactpoly::{BiPoly, PolyError, Rat};
use crate::grading::{is_demazure_root, MVec, NVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("{e} is not a Demazure root of the ray {rho}")]
    NotARoot { rho: NVec, e: MVec },
    #[error("the derivation is zero")]
    ZeroDerivation,
    #[error("local nilpotency not established within {bound} iterations")]
    NotLnd { bound: u32 },
    #[error("adjoint series did not terminate within {bound} terms")]
    AdSeriesNotTerminating { bound: u32 },
    #[error("empty list of roots")]
    EmptyRootList,
    #[error("root {index} pairs to {pairing} with the ray, expected -1")]
    RootPairing { index: usize, pairing: i64 },
    #[error("{0} is not a primitive direction of the positive quadrant")]
    InvalidDirection(NVec),
    #[error("homogeneous derivation of degree {0} does not preserve the polynomial ring")]
    NotPolynomial(MVec),
    #[error(transparent)]
    Parse(#[from] PolyError),
}

/// A derivation of `Q[x, y]`, determined by `dx = d(x)` and `dy = d(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Derivation {
    pub dx: BiPoly,
    pub dy: BiPoly,
}

impl Derivation {
    pub fn new(dx: BiPoly, dy: BiPoly) -> Self {
        Derivation { dx, dy }
    }

    pub fn zero() -> Self {
        Derivation::default()
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    /// `y^c d/dx`, the root derivation of degree `(-1, c)`.
    pub fn h(c: u32) -> Self {
        Derivation::new(BiPoly::monomial(Rat::one(), 0, c), BiPoly::zero())
    }

    /// `x^b d/dy`, the root derivation of degree `(b, -1)`.
    pub fn k(b: u32) -> Self {
        Derivation::new(BiPoly::zero(), BiPoly::monomial(Rat::one(), b, 0))
    }

    /// `dx * ∂p/∂x + dy * ∂p/∂y`.
    pub fn apply(&self, p: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        if !self.dx.is_zero() {
            out += &(&self.dx * &p.partial_x());
        }
        if !self.dy.is_zero() {
            out += &(&self.dy * &p.partial_y());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Derivation {
        Derivation::new(self.dx.scale(c), self.dy.scale(c))
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn bracket(&self, other: &Derivation) -> Derivation {
        Derivation::new(
            &self.apply(&other.dx) - &other.apply(&self.dx),
            &self.apply(&other.dy) - &other.apply(&self.dy),
        )
    }

    /// Every term with its torus degree.
    pub fn graded_terms(&self) -> impl Iterator<Item = (MVec, Derivation)> + '_ {
        let xs = self.dx.terms().map(|(m, c)| {
            let deg = MVec(m.ex as i64 - 1, m.ey as i64);
            (deg, Derivation::new(BiPoly::term(c.clone(), *m), BiPoly::zero()))
        });
        let ys = self.dy.terms().map(|(m, c)| {
            let deg = MVec(m.ex as i64, m.ey as i64 - 1);
            (deg, Derivation::new(BiPoly::zero(), BiPoly::term(c.clone(), *m)))
        });
        xs.chain(ys)
    }

    /// The set `S(d)` of degrees of homogeneous pieces, ascending.
    pub fn support(&self) -> Vec<MVec> {
        let set: std::collections::BTreeSet<MVec> = self.graded_terms().map(|(e, _)| e).collect();
        set.into_iter().collect()
    }

    /// The degree if the derivation is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<MVec> {
        match self.support().as_slice() {
            [e] => Some(*e),
            _ => None,
        }
    }

    /// The piece of degree `e` (zero if `e` is not in the support).
    pub fn piece(&self, e: MVec) -> Derivation {
        self.graded_terms()
            .filter(|(deg, _)| *deg == e)
            .fold(Derivation::zero(), |acc, (_, d)| &acc + &d)
    }

    /// If `self = c * other` for a rational `c`, returns `c`.
    pub fn ratio_to(&self, other: &Derivation) -> Option<Rat> {
        let ratio = if let Some((m, c)) = other.dx.terms().next() {
            self.dx.coeff(*m) / c
        } else {
            let (m, c) = other.dy.terms().next()?;
            self.dy.coeff(*m) / c
        };
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

/// `∂_{ρ,e}`: the homogeneous locally nilpotent derivation of a Demazure
/// root `e` of the ray `rho`, acting by `χ^m ↦ ⟨ρ,m⟩ χ^{m+e}`.
pub fn from_root(rho: NVec, e: MVec) -> Result<Derivation, DerivationError> {
    if !is_demazure_root(rho, e) {
        return Err(DerivationError::NotARoot { rho, e });
    }
    Ok(if rho == NVec::RAY_X {
        Derivation::h(e.1 as u32)
    } else {
        Derivation::k(e.0 as u32)
    })
}

/// The ray of which `e` is a Demazure root, together with `∂_{ρ,e}`.
pub fn root_derivation(e: MVec) -> Result<(NVec, Derivation), DerivationError> {
    for rho in [NVec::RAY_X, NVec::RAY_Y] {
        if is_demazure_root(rho, e) {
            return Ok((rho, from_root(rho, e)?));
        }
    }
    Err(DerivationError::NotARoot { rho: NVec::RAY_Y, e })
}

pub fn apply(d: &Derivation, p: &BiPoly) -> BiPoly {
    d.apply(p)
}

pub fn bracket(u: &Derivation, v: &Derivation) -> Derivation {
    u.bracket(v)
}

impl Add<&Derivation> for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        Derivation::new(&self.dx + &rhs.dx, &self.dy + &rhs.dy)
    }
}

impl Sub<&Derivation> for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        Derivation::new(&self.dx - &rhs.dx, &self.dy - &rhs.dy)
    }
}

impl Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        Derivation::new(-&self.dx, -&self.dy)
    }
}

impl fmt::Display for Derivation {
    /// `P d/dx + Q d/dy`; a component with several terms is parenthesized and
    /// zero components are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, var) in [(&self.dx, "d/dx"), (&self.dy, "d/dy")] {
            if p.is_zero() {
                continue;
            }
            let text = if p.num_terms() == 1 {
                p.to_string()
            } else {
                format!("({p})")
            };
            if first {
                write!(f, "{text} {var}")?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest} {var}")?;
            } else {
                write!(f, " + {text} {var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Derivation {
    type Err = DerivationError;

    /// Accepts sums of `[±] [coefficient] d/dx` and `[±] [coefficient] d/dy`
    /// where a coefficient is a product of factors or a parenthesized
    /// polynomial; `0` is the zero derivation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(Derivation::zero());
        }
        let mut p = Parser::new(s)?;
        if p.at_end() {
            return Err(p.error("empty derivation").into());
        }
        let mut out = Derivation::zero();
        let mut first = true;
        while !p.at_end() {
            let negative = match p.peek() {
                Some(Token::Plus) => {
                    p.bump();
                    false
                }
                Some(Token::Minus) => {
                    p.bump();
                    true
                }
                _ if first => false,
                _ => return Err(p.error("expected '+' or '-'").into()),
            };
            first = false;
            let coef = match p.peek() {
                Some(Token::Dx) | Some(Token::Dy) => BiPoly::one(),
                _ => p.term()?,
            };
            let coef = if negative { -coef } else { coef };
            match p.peek() {
                Some(Token::Dx) => out.dx += &coef,
                Some(Token::Dy) => out.dy += &coef,
                _ => return Err(p.error("expected d/dx or d/dy").into()),
            }
            p.bump();
        }
        Ok(out)
    }
}

/// Whether `a` is a nonzero rational multiple of the nonzero `b`.
pub fn is_rational_multiple(a: &Derivation, b: &Derivation) -> bool {
    !b.is_zero() && a.ratio_to(b).is_some_and(|c| !c.is_zero())
}
