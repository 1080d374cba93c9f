//! Automorphisms of the plane as words in triangular generators.
//!
//! A word `[g_1, g_2, …, g_n]` denotes the composition `g_1 ∘ g_2 ∘ … ∘ g_n`:
//! the leftmost letter acts last. Inverses of letters are kept formally and
//! evaluated in closed form, so every word has a polynomial inverse.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derivations::{exp_series, Derivation};
use crate::exactpoly::{rat_serde, BiPoly, PolyError, Rat, UniPoly};

pub type Point = (Rat, Rat);

/// Composition convention stated in every serialized word.
pub const CONVENTION: &str = "leftmost letter acts last";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("{0} is not of the form P(y) d/dx or Q(x) d/dy")]
    NotTriangular(String),
    #[error("letter {index}: {msg}")]
    BadLetter { index: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One triangular automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryAut {
    /// `(x, y) ↦ (x + α y^a, y)`.
    Hshear { a: u32, alpha: Rat },
    /// `(x, y) ↦ (x, y + β x^b)`.
    Kshear { b: u32, beta: Rat },
    /// `(x, y) ↦ (x + R(y), y)`.
    HPoly(UniPoly),
    /// `(x, y) ↦ (x, y + S(x))`.
    KPoly(UniPoly),
}

impl ElementaryAut {
    pub fn inverse(&self) -> ElementaryAut {
        match self {
            ElementaryAut::Hshear { a, alpha } => ElementaryAut::Hshear {
                a: *a,
                alpha: -alpha.clone(),
            },
            ElementaryAut::Kshear { b, beta } => ElementaryAut::Kshear {
                b: *b,
                beta: -beta.clone(),
            },
            ElementaryAut::HPoly(r) => ElementaryAut::HPoly(-r),
            ElementaryAut::KPoly(s) => ElementaryAut::KPoly(-s),
        }
    }

    pub fn to_map(&self) -> PlaneMap {
        match self {
            ElementaryAut::Hshear { a, alpha } => {
                PlaneMap::new(&BiPoly::x() + &BiPoly::monomial(alpha.clone(), 0, *a), BiPoly::y())
            }
            ElementaryAut::Kshear { b, beta } => {
                PlaneMap::new(BiPoly::x(), &BiPoly::y() + &BiPoly::monomial(beta.clone(), *b, 0))
            }
            ElementaryAut::HPoly(r) => PlaneMap::new(&BiPoly::x() + &r.in_y(), BiPoly::y()),
            ElementaryAut::KPoly(s) => PlaneMap::new(BiPoly::x(), &BiPoly::y() + &s.in_x()),
        }
    }

    pub fn act(&self, (x, y): &Point) -> Point {
        match self {
            ElementaryAut::Hshear { a, alpha } => (x + alpha * pow(y, *a), y.clone()),
            ElementaryAut::Kshear { b, beta } => (x.clone(), y + beta * pow(x, *b)),
            ElementaryAut::HPoly(r) => (x + r.eval(y), y.clone()),
            ElementaryAut::KPoly(s) => (x.clone(), y + s.eval(x)),
        }
    }

    /// Whether this letter moves only the `y`-coordinate.
    pub fn is_k_type(&self) -> bool {
        matches!(self, ElementaryAut::Kshear { .. } | ElementaryAut::KPoly(_))
    }

    /// The polynomial added to the moving coordinate, as a polynomial in the
    /// fixed coordinate's variable (`y` for H-letters, `x` for K-letters).
    pub fn shift(&self) -> UniPoly {
        match self {
            ElementaryAut::Hshear { a, alpha } => UniPoly::monomial(alpha.clone(), *a as usize),
            ElementaryAut::Kshear { b, beta } => UniPoly::monomial(beta.clone(), *b as usize),
            ElementaryAut::HPoly(p) | ElementaryAut::KPoly(p) => p.clone(),
        }
    }
}

fn pow(r: &Rat, e: u32) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * r)
}

/// A letter with its exponent `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub aut: ElementaryAut,
    pub inv: bool,
}

impl Letter {
    pub fn new(aut: ElementaryAut) -> Self {
        Letter { aut, inv: false }
    }

    pub fn inverted(aut: ElementaryAut) -> Self {
        Letter { aut, inv: true }
    }

    /// The automorphism this letter denotes, inverse applied.
    pub fn effective(&self) -> ElementaryAut {
        if self.inv {
            self.aut.inverse()
        } else {
            self.aut.clone()
        }
    }
}

/// A polynomial map `(x, y) ↦ (fx, fy)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaneMap {
    pub fx: BiPoly,
    pub fy: BiPoly,
}

impl PlaneMap {
    pub fn new(fx: BiPoly, fy: BiPoly) -> Self {
        PlaneMap { fx, fy }
    }

    pub fn identity() -> Self {
        PlaneMap::new(BiPoly::x(), BiPoly::y())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlaneMap) -> PlaneMap {
        PlaneMap::new(
            self.fx.substitute(&inner.fx, &inner.fy),
            self.fy.substitute(&inner.fx, &inner.fy),
        )
    }

    /// `f ∘ self`.
    pub fn pull_back(&self, f: &BiPoly) -> BiPoly {
        f.substitute(&self.fx, &self.fy)
    }

    pub fn eval(&self, (x, y): &Point) -> Point {
        (self.fx.eval(x, y), self.fy.eval(x, y))
    }
}

/// A composition of triangular letters, leftmost acting last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AutWord {
    pub letters: Vec<Letter>,
}

impl AutWord {
    pub fn identity() -> Self {
        AutWord::default()
    }

    pub fn single(aut: ElementaryAut) -> Self {
        AutWord {
            letters: vec![Letter::new(aut)],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The formal inverse: letters reversed with exponents flipped.
    pub fn inverse(&self) -> AutWord {
        AutWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    aut: l.aut.clone(),
                    inv: !l.inv,
                })
                .collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn then_after(&self, inner: &AutWord) -> AutWord {
        let mut letters = self.letters.clone();
        letters.extend(inner.letters.iter().cloned());
        AutWord { letters }
    }

    /// `exp(t d)` for `d = P(y) d/dx` or `d = Q(x) d/dy` as a one-letter word;
    /// monomial coefficients give shears, others polynomial letters.
    pub fn exp_of(d: &Derivation, t: &Rat) -> Result<AutWord, AutError> {
        let not_triangular = || AutError::NotTriangular(d.to_string());
        if d.is_zero() {
            return Ok(AutWord::identity());
        }
        let aut = if d.dy.is_zero() {
            let r = d.dx.to_unipoly_y().ok_or_else(not_triangular)?.scale(t);
            match single_term(&r) {
                Some((a, alpha)) => ElementaryAut::Hshear { a, alpha },
                None => ElementaryAut::HPoly(r),
            }
        } else if d.dx.is_zero() {
            let s = d.dy.to_unipoly_x().ok_or_else(not_triangular)?.scale(t);
            match single_term(&s) {
                Some((b, beta)) => ElementaryAut::Kshear { b, beta },
                None => ElementaryAut::KPoly(s),
            }
        } else {
            return Err(not_triangular());
        };
        Ok(AutWord::single(aut))
    }
}

fn single_term(p: &UniPoly) -> Option<(u32, Rat)> {
    let nonzero: Vec<(usize, &Rat)> = p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    match nonzero.as_slice() {
        [(k, c)] => Some((*k as u32, (*c).clone())),
        _ => None,
    }
}

/// The composed polynomial map.
pub fn evaluate(w: &AutWord) -> PlaneMap {
    w.letters
        .iter()
        .fold(PlaneMap::identity(), |acc, l| acc.compose(&l.effective().to_map()))
}

/// `w.p`, applying the rightmost letter first.
pub fn act_point(w: &AutWord, p: &Point) -> Point {
    w.letters.iter().rev().fold(p.clone(), |pt, l| l.effective().act(&pt))
}

/// `g_* d`, defined by `(g_* d)(f) = d(f ∘ g) ∘ g^{-1}`.
///
/// For `g = exp(t u)` this is `exp(-t ad_u)(d)`: the map `f ↦ f ∘ g` is the
/// ring automorphism `exp(t u)`, so `g_* d = exp(t u)^{-1} ∘ d ∘ exp(t u)`.
pub fn pushforward(w: &AutWord, d: &Derivation) -> Derivation {
    let g = evaluate(w);
    let ginv = evaluate(&w.inverse());
    Derivation::new(ginv.pull_back(&d.apply(&g.fx)), ginv.pull_back(&d.apply(&g.fy)))
}

/// The plane map `exp(t d)` for a locally nilpotent `d`, computed by the
/// exponential series; agrees with `evaluate(AutWord::exp_of(d, t))` on
/// triangular derivations.
pub fn exp_plane_map(d: &Derivation, t: &Rat) -> PlaneMap {
    PlaneMap::new(exp_series(d, t, &BiPoly::x()), exp_series(d, t, &BiPoly::y()))
}

impl fmt::Display for ElementaryAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryAut::Hshear { a, alpha } => write!(f, "H{a}({alpha})"),
            ElementaryAut::Kshear { b, beta } => write!(f, "K{b}({beta})"),
            ElementaryAut::HPoly(r) => write!(f, "HPoly[{}]", r.in_y()),
            ElementaryAut::KPoly(s) => write!(f, "KPoly[{}]", s.in_x()),
        }
    }
}

impl fmt::Display for AutWord {
    /// Letters joined by `∘`, inverses marked `^-1`; the empty word is `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.inv {
                    format!("{}^-1", l.aut)
                } else {
                    l.aut.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(" ∘ "))
    }
}

#[derive(Serialize, Deserialize)]
struct LetterJson {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poly: Option<BiPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rat")]
    coef: Option<Rat>,
    #[serde(default)]
    inv: bool,
}

mod opt_rat {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactpoly::{rat_serde, Rat};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "rat_serde")] Rat);

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        r.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    convention: String,
    letters: Vec<LetterJson>,
}

impl From<&Letter> for LetterJson {
    fn from(l: &Letter) -> Self {
        let (kind, deg, poly, coef) = match &l.aut {
            ElementaryAut::Hshear { a, alpha } => ("H", Some(*a), None, Some(alpha.clone())),
            ElementaryAut::Kshear { b, beta } => ("K", Some(*b), None, Some(beta.clone())),
            ElementaryAut::HPoly(r) => ("HPoly", None, Some(r.in_y()), None),
            ElementaryAut::KPoly(s) => ("KPoly", None, Some(s.in_x()), None),
        };
        LetterJson {
            kind: kind.to_string(),
            deg,
            poly,
            coef,
            inv: l.inv,
        }
    }
}

impl LetterJson {
    fn into_letter(self, index: usize) -> Result<Letter, AutError> {
        let bad = |msg: &str| AutError::BadLetter {
            index,
            msg: msg.to_string(),
        };
        let aut = match self.kind.as_str() {
            "H" | "K" => {
                let deg = self.deg.ok_or_else(|| bad("missing \"deg\""))?;
                let coef = self.coef.ok_or_else(|| bad("missing \"coef\""))?;
                if self.kind == "H" {
                    ElementaryAut::Hshear { a: deg, alpha: coef }
                } else {
                    ElementaryAut::Kshear { b: deg, beta: coef }
                }
            }
            "HPoly" => {
                let p = self.poly.ok_or_else(|| bad("missing \"poly\""))?;
                ElementaryAut::HPoly(p.to_unipoly_y().ok_or_else(|| bad("HPoly must be a polynomial in y"))?)
            }
            "KPoly" => {
                let p = self.poly.ok_or_else(|| bad("missing \"poly\""))?;
                ElementaryAut::KPoly(p.to_unipoly_x().ok_or_else(|| bad("KPoly must be a polynomial in x"))?)
            }
            other => return Err(bad(&format!("unknown letter type {other:?}"))),
        };
        Ok(Letter { aut, inv: self.inv })
    }
}

impl Serialize for AutWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordJson {
            convention: CONVENTION.to_string(),
            letters: self.letters.iter().map(LetterJson::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AutWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = WordJson::deserialize(d)?;
        if raw.convention != CONVENTION {
            return Err(serde::de::Error::custom(format!(
                "unsupported composition convention {:?}",
                raw.convention
            )));
        }
        let letters = raw
            .letters
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.into_letter(i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(AutWord { letters })
    }
}

/// A point as a JSON pair of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson(
    #[serde(with = "rat_serde")] pub Rat,
    #[serde(with = "rat_serde")] pub Rat,
);

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        PointJson(p.0.clone(), p.1.clone())
    }
}

impl From<PointJson> for Point {
    fn from(p: PointJson) -> Self {
        (p.0, p.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::ad_exp;
    use crate::exactpoly::{rat, rat_frac};

    fn poly(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    fn h(a: u32, alpha: i64) -> ElementaryAut {
        ElementaryAut::Hshear { a, alpha: rat(alpha) }
    }

    fn k(b: u32, beta: i64) -> ElementaryAut {
        ElementaryAut::Kshear { b, beta: rat(beta) }
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            evaluate(&AutWord::single(h(1, 1))),
            PlaneMap::new(poly("x + y"), poly("y"))
        );
        let w = AutWord {
            letters: vec![Letter::new(k(2, 1)), Letter::new(h(1, 1))],
        };
        assert_eq!(
            evaluate(&w),
            PlaneMap::new(poly("x + y"), poly("x^2 + 2*x*y + y^2 + y"))
        );
        assert_eq!(evaluate(&w.then_after(&w.inverse())), PlaneMap::identity());
        assert_eq!(evaluate(&w.inverse().then_after(&w)), PlaneMap::identity());
    }

    #[test]
    fn point_action() {
        let p = (rat(3), rat_frac(1, 2));
        let alpha = rat_frac(2, 3);
        let w = AutWord::single(ElementaryAut::Hshear {
            a: 1,
            alpha: alpha.clone(),
        });
        assert_eq!(act_point(&w, &p), (&p.0 + &alpha * &p.1, p.1.clone()));
        assert_eq!(act_point(&AutWord::identity(), &p), p);
        let w = AutWord {
            letters: vec![
                Letter::new(k(3, -2)),
                Letter::inverted(h(2, 5)),
                Letter::new(ElementaryAut::KPoly(UniPoly::new(vec![rat(0), rat(1), rat(4)]))),
            ],
        };
        assert_eq!(act_point(&w.inverse(), &act_point(&w, &p)), p);
        assert_eq!(act_point(&w, &p), evaluate(&w).eval(&p));
    }

    #[test]
    fn pushforward_examples() {
        let d: Derivation = "x^2*y d/dx + (x - y^3) d/dy".parse().unwrap();
        assert_eq!(pushforward(&AutWord::identity(), &d), d);
        let g = AutWord {
            letters: vec![Letter::new(k(2, 3)), Letter::new(h(1, -1))],
        };
        assert_eq!(pushforward(&g, &pushforward(&g.inverse(), &d)), d);
    }

    #[test]
    fn pushforward_by_a_flow_is_ad_exp_at_negative_time() {
        let u: Derivation = "x^2 d/dy".parse().unwrap();
        let d: Derivation = "y d/dx".parse().unwrap();
        let t = rat(3);
        let g = AutWord::exp_of(&u, &t).unwrap();
        assert_eq!(g, AutWord::single(k(2, 3)));
        assert_eq!(pushforward(&g, &d), ad_exp(&u, &-t.clone(), &d).unwrap());
        assert_eq!(pushforward(&g, &u), u);
    }

    #[test]
    fn exp_words() {
        let d: Derivation = "(y + 2*y^3) d/dx".parse().unwrap();
        let t = rat_frac(1, 2);
        let w = AutWord::exp_of(&d, &t).unwrap();
        assert_eq!(evaluate(&w), exp_plane_map(&d, &t));
        assert!(AutWord::exp_of(&"x d/dx".parse().unwrap(), &t).is_err());
        assert!(AutWord::exp_of(&"y d/dx + x d/dy".parse().unwrap(), &t).is_err());
    }

    #[test]
    fn json_and_text() {
        let w = AutWord {
            letters: vec![
                Letter::inverted(h(1, 2)),
                Letter::new(ElementaryAut::KPoly(UniPoly::new(vec![rat(0), rat(0), rat_frac(1, 3)]))),
            ],
        };
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(
            j,
            r#"{"convention":"leftmost letter acts last","letters":[{"type":"H","deg":1,"coef":"2","inv":true},{"type":"KPoly","poly":"1/3*x^2","inv":false}]}"#
        );
        assert_eq!(serde_json::from_str::<AutWord>(&j).unwrap(), w);
        assert_eq!(w.to_string(), "H1(2)^-1 ∘ KPoly[1/3*x^2]");
        let bad = r#"{"convention":"leftmost letter acts last","letters":[{"type":"KPoly","poly":"y"}]}"#;
        assert!(serde_json::from_str::<AutWord>(bad).is_err());
    }
}
