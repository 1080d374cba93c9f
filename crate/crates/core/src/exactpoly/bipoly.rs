use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{PolyError, Rat, UniPoly};

/// `x^ex * y^ey`. Ordered graded-lexicographically with `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0 };

    pub fn new(ex: u32, ey: u32) -> Self {
        Monomial { ex, ey }
    }

    pub fn degree(self) -> u32 {
        self.ex + self.ey
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.ex + other.ex, self.ey + other.ey)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.ex.cmp(&other.ex))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(2);
        for (name, e) in [("x", self.ex), ("y", self.ey)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Element of `Q[x, y]`. No zero coefficient is ever stored.
///
/// Serializes as its canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::term(c, Monomial::ONE)
    }

    pub fn x() -> Self {
        BiPoly::term(Rat::one(), Monomial::new(1, 0))
    }

    pub fn y() -> Self {
        BiPoly::term(Rat::one(), Monomial::new(0, 1))
    }

    /// `c * x^ex * y^ey`.
    pub fn monomial(c: Rat, ex: u32, ey: u32) -> Self {
        BiPoly::term(c, Monomial::new(ex, ey))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, pruning a cancelled coefficient.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ex).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ey).max()
    }

    /// Largest `k` with `x^k` dividing `self` (`None` for zero).
    pub fn x_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ex).min()
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rat, m: Monomial) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.times(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂/∂x`.
    pub fn partial_x(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.ex > 0)
                .map(|(m, c)| (Monomial::new(m.ex - 1, m.ey), c * Rat::from_integer(m.ex.into()))),
        )
    }

    /// `∂/∂y`.
    pub fn partial_y(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.ey > 0)
                .map(|(m, c)| (Monomial::new(m.ex, m.ey - 1), c * Rat::from_integer(m.ey.into()))),
        )
    }

    /// `self(img_x, img_y)`. Powers of the images are computed once each.
    pub fn substitute(&self, img_x: &BiPoly, img_y: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let max_ex = self.degree_x().unwrap_or(0) as usize;
        let max_ey = self.degree_y().unwrap_or(0) as usize;
        let xs = powers(img_x, max_ex);
        let ys = powers(img_y, max_ey);
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let prod = &xs[m.ex as usize] * &ys[m.ey as usize];
            for (k, v) in prod.terms {
                out.add_term(k, v * c);
            }
        }
        out
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(x.clone(), m.ex as usize) * num_traits::pow(y.clone(), m.ey as usize);
        }
        acc
    }

    /// View as a polynomial in `x` alone, if `y` does not occur.
    pub fn to_unipoly_x(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.ey != 0) {
            return None;
        }
        Some(UniPoly::from_sparse(self.terms.iter().map(|(m, c)| (m.ex, c.clone()))))
    }

    /// View as a polynomial in `y` alone, if `x` does not occur.
    pub fn to_unipoly_y(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.ex != 0) {
            return None;
        }
        Some(UniPoly::from_sparse(self.terms.iter().map(|(m, c)| (m.ey, c.clone()))))
    }

    pub fn from_unipoly_x(u: &UniPoly) -> BiPoly {
        BiPoly::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, 0), c.clone())),
        )
    }

    pub fn from_unipoly_y(u: &UniPoly) -> BiPoly {
        BiPoly::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(0, i as u32), c.clone())),
        )
    }
}

fn powers(p: &BiPoly, max: usize) -> Vec<BiPoly> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(BiPoly::one());
    for i in 1..=max {
        let next = &out[i - 1] * p;
        out.push(next);
    }
    out
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BiPoly {
    /// Canonical form: terms by descending graded-lex order, coefficients as
    /// reduced fractions, unit coefficients omitted, e.g. `3/2*x^2*y - y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_poly(s)
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }
}
