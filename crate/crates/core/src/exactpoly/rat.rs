use num_bigint::BigInt;
use num_rational::BigRational;

use super::PolyError;

/// Arbitrary-precision rational. Always reduced with a positive denominator;
/// zero is `0/1`.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den`, reduced.
///
/// # Panics
/// If `den == 0`.
pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"n"`, `"-n"` or `"n/d"` (optionally signed, surrounding whitespace
/// ignored).
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let err = |msg: &str| PolyError::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("invalid numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("invalid denominator"))?;
    if den == BigInt::from(0) {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Serde adapter writing a [`Rat`] as its reduced text (`"-3/2"`) and
/// reading either such a string or a JSON integer.
pub mod rat_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(super::rat(n)),
            Raw::Text(t) => parse_rat(&t).map_err(de::Error::custom),
        }
    }
}
