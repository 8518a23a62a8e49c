//! Exact-number helpers shared by the rational families, including the JSON
//! encodings (naturals as numbers when they fit in `u64`, strings otherwise;
//! rationals as `"p/q"` strings).

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational number")]
pub struct RationalParseError(pub String);

/// Parses `"p"`, `"p/q"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let t = text.trim();
    let err = || RationalParseError(text.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| err()),
    }
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn rational_from_u64(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_non_negative(q: &BigRational) -> bool {
    !q.is_negative()
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumberOrString {
    Number(u64),
    Text(String),
}

pub mod natural {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match n.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Number(v) => Ok(BigUint::from(v)),
            NumberOrString::Text(t) => BigUint::from_str(&t).map_err(D::Error::custom),
        }
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Number(v) => Ok(rational_from_u64(v)),
            NumberOrString::Text(t) => parse_rational(&t).map_err(D::Error::custom),
        }
    }
}

pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("4/6").unwrap(), parse_rational("2/3").unwrap());
        assert_eq!(parse_rational(" -3 ").unwrap(), BigRational::from_integer((-3).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
