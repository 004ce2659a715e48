//! Exact rational values and their `p/q` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Value = BigRational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("invalid rational `{0}`")]
pub struct ParseRationalError(pub String);

pub fn int(v: i64) -> Value {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Value {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Always `p/q` in lowest terms with positive `q`.
pub fn format(v: &Value) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Accepts `p/q`, integers and finite decimals such as `-2.75`, all exactly.
pub fn parse(s: &str) -> Result<Value, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| err())?
        };
        let scale = (0..frac.len()).fold(BigInt::one(), |acc, _| acc * 10);
        let frac = BigInt::from_str(frac).map_err(|_| err())?;
        let mag = BigRational::new(frac, scale);
        let w = BigRational::from_integer(whole);
        return Ok(if negative { w - mag } else { w + mag });
    }
    BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| err())
}

pub(crate) mod serde_value {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Value;

    pub fn serialize<S: Serializer>(v: &Value, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Value, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse(&raw).map_err(serde::de::Error::custom)
    }
}
