//! Serde helpers that write arbitrary-precision integers as plain JSON
//! numbers (exact digits, no float rounding).

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

pub fn number(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal is a JSON number"))
}

pub fn numbers(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(number).collect())
}

/// Reads an integer from a JSON number or a decimal string.
pub fn parse_value(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        Value::String(s) => BigInt::from_str(s.trim()).ok(),
        _ => None,
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        number(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        parse_value(&v).ok_or_else(|| serde::de::Error::custom("expected an integer"))
    }
}

pub mod bigints {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        numbers(xs).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter()
            .map(|x| parse_value(x).ok_or_else(|| serde::de::Error::custom("expected an integer")))
            .collect()
    }
}
