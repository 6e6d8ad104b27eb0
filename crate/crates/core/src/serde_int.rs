//! JSON encoding for `BigInt`: a plain number when it fits in 64 bits,
//! otherwise a decimal string. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    d.deserialize_any(IntVisitor)
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.parse().map_err(|_| E::custom(format!("invalid integer {v:?}")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Int(#[serde(with = "self")] BigInt);

/// `Vec<(BigInt, BigInt)>` as a list of two-element arrays.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|(a, b)| (Int(a.clone()), Int(b.clone()))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigInt, BigInt)>, D::Error> {
        let raw: Vec<(Int, Int)> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|(a, b)| (a.0, b.0)).collect())
    }
}

/// `Vec<BigInt>` as a list of numbers.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|a| Int(a.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<Int> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|a| a.0).collect())
    }
}
