//! Serde adapters: integers are written as JSON numbers when they fit in an
//! `i64` and as decimal strings otherwise; both forms are accepted on input.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) use crate::cyclo::{json_int, parse_int};

pub(crate) mod big {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        json_int(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        parse_int(&v).map_err(D::Error::custom)
    }
}

pub(crate) mod opt_big {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        n.as_ref().map(json_int).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let v = Option::<serde_json::Value>::deserialize(d)?;
        match v {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(v) => parse_int(&v).map(Some).map_err(D::Error::custom),
        }
    }
}

pub(crate) fn one() -> BigInt {
    BigInt::from(1)
}
