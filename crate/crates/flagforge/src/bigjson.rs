//! Serde adapters that write `BigUint` as a plain JSON number.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::str::FromStr;

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let n = serde_json::Number::deserialize(d)?;
    BigUint::from_str(&n.to_string()).map_err(serde::de::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            let n = serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let ns = Vec::<serde_json::Number>::deserialize(d)?;
        ns.iter()
            .map(|n| BigUint::from_str(&n.to_string()).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod signed_vec {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            let n = serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let ns = Vec::<serde_json::Number>::deserialize(d)?;
        ns.iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom))
            .collect()
    }
}
