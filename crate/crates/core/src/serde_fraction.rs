//! Serde helpers for exact rationals.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ring::{fraction_string, parse_fraction, Rational};

/// Lists of rationals as `"p/q"` strings.
pub mod strings {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        values
            .iter()
            .map(fraction_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_fraction(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Identity parameters: integers as JSON numbers, everything else as strings.
pub mod params {
    use super::*;
    use num_traits::ToPrimitive;
    use serde_json::Value;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        values
            .iter()
            .map(|v| match v.to_integer().to_i64() {
                Some(i) if v.is_integer() => Value::from(i),
                _ => Value::from(fraction_string(v)),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .into_iter()
            .map(|v| match v {
                Value::Number(n) => parse_fraction(&n.to_string()).map_err(D::Error::custom),
                Value::String(s) => parse_fraction(&s).map_err(D::Error::custom),
                other => Err(D::Error::custom(format!("bad parameter {other}"))),
            })
            .collect()
    }
}
