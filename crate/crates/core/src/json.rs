//! JSON helpers for exact integers and rationals.
//!
//! Integers are written as bare JSON numbers of any size (serde_json is built
//! with `arbitrary_precision`); rationals are written as `"p/q"` strings, or
//! as a plain integer string when the denominator is 1.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Number, Value};
use thiserror::Error;

use crate::linalg::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JsonError {
    #[error("expected {expected}, found {found}")]
    Type { expected: &'static str, found: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("{0}")]
    Invalid(String),
}

pub fn int_to_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a valid JSON number"))
}

pub fn value_to_int(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(num) => {
            let text = num.to_string();
            BigInt::from_str(&text).map_err(|_| JsonError::Type {
                expected: "integer",
                found: text,
            })
        }
        other => Err(JsonError::Type {
            expected: "integer",
            found: other.to_string(),
        }),
    }
}

pub fn value_to_usize(v: &Value) -> Result<usize, JsonError> {
    let n = value_to_int(v)?;
    usize::try_from(n.clone()).map_err(|_| JsonError::Type {
        expected: "non-negative index",
        found: n.to_string(),
    })
}

pub fn ints_to_value<'a>(ns: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(ns.into_iter().map(int_to_value).collect())
}

pub fn value_to_ints(v: &Value) -> Result<Vec<BigInt>, JsonError> {
    match v {
        Value::Array(items) => items.iter().map(value_to_int).collect(),
        other => Err(JsonError::Type {
            expected: "array of integers",
            found: other.to_string(),
        }),
    }
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_value(q: &Rational) -> Value {
    Value::String(rational_to_string(q))
}

/// Parses `"p/q"`, `"p"`, or a JSON-style integer into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, JsonError> {
    let bad = || JsonError::BadRational(text.to_string());
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(text).map_err(|_| bad())?)),
    }
}

pub(crate) fn field<'a>(obj: &'a Value, name: &'static str) -> Result<&'a Value, JsonError> {
    obj.get(name).ok_or(JsonError::MissingField(name))
}
