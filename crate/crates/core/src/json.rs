//! Small helpers for emitting exact integers as JSON.
//!
//! Integers that fit in an `i64` become JSON numbers; larger ones become
//! decimal strings so nothing is ever rounded.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::Value;

pub fn bigint(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn biguint(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn bigint_seq<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(bigint).collect())
}
