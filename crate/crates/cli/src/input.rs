//! Flag values that are either inline JSON or a path to a JSON file.

use std::path::Path;
use std::str::FromStr;

use realdp::Rational;
use serde_json::Value;

use crate::UsageError;

pub fn json_arg(flag: &str, raw: &str) -> Result<Value, UsageError> {
    let text = if Path::new(raw).is_file() {
        std::fs::read_to_string(raw).map_err(|e| UsageError(format!("--{flag}: cannot read {raw}: {e}")))?
    } else {
        raw.to_string()
    };
    serde_json::from_str(&text).map_err(|e| UsageError(format!("--{flag}: not JSON or a readable file: {e}")))
}

pub fn int_vector(flag: &str, v: &Value) -> Result<Vec<i64>, UsageError> {
    v.as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| UsageError(format!("--{flag}: expected an array of integers")))
}

pub fn int_matrix(flag: &str, v: &Value) -> Result<Vec<Vec<i64>>, UsageError> {
    v.as_array()
        .ok_or_else(|| UsageError(format!("--{flag}: expected an array of integer rows")))?
        .iter()
        .map(|r| int_vector(flag, r))
        .collect()
}

pub fn rational(flag: &str, v: &Value) -> Result<Rational, UsageError> {
    let bad = || UsageError(format!("--{flag}: {v} is not an integer or a \"p/q\" string"));
    match v {
        Value::Number(n) => n.as_i64().map(|k| Rational::from_integer(k.into())).ok_or_else(bad),
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

pub fn rational_vector(flag: &str, v: &Value) -> Result<Vec<Rational>, UsageError> {
    v.as_array()
        .ok_or_else(|| UsageError(format!("--{flag}: expected an array of coefficients")))?
        .iter()
        .map(|x| rational(flag, x))
        .collect()
}
