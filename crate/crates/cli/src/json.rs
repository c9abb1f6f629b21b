use logcy_core::{format_rational, Cone, IntMatrix, IntVector, Rational, Verdict};
use num_bigint::BigInt;
use serde_json::Value;

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rationals(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
pub fn integer(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn integers(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(integer).collect())
}

pub fn vector(v: &IntVector) -> Value {
    integers(v.coords())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| integers(r)).collect())
}

pub fn cone(c: &Cone) -> Value {
    Value::from(c.rays().to_vec())
}

pub fn cones(cs: &[Cone]) -> Value {
    Value::Array(cs.iter().map(cone).collect())
}

/// `true`, `false`, or the string `"unknown"`.
pub fn verdict(v: Verdict) -> Value {
    match v {
        Verdict::Yes => Value::Bool(true),
        Verdict::No => Value::Bool(false),
        Verdict::Unknown => Value::String("unknown".into()),
    }
}

pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain JSON value");
    s.push('\n');
    s
}
