//! Helpers for machine-readable output: exact integers as JSON numbers and
//! high-precision reals as decimal strings.

use rug::{Float, Integer};
use serde_json::{Number, Value};

/// Current version of every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// An arbitrary-size integer as a JSON number (no rounding).
pub fn int_value(x: &Integer) -> Value {
    let n: Number = x.to_string().parse().expect("integer literal is valid JSON");
    Value::Number(n)
}

pub fn int_array(xs: &[Integer]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

/// Number of significant decimal digits carried by `prec` bits.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

/// Decimal string with as many significant digits as the precision of `x`
/// supports; positional notation for moderate exponents, otherwise
/// scientific.
pub fn float_string(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    let digits = decimal_digits(x.prec());
    let (neg, mut mant, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero");
    while mant.len() > 1 && mant.ends_with('0') {
        mant.pop();
    }
    let sign = if neg { "-" } else { "" };
    // value = 0.mant × 10^exp
    if (-20..=40).contains(&exp) {
        let body = if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), mant)
        } else if exp as usize >= mant.len() {
            format!("{}{}", mant, "0".repeat(exp as usize - mant.len()))
        } else {
            format!("{}.{}", &mant[..exp as usize], &mant[exp as usize..])
        };
        format!("{sign}{body}")
    } else {
        let (head, tail) = mant.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        format!("{sign}{head}.{tail}e{}", exp - 1)
    }
}

/// A finite f64 as JSON; non-finite values become strings.
pub fn f64_value(x: f64) -> Value {
    match Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None if x.is_nan() => Value::String("nan".into()),
        None if x > 0.0 => Value::String("inf".into()),
        None => Value::String("-inf".into()),
    }
}
