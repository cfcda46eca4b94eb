//! Number and record formatting shared by every command.

use serde_json::{Map, Number, Value};

/// Seventeen significant digits, the shortest width that round-trips every
/// `f64`; plain notation for moderate exponents, scientific otherwise.
pub fn g17(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "NaN".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        trim_zeros(format!("{:.*}", (16 - exp) as usize, v))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Rewrites every float in a JSON tree with [`g17`]; non-finite values
/// become strings.
pub fn with_g17(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let f = n.as_f64().expect("float");
            match g17(f).parse::<Number>() {
                Ok(n) => Value::Number(n),
                Err(_) => Value::String(g17(f)),
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(with_g17).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, with_g17(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub fn json_line(v: Value) -> String {
    let mut s = serde_json::to_string(&with_g17(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn json_f64(v: f64) -> Value {
    Number::from_f64(v).map_or_else(|| Value::String(g17(v)), Value::Number)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_round_trips() {
        for v in [0.49, 1.0, -0.25, 1.0 / 3.0, 2f64.sqrt(), 1e-300, 6.02e23, 123456.789, 1e-5, 9.999e-6] {
            assert_eq!(g17(v).parse::<f64>().unwrap(), v, "{}", g17(v));
        }
        assert_eq!(g17(0.49), "0.48999999999999999");
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.25), "0.25");
        assert_eq!(g17(-0.0), "0");
        assert_eq!(g17(1e-300), "1e-300");
        assert_eq!(g17(0.1 + 0.2), "0.30000000000000004");
    }

    #[test]
    fn json_floats_are_rewritten() {
        let v = serde_json::json!({"a": 0.49, "b": [1, 2.5], "c": "x"});
        assert_eq!(json_line(v), "{\"a\":0.48999999999999999,\"b\":[1,2.5],\"c\":\"x\"}\n");
    }
}
