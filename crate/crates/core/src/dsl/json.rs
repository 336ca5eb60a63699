//! JSON form of [`UEAElement`]:
//!
//! ```json
//! {"order":"asc","schema":1,"terms":[{"c":0,"coeff":"-2/1","word":[[0,1]]}]}
//! ```
//!
//! Keys are sorted, rationals are `"num/den"` strings and terms follow the
//! display order, so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::lie::Virasoro;
use crate::pbw::{OrderSpec, UEAElement};
use crate::scalar::{parse_rational, rational_to_fraction_string, Scalar};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct JsonError {
    /// JSON path of the offending value, e.g. `$.terms[2].coeff`.
    pub path: String,
    pub message: String,
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError {
        path: path.to_string(),
        message: message.into(),
    })
}

pub fn to_value<S: Scalar>(u: &UEAElement<S>) -> Value {
    let mut terms: Vec<_> = u.terms().collect();
    terms.sort_by_cached_key(|(m, _)| super::monomial_key(m, u.order()));
    let terms: Vec<Value> = terms
        .into_iter()
        .map(|(m, s)| {
            let word: Vec<Value> = m.powers().iter().map(|&(i, e)| json!([i, e])).collect();
            json!({
                "c": m.central_exp(),
                "coeff": rational_to_fraction_string(&s.to_rational()),
                "word": word,
            })
        })
        .collect();
    json!({
        "order": u.order().to_string(),
        "schema": SCHEMA_VERSION,
        "terms": terms,
    })
}

pub fn to_json<S: Scalar>(u: &UEAElement<S>) -> String {
    to_value(u).to_string()
}

fn object<'a>(v: &'a Value, path: &str, keys: &[&str]) -> Result<&'a Map<String, Value>, JsonError> {
    let Some(obj) = v.as_object() else {
        return err(path, "expected an object");
    };
    for k in obj.keys() {
        if !keys.contains(&k.as_str()) {
            return err(&format!("{path}.{k}"), "unknown key");
        }
    }
    for k in keys {
        if !obj.contains_key(*k) {
            return err(&format!("{path}.{k}"), "missing key");
        }
    }
    Ok(obj)
}

fn uint(v: &Value, path: &str) -> Result<u32, JsonError> {
    match v.as_u64().and_then(|n| u32::try_from(n).ok()) {
        Some(n) => Ok(n),
        None => err(path, "expected a nonnegative integer"),
    }
}

pub fn from_value<S: Scalar>(v: &Value) -> Result<UEAElement<S>, JsonError> {
    let obj = object(v, "$", &["order", "schema", "terms"])?;
    if obj["schema"].as_u64() != Some(SCHEMA_VERSION) {
        return err("$.schema", format!("expected {SCHEMA_VERSION}"));
    }
    let order: OrderSpec = match obj["order"].as_str().map(str::parse) {
        Some(Ok(o)) => o,
        Some(Err(e)) => return err("$.order", e.to_string()),
        None => return err("$.order", "expected a string"),
    };
    let Some(terms) = obj["terms"].as_array() else {
        return err("$.terms", "expected an array");
    };
    let mut words = Vec::with_capacity(terms.len());
    for (n, t) in terms.iter().enumerate() {
        let path = format!("$.terms[{n}]");
        let t = object(t, &path, &["c", "coeff", "word"])?;
        let cexp = uint(&t["c"], &format!("{path}.c"))?;
        let coeff = match t["coeff"].as_str().map(parse_rational) {
            Some(Ok(q)) => q,
            _ => return err(&format!("{path}.coeff"), "expected a \"num/den\" string"),
        };
        let coeff = match S::from_rational(&coeff) {
            Some(s) => s,
            None => return err(&format!("{path}.coeff"), "does not fit the scalar type"),
        };
        let Some(word) = t["word"].as_array() else {
            return err(&format!("{path}.word"), "expected an array");
        };
        let mut factors = Vec::new();
        for (k, pair) in word.iter().enumerate() {
            let p = format!("{path}.word[{k}]");
            let Some([i, e]) = pair.as_array().map(Vec::as_slice) else {
                return err(&p, "expected [index, exponent]");
            };
            let Some(i) = i.as_i64() else {
                return err(&format!("{p}[0]"), "expected an integer index");
            };
            let e = uint(e, &format!("{p}[1]"))?;
            if e == 0 {
                return err(&format!("{p}[1]"), "exponent must be positive");
            }
            factors.extend(std::iter::repeat(i).take(e as usize));
        }
        words.push((factors, cexp, coeff));
    }
    Ok(Virasoro::standard().normalize_words(words, &order))
}

pub fn from_json<S: Scalar>(s: &str) -> Result<UEAElement<S>, JsonError> {
    let v: Value = match serde_json::from_str(s) {
        Ok(v) => v,
        Err(e) => return err("$", format!("invalid JSON: {e}")),
    };
    from_value(&v)
}
