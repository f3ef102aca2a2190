use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::algebra::{Form, Monomial};
use crate::scalar::{Param, ParamExps, Scalar};

/// Schema violation; `path` is a JSON pointer to the offending value.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid form record at `{path}`: {message}")]
pub struct RecordError {
    pub path: String,
    pub message: String,
}

fn fail<T>(path: &str, message: impl Into<String>) -> Result<T, RecordError> {
    Err(RecordError {
        path: if path.is_empty() {
            "/".into()
        } else {
            path.into()
        },
        message: message.into(),
    })
}

fn big_number(n: &BigInt) -> Value {
    // Arbitrary-precision numbers keep every digit of the literal.
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

/// Serializes a form into the record schema.
pub fn to_record(f: &Form) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(m, s)| {
            let coeff: Vec<Value> = s
                .terms()
                .map(|(e, c)| {
                    json!({
                        "a1": e.get(Param::A1),
                        "b1": e.get(Param::B1),
                        "a2": e.get(Param::A2),
                        "b2": e.get(Param::B2),
                        "num": big_number(c.numer()),
                        "den": big_number(c.denom()),
                    })
                })
                .collect();
            json!({
                "eta1": u8::from(m.eta1),
                "eta2": u8::from(m.eta2),
                "phi1": m.phi1,
                "phi2": m.phi2,
                "coeff": coeff,
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn to_record_string(f: &Form) -> String {
    serde_json::to_string(&to_record(f)).expect("records always serialize")
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, RecordError> {
    match v.as_object() {
        Some(o) => Ok(o),
        None => fail(path, "expected an object"),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, RecordError> {
    match v.as_array() {
        Some(a) => Ok(a),
        None => fail(path, "expected an array"),
    }
}

fn field<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
    allowed: &[&str],
) -> Result<&'a Value, RecordError> {
    if let Some(extra) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return fail(&format!("{path}/{extra}"), "unknown field");
    }
    match obj.get(key) {
        Some(v) => Ok(v),
        None => fail(&format!("{path}/{key}"), "missing field"),
    }
}

fn integer(v: &Value, path: &str) -> Result<BigInt, RecordError> {
    match v {
        Value::Number(n) => match n.to_string().parse::<BigInt>() {
            Ok(i) => Ok(i),
            Err(_) => fail(path, "expected an integer"),
        },
        _ => fail(path, "expected an integer"),
    }
}

fn natural(v: &Value, path: &str) -> Result<u32, RecordError> {
    let i = integer(v, path)?;
    if i.is_negative() {
        return fail(path, "expected a non-negative integer");
    }
    match u32::try_from(i) {
        Ok(n) => Ok(n),
        Err(_) => fail(path, "exponent out of range"),
    }
}

fn flag(v: &Value, path: &str) -> Result<bool, RecordError> {
    match natural(v, path)? {
        0 => Ok(false),
        1 => Ok(true),
        _ => fail(path, "expected 0 or 1"),
    }
}

const TERM_KEYS: [&str; 5] = ["eta1", "eta2", "phi1", "phi2", "coeff"];
const COEFF_KEYS: [&str; 6] = ["a1", "b1", "a2", "b2", "num", "den"];

fn coefficient(v: &Value, path: &str) -> Result<Scalar, RecordError> {
    let entries = array(v, path)?;
    if entries.is_empty() {
        return fail(path, "coefficient has no terms");
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (j, entry) in entries.iter().enumerate() {
        let p = format!("{path}/{j}");
        let obj = object(entry, &p)?;
        let mut exps = [0u32; 4];
        for param in Param::ALL {
            let key = param.name();
            exps[param.index()] =
                natural(field(obj, key, &p, &COEFF_KEYS)?, &format!("{p}/{key}"))?;
        }
        let num = integer(field(obj, "num", &p, &COEFF_KEYS)?, &format!("{p}/num"))?;
        let den = integer(field(obj, "den", &p, &COEFF_KEYS)?, &format!("{p}/den"))?;
        if num.is_zero() {
            return fail(&format!("{p}/num"), "zero coefficients are not stored");
        }
        if !den.is_positive() {
            return fail(&format!("{p}/den"), "denominator must be positive");
        }
        let exps = ParamExps(exps);
        if !seen.insert(exps) {
            return fail(&p, "duplicate parameter monomial");
        }
        out.push((exps, BigRational::new(num, den)));
    }
    Ok(Scalar::from_terms(out))
}

/// Parses a record value, reporting the first schema violation.
pub fn from_record(v: &Value) -> Result<Form, RecordError> {
    let top = object(v, "")?;
    let terms = array(field(top, "terms", "", &["terms"])?, "/terms")?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let p = format!("/terms/{i}");
        let obj = object(t, &p)?;
        let get = |key: &str| field(obj, key, &p, &TERM_KEYS);
        let mono = Monomial::new(
            flag(get("eta1")?, &format!("{p}/eta1"))?,
            flag(get("eta2")?, &format!("{p}/eta2"))?,
            natural(get("phi1")?, &format!("{p}/phi1"))?,
            natural(get("phi2")?, &format!("{p}/phi2"))?,
        );
        if !seen.insert(mono) {
            return fail(&p, "duplicate monomial");
        }
        out.push((mono, coefficient(get("coeff")?, &format!("{p}/coeff"))?));
    }
    Ok(Form::from_terms(out))
}

/// Parses record text; JSON syntax errors are reported at the root path.
pub fn from_record_str(text: &str) -> Result<Form, RecordError> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => from_record(&v),
        Err(e) => fail("", format!("malformed JSON: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr_io::parse;

    #[test]
    fn zero_has_no_terms() {
        assert_eq!(to_record(&Form::zero()), json!({ "terms": [] }));
    }

    #[test]
    fn big_coefficients_survive() {
        let f = parse("123456789012345678901234567890/11*b1*eta1").unwrap();
        let text = to_record_string(&f);
        assert!(text.contains("123456789012345678901234567890"));
        assert_eq!(from_record_str(&text).unwrap(), f);
    }

    #[test]
    fn violations_carry_paths() {
        let dup = r#"{"terms":[
            {"eta1":1,"eta2":0,"phi1":0,"phi2":0,"coeff":[{"a1":0,"b1":0,"a2":0,"b2":0,"num":1,"den":1}]},
            {"eta1":1,"eta2":0,"phi1":0,"phi2":0,"coeff":[{"a1":0,"b1":0,"a2":0,"b2":0,"num":2,"den":1}]}]}"#;
        assert_eq!(from_record_str(dup).unwrap_err().path, "/terms/1");
        let bad = r#"{"terms":[{"eta1":2,"eta2":0,"phi1":0,"phi2":0,"coeff":[]}]}"#;
        assert_eq!(from_record_str(bad).unwrap_err().path, "/terms/0/eta1");
        let neg = r#"{"terms":[{"eta1":0,"eta2":0,"phi1":-1,"phi2":0,"coeff":[]}]}"#;
        assert_eq!(from_record_str(neg).unwrap_err().path, "/terms/0/phi1");
        assert!(from_record_str("[]").is_err());
        assert!(from_record_str(r#"{"terms":[], "x":1}"#).is_err());
    }
}
