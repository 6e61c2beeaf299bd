//! JSON term format for superfunctions:
//! `[{"odd": [1, 2], "coeff": [{"exp": [e1, .., ep], "num": "3", "den": "2"}]}]`
//! with 1-based odd indices.

use serde_json::{json, Value};

use super::{OddMonomial, Polynomial, Superfunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn superfunction_to_json<S: Scalar>(f: &Superfunction<S>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(m, c)| {
            let odd: Vec<usize> = m.indices().into_iter().map(|j| j + 1).collect();
            let coeff: Vec<Value> = c
                .terms()
                .map(|(e, a)| {
                    let (num, den) = a.to_fraction();
                    json!({"exp": e, "num": num, "den": den})
                })
                .collect();
            json!({"odd": odd, "coeff": coeff})
        })
        .collect();
    Value::Array(terms)
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_scalar<S: Scalar>(v: &Value) -> Result<S> {
    let num = v.get("num").ok_or_else(|| parse_err("coefficient without \"num\""))?;
    let num = num.as_str().map(str::to_owned).or_else(|| num.as_i64().map(|n| n.to_string()));
    let num = num.ok_or_else(|| parse_err("\"num\" must be a string or integer"))?;
    let den = match v.get("den") {
        None => "1".to_string(),
        Some(d) => d
            .as_str()
            .map(str::to_owned)
            .or_else(|| d.as_i64().map(|n| n.to_string()))
            .ok_or_else(|| parse_err("\"den\" must be a string or integer"))?,
    };
    // Accept "a/b" written into "num" as well.
    let (num, den) = match num.split_once('/') {
        Some((a, b)) if den == "1" => (a.to_string(), b.to_string()),
        _ => (num, den),
    };
    S::parse_fraction(&num, &den).ok_or_else(|| parse_err(format!("bad rational {num}/{den}")))
}

pub fn superfunction_from_json<S: Scalar>(v: &Value, p: usize, q: usize) -> Result<Superfunction<S>> {
    let arr = v.as_array().ok_or_else(|| parse_err("superfunction must be an array of terms"))?;
    let mut out = Superfunction::zero(p, q);
    for t in arr {
        let odd = t
            .get("odd")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("term without \"odd\" array"))?;
        let mut idx = Vec::with_capacity(odd.len());
        for o in odd {
            let j = o.as_u64().ok_or_else(|| parse_err("odd index must be a positive integer"))? as usize;
            if j == 0 || j > q {
                return Err(Error::Dimension(format!("odd index {j} outside 1..={q}")));
            }
            idx.push(j - 1);
        }
        let Some((mono, negative)) = OddMonomial::from_indices(&idx) else {
            continue; // repeated generator: the term is zero
        };
        let coeff = t
            .get("coeff")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("term without \"coeff\" array"))?;
        let mut poly = Polynomial::zero(p);
        for c in coeff {
            let exp = c
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("coefficient without \"exp\" array"))?;
            if exp.len() != p {
                return Err(Error::Dimension(format!("exponent vector of length {}, expected {p}", exp.len())));
            }
            let exp: Vec<u32> = exp
                .iter()
                .map(|e| e.as_u64().map(|k| k as u32).ok_or_else(|| parse_err("exponent must be a nonnegative integer")))
                .collect::<Result<_>>()?;
            let mut a: S = parse_scalar(c)?;
            if negative {
                a = -a;
            }
            poly.add_term(exp, a);
        }
        out.add_term(mono, poly);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn round_trip_is_bit_exact() {
        let (p, q) = (2, 3);
        let f = &(&Superfunction::<Rational>::x(p, q, 1) * &Superfunction::xi_product(p, q, &[0, 2]))
            + &Superfunction::constant(p, q, Rational::from_ratio(-3, 4));
        let text = superfunction_to_json(&f).to_string();
        let back: Superfunction<Rational> = superfunction_from_json(&serde_json::from_str(&text).unwrap(), p, q).unwrap();
        assert_eq!(back, f);
        assert_eq!(superfunction_to_json(&back).to_string(), text);
    }

    #[test]
    fn non_reduced_coefficients_are_normalized() {
        let v: Value = serde_json::from_str(r#"[{"odd": [], "coeff": [{"exp": [0], "num": "2/4"}]}]"#).unwrap();
        let f: Superfunction<Rational> = superfunction_from_json(&v, 1, 1).unwrap();
        assert_eq!(f.as_constant(), Some(Rational::from_ratio(1, 2)));
        let v: Value = serde_json::from_str(r#"[{"odd": [2, 1], "coeff": [{"exp": [0], "num": "2", "den": "4"}]}]"#).unwrap();
        let f: Superfunction<Rational> = superfunction_from_json(&v, 1, 2).unwrap();
        assert_eq!(f, Superfunction::xi_product(1, 2, &[0, 1]).scale(&Rational::from_ratio(-1, 2)));
    }

    #[test]
    fn malformed_input_rejected() {
        let bad = [r#"{"odd": []}"#, r#"[{"odd": [5], "coeff": []}]"#, r#"[{"odd": [], "coeff": [{"exp": [0, 0], "num": "1"}]}]"#];
        for b in bad {
            let v: Value = serde_json::from_str(b).unwrap();
            assert!(superfunction_from_json::<Rational>(&v, 1, 2).is_err(), "{b}");
        }
    }
}
