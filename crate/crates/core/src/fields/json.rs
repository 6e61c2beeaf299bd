use serde_json::{json, Map, Value};

use super::{Automorphism, SuperVectorField};
use crate::algebra::{superfunction_from_json, superfunction_to_json, Polynomial, Superfunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn component_key(p: usize, a: usize) -> String {
    if a < p {
        format!("dx_{}", a + 1)
    } else {
        format!("dxi_{}", a - p + 1)
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub(crate) fn signature_of(v: &Value) -> Result<(usize, usize)> {
    let get = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| parse_err(format!("missing or non-integer \"{k}\"")))
    };
    Ok((get("p")?, get("q")?))
}

/// `{"p", "q", "components": {"dx_1": .., "dxi_1": ..}}`; zero components are omitted.
pub fn field_to_json<S: Scalar>(x: &SuperVectorField<S>) -> Value {
    let (p, q) = x.signature();
    let mut comps = Map::new();
    for (a, c) in x.components().iter().enumerate() {
        if !c.is_zero() {
            comps.insert(component_key(p, a), superfunction_to_json(c));
        }
    }
    json!({"p": p, "q": q, "components": comps})
}

pub fn field_from_json<S: Scalar>(v: &Value) -> Result<SuperVectorField<S>> {
    let (p, q) = signature_of(v)?;
    let mut comps = vec![Superfunction::zero(p, q); p + q];
    if let Some(obj) = v.get("components") {
        let obj = obj.as_object().ok_or_else(|| parse_err("\"components\" must be an object"))?;
        for (k, c) in obj {
            let a = (0..p + q)
                .find(|&a| component_key(p, a) == *k)
                .ok_or_else(|| parse_err(format!("unknown component \"{k}\"")))?;
            comps[a] = superfunction_from_json(c, p, q)?;
        }
    }
    SuperVectorField::from_components(p, q, comps)
}

fn poly_to_json<S: Scalar>(f: &Polynomial<S>, q: usize) -> Value {
    superfunction_to_json(&Superfunction::from_poly(q, f.clone()))
}

/// `{"p", "q", "linear": [[..]], "oddFrame": [[..]], "filtered": field}`.
pub fn automorphism_to_json<S: Scalar>(phi: &Automorphism<S>) -> Value {
    let (p, q) = phi.signature();
    let linear: Vec<Value> = phi
        .linear()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let (num, den) = c.to_fraction();
                    json!({"num": num, "den": den})
                })
                .collect()
        })
        .collect();
    let odd: Vec<Value> = phi
        .odd_frame()
        .iter()
        .map(|row| row.iter().map(|e| poly_to_json(e, q)).collect())
        .collect();
    json!({"p": p, "q": q, "linear": linear, "oddFrame": odd, "filtered": field_to_json(phi.filtered())})
}

pub fn automorphism_from_json<S: Scalar>(v: &Value) -> Result<Automorphism<S>> {
    let (p, q) = signature_of(v)?;
    let rows = |k: &str| -> Result<Vec<Vec<Value>>> {
        let arr = v.get(k).and_then(Value::as_array).ok_or_else(|| parse_err(format!("missing \"{k}\"")))?;
        arr.iter()
            .map(|r| r.as_array().cloned().ok_or_else(|| parse_err(format!("\"{k}\" rows must be arrays"))))
            .collect()
    };
    let linear = rows("linear")?
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| {
                    let f = superfunction_from_json::<S>(&json!([{"odd": [], "coeff": [merge_exp(c, p)]}]), p, q)?;
                    Ok(f.as_constant().unwrap_or_else(S::zero))
                })
                .collect::<Result<Vec<S>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let odd_frame = rows("oddFrame")?
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| {
                    let f = superfunction_from_json::<S>(c, p, q)?;
                    if f.max_degree().unwrap_or(0) > 0 {
                        return Err(parse_err("odd frame entries must be even polynomials"));
                    }
                    Ok(f.body())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let zeta = match v.get("filtered") {
        Some(f) => field_from_json(f)?,
        None => SuperVectorField::zero(p, q),
    };
    if zeta.signature() != (p, q) {
        return Err(Error::SignatureMismatch(p, q, zeta.p(), zeta.q()));
    }
    Automorphism::new(linear, odd_frame, zeta)
}

fn merge_exp(c: &Value, p: usize) -> Value {
    let mut c = c.clone();
    if let Some(obj) = c.as_object_mut() {
        obj.insert("exp".into(), json!(vec![0; p]));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn field_round_trip() {
        let (p, q) = (2, 2);
        let x = &SuperVectorField::<Rational>::d_xi(p, q, 0)
            + &SuperVectorField::monomial(Superfunction::xi(p, q, 1), 1);
        let v = field_to_json(&x);
        assert!(v["components"].get("dx_1").is_none());
        assert_eq!(field_from_json::<Rational>(&v).unwrap(), x);
        let bad = json!({"p": 1, "q": 1, "components": {"dy_1": []}});
        assert!(field_from_json::<Rational>(&bad).is_err());
    }

    #[test]
    fn automorphism_round_trip() {
        let (p, q) = (2, 2);
        let zeta = SuperVectorField::monomial(Superfunction::<Rational>::xi_product(p, q, &[0, 1]), 1);
        let phi = Automorphism::exp_field(&zeta).unwrap();
        let v = automorphism_to_json(&phi);
        assert_eq!(automorphism_from_json::<Rational>(&v).unwrap(), phi);
    }
}
