use super::{BetaPoly, Monomial, Rat};
use crate::error::{invalid, Result};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub const POLY_SCHEMA: &str = "kgroth.poly/1";

/// `{"schema", "nvars", "terms": [{"beta", "coeff", "mono"}]}` in canonical term order.
pub fn to_json(p: &BetaPoly) -> Value {
    let terms: Vec<Value> = p
        .flat_terms()
        .into_iter()
        .map(|(k, c, m)| {
            let mut mono = Map::new();
            for (v, e) in m.support() {
                mono.insert(v.to_string(), json!(e));
            }
            json!({ "beta": k, "coeff": c.to_string(), "mono": Value::Object(mono) })
        })
        .collect();
    json!({ "schema": POLY_SCHEMA, "nvars": p.nvars(), "terms": terms })
}

fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| crate::error::Error::Invalid(format!("bad coefficient '{s}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(Rat::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

pub fn from_json(v: &Value) -> Result<BetaPoly> {
    if v.get("schema").and_then(Value::as_str) != Some(POLY_SCHEMA) {
        return invalid("missing or unknown polynomial schema");
    }
    let nvars = v.get("nvars").and_then(Value::as_u64).unwrap_or(0) as usize;
    let terms = match v.get("terms").and_then(Value::as_array) {
        Some(t) => t,
        None => return invalid("polynomial JSON has no terms array"),
    };
    let mut p = BetaPoly::zero(nvars);
    for t in terms {
        let k = t
            .get("beta")
            .and_then(Value::as_i64)
            .ok_or_else(|| crate::error::Error::Invalid("term without beta".into()))?;
        let c = parse_rat(t.get("coeff").and_then(Value::as_str).unwrap_or(""))?;
        let mut exps = Vec::new();
        if let Some(mono) = t.get("mono").and_then(Value::as_object) {
            for (var, e) in mono {
                let var: usize = var
                    .parse()
                    .map_err(|_| crate::error::Error::Invalid(format!("bad variable '{var}'")))?;
                let e = e.as_u64().unwrap_or(0) as u32;
                if var == 0 {
                    return invalid("variables are 1-indexed");
                }
                if exps.len() < var {
                    exps.resize(var, 0);
                }
                exps[var - 1] = e;
            }
        }
        p.add_rat_term(Monomial::new(exps), k as i32, &c);
    }
    Ok(p)
}
