//! Canonical JSON forms.  `serde_json::Map` is a BTreeMap here, so keys come
//! out sorted.

use gfe_core::arith::{rat_to_string, Padic, Rational};
use gfe_core::frey::{Classification, JDisk, Witness};
use serde_json::{json, Value};

pub fn rat(x: &Rational) -> Value {
    Value::String(rat_to_string(x))
}

pub fn opt_rat(x: Option<&Rational>) -> Value {
    x.map_or(Value::String("inf".into()), rat)
}

pub fn padic(x: &Padic) -> Value {
    let val = match x.valuation() {
        Ok(Some(v)) => Value::String(v.to_string()),
        _ => Value::Null,
    };
    json!({ "ell": x.ell(), "val": val, "unit": x.unit().to_string(), "prec": x.prec() })
}

pub fn jdisk(d: &JDisk) -> Value {
    let params = match d {
        JDisk::CenterModulus { center, ell, k } => json!({ "center": rat(center), "ell": ell, "k": k }),
        JDisk::QuadraticFamily { base, scale, ell } => json!({ "base": rat(base), "scale": rat(scale), "ell": ell }),
        JDisk::InversePower { ell, base_exp, exponent } => {
            json!({ "ell": ell, "base_exp": base_exp, "exponent": exponent.map_or(json!("p"), |e| json!(e)) })
        }
        JDisk::PolyCube { ell, k } => json!({ "ell": ell, "k": k }),
    };
    let variant = match d {
        JDisk::CenterModulus { .. } => "CenterModulus",
        JDisk::QuadraticFamily { .. } => "QuadraticFamily",
        JDisk::InversePower { .. } => "InversePower",
        JDisk::PolyCube { .. } => "PolyCube",
    };
    json!({ "variant": variant, "params": params, "text": d.to_string() })
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Valuation { ell, modulus_exp, residue, valuation } => json!({
            "kind": "valuation",
            "ell": ell,
            "modulus": format!("{ell}^{modulus_exp}"),
            "residue": residue,
            "valuation": valuation,
        }),
        Witness::MarkedImpossible { line } => json!({ "kind": "marked-impossible", "line": line }),
    }
}

/// `(line, d-set, curves, v(N), disk, witness)` of one side of the classification.
pub fn side(c: &Classification) -> (Value, Value, Value, Value, Value, Value) {
    match c {
        Classification::Row(r) => {
            (json!(r.line), json!(r.d_set), json!(r.curves), json!(r.v_n), jdisk(&r.jdisk), Value::Null)
        }
        Classification::Infeasible(w) => {
            (json!("Infeasible"), json!([]), json!([]), Value::Null, Value::Null, witness(w))
        }
    }
}

/// `key.path: value` lines carrying the same data as the JSON form.
pub fn human(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                human(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                human(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}
