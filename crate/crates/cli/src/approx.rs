//! Display-only decimal approximations for exact values in a payload.

use rigidcy_core::numkernel::{principal_embedding, shipped_towers, AlgebraicNumber, FieldTower, Q};
use serde_json::{Map, Value};

pub const MARKER: &str = "approx_non_authoritative";

fn tower(name: &str) -> Option<FieldTower> {
    if name == "Q" {
        return Some(FieldTower::rationals());
    }
    shipped_towers().into_iter().find(|t| t.name() == name)
}

fn decimal(obj: &Map<String, Value>) -> Option<String> {
    let t = tower(obj.get("tower")?.as_str()?)?;
    let coeffs: Vec<Q> = obj.get("coeffs")?.as_array()?.iter().map(|c| c.as_str()?.parse().ok()).collect::<Option<_>>()?;
    let a = AlgebraicNumber::new(&t, coeffs).ok()?;
    let (re, im) = a.to_f64_parts(&principal_embedding(&t));
    if !re.is_finite() || !im.is_finite() {
        return None;
    }
    Some(if im.abs() < 1e-12 { format!("{re:.6}") } else { format!("{re:.6}{im:+.6}i") })
}

/// Adds a marked decimal next to every `{tower, coeffs}` object and returns
/// `(exact display, decimal)` pairs in document order.
pub fn annotate(v: &mut Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, &mut out);
    out
}

fn walk(v: &mut Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Array(items) => items.iter_mut().for_each(|x| walk(x, out)),
        Value::Object(obj) => {
            if obj.contains_key("tower") && obj.contains_key("coeffs") {
                let text = decimal(obj).unwrap_or_else(|| "unavailable".into());
                let display = obj.get("display").and_then(|d| d.as_str()).unwrap_or_default().to_string();
                obj.insert(MARKER.into(), Value::String(text.clone()));
                out.push((display, text));
                return;
            }
            obj.values_mut().for_each(|x| walk(x, out));
        }
        _ => {}
    }
}
