//! Browser bindings: analyse a pasted `.mg` graph, generate family members
//! and tabulate limit points. Everything runs on the calling thread.

use mgspec::charpoly::charpoly_exact;
use mgspec::classifier::within_rho_star;
use mgspec::families::FamilySpec;
use mgspec::hermitian::round_sig;
use mgspec::limits::{self, LimitPoint};
use mgspec::mgfile::{parse_mg, to_mg};
use mgspec::switching::canonical_signature;
use mgspec::spectrum;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest index accepted by [`limit_points`]; larger ones take visibly long.
pub const MAX_LIMIT_INDEX: usize = 40;

fn number(x: f64) -> Value {
    json!(round_sig(x, 12))
}

pub fn analyze_graph(mg: &str) -> Result<Value, String> {
    let g = parse_mg(mg).map_err(|e| e.to_string())?;
    let s = spectrum(&g).map_err(|e| e.to_string())?;
    let poly = charpoly_exact(&g).map_err(|e| e.to_string())?;
    let (within, _) = within_rho_star(&g, &s);
    Ok(json!({
        "order": g.order(),
        "size": g.size(),
        "rho": number(s.rho()),
        "eigenvalues": s.values().iter().map(|&x| number(x)).collect::<Vec<_>>(),
        "charpoly": poly.to_string(),
        "connected": g.is_connected(),
        "signature": canonical_signature(&g).ok(),
        "negative_c4_free": g.is_negative_c4_free(),
        "within_rho_star": within,
    }))
}

pub fn generate_family(name: &str, params: &str) -> Result<Value, String> {
    let params = params
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad parameter `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = FamilySpec::parse(name, &params).map_err(|e| e.to_string())?;
    let g = spec.generate().map_err(|e| e.to_string())?;
    let rho = spectrum(&g).map_err(|e| e.to_string())?.rho();
    Ok(json!({ "name": spec.to_string(), "mg": to_mg(&g), "rho": number(rho) }))
}

fn point(name: String, p: &LimitPoint) -> Value {
    json!({ "name": name, "value": number(p.value) })
}

/// `eta_k` and `zeta_k` for `k <= max_index`, then `xi` and `rho*`, sorted by value.
pub fn tabulate_limit_points(max_index: usize) -> Result<Value, String> {
    if max_index > MAX_LIMIT_INDEX {
        return Err(format!("index cap is {MAX_LIMIT_INDEX}"));
    }
    let mut rows = Vec::new();
    for k in 1..=max_index {
        rows.push(point(format!("eta_{k}"), &limits::eta(k).map_err(|e| e.to_string())?));
        rows.push(point(format!("zeta_{k}"), &limits::zeta(k)));
    }
    rows.push(point("xi".into(), &limits::xi()));
    rows.push(point("rho*".into(), &limits::rho_star_point()));
    rows.sort_by(|a, b| a["value"].as_f64().unwrap_or(0.0).total_cmp(&b["value"].as_f64().unwrap_or(0.0)));
    Ok(Value::Array(rows))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(mg: &str) -> Result<String, JsValue> {
    to_js(analyze_graph(mg))
}

#[wasm_bindgen]
pub fn family(name: &str, params: &str) -> Result<String, JsValue> {
    to_js(generate_family(name, params))
}

#[wasm_bindgen]
pub fn limit_points(max_index: usize) -> Result<String, JsValue> {
    to_js(tabulate_limit_points(max_index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyses_the_imaginary_triangle_tadpole() {
        let v = analyze_graph("n 6\n0 -> 1\n1 -- 2\n2 -- 0\n0 -- 3\n3 -- 4\n4 -- 5\n").unwrap();
        assert!((v["rho"].as_f64().unwrap() - 2.0285).abs() < 5e-5);
        assert_eq!(v["within_rho_star"], true);
        assert_eq!(v["charpoly"], "x^6 - 6*x^4 + 8*x^2 - 1");
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(analyze_graph("n 2\n0 => 1\n").unwrap_err().contains("line 2"));
        assert!(generate_family("Q_abc", "1 x").is_err());
    }

    #[test]
    fn generates_family_members() {
        let v = generate_family("C'_kn", "3, 6").unwrap();
        assert_eq!(v["name"], "C'_{3,6}");
        assert!(v["mg"].as_str().unwrap().starts_with("n 6\n"));
    }

    #[test]
    fn limit_points_are_sorted_and_capped() {
        let rows = tabulate_limit_points(5).unwrap();
        let values: Vec<f64> = rows.as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
        assert_eq!(values.len(), 12);
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(values[0], 2.0);
        assert!(tabulate_limit_points(MAX_LIMIT_INDEX + 1).is_err());
    }
}
