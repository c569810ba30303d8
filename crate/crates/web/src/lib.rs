//! Browser bindings for the `qprod` demo page. Every export returns a JSON
//! string; the page renders it.

use qprod::characters::enumerate_characters;
use qprod::numtheory::{psi_by_definition, psi_reduced};
use qprod::products::{IdentityId, IdentitySpec, Params};
use qprod::verify::run_identity;
use qprod::Precision;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_DIGITS: u32 = 200;

fn verify_json(id: &str, params_json: &str, digits: u32, tolerance: i64) -> Result<String, String> {
    let id: IdentityId = id.parse().map_err(|e: qprod::Error| e.to_string())?;
    let params: Params = if params_json.trim().is_empty() {
        Params::default()
    } else {
        serde_json::from_str(params_json).map_err(|e| format!("params: {e}"))?
    };
    if digits > MAX_DIGITS {
        return Err(format!("at most {MAX_DIGITS} digits in the browser"));
    }
    let precision = Precision::new(digits).map_err(|e| e.to_string())?;
    let report = run_identity(&IdentitySpec::new(id, params, precision), tolerance);
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

fn characters_json(modulus: u64) -> Result<String, String> {
    if modulus > 1000 {
        return Err("modulus must be at most 1000".into());
    }
    let chars = enumerate_characters(modulus).map_err(|e| e.to_string())?;
    let rows: Vec<_> = chars
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let values: Vec<String> = c
                .value_table()
                .iter()
                .map(|v| v.map_or_else(|| "0".to_string(), |v| v.to_string()))
                .collect();
            json!({
                "index": i,
                "exponents": c.exponents(),
                "order": c.order(),
                "conductor": c.conductor().0,
                "primitive": c.is_primitive(),
                "principal": c.is_principal(),
                "values": values,
            })
        })
        .collect();
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

fn psi_json(n: u64) -> Result<String, String> {
    if n > 2000 {
        return Err("n must be at most 2000".into());
    }
    let def = psi_by_definition(n).map_err(|e| e.to_string())?;
    let red = psi_reduced(n).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "by_definition": def.to_string(),
        "reduced_base": red.base.to_string(),
        "reduced_exponent": red.exponent,
        "agree": def == red.to_fraction(),
    })
    .to_string())
}

/// Verify one identity; `params_json` uses the report's `params` layout.
#[wasm_bindgen]
pub fn verify(id: &str, params_json: &str, digits: u32, tolerance: i32) -> Result<String, JsError> {
    verify_json(id, params_json, digits, i64::from(tolerance)).map_err(|e| JsError::new(&e))
}

/// Table of all Dirichlet characters mod `modulus`.
#[wasm_bindgen]
pub fn characters(modulus: u32) -> Result<String, JsError> {
    characters_json(u64::from(modulus)).map_err(|e| JsError::new(&e))
}

/// `Ψ_n` by definition and in reduced cyclotomic form.
#[wasm_bindgen]
pub fn psi(n: u32) -> Result<String, JsError> {
    psi_json(u64::from(n)).map_err(|e| JsError::new(&e))
}
