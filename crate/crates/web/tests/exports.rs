use qprod_web::{characters, psi, verify};

fn parse(s: Result<String, wasm_bindgen::JsError>) -> serde_json::Value {
    serde_json::from_str(&s.unwrap_or_else(|_| panic!("export failed"))).unwrap()
}

#[test]
fn verify_returns_report() {
    let v = parse(verify("thm3_coprime", r#"{"n":6,"q":"0.4"}"#, 30, 25));
    assert_eq!(v["identity"], "THM3_COPRIME");
    assert_eq!(v["pass"], true);
    assert!(v["digits_agreed"].as_i64().unwrap() >= 25);
}

#[test]
fn character_rows_follow_enumeration() {
    let v = parse(characters(8));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row["index"], i);
        assert_eq!(row["values"][0], "0");
    }
}

#[test]
fn psi_of_prime_is_inverse_cyclotomic() {
    let v = parse(psi(7));
    assert_eq!(v["reduced_exponent"], -1);
    assert_eq!(v["agree"], true);
}
