//! WebAssembly bindings for the browser demo in `www/`. Every function takes an
//! instance in the text format and returns JSON.

pub mod api;

use wasm_bindgen::prelude::*;

fn to_js(v: Result<serde_json::Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// Instance from the `gnp`, `planted` or `hard` generator.
#[wasm_bindgen]
pub fn generate(kind: &str, n: usize, k: usize, p: f64, seed: u64) -> Result<String, JsError> {
    to_js(api::generate(kind, n, k, p, seed))
}

#[wasm_bindgen]
pub fn kernelize(text: &str) -> Result<String, JsError> {
    to_js(api::kernelize(text))
}

#[wasm_bindgen]
pub fn solve(text: &str) -> Result<String, JsError> {
    to_js(api::solve(text))
}
