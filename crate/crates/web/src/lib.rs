//! Browser bindings: three operations on text input, each returning JSON.
//!
//! The `*_json` functions are plain Rust so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors.

use hnp_core::certificate::find_certificate;
use hnp_core::groebner::hnp_decide_elimination;
use hnp_core::modp::prime_density_report;
use hnp_core::poly::clear_rational;
use hnp_core::reduction::{identity_lemma_check, SampleMode};
use hnp_core::sysio::{parse_integral_system, parse_polynomial, render_polynomial};
use hnp_core::{Answer, Budget};
use wasm_bindgen::prelude::*;

/// Largest prime range the page will sieve.
const MAX_WEB_PRIME: u64 = 100_000;

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Elimination decision plus, when unsatisfiable, a certificate.
pub fn decide_json(system: &str) -> Result<String, String> {
    let s = parse_integral_system(system).map_err(|e| e.to_string())?;
    let budget = Budget::default();
    let out = hnp_decide_elimination(&s, &budget).map_err(|e| e.to_string())?;
    let names = s.names();
    let mut json = format!("{{\"answer\":\"{}\"", out.answer);
    if let Some(w) = &out.witness {
        json += &format!(",\"witness\":\"{}\"", esc(&render_polynomial(w, &names)));
    }
    if out.answer == Answer::Unsat {
        if let Ok(c) = find_certificate(&s, &budget) {
            json += &format!(",\"certificate\":{}", c.to_json(&names));
        }
    }
    json.push('}');
    Ok(json)
}

/// Exact zero fraction of `poly` over `{lo..hi}^n` against `deg / |S|`.
pub fn identity_lemma_json(poly: &str, vars: &str, lo: i64, hi: i64) -> Result<String, String> {
    let names: Vec<String> = vars.split(|c: char| c == ',' || c.is_whitespace()).filter(|v| !v.is_empty()).map(String::from).collect();
    let f = parse_polynomial(poly, &names).map_err(|e| e.to_string())?;
    let r = identity_lemma_check(&clear_rational(&f).1, lo, hi, SampleMode::Exhaustive).map_err(|e| e.to_string())?;
    Ok(format!(
        "{{\"points\":{},\"zeros\":{},\"zero_fraction\":\"{}\",\"bound\":\"{}\",\"holds\":{}}}",
        r.points, r.zeros, r.zero_fraction, r.bound, r.holds
    ))
}

/// Primes in `[lo, hi]` at which a parameter-free system has an `F_p`-point.
pub fn prime_density_json(system: &str, lo: u64, hi: u64) -> Result<String, String> {
    let s = parse_integral_system(system).map_err(|e| e.to_string())?;
    if s.m() > 0 {
        return Err("prime density needs a system without parameters".into());
    }
    if hi > MAX_WEB_PRIME {
        return Err(format!("upper end is capped at {MAX_WEB_PRIME} in the browser"));
    }
    let rows = prime_density_report(&s.polys, lo, hi, &Budget::default()).map_err(|e| e.to_string())?;
    let sat: Vec<String> = rows.iter().filter(|r| r.answer == Some(Answer::Sat)).map(|r| r.p.to_string()).collect();
    Ok(format!("{{\"primes\":{},\"sat\":[{}]}}", rows.len(), sat.join(",")))
}

#[wasm_bindgen]
pub fn decide(system: &str) -> Result<String, JsError> {
    decide_json(system).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn identity_lemma(poly: &str, vars: &str, lo: i32, hi: i32) -> Result<String, JsError> {
    identity_lemma_json(poly, vars, lo.into(), hi.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn prime_density(system: &str, lo: u32, hi: u32) -> Result<String, JsError> {
    prime_density_json(system, lo.into(), hi.into()).map_err(|e| JsError::new(&e))
}
