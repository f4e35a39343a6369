//! Browser bindings for the static demo page in `www/`.
//!
//! Each export returns a string the page renders directly: a spectrum
//! table as JSON, sampled radial components as JSON, or the level diagram
//! as SVG. The plain functions are usable (and tested) natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use dirac_su11::export::{self, Columns};
use dirac_su11::report::params;
use dirac_su11::spectrum::{level_diagram, spectrum_table};
use dirac_su11::{QuantumNumbers, SpinorState};

/// Hard cap on browser-side sample counts.
pub const MAX_SAMPLES: usize = 2000;

pub fn spectrum(gamma: f64, k: i32, n_max: u32) -> Result<String, String> {
    let rows = spectrum_table(gamma, k, n_max, 1.0).map_err(|e| e.to_string())?;
    let p = params([("gamma", json!(gamma)), ("k", json!(k)), ("n_max", json!(n_max))]);
    Ok(export::spectrum_json(&rows, &p))
}

pub fn wavefunction(gamma: f64, k: i32, n: u32, rho_max: f64, samples: usize) -> Result<String, String> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 2..={MAX_SAMPLES}"));
    }
    if !(rho_max > 0.0 && rho_max.is_finite()) {
        return Err(format!("rho_max must be positive, got {rho_max}"));
    }
    let q = QuantumNumbers::new(k, n, gamma, 1.0).map_err(|e| e.to_string())?;
    let state = SpinorState::normalized(&q).map_err(|e| e.to_string())?;
    let rhos: Vec<f64> = (1..=samples).map(|i| rho_max * i as f64 / samples as f64).collect();
    let p = params([
        ("gamma", json!(gamma)),
        ("k", json!(k)),
        ("n", json!(n)),
        ("E_over_m", json!(state.params.energy)),
    ]);
    Ok(export::wavefunction_json(&state.sample(&rhos), Columns::Both, &p))
}

pub fn diagram(gamma: f64, k_max: u32, principal_max: u32) -> Result<String, String> {
    let d = level_diagram(gamma, k_max, principal_max).map_err(|e| e.to_string())?;
    Ok(export::diagram_svg(&d))
}

#[wasm_bindgen(js_name = spectrumJson)]
pub fn spectrum_js(gamma: f64, k: i32, n_max: u32) -> Result<String, JsError> {
    spectrum(gamma, k, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = wavefunctionJson)]
pub fn wavefunction_js(gamma: f64, k: i32, n: u32, rho_max: f64, samples: usize) -> Result<String, JsError> {
    wavefunction(gamma, k, n, rho_max, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = diagramSvg)]
pub fn diagram_js(gamma: f64, k_max: u32, principal_max: u32) -> Result<String, JsError> {
    diagram(gamma, k_max, principal_max).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_rows() {
        let v: serde_json::Value = serde_json::from_str(&spectrum(0.5, -1, 1).unwrap()).unwrap();
        let text = v.to_string();
        assert!(text.contains("0.866025404") && text.contains("0.965925826"), "{text}");
    }

    #[test]
    fn wavefunction_rejects_bad_input() {
        assert!(wavefunction(0.5, 1, 0, 10.0, 50).is_err());
        assert!(wavefunction(0.5, -1, 0, 10.0, 1).is_err());
        assert!(wavefunction(0.5, -1, 0, -1.0, 50).is_err());
        assert!(wavefunction(0.5, -1, 0, 10.0, 50).is_ok());
    }

    #[test]
    fn diagram_is_svg() {
        let svg = diagram(0.5, 2, 3).unwrap();
        assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(diagram(1.5, 2, 3).is_err());
    }
}
