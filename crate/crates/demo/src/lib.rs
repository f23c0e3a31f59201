//! WebAssembly bindings for the static demo page. Every export returns a
//! JSON string; failures come back as `{"error": "..."}` so the page can
//! show them next to the inputs.

use evaplab_core::format::round_sig12;
use evaplab_core::lattice::{entanglement_vs_separation, fit_decay, HarmonicChain};
use evaplab_core::page_curve::{analytic_curve, page_times, EvaporationParams};
use evaplab_core::paradox::{evaporation_sweep, Theorem, TheoremParams};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

#[derive(Serialize)]
pub struct CurvePayload {
    pub r: Vec<f64>,
    pub s_r: Vec<f64>,
    pub mi: Vec<f64>,
    pub initial_page_time: f64,
    pub final_page_time: f64,
}

pub fn page_curve_data(s_bh: f64, s_matter: f64, steps: usize) -> Result<CurvePayload, String> {
    let pts = analytic_curve(s_bh, s_matter, steps).map_err(|e| e.to_string())?;
    let t = page_times(&EvaporationParams::new(s_bh, s_matter, 0.0).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    Ok(CurvePayload {
        r: pts.iter().map(|p| round_sig12(p.r)).collect(),
        s_r: pts.iter().map(|p| round_sig12(p.s_r)).collect(),
        mi: pts.iter().map(|p| round_sig12(p.mi)).collect(),
        initial_page_time: round_sig12(t.initial),
        final_page_time: round_sig12(t.final_),
    })
}

/// Radiation entropy and radiation–remainder mutual information against
/// radiated qunats.
#[wasm_bindgen]
pub fn page_curve(s_bh: f64, s_matter: f64, steps: usize) -> String {
    respond(page_curve_data(s_bh, s_matter, steps))
}

#[derive(Serialize)]
pub struct SweepPayload {
    pub theorem: &'static str,
    pub r: Vec<f64>,
    pub margin: Vec<f64>,
    pub contradiction: Vec<bool>,
    pub onset_r: Option<f64>,
    pub assumptions: Vec<&'static str>,
}

pub fn paradox_sweep_data(
    theorem: &str,
    s_bh: f64,
    s_matter: f64,
    eta: f64,
    theta: f64,
    steps: usize,
) -> Result<SweepPayload, String> {
    let t = Theorem::parse(theorem).ok_or_else(|| format!("unknown theorem `{theorem}`"))?;
    let p = TheoremParams {
        s_bh,
        s_matter,
        eta,
        theta,
        ..TheoremParams::default()
    };
    let sweep = evaporation_sweep(&p, t, steps).map_err(|e| e.to_string())?;
    let assumptions = sweep
        .points
        .iter()
        .find(|r| r.contradiction)
        .map(|r| r.violated_assumption_options.iter().map(|a| a.tag()).collect())
        .unwrap_or_default();
    Ok(SweepPayload {
        theorem: t.name(),
        r: sweep.points.iter().map(|r| round_sig12(r.r)).collect(),
        margin: sweep.points.iter().map(|r| round_sig12(r.margin)).collect(),
        contradiction: sweep.points.iter().map(|r| r.contradiction).collect(),
        onset_r: sweep.onset_r.map(round_sig12),
        assumptions,
    })
}

/// Margin of a running theorem (`T1`, `T2`, `T1-holographic`) across the
/// evaporation, with the first contradictory point.
#[wasm_bindgen]
pub fn paradox_sweep(theorem: &str, s_bh: f64, s_matter: f64, eta: f64, theta: f64, steps: usize) -> String {
    respond(paradox_sweep_data(theorem, s_bh, s_matter, eta, theta, steps))
}

#[derive(Serialize)]
pub struct DecayPayload {
    pub d: Vec<usize>,
    pub mi: Vec<f64>,
    pub rate: Option<f64>,
    pub r_squared: Option<f64>,
}

pub fn lattice_decay_data(
    n_sites: usize,
    self_freq: f64,
    coupling: f64,
    block_size: usize,
    d_max: usize,
) -> Result<DecayPayload, String> {
    let chain = HarmonicChain {
        self_freq,
        coupling,
        ..HarmonicChain::unit(n_sites)
    };
    let series = entanglement_vs_separation(&chain, block_size, d_max).map_err(|e| e.to_string())?;
    let fit = fit_decay(series.get(1..).unwrap_or(&[])).ok();
    Ok(DecayPayload {
        d: series.iter().map(|p| p.d).collect(),
        mi: series.iter().map(|p| round_sig12(p.mutual_information)).collect(),
        rate: fit.map(|f| round_sig12(f.rate)),
        r_squared: fit.map(|f| round_sig12(f.r_squared)),
    })
}

/// Vacuum mutual information between two blocks of a harmonic chain as the
/// number of traced-out sites between them grows.
#[wasm_bindgen]
pub fn lattice_decay(n_sites: usize, self_freq: f64, coupling: f64, block_size: usize, d_max: usize) -> String {
    respond(lattice_decay_data(n_sites, self_freq, coupling, block_size, d_max))
}
