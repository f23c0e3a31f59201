//! One function per command: validate parameters, compute, write artifacts,
//! and build the summary.

use evaplab_core::format::{round_sig12, sig12};
use evaplab_core::haar::{eigenphase_ks, mean_bloch_length};
use evaplab_core::lattice::{decay_csv, entanglement_vs_separation, fit_decay, HarmonicChain};
use evaplab_core::nocomm::{swap_counterexample, verify_eq2, verify_eq6, Eq2Shape, Eq6Shape, VerificationResult};
use evaplab_core::page_curve::{analytic_csv, analytic_curve, compare_curves, mc_csv, monte_carlo_curve, page_times, EvaporationParams};
use evaplab_core::paradox::{evaluate, Theorem, TheoremParams};
use evaplab_core::register::Capacity;
use evaplab_core::Error;
use serde::Serialize;

use crate::config::{Check, Command, HaarParams, LatticeParams, NocommParams, PageCurveParams, ParadoxParams, RunConfig};
use crate::output::{to_json, write_atomic, Summary};
use crate::CliError;

pub const BLOCH_THRESHOLD: f64 = 0.05;
pub const KS_THRESHOLD: f64 = 0.05;

/// Result of a successful run.
pub struct Outcome {
    pub summary: String,
    /// A verification found a margin violation.
    pub violation: bool,
}

/// Entropy units for the printed summary; artifacts are always in qunats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Qunats,
    Bits,
}

impl Units {
    fn show(self, qunats: f64) -> String {
        match self {
            Units::Qunats => format!("{} qunats", sig12(qunats)),
            Units::Bits => format!("{} bits", sig12(qunats / std::f64::consts::LN_2)),
        }
    }
}

fn core(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn execute(cfg: &RunConfig, capacity: Capacity, units: Units) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::PageCurve => page_curve(cfg, cfg.params()?, capacity, units),
        Command::Paradox => paradox(cfg, cfg.params()?, units),
        Command::NocommVerify => nocomm(cfg, cfg.params()?, capacity, units),
        Command::LatticeDecay => lattice(cfg, cfg.params()?, units),
        Command::HaarVerify => haar(cfg, cfg.params()?),
    }
}

fn page_curve(cfg: &RunConfig, p: PageCurveParams, capacity: Capacity, units: Units) -> Result<Outcome, CliError> {
    let mut s = Summary::default();
    s.row("command", "page-curve");
    let csv = match p.n_evap {
        Some(n) => {
            let curve = monte_carlo_curve(n, p.n_matter_ref, p.trials, cfg.seed, capacity).map_err(core)?;
            let cmp = compare_curves(&curve.analytic().map_err(core)?, &curve.means()).map_err(core)?;
            s.row("mode", "monte-carlo")
                .row("qubits", format!("{n} evaporating, {} reference", p.n_matter_ref))
                .row("trials", p.trials.to_string())
                .row("seed", cfg.seed.to_string())
                .row("max |S(R) - analytic|", units.show(cmp.max_s_r_deviation))
                .row("max |S(R':R) - analytic|", units.show(cmp.max_mi_deviation));
            mc_csv(&curve).map_err(core)?
        }
        None => {
            let params = EvaporationParams::new(p.s_bh, p.s_matter, 0.0).map_err(core)?;
            let pts = analytic_curve(p.s_bh, p.s_matter, p.steps).map_err(core)?;
            let t = page_times(&params).map_err(core)?;
            s.row("mode", "analytic")
                .row("s_bh", units.show(p.s_bh))
                .row("s_matter", units.show(p.s_matter))
                .row("initial page time", units.show(t.initial))
                .row("final page time", units.show(t.final_))
                .row("points", pts.len().to_string());
            analytic_csv(&pts)
        }
    };
    let path = write_atomic(&cfg.output_dir, "curve.csv", csv.as_bytes())?;
    s.row("wrote", path.display().to_string());
    Ok(Outcome {
        summary: s.render(),
        violation: false,
    })
}

fn paradox(cfg: &RunConfig, p: ParadoxParams, units: Units) -> Result<Outcome, CliError> {
    let theorem = Theorem::parse(&p.theorem).ok_or_else(|| {
        let names: Vec<&str> = Theorem::ALL.iter().map(|t| t.name()).collect();
        CliError::Usage(format!(
            "params.theorem: unknown theorem `{}`, expected one of {}",
            p.theorem,
            names.join(", ")
        ))
    })?;
    let tp = TheoremParams {
        s_bh: p.s_bh,
        s_matter: p.s_matter,
        mu: p.mu,
        epsilon: p.epsilon,
        eta: p.eta,
        log_dim_b: p.log_dim_b,
        theta: cfg.theta,
        stretched_horizon: p.stretched_horizon,
    };
    let sweep = evaluate(&tp, theorem, p.steps).map_err(core)?;
    let json = write_atomic(&cfg.output_dir, "report.json", to_json(&sweep.document()).as_bytes())?;
    let csv = write_atomic(&cfg.output_dir, "report.csv", sweep.csv().as_bytes())?;
    let contradictions = sweep.points.iter().filter(|r| r.contradiction).count();
    let mut s = Summary::default();
    s.row("command", "paradox")
        .row("theorem", theorem.name())
        .row("theta", sig12(cfg.theta))
        .row("points", sweep.points.len().to_string())
        .row("contradictory points", contradictions.to_string())
        .row("onset", sweep.onset_r.map_or("none".into(), |r| units.show(r)));
    if let Some(x) = sweep.predicted_onset_r {
        s.row("predicted onset", units.show(x));
    }
    if let Some(note) = sweep.points.iter().find_map(|r| r.note.clone()) {
        s.row("note", note);
    }
    s.row("wrote", format!("{}, {}", json.display(), csv.display()));
    Ok(Outcome {
        summary: s.render(),
        violation: false,
    })
}

fn rounded(mut r: VerificationResult) -> VerificationResult {
    r.min_margin = round_sig12(r.min_margin);
    for f in &mut r.failures {
        f.margin = round_sig12(f.margin);
    }
    r
}

fn nocomm(cfg: &RunConfig, p: NocommParams, capacity: Capacity, units: Units) -> Result<Outcome, CliError> {
    if p.samples == 0 {
        return Err(CliError::Usage("params.samples: must be at least 1".into()));
    }
    let result = match p.check {
        Check::Eq2 => verify_eq2(p.samples, Eq2Shape::default(), cfg.seed, capacity),
        Check::Eq6 => verify_eq6(p.samples, Eq6Shape::default(), cfg.seed, capacity),
    }
    .map_err(core)?;
    let result = rounded(result);
    let path = write_atomic(&cfg.output_dir, "verify.json", to_json(&result).as_bytes())?;
    let mut s = Summary::default();
    s.row("command", "nocomm-verify")
        .row("check", result.check.clone())
        .row("samples", result.samples.to_string())
        .row("min margin", units.show(result.min_margin))
        .row("failures", result.failures.len().to_string());
    if p.check == Check::Eq6 {
        let c = swap_counterexample().map_err(core)?;
        s.row("signaling SWAP margin", units.show(c.margin));
    }
    s.row("wrote", path.display().to_string());
    Ok(Outcome {
        summary: s.render(),
        violation: !result.passed(),
    })
}

#[derive(Serialize)]
struct FitDocument {
    rate: Option<f64>,
    r_squared: Option<f64>,
    floor: f64,
    points_used: usize,
}

fn lattice(cfg: &RunConfig, p: LatticeParams, units: Units) -> Result<Outcome, CliError> {
    let chain = HarmonicChain {
        n_sites: p.n_sites,
        mass: p.mass,
        self_freq: p.self_freq,
        coupling: p.coupling,
        boundary: p.boundary,
    };
    let series = entanglement_vs_separation(&chain, p.block_size, p.d_max).map_err(core)?;
    // d = 0 blocks touch; the decay is fitted over traced-out separations
    let fit = match fit_decay(series.get(1..).unwrap_or(&[])) {
        Ok(f) => {
            let f = f.rounded();
            FitDocument {
                rate: Some(f.rate),
                r_squared: Some(f.r_squared),
                floor: f.floor,
                points_used: f.points_used,
            }
        }
        Err(Error::InsufficientData { usable, .. }) => FitDocument {
            rate: None,
            r_squared: None,
            floor: evaplab_core::lattice::MI_FLOOR,
            points_used: usable,
        },
        Err(e) => return Err(core(e)),
    };
    let csv = write_atomic(&cfg.output_dir, "decay.csv", decay_csv(&series).as_bytes())?;
    let json = write_atomic(&cfg.output_dir, "fit.json", to_json(&fit).as_bytes())?;
    let mut s = Summary::default();
    s.row("command", "lattice-decay")
        .row("sites", p.n_sites.to_string())
        .row("MI at d=0", units.show(series[0].mutual_information));
    if let Some(last) = series.last() {
        s.row(format!("MI at d={}", last.d), units.show(last.mutual_information));
    }
    match (fit.rate, fit.r_squared) {
        (Some(rate), Some(r2)) => {
            s.row("decay rate per site", sig12(rate)).row("r^2", sig12(r2));
        }
        _ => {
            s.row("fit", "not enough points above the floor");
        }
    }
    s.row("wrote", format!("{}, {}", csv.display(), json.display()));
    Ok(Outcome {
        summary: s.render(),
        violation: false,
    })
}

#[derive(Serialize)]
struct HaarDocument {
    check: &'static str,
    bloch_samples: usize,
    mean_bloch_length: f64,
    bloch_threshold: f64,
    unitary_dim: usize,
    unitary_samples: usize,
    ks_statistic: f64,
    ks_threshold: f64,
    passed: bool,
}

fn haar(cfg: &RunConfig, p: HaarParams) -> Result<Outcome, CliError> {
    let bloch = mean_bloch_length(p.bloch_samples, cfg.seed).map_err(core)?;
    let ks = eigenphase_ks(p.unitary_dim, p.unitary_samples, cfg.seed).map_err(core)?;
    let doc = HaarDocument {
        check: "haar",
        bloch_samples: p.bloch_samples,
        mean_bloch_length: round_sig12(bloch),
        bloch_threshold: BLOCH_THRESHOLD,
        unitary_dim: p.unitary_dim,
        unitary_samples: p.unitary_samples,
        ks_statistic: round_sig12(ks),
        ks_threshold: KS_THRESHOLD,
        passed: bloch < BLOCH_THRESHOLD && ks < KS_THRESHOLD,
    };
    let path = write_atomic(&cfg.output_dir, "verify.json", to_json(&doc).as_bytes())?;
    let mut s = Summary::default();
    s.row("command", "haar-verify")
        .row("mean Bloch length", sig12(bloch))
        .row("eigenphase KS", sig12(ks))
        .row("passed", doc.passed.to_string())
        .row("wrote", path.display().to_string());
    Ok(Outcome {
        summary: s.render(),
        violation: !doc.passed,
    })
}
