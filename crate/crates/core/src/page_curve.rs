//! Radiation entropy and early/late mutual information for a black hole that
//! evaporates completely and unitarily, optionally with infallen matter whose
//! entropy is carried as entanglement with a reference system.
//!
//! `r` counts radiated qunats. With `s_bh` qunats in total and matter entropy
//! `s_matter`, the radiation entropy rises one-for-one until
//! `(s_bh + s_matter)/2` and then falls to `s_matter`; the mutual information
//! between early radiation `R` and the rest `R'` rises two-for-one to the
//! plateau `s_bh - s_matter` between the initial and final Page times.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::format::sig12;
use crate::haar::{haar_isometry, stream_rng};
use crate::register::{Capacity, TensorRegister};
use crate::state::{PureState, QuantumState, C64};

const LN2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaporationParams {
    pub s_bh: f64,
    pub s_matter: f64,
    pub r: f64,
}

impl EvaporationParams {
    pub fn new(s_bh: f64, s_matter: f64, r: f64) -> Result<Self> {
        let p = EvaporationParams { s_bh, s_matter, r };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_bh.is_finite() && self.s_bh > 0.0) {
            return arg(format!("s_bh must be positive, got {}", self.s_bh));
        }
        if !(self.s_matter >= 0.0 && self.s_matter <= self.s_bh) {
            return arg(format!(
                "s_matter must lie in [0, s_bh], got {} (s_bh = {})",
                self.s_matter, self.s_bh
            ));
        }
        if !(self.r >= 0.0 && self.r <= self.s_bh) {
            return arg(format!("r must lie in [0, s_bh], got {}", self.r));
        }
        Ok(())
    }

    pub fn at(&self, r: f64) -> Result<Self> {
        Self::new(self.s_bh, self.s_matter, r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub r: f64,
    pub s_r: f64,
    pub mi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageTimes {
    pub initial: f64,
    pub final_: f64,
}

/// `S(R)` after `r` qunats have been radiated.
pub fn analytic_radiation_entropy(p: &EvaporationParams) -> Result<f64> {
    p.validate()?;
    Ok(radiation_entropy_unchecked(p.s_bh, p.s_matter, p.r))
}

fn radiation_entropy_unchecked(s_bh: f64, s_matter: f64, r: f64) -> f64 {
    let turn = 0.5 * (s_bh + s_matter);
    if r <= turn {
        r
    } else {
        s_bh + s_matter - r
    }
}

/// `S(R':R)` between the first `r` radiated qunats and everything after.
pub fn analytic_mutual_information(p: &EvaporationParams) -> Result<f64> {
    p.validate()?;
    Ok(mutual_information_unchecked(p.s_bh, p.s_matter, p.r))
}

pub(crate) fn mutual_information_unchecked(s_bh: f64, s_matter: f64, r: f64) -> f64 {
    let t = page_times_unchecked(s_bh, s_matter);
    if r <= t.initial {
        2.0 * r
    } else if r <= t.final_ {
        s_bh - s_matter
    } else {
        2.0 * (s_bh - r)
    }
}

pub fn page_times(p: &EvaporationParams) -> Result<PageTimes> {
    p.validate()?;
    Ok(page_times_unchecked(p.s_bh, p.s_matter))
}

pub(crate) fn page_times_unchecked(s_bh: f64, s_matter: f64) -> PageTimes {
    PageTimes {
        initial: 0.5 * (s_bh - s_matter),
        final_: 0.5 * (s_bh + s_matter),
    }
}

/// Analytic curve on `steps + 1` evenly spaced points over `[0, s_bh]`.
pub fn analytic_curve(s_bh: f64, s_matter: f64, steps: usize) -> Result<Vec<CurvePoint>> {
    EvaporationParams::new(s_bh, s_matter, 0.0)?;
    if steps == 0 {
        return arg("steps must be at least 1");
    }
    let grid: Vec<f64> = (0..=steps)
        .map(|k| if k == steps { s_bh } else { s_bh * k as f64 / steps as f64 })
        .collect();
    analytic_on_grid(s_bh, s_matter, &grid)
}

/// Analytic curve evaluated at arbitrary radiated amounts.
pub fn analytic_on_grid(s_bh: f64, s_matter: f64, grid: &[f64]) -> Result<Vec<CurvePoint>> {
    grid.iter()
        .map(|&r| {
            let p = EvaporationParams::new(s_bh, s_matter, r)?;
            Ok(CurvePoint {
                r,
                s_r: analytic_radiation_entropy(&p)?,
                mi: analytic_mutual_information(&p)?,
            })
        })
        .collect()
}

/// Sample mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub stderr: f64,
}

impl Stat {
    /// Summation runs in slice order, so the result does not depend on how
    /// the samples were produced.
    pub fn from_samples(xs: &[f64]) -> Stat {
        let n = xs.len();
        if n == 0 {
            return Stat {
                mean: f64::NAN,
                stderr: f64::NAN,
            };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return Stat { mean, stderr: 0.0 };
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        Stat {
            mean,
            stderr: (var / n as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McPoint {
    /// Early-radiation size in qubits.
    pub cut: usize,
    /// Same, in qunats (`cut · ln 2`).
    pub r: f64,
    pub s_r: Stat,
    pub mi: Stat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McCurve {
    pub n_evap_qubits: usize,
    pub n_matter_ref_qubits: usize,
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<McPoint>,
}

impl McCurve {
    pub fn s_bh(&self) -> f64 {
        self.n_evap_qubits as f64 * LN2
    }

    pub fn s_matter(&self) -> f64 {
        self.n_matter_ref_qubits as f64 * LN2
    }

    /// Sample means as plain curve points.
    pub fn means(&self) -> Vec<CurvePoint> {
        self.points
            .iter()
            .map(|p| CurvePoint {
                r: p.r,
                s_r: p.s_r.mean,
                mi: p.mi.mean,
            })
            .collect()
    }

    /// Analytic model on the same cut grid.
    pub fn analytic(&self) -> Result<Vec<CurvePoint>> {
        let grid: Vec<f64> = self.points.iter().map(|p| p.r).collect();
        analytic_on_grid(self.s_bh(), self.s_matter(), &grid)
    }
}

/// Entropies `(S(R), S(R':R))` for every cut of one sampled evaporation.
///
/// The black hole is `n_evap` qubits; its first `n_ref` qubits' worth of
/// entanglement is shared uniformly with a reference, realized by a Haar
/// isometry from the reference into the black hole.
pub fn sample_cuts(n_evap: usize, n_ref: usize, seed: u64, trial: u64) -> Result<Vec<(f64, f64)>> {
    let d_evap = 1usize << n_evap;
    let d_ref = 1usize << n_ref;
    let mut rng = stream_rng(seed, trial);
    let iso = haar_isometry(d_evap, d_ref, &mut rng);
    let scale = 1.0 / (d_ref as f64).sqrt();
    // amplitude order: evap index major, reference index minor
    let amps: Vec<C64> = (0..d_evap)
        .flat_map(|e| (0..d_ref).map(move |k| (e, k)))
        .map(|(e, k)| iso[(e, k)] * scale)
        .collect();

    (0..=n_evap)
        .map(|cut| {
            let reg = TensorRegister::from_dims(&[
                ("R", 1usize << cut),
                ("R'", 1usize << (n_evap - cut)),
                ("ref", d_ref),
            ])?;
            let psi = PureState::new(reg, amps.clone())?;
            let s_r = psi.entropy_of(&["R"])?;
            let s_rp = psi.entropy_of(&["R'"])?;
            let s_joint = psi.entropy_of(&["R", "R'"])?;
            Ok((s_r, s_r + s_rp - s_joint))
        })
        .collect()
}

/// Monte-Carlo Page curve at every integer qubit cut.
pub fn monte_carlo_curve(
    n_evap_qubits: usize,
    n_matter_ref_qubits: usize,
    trials: usize,
    seed: u64,
    capacity: Capacity,
) -> Result<McCurve> {
    if n_evap_qubits == 0 {
        return arg("need at least one evaporating qubit");
    }
    if n_matter_ref_qubits > n_evap_qubits {
        return arg("matter reference cannot exceed the black hole (s_matter ≤ s_bh)");
    }
    if trials == 0 {
        return arg("trials must be positive");
    }
    let total_qubits = n_evap_qubits + n_matter_ref_qubits;
    if total_qubits >= usize::BITS as usize {
        return arg("register too large");
    }
    capacity.check(1usize << total_qubits)?;

    let per_trial = run_trials(trials, |t| {
        sample_cuts(n_evap_qubits, n_matter_ref_qubits, seed, t as u64)
    })?;

    let points = (0..=n_evap_qubits)
        .map(|cut| {
            let s: Vec<f64> = per_trial.iter().map(|v| v[cut].0).collect();
            let m: Vec<f64> = per_trial.iter().map(|v| v[cut].1).collect();
            McPoint {
                cut,
                r: cut as f64 * LN2,
                s_r: Stat::from_samples(&s),
                mi: Stat::from_samples(&m),
            }
        })
        .collect();

    Ok(McCurve {
        n_evap_qubits,
        n_matter_ref_qubits,
        trials,
        seed,
        points,
    })
}

/// Runs `f(0..n)` (in parallel when enabled) and returns results in index order.
pub(crate) fn run_trials<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub r: f64,
    pub s_r_analytic: f64,
    pub s_r_mc: f64,
    pub mi_analytic: f64,
    pub mi_mc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveComparison {
    /// Largest deviation over both columns.
    pub max_deviation: f64,
    pub max_s_r_deviation: f64,
    pub max_mi_deviation: f64,
    pub rows: Vec<ComparisonRow>,
}

/// Pointwise comparison of two curves sampled on the same `r` grid.
pub fn compare_curves(analytic: &[CurvePoint], mc: &[CurvePoint]) -> Result<CurveComparison> {
    if analytic.len() != mc.len() {
        return arg(format!(
            "grid mismatch: {} analytic points vs {} sampled points",
            analytic.len(),
            mc.len()
        ));
    }
    let mut rows = Vec::with_capacity(analytic.len());
    let (mut ds, mut dm) = (0.0f64, 0.0f64);
    for (a, m) in analytic.iter().zip(mc) {
        if (a.r - m.r).abs() > 1e-9 * a.r.abs().max(1.0) {
            return arg(format!("grid mismatch at r = {} vs {}", a.r, m.r));
        }
        ds = ds.max((a.s_r - m.s_r).abs());
        dm = dm.max((a.mi - m.mi).abs());
        rows.push(ComparisonRow {
            r: a.r,
            s_r_analytic: a.s_r,
            s_r_mc: m.s_r,
            mi_analytic: a.mi,
            mi_mc: m.mi,
        });
    }
    Ok(CurveComparison {
        max_deviation: ds.max(dm),
        max_s_r_deviation: ds,
        max_mi_deviation: dm,
        rows,
    })
}

pub const CSV_HEADER: &str =
    "r_qunats,s_r_analytic,mi_analytic,s_r_mc_mean,s_r_mc_stderr,mi_mc_mean,mi_mc_stderr";

/// Analytic-only export; the Monte-Carlo columns are left empty.
pub fn analytic_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!("{},{},{},,,,\n", sig12(p.r), sig12(p.s_r), sig12(p.mi)));
    }
    out
}

/// Export with both analytic and sampled columns on the cut grid.
pub fn mc_csv(curve: &McCurve) -> Result<String> {
    let analytic = curve.analytic()?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (a, m) in analytic.iter().zip(&curve.points) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(a.r),
            sig12(a.s_r),
            sig12(a.mi),
            sig12(m.s_r.mean),
            sig12(m.s_r.stderr),
            sig12(m.mi.mean),
            sig12(m.mi.stderr)
        ));
    }
    Ok(out)
}
